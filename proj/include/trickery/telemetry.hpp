#pragma once

// Log-derived metrics: fell-for flags, loop endurance, per-room step counts,
// and the summary CSV.

#include "trickery/event.hpp"
#include "trickery/ids.hpp"
#include "trickery/result.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace trickery {

struct PatternOutcome {
    Pattern pattern = Pattern::Preselection;
    bool fell_for = false;
    std::vector<uint64_t> evidence;  // seqs of the events that decided the flag
};

// The six patterns with a boolean flag; Forced Action is measured by
// loops_endured instead.
inline constexpr std::array<Pattern, 6> kFlaggedPatterns = {
    Pattern::Preselection, Pattern::Sneaking,    Pattern::HiddenInformation,
    Pattern::AestheticManipulation, Pattern::Obstruction, Pattern::Nagging,
};

struct SessionMetrics {
    std::map<Pattern, PatternOutcome> flags;
    int loops_endured = 0;
    bool backtrack = false;  // walked back for the screw cache
    int screws_given = 0;
    int hints_revealed = 0;
    Outcome outcome = Outcome::Running;
    uint64_t total_steps = 0;
    std::map<RoomId, uint64_t> steps_per_room;

    bool fell_for(Pattern p) const;
};

// Pure function of the events. Fails with MalformedLog on a seq gap or a
// player action event whose payload does not parse.
Result<SessionMetrics> fell_for_flags(std::span<const Event> events);
Result<SessionMetrics> fell_for_flags(const EventLog& log);

struct SummaryRow {
    std::string session;
    uint64_t seed = 0;
    SessionMetrics metrics;
};

struct Summary {
    std::vector<SummaryRow> rows;
    double median_total_steps = 0;
    double median_loops_endured = 0;
    std::map<RoomId, double> median_steps_per_room;
};

double median(std::vector<double> values);

Summary summarize(std::span<const SummaryRow> rows);
std::string summary_csv(const Summary& summary);

// Reads every *.jsonl under `dir` (sorted by name) into summary rows.
Result<std::vector<SummaryRow>> load_log_dir(const std::filesystem::path& dir);

}  // namespace trickery
