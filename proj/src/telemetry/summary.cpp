#include "trickery/telemetry.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace trickery {

double median(std::vector<double> values) {
    if (values.empty()) return 0;
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

Summary summarize(std::span<const SummaryRow> rows) {
    Summary out;
    out.rows.assign(rows.begin(), rows.end());
    std::vector<double> steps, loops;
    std::map<RoomId, std::vector<double>> per_room;
    for (const auto& r : rows) {
        steps.push_back(static_cast<double>(r.metrics.total_steps));
        loops.push_back(r.metrics.loops_endured);
        for (RoomId room : kAllRooms) {
            auto it = r.metrics.steps_per_room.find(room);
            per_room[room].push_back(it == r.metrics.steps_per_room.end() ? 0.0 : static_cast<double>(it->second));
        }
    }
    out.median_total_steps = median(steps);
    out.median_loops_endured = median(loops);
    for (auto& [room, v] : per_room) out.median_steps_per_room[room] = median(std::move(v));
    return out;
}

namespace {

std::string number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::string summary_csv(const Summary& summary) {
    std::ostringstream os;
    os << "session,seed,outcome,total_steps";
    for (RoomId room : kAllRooms) os << ",steps_" << room_name(room);
    for (Pattern p : kFlaggedPatterns) os << ",fell_for_" << pattern_key(p);
    os << ",loops_endured,backtrack,screws_given,hints_revealed\n";
    for (const auto& r : summary.rows) {
        const SessionMetrics& m = r.metrics;
        os << r.session << ',' << r.seed << ',' << outcome_name(m.outcome) << ',' << m.total_steps;
        for (RoomId room : kAllRooms) {
            auto it = m.steps_per_room.find(room);
            os << ',' << (it == m.steps_per_room.end() ? 0 : it->second);
        }
        for (Pattern p : kFlaggedPatterns) os << ',' << (m.fell_for(p) ? 1 : 0);
        os << ',' << m.loops_endured << ',' << (m.backtrack ? 1 : 0) << ',' << m.screws_given << ','
           << m.hints_revealed << '\n';
    }
    os << "median,,," << number(summary.median_total_steps);
    for (RoomId room : kAllRooms) {
        auto it = summary.median_steps_per_room.find(room);
        os << ',' << number(it == summary.median_steps_per_room.end() ? 0 : it->second);
    }
    for (std::size_t i = 0; i < kFlaggedPatterns.size(); ++i) os << ',';
    os << ',' << number(summary.median_loops_endured) << ",,,\n";
    return os.str();
}

Result<std::vector<SummaryRow>> load_log_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        return fail(ErrorCode::MalformedLog, dir.string() + " is not a directory");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<SummaryRow> rows;
    for (const auto& f : files) {
        std::ifstream in(f, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        auto log = parse_log(buf.str());
        if (!log) return fail(ErrorCode::MalformedLog, f.filename().string() + ": " + log.error().message);
        auto m = fell_for_flags(*log);
        if (!m) return fail(ErrorCode::MalformedLog, f.filename().string() + ": " + m.error().message);
        rows.push_back(SummaryRow{f.stem().string(), log->header.seed, std::move(m).value()});
    }
    return rows;
}

}  // namespace trickery
