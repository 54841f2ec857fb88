#include "trickery/action.hpp"
#include "trickery/telemetry.hpp"

#include <algorithm>

namespace trickery {

bool SessionMetrics::fell_for(Pattern p) const {
    auto it = flags.find(p);
    return it != flags.end() && it->second.fell_for;
}

Result<SessionMetrics> fell_for_flags(std::span<const Event> events) {
    SessionMetrics m;
    for (Pattern p : kFlaggedPatterns) m.flags[p] = PatternOutcome{p, false, {}};

    std::optional<uint64_t> accepted_at;
    bool remapped = false;
    int solved = 0;
    std::vector<uint64_t> early_doors, rejects, winding, teleports, given;

    for (std::size_t i = 0; i < events.size(); ++i) {
        const Event& e = events[i];
        if (e.seq != i) {
            return fail(ErrorCode::MalformedLog, "seq " + std::to_string(e.seq) + " at position " + std::to_string(i));
        }
        if (e.actor == Actor::Player && e.kind == ev::kAction) {
            auto a = action_from_json(e.payload);
            if (!a) return fail(ErrorCode::MalformedLog, "event " + std::to_string(e.seq) + ": " + a.error().message);
            ++m.total_steps;
            ++m.steps_per_room[e.room];
            switch (a->kind) {
                case ActionKind::AcceptPreselection:
                    if (!accepted_at) accepted_at = e.seq;
                    break;
                case ActionKind::Rebind:
                    if (e.room == RoomId::Keymap) remapped = true;
                    break;
                case ActionKind::TryDoor:
                    if (e.room == RoomId::TextWalls && solved < 4) early_doors.push_back(e.seq);
                    break;
                case ActionKind::UseTeleporter: teleports.push_back(e.seq); break;
                default: break;
            }
            continue;
        }
        if (e.actor != Actor::System) continue;
        if (e.kind == "puzzle_solved") {
            ++solved;
        } else if (e.kind == "checkout" && e.payload.value("result", "") == "Reject") {
            rejects.push_back(e.seq);
        } else if (e.kind == "path_chosen" && e.payload.value("path", "") == "Winding") {
            winding.push_back(e.seq);
        } else if (e.kind == "screw_given") {
            given.push_back(e.seq);
        } else if (e.kind == "loop_returned") {
            m.loops_endured = std::max(m.loops_endured, e.payload.value("loop_count", 0));
            m.hints_revealed = std::max(m.hints_revealed, e.payload.value("hints_revealed", 0));
        } else if (e.kind == "backtrack_started" || e.kind == "cache_collected") {
            m.backtrack = true;
        } else if (e.kind == "quit") {
            m.outcome = Outcome::Escaped;
            m.loops_endured = std::max(m.loops_endured, e.payload.value("loops_endured", 0));
        } else if (e.kind == "abandoned") {
            m.outcome = Outcome::Abandoned;
        }
    }

    auto set = [&](Pattern p, bool fell, std::vector<uint64_t> evidence) {
        m.flags[p] = PatternOutcome{p, fell, fell ? std::move(evidence) : std::vector<uint64_t>{}};
    };
    set(Pattern::Preselection, accepted_at && !remapped, accepted_at ? std::vector<uint64_t>{*accepted_at} : std::vector<uint64_t>{});
    set(Pattern::Sneaking, !rejects.empty(), rejects);
    set(Pattern::HiddenInformation, !early_doors.empty(), early_doors);
    set(Pattern::AestheticManipulation, !winding.empty(), winding);
    set(Pattern::Obstruction, !teleports.empty(), teleports);
    m.screws_given = static_cast<int>(given.size());
    set(Pattern::Nagging, given.size() >= 3, given);
    return m;
}

Result<SessionMetrics> fell_for_flags(const EventLog& log) { return fell_for_flags(std::span<const Event>(log.events)); }

}  // namespace trickery
