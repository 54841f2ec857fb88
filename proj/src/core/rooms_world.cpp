#include "trickery/rooms_world.hpp"

#include "trickery/screws.hpp"
#include "trickery/world.hpp"

#include <algorithm>
#include <array>

namespace trickery {

using nlohmann::json;

namespace {

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

// --- hallway helpers ---

std::optional<HallwayPath> path_of(std::string_view node) {
    if (starts_with(node, "winding_")) return HallwayPath::Winding;
    if (starts_with(node, "shortcut_")) return HallwayPath::Shortcut;
    return std::nullopt;
}

std::string_view path_name(HallwayPath p) {
    switch (p) {
        case HallwayPath::None: return "None";
        case HallwayPath::Winding: return "Winding";
        case HallwayPath::Shortcut: return "Shortcut";
    }
    return "?";
}

// Next node along a path, or "exit" after the last segment.
std::string path_next(std::string_view node) {
    const auto p = *path_of(node);
    const std::string prefix = p == HallwayPath::Winding ? "winding_" : "shortcut_";
    const int last = (p == HallwayPath::Winding ? kWindingSegments : kShortcutSegments) - 1;
    const int i = std::stoi(std::string(node.substr(prefix.size())));
    return i >= last ? std::string(kExitNode) : prefix + std::to_string(i + 1);
}

// --- obstacle helpers ---

constexpr std::array<std::string_view, 4> kTeleporters = {"T1", "T2", "T3", "T4"};

// Stage needed to step onto a node of the course.
int node_gate(std::string_view node) {
    if (parse_maze_node(node)) return 1;
    if (node == "jumprun2_start") return 2;
    if (node == "bridge") return 3;
    if (node == "search_hall") return 4;
    return 0;
}

bool maze_open(const SessionSecrets& secrets, GridPos p) {
    return secrets.maze_open[static_cast<std::size_t>(p.row)][static_cast<std::size_t>(p.col)];
}

void announce_teleporters(Tx& tx, int stage) {
    for (auto id : kTeleporters) {
        if (teleporter_stage(id) == stage) {
            tx.system("teleporter_appeared", {{"id", id}, {"node", teleporter_node(id)}});
            tx.narrate("obstacle_teleporter", {{"teleporter", std::string(id)}});
        }
    }
}

void advance_stage(Tx& tx) {
    ObstacleProgress& p = tx.state().obstacle;
    const int cleared = p.stage;
    ++p.stage;
    p.run_position = 0;
    tx.system("obstacle_cleared", {{"obstacle", obstacle_name(cleared)}, {"stage", p.stage}});
    announce_teleporters(tx, p.stage);
}

void ask_question(Tx& tx) {
    const ObstacleProgress& p = tx.state().obstacle;
    const auto& qs = tx.pack().questions;
    if (p.stage != 3 || p.questions_answered >= kBridgeQuestions || qs.empty()) return;
    const auto idx = static_cast<std::size_t>(p.questions_answered) % qs.size();
    tx.narrate("obstacle_question",
               {{"question", qs[idx]}, {"number", std::to_string(p.questions_answered + 1)}});
}

void offer_graph_moves(const SessionState& s, std::vector<Action>& out, auto&& allowed) {
    for (const auto& n : room_graph(s.room).neighbors(s.location)) {
        if (allowed(n)) out.push_back(Action::move(n));
    }
}

}  // namespace

// --- Winding Hallway & Shortcut ---------------------------------------------

void hallway_actions(const SessionState& s, std::vector<Action>& out) {
    const HallwayProgress& h = s.hallway;
    if (path_of(s.location)) {
        out.push_back(Action::move(path_next(s.location)));
        return;
    }
    if (s.location == "center") out.push_back(Action::inspect("dark_area"));
    if (s.location == "dark_area" && !h.shortcut_discovered) out.push_back(Action::inspect("broken_lamp_wall"));
    offer_graph_moves(s, out, [&](const std::string& n) {
        auto p = path_of(n);
        if (!p) return true;
        if (h.path_taken != HallwayPath::None && *p != h.path_taken) return false;
        return *p != HallwayPath::Shortcut || h.shortcut_discovered;
    });
}

std::optional<ErrorCode> hallway_diagnose(const SessionState& s, const Action& a) {
    if (a.kind == ActionKind::Move && s.location == "dark_area" && a.target == "shortcut_1" &&
        !s.hallway.shortcut_discovered) {
        return ErrorCode::ShortcutHidden;
    }
    return std::nullopt;
}

void hallway_transition(Tx& tx, const Action& a) {
    SessionState& s = tx.state();
    HallwayProgress& h = s.hallway;
    if (a.kind == ActionKind::Inspect) {
        tx.system("inspected", {{"target", a.target}});
        if (a.target == "broken_lamp_wall") {
            h.shortcut_discovered = true;
            tx.system("shortcut_discovered");
            tx.narrate("hallway_shortcut");
        }
        return;
    }
    if (a.kind != ActionKind::Move) return;

    const bool on_path = path_of(s.location).has_value();
    if (auto p = path_of(a.target); p && h.path_taken == HallwayPath::None) {
        h.path_taken = *p;
        tx.system("path_chosen", {{"path", path_name(*p)}});
    }
    if (on_path || path_of(a.target)) {
        ++h.segment_index;
        tx.system("segment", {{"path", path_name(h.path_taken)}, {"index", h.segment_index}});
        if (h.path_taken == HallwayPath::Winding) {
            tx.narrate("hallway_ad", {{"segment", std::to_string(h.segment_index)}});
        }
    }
    if (a.target == kExitNode) {
        tx.narrate("hallway_exit", {{"steps", std::to_string(h.segment_index)}});
        enter_room(tx, RoomId::Obstacle);
    } else {
        move_to(tx, a.target);
    }
}

void hallway_on_arrive(Tx& tx, const std::string&) {
    SessionState& s = tx.state();
    if (s.location == "entrance") tx.narrate("hallway_intro");
    if (s.location == "center" && !s.hallway.cue_fired) {
        s.hallway.cue_fired = true;
        tx.system("hallway_cue");
        tx.narrate("hallway_cue");
    }
}

// --- Obstacle Onslaught -----------------------------------------------------

std::string_view obstacle_name(int stage) {
    switch (stage) {
        case 0: return "JumpRun1";
        case 1: return "InvisibleMaze";
        case 2: return "JumpRun2";
        case 3: return "QuestionBridge";
        case 4: return "KeySearch";
    }
    return "Cleared";
}

std::string teleporter_node(std::string_view id) {
    if (id == "T1") return "course_start";
    if (id == "T2") return maze_node(kMazeEntrance);
    if (id == "T3") return "jumprun2_start";
    if (id == "T4") return "search_hall";
    return {};
}

int teleporter_stage(std::string_view id) {
    if (id == "T1") return 0;
    if (id == "T2") return 1;
    if (id == "T3") return 2;
    if (id == "T4") return 4;
    return kObstacleCount + 1;
}

bool teleporter_visible(const ObstacleProgress& p, std::string_view id) { return p.stage >= teleporter_stage(id); }

std::string station_node(int stage) {
    switch (stage) {
        case 0: return "course_start";
        case 1: return maze_node(kMazeEntrance);
        case 2: return "jumprun2_start";
        case 3: return "bridge";
        default: return "search_hall";
    }
}

void teleporter_effect(Tx& tx, std::string_view id, bool button) {
    SessionState& s = tx.state();
    ObstacleProgress& p = s.obstacle;
    const std::string from = s.location;
    std::string to = from;
    if (button) {
        p.t1_color = (p.t1_color + 1) % 4;
        tx.system("teleporter_button", {{"id", id}, {"color", p.t1_color}});
        return;
    }
    ++p.teleporter_uses[std::string(id)];
    if (id == "T1") {
        p.t1_color = (p.t1_color + 1) % 4;
    } else if (id == "T2") {
        to = teleporter_node("T1");
    } else if (id == "T3") {
        p.t3_rotated = !p.t3_rotated;
    } else if (id == "T4") {
        const auto pick = tx.rng().uniform("t4", s.step, 3);
        to = teleporter_node(kTeleporters[pick]);
    }
    tx.system("teleporter_used", {{"id", id},
                                  {"from", from},
                                  {"to", to},
                                  {"color", p.t1_color},
                                  {"rotated", p.t3_rotated},
                                  {"stage", p.stage}});
    if (to != from) move_to(tx, to);
}

void obstacle_actions(const SessionState& s, std::vector<Action>& out) {
    const ObstacleProgress& p = s.obstacle;
    const ScrewLedger& inv = s.inventory;

    if ((p.stage == 0 || p.stage == 2) && s.location == station_node(p.stage)) {
        for (int c = 1; c <= kPlatformChoices; ++c) out.push_back(Action::obstacle_step(c));
    }
    if (p.stage == 3 && s.location == "bridge") out.push_back(Action::answer_question(""));
    if (s.location == "search_hall") {
        if (p.stage == 4) {
            for (int k = 1; k <= kSearchSpots; ++k) {
                if (!p.searched[static_cast<std::size_t>(k - 1)]) out.push_back(Action::inspect(search_spot(k)));
            }
        }
        if (!p.door_open) out.push_back(Action::simple(ActionKind::TryDoor));
    }
    if (s.location == "screw_cache" && !inv.cache_collected) out.push_back(Action::simple(ActionKind::CollectCache));
    for (auto id : kTeleporters) {
        if (teleporter_visible(p, id) && s.location == teleporter_node(id)) {
            out.push_back(Action::use_teleporter(std::string(id)));
            if (id == "T1") out.push_back(Action::press_teleporter_button(std::string(id)));
        }
    }
    offer_graph_moves(s, out, [&](const std::string& n) {
        if (n == kExitNode) return p.door_open;
        if (n == "screw_cache") return inv.need_screws_seen;
        return p.stage >= node_gate(n);
    });
}

std::optional<ErrorCode> obstacle_diagnose(const SessionState& s, const Action& a) {
    if (a.kind == ActionKind::CollectCache && s.location == "screw_cache" && s.inventory.cache_collected) {
        return ErrorCode::CacheEmpty;
    }
    return std::nullopt;
}

void obstacle_transition(Tx& tx, const Action& a) {
    SessionState& s = tx.state();
    ObstacleProgress& p = s.obstacle;
    switch (a.kind) {
        case ActionKind::AttemptObstacleStep: {
            const auto& run = p.stage == 0 ? s.secrets.jump_run1 : s.secrets.jump_run2;
            const int correct = run[static_cast<std::size_t>(p.run_position)];
            if (a.index == correct) {
                ++p.run_position;
                tx.system("platform_step", {{"choice", a.index}, {"correct", true}, {"position", p.run_position}});
                if (p.run_position == static_cast<int>(run.size())) {
                    advance_stage(tx);
                    move_to(tx, station_node(p.stage));
                }
            } else {
                p.run_position = 0;
                tx.system("platform_step", {{"choice", a.index}, {"correct", false}, {"position", 0}});
                tx.narrate("obstacle_fall");
            }
            break;
        }
        case ActionKind::AnswerQuestion:
            ++p.questions_answered;
            tx.system("question_answered", {{"number", p.questions_answered}, {"text", a.text}});
            if (p.questions_answered >= kBridgeQuestions) {
                advance_stage(tx);
                move_to(tx, station_node(p.stage));
            } else {
                ask_question(tx);
            }
            break;
        case ActionKind::Inspect: {
            const int k = std::stoi(a.target.substr(7));
            p.searched[static_cast<std::size_t>(k - 1)] = true;
            const bool found = k == s.secrets.key_spot;
            tx.system("spot_searched", {{"spot", k}, {"found", found}});
            if (found) {
                p.key_found = true;
                tx.system("key_found", {{"spot", k}});
                tx.narrate("obstacle_key_found");
                advance_stage(tx);
            }
            break;
        }
        case ActionKind::TryDoor:
            if (p.key_found) {
                p.door_open = true;
                tx.system("door_opened");
            } else {
                tx.system("door_locked", {{"error", std::string(error_name(ErrorCode::DoorLocked))}});
                tx.narrate("obstacle_door_locked");
            }
            break;
        case ActionKind::UseTeleporter: teleporter_effect(tx, a.target, false); break;
        case ActionKind::PressTeleporterButton: teleporter_effect(tx, a.target, true); break;
        case ActionKind::CollectCache: {
            auto added = collect_cache(s.inventory);
            tx.system("cache_collected", {{"added", *added}, {"held", s.inventory.held}});
            tx.narrate("backtrack_cache");
            break;
        }
        case ActionKind::Move: {
            if (a.target == kExitNode) {
                enter_room(tx, RoomId::Loop);
                break;
            }
            auto cell = parse_maze_node(a.target);
            if (cell && !maze_open(s.secrets, *cell)) {
                tx.system("maze_wall_hit", {{"at", a.target}, {"from", s.location}});
                tx.narrate("obstacle_maze_wall");
                move_to(tx, maze_node(kMazeEntrance));
                break;
            }
            move_to(tx, a.target);
            if (cell && *cell == kMazeExit && p.stage == 1) {
                advance_stage(tx);
                move_to(tx, station_node(p.stage));
            }
            break;
        }
        default: break;
    }
}

void obstacle_on_arrive(Tx& tx, const std::string& from) {
    SessionState& s = tx.state();
    ObstacleProgress& p = s.obstacle;
    if (s.location != from) p.run_position = 0;
    if (auto cell = parse_maze_node(s.location)) p.maze_pos = *cell;
    if (from.empty()) {
        tx.narrate("obstacle_intro");
        if (p.stage == 0 && s.location == "entrance") announce_teleporters(tx, 0);
    }
    if (s.location == "bridge") ask_question(tx);
}

// --- Looping Gameplay -------------------------------------------------------

int hints_for_loop(int loop_count, int hint_count) { return std::min(loop_count, hint_count); }

void loop_actions(const SessionState& s, std::vector<Action>& out) {
    const ScrewLedger& inv = s.inventory;
    const LoopState& l = s.loop;
    if (s.location == "keypad" && !inv.keypad_open) out.push_back(Action::simple(ActionKind::KeypadAttempt));
    if (s.location == "exit_hall") {
        out.push_back(Action::simple(ActionKind::TryDoor));
        if (l.teleporter_spawned) out.push_back(Action::simple(ActionKind::TakeLoopTeleporter));
        if (l.hints_revealed > 0) out.push_back(Action::simple(ActionKind::ReadWall));
    }
    offer_graph_moves(s, out, [&](const std::string& n) {
        if (n == "exit_hall") return inv.keypad_open;
        if (n == "backtrack") return inv.need_screws_seen && !inv.cache_collected;
        return true;
    });
}

std::optional<ErrorCode> loop_diagnose(const SessionState&, const Action&) { return std::nullopt; }

void loop_transition(Tx& tx, const Action& a) {
    SessionState& s = tx.state();
    LoopState& l = s.loop;
    switch (a.kind) {
        case ActionKind::KeypadAttempt: {
            const KeypadResult r = keypad_attempt(s.inventory);
            if (r.open) {
                tx.system("keypad_open", {{"spent", kKeypadCost}, {"held", s.inventory.held}});
                tx.narrate("keypad_open");
            } else {
                tx.system("need_screws", {{"missing", r.missing},
                                          {"held", s.inventory.held},
                                          {"error", std::string(error_name(ErrorCode::NeedScrews))}});
                tx.narrate("keypad_need_screws", {{"missing", std::to_string(r.missing)}});
            }
            break;
        }
        case ActionKind::TryDoor:
            ++l.door_attempts;
            tx.system("loop_door_shut", {{"loop_count", l.loop_count}});
            tx.narrate("loop_not_enough_data");
            if (!l.teleporter_spawned) {
                l.teleporter_spawned = true;
                tx.system("loop_teleporter_spawned");
                tx.narrate("loop_teleporter");
            }
            break;
        case ActionKind::TakeLoopTeleporter:
            l.teleporter_spawned = false;
            l.in_replay_pass = true;
            tx.system("loop_teleport", {{"loop_count", l.loop_count}});
            enter_room(tx, RoomId::Keymap);
            break;
        case ActionKind::ReadWall: {
            json hints = json::array();
            for (int i = 0; i < l.hints_revealed; ++i) hints.push_back(tx.pack().hints[static_cast<std::size_t>(i)]);
            tx.system("hints_read", {{"hints", hints}});
            break;
        }
        case ActionKind::Move:
            if (a.target == "backtrack") {
                tx.system("backtrack_started", {{"held", s.inventory.held}});
                enter_room(tx, RoomId::Obstacle, "search_hall");
            } else {
                move_to(tx, a.target);
            }
            break;
        default: break;
    }
}

void loop_fade_return(Tx& tx) {
    SessionState& s = tx.state();
    LoopState& l = s.loop;
    const int before = l.hints_revealed;
    tx.system("fade_to_black");
    l.in_replay_pass = false;
    ++l.loop_count;
    l.hints_revealed = hints_for_loop(l.loop_count, tx.pack().hint_count());
    enter_room(tx, RoomId::Loop, "exit_hall");
    tx.system("loop_returned", {{"loop_count", l.loop_count}, {"hints_revealed", l.hints_revealed}});
    tx.narrate("loop_fade", {{"loop_count", std::to_string(l.loop_count)}});
    if (l.hints_revealed > before) {
        tx.narrate("loop_hint", {{"hint", tx.pack().hints[static_cast<std::size_t>(l.hints_revealed - 1)]}});
    }
}

}  // namespace trickery
