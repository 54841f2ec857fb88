#include "trickery/engine.hpp"

#include "trickery/rooms_interface.hpp"
#include "trickery/rooms_world.hpp"
#include "trickery/screws.hpp"
#include "trickery/transition.hpp"
#include "trickery/world.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace trickery {

using nlohmann::json;

namespace {

std::string_view intro_trigger(RoomId room) {
    switch (room) {
        case RoomId::Shop: return "shop_intro";
        case RoomId::TextWalls: return "textwalls_intro";
        default: return {};
    }
}

void arrive(Tx& tx, const std::string& from) {
    SessionState& s = tx.state();
    switch (s.room) {
        case RoomId::Hallway: hallway_on_arrive(tx, from); break;
        case RoomId::Obstacle: obstacle_on_arrive(tx, from); break;
        default: break;
    }
    if (auto nag = nag_trigger_at(tx.pack(), s.room, s.location)) nag_trigger(tx, *nag);
}

// Randomized depth-first walk from the entrance to the exit; the cells on the
// walk are the only open floor of the maze.
std::vector<GridPos> maze_walk(const CounterRng& rng) {
    std::array<std::array<bool, kMazeSize>, kMazeSize> seen{};
    std::vector<GridPos> path{kMazeEntrance};
    std::vector<std::vector<GridPos>> options;
    uint64_t counter = 0;

    auto shuffled_neighbors = [&](GridPos p) {
        std::vector<GridPos> ns;
        const int dr[] = {1, 0, -1, 0};
        const int dc[] = {0, 1, 0, -1};
        for (int k = 0; k < 4; ++k) {
            GridPos q{p.row + dr[k], p.col + dc[k]};
            if (q.row >= 0 && q.row < kMazeSize && q.col >= 0 && q.col < kMazeSize) ns.push_back(q);
        }
        for (std::size_t i = ns.size(); i > 1; --i) {
            const auto j = rng.uniform("maze", counter++, i);
            std::swap(ns[i - 1], ns[j]);
        }
        return ns;
    };

    seen[0][0] = true;
    options.push_back(shuffled_neighbors(kMazeEntrance));
    while (!path.empty() && path.back() != kMazeExit) {
        auto& opts = options.back();
        if (opts.empty()) {
            path.pop_back();
            options.pop_back();
            continue;
        }
        const GridPos next = opts.back();
        opts.pop_back();
        if (seen[next.row][next.col]) continue;
        seen[next.row][next.col] = true;
        path.push_back(next);
        options.push_back(shuffled_neighbors(next));
    }
    return path;
}

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

void move_to(Tx& tx, const std::string& node) {
    SessionState& s = tx.state();
    const std::string from = s.location;
    s.location = node;
    tx.system("moved", {{"from", from}, {"to", node}});
    arrive(tx, from);
}

void enter_room(Tx& tx, RoomId room, std::string node) {
    SessionState& s = tx.state();
    std::string exit_node(kExitNode);
    if (!tx.events().empty()) {
        const json& first = tx.events().front().payload;
        if (first.value("kind", "") == "Move") {
            exit_node = first.value("node", exit_node);
        } else {
            exit_node = first.value("kind", exit_node);
        }
    }
    tx.system("room_exited", {{"exit_node", exit_node}, {"via", s.location}, {"to", room_name(room)}});
    s.room = room;
    s.location = node.empty() ? room_graph(room).entry : std::move(node);
    tx.system("room_entered", {{"node", s.location}});
    if (auto intro = intro_trigger(room); !intro.empty()) tx.narrate(intro);
    if (room == RoomId::Loop && !s.loop.reached) {
        s.loop.reached = true;
        tx.system("loop_reached");
        tx.narrate("loop_intro");
    }
    arrive(tx, "");
}

SessionSecrets draw_secrets(uint64_t seed) {
    const CounterRng rng(seed);
    SessionSecrets sec;
    const uint64_t bits = rng.draw("levers", 0);
    for (std::size_t i = 0; i < sec.lever_target.size(); ++i) sec.lever_target[i] = (bits >> i) & 1U;
    for (int i = 0; i < kJumpRun1Length; ++i) {
        sec.jump_run1.push_back(static_cast<int>(rng.uniform("jump1", static_cast<uint64_t>(i), kPlatformChoices)) + 1);
    }
    for (int i = 0; i < kJumpRun2Length; ++i) {
        sec.jump_run2.push_back(static_cast<int>(rng.uniform("jump2", static_cast<uint64_t>(i), kPlatformChoices)) + 1);
    }
    sec.maze_path = maze_walk(rng);
    for (GridPos p : sec.maze_path) sec.maze_open[p.row][p.col] = true;
    sec.key_spot = static_cast<int>(rng.uniform("key", 0, kSearchSpots)) + 1;
    return sec;
}

std::string derive_session_id(uint64_t seed) { return "s" + hex64(splitmix64(seed ^ 0x5e55107ULL)); }

Engine::Engine(std::shared_ptr<const ContentPack> pack) : pack_(std::move(pack)) {
    if (!pack_) throw std::invalid_argument("no content pack");
    const auto issues = validate_pack(*pack_);
    if (!issues.empty()) {
        throw std::invalid_argument("content pack does not validate: " + issues.front().detail);
    }
    pack_hash_ = pack_->hash();
}

Result<Engine, PackIssues> Engine::create(std::shared_ptr<const ContentPack> pack) {
    if (!pack) return fail(PackIssues{{PackIssueKind::IoError, "no content pack"}});
    auto issues = validate_pack(*pack);
    if (!issues.empty()) return fail(std::move(issues));
    Engine e;
    e.pack_ = std::move(pack);
    e.pack_hash_ = e.pack_->hash();
    return e;
}

SessionState Engine::new_session(uint64_t seed, std::string session_id) const {
    SessionState s;
    s.session_id = session_id.empty() ? derive_session_id(seed) : std::move(session_id);
    s.seed = seed;
    s.pack_hash = pack_hash_;
    s.room = RoomId::Keymap;
    s.location = room_graph(RoomId::Keymap).entry;
    s.inventory.held = kStartingScrews;
    s.secrets = draw_secrets(seed);
    s.cart.required = pack_->required_items();
    return s;
}

std::vector<Action> Engine::available_actions(const SessionState& s) const {
    std::vector<Action> out;
    if (s.outcome != Outcome::Running) return out;
    if (s.inventory.pending_prompt) {
        screw_prompt_actions(s, out);
    } else {
        switch (s.room) {
            case RoomId::Keymap: keymap_actions(s, out); break;
            case RoomId::Shop: shop_actions(s, *pack_, out); break;
            case RoomId::TextWalls: textwalls_actions(s, out); break;
            case RoomId::Hallway: hallway_actions(s, out); break;
            case RoomId::Obstacle: obstacle_actions(s, out); break;
            case RoomId::Loop: loop_actions(s, out); break;
        }
    }
    if (s.loop.reached) out.push_back(Action::simple(ActionKind::Quit));
    return out;
}

Result<Transition> Engine::apply(const SessionState& s, const Action& a) const {
    if (s.outcome != Outcome::Running) {
        return fail(ErrorCode::SessionEnded, "the session is over (" + std::string(outcome_name(s.outcome)) + ")");
    }
    const auto available = available_actions(s);
    if (!is_offered(available, a)) {
        std::optional<ErrorCode> why;
        if (!s.inventory.pending_prompt) {
            switch (s.room) {
                case RoomId::Keymap: why = keymap_diagnose(s, a); break;
                case RoomId::Shop: why = shop_diagnose(s, a); break;
                case RoomId::TextWalls: why = textwalls_diagnose(s, a); break;
                case RoomId::Hallway: why = hallway_diagnose(s, a); break;
                case RoomId::Obstacle: why = obstacle_diagnose(s, a); break;
                case RoomId::Loop: why = loop_diagnose(s, a); break;
            }
        }
        const ErrorCode code = why.value_or(ErrorCode::ActionNotAvailable);
        return fail(code, describe(a) + " rejected in " + std::string(room_name(s.room)) + " at " + s.location);
    }

    Transition t{s, {}};
    SessionState& next = t.state;
    ++next.step;
    Tx tx(*pack_, next);
    tx.emit(Actor::Player, ev::kAction, to_json_value(a));

    if (a.kind == ActionKind::Quit) {
        next.outcome = Outcome::Escaped;
        tx.system("quit", {{"outcome", outcome_name(Outcome::Escaped)},
                           {"loops_endured", next.loop.loop_count},
                           {"hints_revealed", next.loop.hints_revealed}});
        tx.narrate("loop_quit", {{"loop_count", std::to_string(next.loop.loop_count)}});
    } else if (a.kind == ActionKind::GiveScrew || a.kind == ActionKind::DeclineScrew) {
        screw_prompt_transition(tx, a);
    } else {
        switch (next.room) {
            case RoomId::Keymap: keymap_transition(tx, a); break;
            case RoomId::Shop: shop_transition(tx, a); break;
            case RoomId::TextWalls: textwalls_transition(tx, a); break;
            case RoomId::Hallway: hallway_transition(tx, a); break;
            case RoomId::Obstacle: obstacle_transition(tx, a); break;
            case RoomId::Loop: loop_transition(tx, a); break;
        }
    }
    t.events = std::move(tx.events());
    return t;
}

Result<Transition> Engine::abandon(const SessionState& s) const {
    if (s.outcome != Outcome::Running) {
        return fail(ErrorCode::SessionEnded, "the session is over (" + std::string(outcome_name(s.outcome)) + ")");
    }
    Transition t{s, {}};
    t.state.outcome = Outcome::Abandoned;
    Tx tx(*pack_, t.state);
    tx.system("abandoned", {{"outcome", outcome_name(Outcome::Abandoned)}, {"loops_endured", s.loop.loop_count}});
    t.events = std::move(tx.events());
    return t;
}

Result<SessionState> new_session(uint64_t seed, const ContentPack& pack) {
    auto engine = Engine::create(std::make_shared<const ContentPack>(pack));
    if (!engine) {
        std::string msg = "content pack does not validate:";
        for (const auto& i : engine.error()) msg += " " + i.detail + ";";
        return fail(ErrorCode::InvalidContentPack, msg);
    }
    return engine->new_session(seed);
}

Result<Transition, ReplayError> replay(const Engine& engine, uint64_t seed, std::span<const Action> actions) {
    Transition acc{engine.new_session(seed), {}};
    for (std::size_t i = 0; i < actions.size(); ++i) {
        auto r = engine.apply(acc.state, actions[i]);
        if (!r) return fail(ReplayError{i, r.error()});
        acc.state = std::move(r->state);
        for (auto& e : r->events) acc.events.push_back(std::move(e));
    }
    return acc;
}

Result<Transition, ReplayError> replay_log(const Engine& engine, const EventLog& log) {
    Transition acc{engine.new_session(log.header.seed), {}};
    for (std::size_t i = 0; i < log.events.size(); ++i) {
        const Event& e = log.events[i];
        Result<Transition> r = fail(ErrorCode::MalformedLog, "");
        if (e.actor == Actor::Player && e.kind == ev::kAction) {
            auto a = action_from_json(e.payload);
            if (!a) return fail(ReplayError{i, a.error()});
            r = engine.apply(acc.state, *a);
        } else if (e.actor == Actor::System && e.kind == "abandoned") {
            r = engine.abandon(acc.state);
        } else {
            continue;
        }
        if (!r) return fail(ReplayError{i, r.error()});
        acc.state = std::move(r->state);
        for (auto& ev : r->events) acc.events.push_back(std::move(ev));
    }
    return acc;
}

std::vector<Action> actions_in_log(std::span<const Event> events) {
    std::vector<Action> out;
    for (const Event& e : events) {
        if (e.actor != Actor::Player || e.kind != ev::kAction) continue;
        if (auto a = action_from_json(e.payload)) out.push_back(std::move(a).value());
    }
    return out;
}

json dump_secrets(const ContentPack& pack, const SessionState& s) {
    const SessionSecrets& sec = s.secrets;
    json j;
    j["seed"] = s.seed;
    j["lever_target"] = sec.lever_target;
    j["jump_run1"] = sec.jump_run1;
    j["jump_run2"] = sec.jump_run2;
    json rows = json::array();
    for (const auto& row : sec.maze_open) {
        std::string line;
        for (bool open : row) line += open ? '.' : '#';
        rows.push_back(line);
    }
    j["maze"] = rows;
    json path = json::array();
    for (GridPos p : sec.maze_path) path.push_back({p.row, p.col});
    j["maze_path"] = path;
    j["key_spot"] = sec.key_spot;
    json screens = json::array();
    for (const auto& scr : pack.screens) screens.push_back({{"hidden_key", scr.hidden_key}, {"answer", scr.answer}});
    j["screens"] = screens;
    j["required_items"] = pack.required_items();
    j["pack_hash"] = pack.hash();
    return j;
}

}  // namespace trickery
