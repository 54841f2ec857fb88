#include "trickery/bots.hpp"

#include "trickery/view.hpp"
#include "trickery/world.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace trickery {

std::string_view policy_name(Policy p) {
    switch (p) {
        case Policy::Naive: return "naive";
        case Policy::Vigilant: return "vigilant";
        case Policy::Curious: return "curious";
        case Policy::Resilient: return "resilient";
        case Policy::GiveVector: return "give-vector";
    }
    return "?";
}

std::optional<Policy> parse_policy(std::string_view name) {
    for (Policy p : {Policy::Naive, Policy::Vigilant, Policy::Curious, Policy::Resilient, Policy::GiveVector}) {
        if (policy_name(p) == name) return p;
    }
    return std::nullopt;
}

namespace {

bool offered_kind(const View& v, ActionKind k) {
    return std::any_of(v.available_actions.begin(), v.available_actions.end(),
                       [&](const Action& a) { return a.kind == k; });
}

bool is_hallway_path(std::string_view node) {
    return node.rfind("winding_", 0) == 0 || node.rfind("shortcut_", 0) == 0;
}

// One platform run: what is known to be right, and what already failed.
struct JumpMemory {
    std::vector<int> known;
    std::vector<std::set<int>> failed;

    explicit JumpMemory(int length) : known(static_cast<std::size_t>(length), 0), failed(static_cast<std::size_t>(length)) {}

    int next_choice(int pos) const {
        const auto i = static_cast<std::size_t>(pos);
        if (known[i] != 0) return known[i];
        for (int c = 1; c <= kPlatformChoices; ++c) {
            if (!failed[i].count(c)) return c;
        }
        return 0;
    }
};

class Bot {
public:
    Bot(const Engine& engine, const BotConfig& config) : pack_(engine.pack()), cfg_(config) {
        if (cfg_.policy == Policy::Naive) {
            for (int i = 0; i < 5; ++i) cfg_.give[static_cast<std::size_t>(i)] = true;
        }
    }

    // Folds the messages of the last transition into memory.
    void observe(const View& v) {
        if (v.room != last_room_) run_pos_ = 0;
        last_room_ = v.room;
        for (const Message& m : v.messages) {
            const auto& p = m.payload;
            if (m.kind == "moved") {
                run_pos_ = 0;
                if (auto cell = parse_maze_node(p.value("to", ""))) maze_open_.insert(*cell);
            } else if (m.kind == "maze_wall_hit") {
                if (auto cell = parse_maze_node(p.value("at", ""))) maze_wall_.insert(*cell);
            } else if (m.kind == "platform_step") {
                JumpMemory& run = stage_ == 0 ? run1_ : run2_;
                const int choice = p.value("choice", 0);
                if (p.value("correct", false)) {
                    run.known[static_cast<std::size_t>(run_pos_)] = choice;
                    run_pos_ = p.value("position", 0);
                } else {
                    run.failed[static_cast<std::size_t>(run_pos_)].insert(choice);
                    run_pos_ = 0;
                }
            } else if (m.kind == "obstacle_cleared") {
                stage_ = p.value("stage", stage_);
                run_pos_ = 0;
            } else if (m.kind == "screen_read") {
                read_.insert(p.value("screen", 0));
            } else if (m.kind == "puzzle_revealed") {
                revealed_.insert(p.value("screen", 0));
            } else if (m.kind == "puzzle_solved") {
                solved_.insert(p.value("screen", 0));
                for (const auto& f : p.at("fragment")) lever_target_[f.at("lever").get<int>()] = f.at("up").get<bool>();
            } else if (m.kind == "door_opened") {
                if (v.room == RoomId::TextWalls) textwalls_door_ = true;
                if (v.room == RoomId::Obstacle) obstacle_door_ = true;
            } else if (m.kind == "door_locked" && v.room == RoomId::TextWalls) {
                tried_early_door_ = true;
            } else if (m.kind == "checkout") {
                if (p.value("result", "") == "Accept") {
                    cart_accepted_ = true;
                } else {
                    rejected_once_ = true;
                }
            } else if (m.kind == "shortcut_discovered") {
                shortcut_known_ = true;
            } else if (m.kind == "spot_searched") {
                searched_.insert(p.value("spot", 0));
            } else if (m.kind == "teleporter_used") {
                used_teleporters_.insert(p.value("id", ""));
            } else if (m.kind == "need_screws") {
                need_cache_ = true;
            } else if (m.kind == "cache_collected") {
                cache_collected_ = true;
            } else if (m.kind == "keypad_open") {
                keypad_open_ = true;
            } else if (m.kind == "hints_read") {
                hints_read_ = static_cast<int>(p.at("hints").size());
            }
        }
    }

    Result<Action, std::string> choose(const View& v) {
        if (v.prompt) return answer_prompt(v);
        switch (v.room) {
            case RoomId::Keymap: return keymap(v);
            case RoomId::Shop: return shop(v);
            case RoomId::TextWalls: return textwalls(v);
            case RoomId::Hallway: return hallway(v);
            case RoomId::Obstacle: return obstacle(v);
            case RoomId::Loop: return loop(v);
        }
        return fail(std::string("unknown room"));
    }

private:
    Policy policy() const { return cfg_.policy; }
    bool accepts_preselection() const {
        return policy() == Policy::Naive || policy() == Policy::Resilient || policy() == Policy::Curious;
    }
    bool remaps() const { return policy() == Policy::Vigilant || policy() == Policy::Curious || policy() == Policy::GiveVector; }

    Result<Action, std::string> answer_prompt(const View& v) {
        const auto it = std::find(kNagTriggers.begin(), kNagTriggers.end(), *v.prompt);
        bool give = false;
        if (it != kNagTriggers.end()) give = cfg_.give[static_cast<std::size_t>(it - kNagTriggers.begin())];
        if (policy() != Policy::Naive && policy() != Policy::GiveVector) give = false;
        if (give && offered_kind(v, ActionKind::GiveScrew)) return Action::simple(ActionKind::GiveScrew);
        return Action::simple(ActionKind::DeclineScrew);
    }

    // Shortest walk over the visible map. Exits, the backtrack passage,
    // hallway paths and unexplored maze cells are only used as the goal.
    Result<Action, std::string> go_to(const View& v, const std::string& target) {
        if (v.location == target) return fail("already at " + target);
        std::map<std::string, std::vector<std::string>> adj;
        for (const auto& [a, b] : v.map.edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        auto passable = [&](const std::string& n) {
            if (n == target) return true;
            if (n == kExitNode || n == "backtrack" || is_hallway_path(n)) return false;
            if (auto cell = parse_maze_node(n)) return maze_open_.count(*cell) > 0;
            return true;
        };
        std::map<std::string, std::string> parent;
        std::deque<std::string> queue{v.location};
        parent[v.location] = v.location;
        while (!queue.empty()) {
            const std::string cur = queue.front();
            queue.pop_front();
            if (cur == target) break;
            for (const auto& n : adj[cur]) {
                if (parent.count(n) || !passable(n)) continue;
                parent[n] = cur;
                queue.push_back(n);
            }
        }
        if (!parent.count(target)) return fail("no known route from " + v.location + " to " + target);
        std::string step = target;
        while (parent[step] != v.location) step = parent[step];
        return Action::move(step);
    }

    Result<Action, std::string> keymap(const View& v) {
        if (offered_kind(v, ActionKind::AcceptPreselection)) {
            return Action::simple(accepts_preselection() ? ActionKind::AcceptPreselection
                                                         : ActionKind::DeclinePreselection);
        }
        const bool menu_open = offered_kind(v, ActionKind::ConfirmMapping);
        const bool conventional = v.hud.key_bindings == kConventionalBindings;
        if (menu_open) {
            if (remaps()) {
                for (GameAction g : kAllGameActions) {
                    const char want = binding_for(kConventionalBindings, g);
                    if (binding_for(v.hud.key_bindings, g) != want) return Action::rebind(g, want);
                }
            }
            return Action::simple(ActionKind::ConfirmMapping);
        }
        if (!v.hud.mapping_confirmed || (remaps() && !conventional)) return Action::simple(ActionKind::MenuOpen);
        return go_to(v, std::string(kExitNode));
    }

    Result<Action, std::string> shop(const View& v) {
        if (cart_accepted_) return go_to(v, std::string(kExitNode));
        if (v.location != "vending_machine") return go_to(v, "vending_machine");
        std::vector<std::string> cart = v.hud.cart.value_or(std::vector<std::string>{});
        const std::vector<std::string> required = v.hud.shopping_list.value_or(std::vector<std::string>{});
        std::multiset<std::string> want(required.begin(), required.end());
        std::vector<std::string> extras;
        for (const auto& item : cart) {
            if (auto it = want.find(item); it != want.end()) {
                want.erase(it);
            } else {
                extras.push_back(item);
            }
        }
        const bool careful = policy() != Policy::Naive || rejected_once_;
        if (careful && !extras.empty()) return Action::cart_remove(extras.front());
        if (!want.empty()) return Action::cart_add(*want.begin());
        return Action::simple(ActionKind::Checkout);
    }

    Result<Action, std::string> textwalls(const View& v) {
        if (textwalls_door_) return go_to(v, std::string(kExitNode));
        if (v.location != "screens") return go_to(v, "screens");
        if (policy() == Policy::Naive && !tried_early_door_) return Action::simple(ActionKind::TryDoor);
        for (int i = 1; i <= 4; ++i) {
            if (!read_.count(i)) return Action::inspect(screen_target(i));
        }
        for (int i = 1; i <= 4; ++i) {
            if (!revealed_.count(i)) return Action::press_key(pack_.screens[static_cast<std::size_t>(i - 1)].hidden_key);
        }
        for (int i = 1; i <= 4; ++i) {
            if (!solved_.count(i)) return Action::answer_puzzle(i, pack_.screens[static_cast<std::size_t>(i - 1)].answer);
        }
        const auto levers = v.hud.levers.value_or(std::array<bool, 8>{});
        for (const auto& [lever, up] : lever_target_) {
            if (levers[static_cast<std::size_t>(lever - 1)] != up) return Action::set_lever(lever, up);
        }
        return Action::simple(ActionKind::TryDoor);
    }

    Result<Action, std::string> hallway(const View& v) {
        if (is_hallway_path(v.location)) {
            for (const Action& a : v.available_actions) {
                if (a.kind == ActionKind::Move) return a;
            }
            return fail(std::string("no way forward on the hallway path"));
        }
        const bool lit = policy() == Policy::Naive;
        if (v.location == "entrance" || v.location == "dim_lamp") return go_to(v, "center");
        if (lit) {
            if (v.location != "center") return go_to(v, "center");
            return Action::move("winding_1");
        }
        if (v.location == "center") return Action::move("dark_area");
        if (v.location == "dark_area") {
            if (!shortcut_known_) return Action::inspect("broken_lamp_wall");
            return Action::move("shortcut_1");
        }
        return go_to(v, "center");
    }

    // Next unexplored maze cell to probe: the one closest to the exit that
    // touches a known open cell.
    Result<Action, std::string> explore_maze(const View& v) {
        if (v.location == "course_start") return Action::move(maze_node(kMazeEntrance));
        std::optional<std::pair<GridPos, GridPos>> best;
        int best_score = 1 << 30;
        const int dr[] = {1, 0, -1, 0};
        const int dc[] = {0, 1, 0, -1};
        for (GridPos open : maze_open_) {
            for (int k = 0; k < 4; ++k) {
                GridPos q{open.row + dr[k], open.col + dc[k]};
                if (q.row < 0 || q.row >= kMazeSize || q.col < 0 || q.col >= kMazeSize) continue;
                if (maze_open_.count(q) || maze_wall_.count(q)) continue;
                const int score = (kMazeExit.row - q.row) + (kMazeExit.col - q.col);
                if (score < best_score) {
                    best_score = score;
                    best = std::make_pair(open, q);
                }
            }
        }
        if (!best) return fail(std::string("maze has no unexplored cell"));
        const std::string from = maze_node(best->first);
        if (v.location != from) return go_to(v, from);
        return Action::move(maze_node(best->second));
    }

    std::optional<Action> try_teleporter(const View& v) {
        if (policy() != Policy::Naive) return std::nullopt;
        for (const Action& a : v.available_actions) {
            if (a.kind == ActionKind::UseTeleporter && !used_teleporters_.count(a.target)) return a;
        }
        return std::nullopt;
    }

    Result<Action, std::string> obstacle(const View& v) {
        maze_open_.insert(kMazeEntrance);
        if (need_cache_ && !cache_collected_) {
            if (v.location != "screw_cache") return go_to(v, "screw_cache");
            return Action::simple(ActionKind::CollectCache);
        }
        if (auto t = try_teleporter(v)) return *t;
        switch (stage_) {
            case 0:
            case 2: {
                const std::string station = stage_ == 0 ? "course_start" : "jumprun2_start";
                if (v.location != station) return go_to(v, station);
                const int c = (stage_ == 0 ? run1_ : run2_).next_choice(run_pos_);
                if (c == 0) return fail(std::string("every platform choice failed"));
                return Action::obstacle_step(c);
            }
            case 1: return explore_maze(v);
            case 3:
                if (v.location != "bridge") return go_to(v, "bridge");
                return Action::answer_question("I would rather keep going");
            case 4:
                if (v.location != "search_hall") return go_to(v, "search_hall");
                for (int k = 1; k <= kSearchSpots; ++k) {
                    if (!searched_.count(k)) return Action::inspect(search_spot(k));
                }
                return fail(std::string("searched every spot without a key"));
            default:
                if (!obstacle_door_) {
                    if (v.location != "search_hall") return go_to(v, "search_hall");
                    return Action::simple(ActionKind::TryDoor);
                }
                return go_to(v, std::string(kExitNode));
        }
    }

    Result<Action, std::string> loop(const View& v) {
        if (!keypad_open_) {
            if (need_cache_ && !cache_collected_) return go_to(v, "backtrack");
            if (v.location != "keypad") return go_to(v, "keypad");
            return Action::simple(ActionKind::KeypadAttempt);
        }
        if (v.location != "exit_hall") return go_to(v, "exit_hall");
        const int hints = pack_.hint_count();
        switch (policy()) {
            case Policy::Naive:
                if (v.hud.loop_count >= cfg_.naive_loops) return Action::simple(ActionKind::Quit);
                break;
            case Policy::Curious:
                if (v.hud.hints_revealed > hints_read_) return Action::simple(ActionKind::ReadWall);
                if (v.hud.hints_revealed >= hints) return Action::simple(ActionKind::Quit);
                break;
            default: return Action::simple(ActionKind::Quit);
        }
        if (offered_kind(v, ActionKind::TakeLoopTeleporter)) return Action::simple(ActionKind::TakeLoopTeleporter);
        return Action::simple(ActionKind::TryDoor);
    }

    const ContentPack& pack_;
    BotConfig cfg_;

    RoomId last_room_ = RoomId::Keymap;
    int stage_ = 0;
    int run_pos_ = 0;
    JumpMemory run1_{kJumpRun1Length};
    JumpMemory run2_{kJumpRun2Length};
    std::set<GridPos> maze_open_;
    std::set<GridPos> maze_wall_;
    std::set<int> read_, revealed_, solved_, searched_;
    std::map<int, bool> lever_target_;
    std::set<std::string> used_teleporters_;
    bool textwalls_door_ = false;
    bool obstacle_door_ = false;
    bool tried_early_door_ = false;
    bool cart_accepted_ = false;
    bool rejected_once_ = false;
    bool shortcut_known_ = false;
    bool need_cache_ = false;
    bool cache_collected_ = false;
    bool keypad_open_ = false;
    int hints_read_ = 0;
};

}  // namespace

Result<BotRun, PolicyStuck> run_policy(const Engine& engine, const BotConfig& config, uint64_t seed) {
    BotRun run;
    run.header = LogHeader{seed, engine.pack_hash()};
    SessionState s = engine.new_session(seed);
    Bot bot(engine, config);
    std::size_t seen = 0;
    while (s.outcome == Outcome::Running) {
        if (s.step >= config.step_cap) return fail(PolicyStuck{"step cap reached", s.step});
        const View v = make_view(engine, s, std::span<const Event>(run.events).subspan(seen));
        seen = run.events.size();
        bot.observe(v);
        auto choice = bot.choose(v);
        if (!choice) {
            return fail(PolicyStuck{std::string(room_name(v.room)) + " at " + v.location + ": " + choice.error(), s.step});
        }
        if (!is_offered(v.available_actions, *choice)) {
            return fail(PolicyStuck{"chose " + describe(*choice) + ", which is not offered in " +
                                        std::string(room_name(v.room)) + " at " + v.location,
                                    s.step});
        }
        auto t = engine.apply(s, *choice);
        if (!t) return fail(PolicyStuck{"engine refused " + describe(*choice) + ": " + t.error().message, s.step});
        s = std::move(t->state);
        for (auto& e : t->events) run.events.push_back(std::move(e));
    }
    run.final_state = std::move(s);
    return run;
}

}  // namespace trickery
