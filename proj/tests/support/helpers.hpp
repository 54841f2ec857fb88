#pragma once

// Shared oracles and generators for the unit and acceptance suites.

#include "trickery/action.hpp"
#include "trickery/engine.hpp"
#include "trickery/rooms_world.hpp"
#include "trickery/stats.hpp"
#include "trickery/world.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace trickery::testing {

// Two-tailed exact p of the signed-rank statistic by enumerating all 2^m
// sign assignments of the ranks of the nonzero differences.
inline double exact_signed_rank_p(const std::vector<double>& values, double mu0 = 3.0) {
    std::vector<double> abs_diffs;
    std::vector<bool> positive;
    for (double v : values) {
        const double d = v - mu0;
        if (d == 0) continue;
        abs_diffs.push_back(std::fabs(d));
        positive.push_back(d > 0);
    }
    const std::size_t m = abs_diffs.size();
    const std::vector<double> ranks = average_ranks(abs_diffs);
    double observed = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (positive[i]) observed += ranks[i];
    }
    const double centre = static_cast<double>(m * (m + 1)) / 4.0;
    const double dev = std::fabs(observed - centre);
    uint64_t extreme = 0;
    const uint64_t total = uint64_t{1} << m;
    for (uint64_t mask = 0; mask < total; ++mask) {
        double w = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask & (uint64_t{1} << i)) w += ranks[i];
        }
        if (std::fabs(w - centre) >= dev - 1e-9) ++extreme;
    }
    return static_cast<double>(extreme) / static_cast<double>(total);
}

// Expands rating histograms (counts for ratings 1..5) into values.
inline std::vector<double> from_histogram(const std::array<int, 5>& counts) {
    std::vector<double> out;
    for (int r = 1; r <= 5; ++r) {
        for (int k = 0; k < counts[static_cast<std::size_t>(r - 1)]; ++k) out.push_back(r);
    }
    return out;
}

// Random ratings in 1..5 with at least one value away from mu0 = 3 and at
// most `max_nonzero` nonzero differences.
inline std::vector<double> random_ratings(std::mt19937_64& rng, int max_nonzero) {
    std::uniform_int_distribution<int> len(1, max_nonzero);
    std::uniform_int_distribution<int> rating(1, 5);
    std::uniform_int_distribution<int> zeros(0, 3);
    std::vector<double> v;
    const int m = len(rng);
    while (static_cast<int>(v.size()) < m) {
        const int r = rating(rng);
        if (r != 3) v.push_back(r);
    }
    for (int z = zeros(rng); z > 0; --z) v.push_back(3);
    std::shuffle(v.begin(), v.end(), rng);
    return v;
}

// A concrete action for an offered descriptor: free-text slots get either
// the right answer from the pack or noise.
inline Action concretize(const Engine& engine, const Action& offered, std::mt19937_64& rng) {
    Action a = offered;
    const auto& screens = engine.pack().screens;
    std::uniform_int_distribution<int> coin(0, 1);
    if (a.kind == ActionKind::PressKey && a.key.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, screens.size() - 1);
        a.key = coin(rng) ? screens[pick(rng)].hidden_key : "Esc";
    } else if (a.kind == ActionKind::AnswerPuzzle && a.text.empty()) {
        a.text = coin(rng) ? screens[static_cast<std::size_t>(a.index - 1)].answer : "no idea";
    } else if (a.kind == ActionKind::AnswerQuestion && a.text.empty()) {
        a.text = "maybe";
    }
    return a;
}

// Picks an action kind uniformly among the offered kinds, then an action of
// that kind, so large families (key rebinds) do not swamp the walk.
inline Action random_offered(const Engine& engine, const std::vector<Action>& available, std::mt19937_64& rng) {
    std::map<ActionKind, std::vector<const Action*>> by_kind;
    for (const Action& a : available) by_kind[a.kind].push_back(&a);
    std::uniform_int_distribution<std::size_t> pick_kind(0, by_kind.size() - 1);
    auto it = by_kind.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(pick_kind(rng)));
    std::uniform_int_distribution<std::size_t> pick(0, it->second.size() - 1);
    return concretize(engine, *it->second[pick(rng)], rng);
}

struct Walk {
    uint64_t seed = 0;
    std::vector<Action> actions;
    Transition result;
};

// Random playthrough of up to `steps` accepted actions. Quit is taken only
// with probability `quit_chance` when offered.
inline Walk random_walk(const Engine& engine, uint64_t seed, std::mt19937_64& rng, int steps,
                        double quit_chance = 0.02) {
    Walk w;
    w.seed = seed;
    w.result.state = engine.new_session(seed);
    std::uniform_real_distribution<double> unit(0, 1);
    for (int i = 0; i < steps && w.result.state.outcome == Outcome::Running; ++i) {
        auto available = engine.available_actions(w.result.state);
        if (available.size() > 1 && unit(rng) >= quit_chance) {
            available.erase(std::remove_if(available.begin(), available.end(),
                                           [](const Action& a) { return a.kind == ActionKind::Quit; }),
                            available.end());
        }
        const Action a = random_offered(engine, available, rng);
        auto t = engine.apply(w.result.state, a);
        if (!t) continue;
        w.actions.push_back(a);
        w.result.state = std::move(t->state);
        for (auto& e : t->events) w.result.events.push_back(std::move(e));
    }
    return w;
}

// White-box walkthrough: the shortest sensible play computed from the
// session secrets. `give` answers the five nag prompts in encounter order.
struct Walkthrough {
    std::array<bool, 5> give{};
    bool quit_at_loop = true;  // otherwise stops at the exit hall without quitting

    std::optional<Action> next(const Engine& engine, const SessionState& s) const {
        if (s.outcome != Outcome::Running) return std::nullopt;
        const auto available = engine.available_actions(s);
        auto offered = [&](const Action& a) { return is_offered(available, a); };
        if (s.inventory.pending_prompt) {
            const auto it = std::find(kNagTriggers.begin(), kNagTriggers.end(), *s.inventory.pending_prompt);
            const bool g = it != kNagTriggers.end() && give[static_cast<std::size_t>(it - kNagTriggers.begin())];
            const Action yes = Action::simple(ActionKind::GiveScrew);
            return g && offered(yes) ? yes : Action::simple(ActionKind::DeclineScrew);
        }
        switch (s.room) {
            case RoomId::Keymap:
                if (s.keymap.preselection_pending) return Action::simple(ActionKind::AcceptPreselection);
                return route(s, std::string(kExitNode));
            case RoomId::Shop: {
                if (s.cart.accepted) return route(s, std::string(kExitNode));
                if (s.location != "vending_machine") return route(s, "vending_machine");
                std::multiset<std::string> want(s.cart.required.begin(), s.cart.required.end());
                for (const auto& e : s.cart.entries) {
                    auto it = want.find(e);
                    if (it == want.end()) return Action::cart_remove(e);
                    want.erase(it);
                }
                if (!want.empty()) return Action::cart_add(*want.begin());
                return Action::simple(ActionKind::Checkout);
            }
            case RoomId::TextWalls: {
                const auto& p = s.textwalls;
                if (p.door_open) return route(s, std::string(kExitNode));
                if (s.location != "screens") return route(s, "screens");
                const auto& screens = engine.pack().screens;
                for (int i = 0; i < 4; ++i) {
                    if (!p.read[static_cast<std::size_t>(i)]) return Action::inspect(screen_target(i + 1));
                }
                for (int i = 0; i < 4; ++i) {
                    if (!p.puzzle_revealed[static_cast<std::size_t>(i)]) return Action::press_key(screens[static_cast<std::size_t>(i)].hidden_key);
                }
                for (int i = 0; i < 4; ++i) {
                    if (!p.solved[static_cast<std::size_t>(i)]) return Action::answer_puzzle(i + 1, screens[static_cast<std::size_t>(i)].answer);
                }
                for (int i = 0; i < 8; ++i) {
                    const auto k = static_cast<std::size_t>(i);
                    if (p.levers[k] != s.secrets.lever_target[k]) return Action::set_lever(i + 1, s.secrets.lever_target[k]);
                }
                return Action::simple(ActionKind::TryDoor);
            }
            case RoomId::Hallway:
                if (s.location.rfind("shortcut_", 0) == 0 || s.location.rfind("winding_", 0) == 0) {
                    for (const Action& a : available) {
                        if (a.kind == ActionKind::Move) return a;
                    }
                }
                if (s.location == "dark_area") {
                    if (!s.hallway.shortcut_discovered) return Action::inspect("broken_lamp_wall");
                    return Action::move("shortcut_1");
                }
                return route(s, "dark_area");
            case RoomId::Obstacle: {
                const auto& p = s.obstacle;
                if (s.inventory.need_screws_seen && !s.inventory.cache_collected) {
                    if (s.location != "screw_cache") return route(s, "screw_cache");
                    return Action::simple(ActionKind::CollectCache);
                }
                if (p.stage == 0 || p.stage == 2) {
                    const std::string station = station_node(p.stage);
                    if (s.location != station) return route(s, station);
                    const auto& run = p.stage == 0 ? s.secrets.jump_run1 : s.secrets.jump_run2;
                    return Action::obstacle_step(run[static_cast<std::size_t>(p.run_position)]);
                }
                if (p.stage == 1) return route(s, maze_node(kMazeExit));
                if (p.stage == 3) {
                    if (s.location != "bridge") return route(s, "bridge");
                    return Action::answer_question("no comment");
                }
                if (s.location != "search_hall") return route(s, "search_hall");
                if (p.stage == 4) return Action::inspect(search_spot(s.secrets.key_spot));
                if (!p.door_open) return Action::simple(ActionKind::TryDoor);
                return route(s, std::string(kExitNode));
            }
            case RoomId::Loop:
                if (!s.inventory.keypad_open) {
                    if (s.inventory.need_screws_seen && !s.inventory.cache_collected) return route(s, "backtrack");
                    if (s.location != "keypad") return route(s, "keypad");
                    return Action::simple(ActionKind::KeypadAttempt);
                }
                if (s.location != "exit_hall") return route(s, "exit_hall");
                if (quit_at_loop) return Action::simple(ActionKind::Quit);
                return std::nullopt;
        }
        return std::nullopt;
    }

    // First Move of a shortest walk over the room graph that avoids hidden
    // maze walls and only ends on exits.
    static std::optional<Action> route(const SessionState& s, const std::string& target) {
        const RoomGraph& g = room_graph(s.room);
        std::map<std::string, std::string> parent{{s.location, s.location}};
        std::deque<std::string> queue{s.location};
        while (!queue.empty()) {
            const std::string cur = queue.front();
            queue.pop_front();
            if (cur == target) break;
            for (const auto& n : g.neighbors(cur)) {
                if (parent.count(n)) continue;
                if (n != target && (n == kExitNode || n == "backtrack")) continue;
                if (auto cell = parse_maze_node(n); cell && !s.secrets.maze_open[static_cast<std::size_t>(cell->row)][static_cast<std::size_t>(cell->col)]) continue;
                if (n.rfind("winding_", 0) == 0) continue;
                parent[n] = cur;
                queue.push_back(n);
            }
        }
        if (!parent.count(target) || target == s.location) return std::nullopt;
        std::string step = target;
        while (parent[step] != s.location) step = parent[step];
        return Action::move(step);
    }
};

struct Played {
    SessionState state;
    std::vector<Event> events;
    std::vector<Action> actions;
};

// Applies walkthrough moves until `stop` holds, the walkthrough has nothing
// to do, or `cap` actions were taken.
template <class Stop>
Played play(const Engine& engine, SessionState s, const Walkthrough& w, Stop&& stop, int cap = 5000) {
    Played out;
    for (int i = 0; i < cap && !stop(s); ++i) {
        auto a = w.next(engine, s);
        if (!a) break;
        auto t = engine.apply(s, *a);
        if (!t) break;
        out.actions.push_back(*a);
        s = std::move(t->state);
        for (auto& e : t->events) out.events.push_back(std::move(e));
    }
    out.state = std::move(s);
    return out;
}

inline SessionState state_in_room(const Engine& engine, uint64_t seed, RoomId room, const Walkthrough& w = {}) {
    return play(engine, engine.new_session(seed), w, [&](const SessionState& s) { return s.room == room; }).state;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
    static std::mt19937_64 gen{std::random_device{}()};
    const auto dir = std::filesystem::temp_directory_path() / ("trickery_" + name + "_" + std::to_string(gen()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace trickery::testing
