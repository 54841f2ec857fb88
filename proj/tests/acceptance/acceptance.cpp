// Acceptance suite: one PASS/FAIL line per primary criterion, with the
// individual checks indented beneath it. Exit status is nonzero if any
// criterion fails. Tolerances are fixed here and nowhere else.

#include "support/helpers.hpp"

#include "trickery/bots.hpp"
#include "trickery/content_pack.hpp"
#include "trickery/engine.hpp"
#include "trickery/rooms_interface.hpp"
#include "trickery/service.hpp"
#include "trickery/stats.hpp"
#include "trickery/telemetry.hpp"
#include "trickery/world.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace trickery;
using namespace trickery::testing;

namespace {

constexpr int kMeanDecimals = 2;
constexpr double kZTolerance = 0.005;
constexpr double kStatsRuntimeSeconds = 1.0;
constexpr int kOracleInputs = 200;
constexpr int kOracleMaxNonzero = 12;
constexpr double kOracleTolerance = 0.05;
constexpr int kDeterminismPairs = 1000;
constexpr int kBotSeeds = 100;

struct Criterion {
    std::string name;
    std::vector<std::string> details;
    bool ok = true;

    void check(bool cond, const std::string& what) { set(details.size(), cond, what); }
    void set(std::size_t slot, bool cond, const std::string& what) {
        if (!cond) ok = false;
        if (slot >= details.size()) details.resize(slot + 1);
        details[slot] = std::string(cond ? "ok    " : "FAIL  ") + what;
    }
    // Records only the first few failures of a bulk check, then a tally.
    struct Tally {
        Criterion& c;
        std::string what;
        std::size_t slot;
        int total = 0;
        int failed = 0;
        std::vector<std::string> examples;
        void operator()(bool cond, const std::string& detail = {}) {
            ++total;
            if (!cond) {
                ++failed;
                if (examples.size() < 3) examples.push_back(detail);
            }
        }
        ~Tally() {
            std::string line = what + " (" + std::to_string(total - failed) + "/" + std::to_string(total) + ")";
            for (const auto& e : examples) line += "\n          e.g. " + e;
            c.set(slot, failed == 0 && total > 0, line);
        }
    };
    // Reserves its output line now so tallies print in declaration order.
    Tally tally(std::string what) {
        details.emplace_back();
        return Tally{*this, std::move(what), details.size() - 1};
    }
};

const Engine& engine() {
    static const Engine e(default_pack());
    return e;
}

std::string fmt(double v, int decimals = 3) { return format_fixed(v, decimals); }

// --- 1: helpfulness table through the CLI -----------------------------------

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

void table_reproduction(Criterion& c) {
    const std::string cmd =
        std::string(TRICKERY_CLI) + " stats " + TRICKERY_FIXTURES_DIR + "/helpfulness_histograms.csv --format csv";
    const auto start = std::chrono::steady_clock::now();
    FILE* pipe = ::popen(cmd.c_str(), "r");
    std::string out;
    if (pipe) {
        char buf[4096];
        std::size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    }
    const int status = pipe ? ::pclose(pipe) : -1;
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.check(status == 0, "trickery stats exits 0");
    c.check(seconds < kStatsRuntimeSeconds, "runtime " + fmt(seconds) + " s < " + fmt(kStatsRuntimeSeconds, 1) + " s");

    struct Want {
        std::string name;
        int n;
        std::string mean;
        double z;
        bool star;
    };
    const std::vector<Want> want = {
        {"Insensible Key Mapping", 22, "2.18", -2.596, true},
        {"Sneaky Shop", 18, "2.50", -1.647, false},
        {"Walls of Text", 19, "2.32", -1.919, false},
        {"Winding Hallway & Shortcut", 15, "1.47", -3.361, true},
        {"Obstacle Onslaught", 16, "1.75", -2.954, true},
        {"Insistent Questioning", 21, "2.17", -2.368, true},
        {"Looping Gameplay", 21, "1.90", -3.086, true},
    };
    std::istringstream in(out);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (!line.empty()) rows.push_back(split_csv_line(line));
    }
    c.check(rows.size() == want.size(), "7 rows (got " + std::to_string(rows.size()) + ")");
    int stars = 0;
    for (std::size_t i = 0; i < want.size() && i < rows.size(); ++i) {
        const auto& r = rows[i];
        const auto& w = want[i];
        if (r.size() < 11) {
            c.check(false, w.name + ": short row");
            continue;
        }
        const int n = std::stoi(r[2]);
        const double z = std::stod(r[7]);
        const bool star = r[10] == "true";
        stars += star;
        c.check(r[0] == w.name, "row " + std::to_string(i + 1) + " is " + w.name);
        c.check(n == w.n, w.name + ": N " + std::to_string(n) + " == " + std::to_string(w.n));
        c.check(r[3] == w.mean, w.name + ": mean " + r[3] + " == " + w.mean + " at " + std::to_string(kMeanDecimals) + " dp");
        c.check(std::fabs(z - w.z) <= kZTolerance,
                w.name + ": z " + r[7] + " within " + fmt(kZTolerance) + " of " + fmt(w.z));
        c.check(star == w.star, w.name + ": significance " + (star ? "*" : "-") + " matches " + (w.star ? "*" : "-"));
    }
    c.check(stars == 5, "exactly 5 starred rows (got " + std::to_string(stars) + ")");

    // Not a check: histogram totals next to the separately reported valid-example counts.
    std::ifstream counts(std::string(TRICKERY_FIXTURES_DIR) + "/valid_examples.csv");
    std::getline(counts, line);
    while (std::getline(counts, line)) {
        const auto f = split_csv_line(line);
        if (f.size() < 3) continue;
        for (const auto& r : rows) {
            if (!r.empty() && r[0] == f[0] && r.size() > 2) {
                c.details.push_back("info  " + f[0] + ": histogram total " + r[2] + ", valid examples " + f[1] + " of " +
                                   f[2]);
            }
        }
    }
}

// --- 2: signed-rank oracle --------------------------------------------------

void wilcoxon_oracle(Criterion& c) {
    std::mt19937_64 rng(20240601);
    auto identity = c.tally("W+ + W- == m(m+1)/2 exactly");
    auto close = c.tally("|p_normal - p_exact| <= " + fmt(kOracleTolerance, 2));
    double worst = 0;
    std::string worst_input;
    for (int i = 0; i < kOracleInputs; ++i) {
        const auto v = random_ratings(rng, kOracleMaxNonzero);
        auto r = wilcoxon_one_sample(v);
        if (!r) {
            identity(false, "test refused input");
            continue;
        }
        const double m = r->n_nonzero;
        identity(r->w_plus + r->w_minus == m * (m + 1) / 2);
        const double exact = exact_signed_rank_p(v);
        const double gap = std::fabs(r->p - exact);
        std::ostringstream detail;
        detail << "m=" << r->n_nonzero << " ratings=[";
        for (std::size_t k = 0; k < v.size(); ++k) detail << (k ? "," : "") << v[k];
        detail << "] normal " << fmt(r->p) << " exact " << fmt(exact) << " gap " << fmt(gap);
        close(gap <= kOracleTolerance, detail.str());
        if (gap > worst) {
            worst = gap;
            worst_input = detail.str();
        }
    }
    c.details.push_back("      largest gap: " + worst_input);
}

// --- 3: determinism ---------------------------------------------------------

void determinism(Criterion& c) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<uint64_t> seed_dist;
    std::uniform_int_distribution<int> len(1, 400);
    auto same_replay = c.tally("replay(seed, actions) renders a byte-identical log");
    auto same_log = c.tally("replaying the parsed log renders a byte-identical log");
    auto same_state = c.tally("replayed state equals the live state");
    for (int i = 0; i < kDeterminismPairs; ++i) {
        const uint64_t seed = i % 4 == 0 ? seed_dist(rng) : static_cast<uint64_t>(i);
        const Walk w = random_walk(engine(), seed, rng, len(rng), 0.01);
        const LogHeader h{seed, engine().pack_hash()};
        const std::string original = render_log(h, w.result.events);
        auto again = replay(engine(), seed, w.actions);
        same_replay(again.ok() && render_log(h, again->events) == original, "seed " + std::to_string(seed));
        auto parsed = parse_log(original);
        auto from_log = parsed ? replay_log(engine(), *parsed) : fail(ReplayError{});
        same_log(from_log.ok() && render_log(h, from_log->events) == original, "seed " + std::to_string(seed));
        same_state(again.ok() && again->state == w.result.state && from_log.ok() && from_log->state == w.result.state,
                   "seed " + std::to_string(seed));
    }

    const auto dir = temp_dir("acceptance_restart");
    std::map<std::string, SessionState> live;
    std::map<std::string, std::string> logs;
    {
        SessionService svc({dir, nullptr});
        for (uint64_t seed = 0; seed < 12; ++seed) {
            const std::string id = svc.handle({{"type", "create"}, {"seed", seed}})["session_id"];
            Walkthrough w;
            w.give = {seed % 2 == 0, seed % 3 == 0, true, seed % 4 == 0, false};
            for (uint64_t k = 0; k < 40 * seed; ++k) {
                auto a = w.next(engine(), *svc.state_of(id));
                if (!a) break;
                svc.handle({{"type", "act"}, {"session_id", id}, {"action", to_json_value(*a)}});
            }
            if (seed == 11) svc.handle({{"type", "quit"}, {"session_id", id}});
            live[id] = *svc.state_of(id);
            logs[id] = *svc.export_log(id);
        }
    }
    SessionService restarted({dir, nullptr});
    const std::size_t restored = restarted.recover();
    c.check(restored == live.size(), "restart restores " + std::to_string(restored) + "/" + std::to_string(live.size()) + " sessions");
    auto restart_state = c.tally("restored state equals the pre-restart state");
    for (const auto& [id, state] : live) {
        const auto s = restarted.state_of(id);
        restart_state(s && *s == state && restarted.export_log(id) == logs[id], id);
    }
}

// --- 4: room invariants -----------------------------------------------------

// Random play with a bias toward progress so every room is visited.
template <class OnStep>
void guided_walk(uint64_t seed, std::mt19937_64& rng, int steps, double guided, OnStep&& on_step) {
    SessionState s = engine().new_session(seed);
    std::uniform_real_distribution<double> unit(0, 1);
    Walkthrough w;
    w.quit_at_loop = false;
    for (int i = 0; i < steps && s.outcome == Outcome::Running; ++i) {
        auto available = engine().available_actions(s);
        if (unit(rng) > 0.002) {
            available.erase(std::remove_if(available.begin(), available.end(),
                                           [](const Action& a) { return a.kind == ActionKind::Quit; }),
                            available.end());
        }
        if (available.empty()) available = engine().available_actions(s);
        Action a = random_offered(engine(), available, rng);
        if (unit(rng) < guided) {
            if (auto g = w.next(engine(), s)) a = *g;
        }
        auto t = engine().apply(s, a);
        if (!t) continue;
        on_step(s, a, *t);
        s = std::move(t->state);
    }
}

bool has_event(const Transition& t, std::string_view kind) {
    return std::any_of(t.events.begin(), t.events.end(), [&](const Event& e) { return e.kind == kind; });
}

void room_invariants(Criterion& c) {
    auto disinfection = c.tally("checkout Accept iff cart == required (multiset), Reject clears the cart");
    auto lever = c.tally("lever door opens iff levers == target");
    auto teleport = c.tally("teleporters never advance the stage or set key_found");
    auto loop_door = c.tally("loop door never opens");
    auto escaped = c.tally("Escaped iff the action was Quit");
    auto locked = c.tally("keymap movement only with a confirmed mapping");
    std::mt19937_64 rng(4242);
    for (uint64_t seed = 0; seed < 150; ++seed) {
        const double guided = seed % 3 == 0 ? 0.5 : 0.8;
        guided_walk(seed, rng, 1500, guided, [&](const SessionState& s, const Action& a, const Transition& t) {
            const std::string where = "seed " + std::to_string(seed) + " step " + std::to_string(t.state.step);
            if (a.kind == ActionKind::Checkout) {
                const bool match = same_multiset(s.cart.entries, s.cart.required);
                disinfection(t.state.cart.accepted == match && (match || t.state.cart.entries.empty()), where);
            }
            if (a.kind == ActionKind::TryDoor && s.room == RoomId::TextWalls) {
                lever(t.state.textwalls.door_open == (s.textwalls.levers == s.secrets.lever_target), where);
            }
            if (a.kind == ActionKind::UseTeleporter || a.kind == ActionKind::PressTeleporterButton) {
                teleport(t.state.obstacle.stage == s.obstacle.stage && t.state.obstacle.key_found == s.obstacle.key_found, where);
            }
            if (s.room == RoomId::Loop && !s.inventory.pending_prompt) {
                bool opened = false;
                for (const Event& e : t.events) opened |= e.room == RoomId::Loop && e.kind == "door_opened";
                loop_door(!opened && (a.kind != ActionKind::TryDoor || (has_event(t, "loop_door_shut") && t.state.room == RoomId::Loop)), where);
            }
            escaped((t.state.outcome == Outcome::Escaped) == (a.kind == ActionKind::Quit), where);
            if (a.kind == ActionKind::Move && s.room == RoomId::Keymap) locked(s.keymap.mapping.confirmed, where);
            if (s.room == RoomId::Keymap && !s.keymap.mapping.confirmed && !s.keymap.preselection_pending &&
                !s.keymap.menu_open) {
                auto refused = engine().apply(s, Action::move("hall"));
                locked(!refused.ok() && refused.error().code == ErrorCode::MovementLocked, where + " (direct)");
            }
        });
    }
    for (uint64_t seed = 0; seed < 5; ++seed) {
        SessionState at = play(engine(), engine().new_session(seed), Walkthrough{},
                               [](const SessionState& s) { return s.room == RoomId::TextWalls && s.location == "screens"; }).state;
        for (int bits = 0; bits < 256; ++bits) {
            SessionState s = at;
            for (int i = 0; i < 8; ++i) s = engine().apply(s, Action::set_lever(i + 1, (bits >> i) & 1))->state;
            auto t = engine().apply(s, Action::simple(ActionKind::TryDoor));
            lever(t.ok() && t->state.textwalls.door_open == (s.textwalls.levers == s.secrets.lever_target),
                  "exhaustive seed " + std::to_string(seed) + " bits " + std::to_string(bits));
        }
    }

    auto hallway = c.tally("Shortcut strictly shorter than Winding, identical exit");
    for (uint64_t seed = 0; seed < 50; ++seed) {
        const SessionState fork = play(engine(), engine().new_session(seed), Walkthrough{}, [](const SessionState& s) {
                                      return s.room == RoomId::Hallway && s.location == "center" && !s.inventory.pending_prompt;
                                  }).state;
        auto run = [&](std::vector<Action> opening) {
            SessionState s = fork;
            int steps = 0;
            for (const Action& a : opening) {
                s = engine().apply(s, a)->state;
                ++steps;
            }
            while (s.room == RoomId::Hallway) {
                s = engine().apply(s, engine().available_actions(s).front())->state;
                ++steps;
            }
            return std::pair{steps, s};
        };
        const auto [winding_steps, after_winding] = run({Action::move("winding_1")});
        const auto [shortcut_steps, after_shortcut] =
            run({Action::move("dark_area"), Action::inspect("broken_lamp_wall"), Action::move("shortcut_1")});
        hallway(shortcut_steps < winding_steps && after_winding.room == after_shortcut.room &&
                    after_winding.location == after_shortcut.location && after_winding.obstacle == after_shortcut.obstacle,
                "seed " + std::to_string(seed) + ": winding " + std::to_string(winding_steps) + ", shortcut " +
                    std::to_string(shortcut_steps));
    }
}

// --- 5: screw economy -------------------------------------------------------

void screw_economy(Criterion& c) {
    auto backtrack = c.tally("backtrack iff given >= 3");
    auto spend = c.tally("keypad spends exactly 4 on completion");
    auto shortest = c.tally("declining every prompt is shorter than any backtracking vector");
    for (uint64_t seed : {1ULL, 2ULL, 3ULL, 40ULL, 77ULL}) {
        std::size_t decline_len = 0;
        std::size_t min_backtrack = SIZE_MAX;
        for (int mask = 0; mask < 32; ++mask) {
            BotConfig config;
            config.policy = Policy::GiveVector;
            for (int i = 0; i < 5; ++i) config.give[static_cast<std::size_t>(i)] = (mask >> i) & 1;
            const std::string where = "seed " + std::to_string(seed) + " vector " + std::to_string(mask);
            auto run = run_policy(engine(), config, seed);
            if (!run) {
                backtrack(false, where + ": PolicyStuck " + run.error().reason);
                continue;
            }
            const int given = static_cast<int>(run->final_state.inventory.given_log.size());
            bool went_back = false;
            int keypad_opens = 0;
            bool spent_four = true;
            for (const Event& e : run->events) {
                went_back |= e.kind == "backtrack_started";
                if (e.kind == "keypad_open") {
                    ++keypad_opens;
                    spent_four &= e.payload["spent"] == kKeypadCost;
                }
            }
            const int expected_given = __builtin_popcount(static_cast<unsigned>(mask));
            backtrack(given == expected_given && went_back == (given >= 3), where);
            const int held_after = run->final_state.inventory.held;
            spend(keypad_opens == 1 && spent_four &&
                      held_after == kStartingScrews - given + (went_back ? kCacheScrews : 0) - kKeypadCost &&
                      run->final_state.outcome == Outcome::Escaped,
                  where);
            if (mask == 0) decline_len = run->final_state.step;
            if (went_back) min_backtrack = std::min<std::size_t>(min_backtrack, run->final_state.step);
        }
        shortest(decline_len < min_backtrack, "seed " + std::to_string(seed) + ": decline-all " +
                                                  std::to_string(decline_len) + " vs " + std::to_string(min_backtrack));
    }
}

// --- 6: bots ----------------------------------------------------------------

void bot_sweep(Criterion& c) {
    auto stuck = c.tally("no PolicyStuck");
    auto vigilant = c.tally("Vigilant: Escaped, six flags false, loops_endured <= 1");
    auto naive = c.tally("Naive: six flags true and a cache backtrack");
    auto curious = c.tally("Curious: quits with hints_revealed == H");
    const int hints = engine().pack().hint_count();
    for (uint64_t seed = 0; seed < kBotSeeds; ++seed) {
        for (Policy p : {Policy::Vigilant, Policy::Naive, Policy::Curious}) {
            BotConfig config;
            config.policy = p;
            const std::string where = std::string(policy_name(p)) + " seed " + std::to_string(seed);
            auto run = run_policy(engine(), config, seed);
            stuck(run.ok(), where + (run ? "" : ": " + run.error().reason));
            if (!run) continue;
            auto m = fell_for_flags(run->events);
            if (!m) continue;
            int flags = 0;
            for (Pattern pat : kFlaggedPatterns) flags += m->fell_for(pat);
            if (p == Policy::Vigilant) {
                vigilant(m->outcome == Outcome::Escaped && flags == 0 && m->loops_endured <= 1,
                         where + ": flags " + std::to_string(flags) + " loops " + std::to_string(m->loops_endured));
            } else if (p == Policy::Naive) {
                naive(flags == 6 && m->backtrack, where + ": flags " + std::to_string(flags));
            } else {
                curious(m->outcome == Outcome::Escaped && m->hints_revealed == hints,
                        where + ": hints " + std::to_string(m->hints_revealed));
            }
        }
    }
}

// --- 7: content-pack fault injection ----------------------------------------

void pack_faults(Criterion& c) {
    const ContentPack base = *default_pack();
    c.check(validate_pack(base).empty(), "the default pack validates cleanly");
    struct Fault {
        std::string name;
        PackIssueKind kind;
        std::function<void(ContentPack&)> inject;
    };
    const std::vector<Fault> faults = {
        {"missing trigger", PackIssueKind::MissingTrigger,
         [](ContentPack& p) {
             p.scripts.erase(std::remove_if(p.scripts.begin(), p.scripts.end(),
                                            [](const ScriptEntry& e) { return e.trigger_id == "nag_hallway_lamp"; }),
                             p.scripts.end());
         }},
        {"duplicate trigger", PackIssueKind::DuplicateTrigger, [](ContentPack& p) { p.scripts.push_back(p.scripts[3]); }},
        {"hidden key absent from body", PackIssueKind::HiddenKeyNotInBody,
         [](ContentPack& p) { p.screens[2].hidden_key = "Insert"; }},
        {"bad strategy token", PackIssueKind::BadStrategyToken,
         [](ContentPack& p) { p.patterns[4].strategies.push_back("BEWILDER"); }},
    };
    for (const auto& f : faults) {
        ContentPack p = base;
        f.inject(p);
        bool direct = false;
        for (const auto& i : validate_pack(p)) direct |= i.kind == f.kind;
        bool via_text = false;
        auto reloaded = load_pack_text(render_pack(p));
        if (!reloaded) {
            for (const auto& i : reloaded.error()) via_text |= i.kind == f.kind;
        }
        const bool engine_refuses = !Engine::create(std::make_shared<const ContentPack>(p)).ok();
        c.check(direct && via_text && engine_refuses,
                f.name + " reported as " + std::string(pack_issue_name(f.kind)) + " (direct, via text, engine refuses)");
    }
}

}  // namespace

int main() {
    struct Entry {
        std::string name;
        std::function<void(Criterion&)> run;
    };
    const std::vector<Entry> entries = {
        {"helpfulness table reproduced by `trickery stats`", table_reproduction},
        {"signed-rank test against the exact 2^m oracle", wilcoxon_oracle},
        {"deterministic replay and service restart", determinism},
        {"room invariant properties", room_invariants},
        {"screw economy over all 32 give vectors", screw_economy},
        {"bot sweep over 100 seeds", bot_sweep},
        {"content-pack fault injection", pack_faults},
    };
    int failed = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        Criterion c{entries[i].name};
        const auto start = std::chrono::steady_clock::now();
        try {
            entries[i].run(c);
        } catch (const std::exception& e) {
            c.check(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (c.ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << c.name << " (" << fmt(seconds, 1) << " s)\n";
        for (const auto& d : c.details) std::cout << "    " << d << "\n";
        std::cout.flush();
        failed += !c.ok;
    }
    std::cout << (entries.size() - static_cast<std::size_t>(failed)) << "/" << entries.size() << " criteria pass\n";
    return failed == 0 ? 0 : 1;
}
