// Command-line front end: serve, validate-pack, dump-secrets, simulate,
// metrics, stats, replay.

#include "trickery/bots.hpp"
#include "trickery/content_pack.hpp"
#include "trickery/engine.hpp"
#include "trickery/server.hpp"
#include "trickery/service.hpp"
#include "trickery/stats.hpp"
#include "trickery/telemetry.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace trickery;

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop = true; }

std::optional<std::string> read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

void print_issues(const PackIssues& issues) {
    for (const auto& i : issues) {
        std::cerr << pack_issue_name(i.kind);
        if (i.line > 0) std::cerr << " (line " << i.line << ")";
        std::cerr << ": " << i.detail << "\n";
    }
}

// Default pack when `path` is empty.
std::shared_ptr<const ContentPack> pack_or_default(const std::string& path) {
    if (path.empty()) return default_pack();
    auto loaded = load_pack(path);
    if (!loaded) {
        print_issues(loaded.error());
        return nullptr;
    }
    return std::make_shared<const ContentPack>(std::move(loaded).value());
}

int cmd_serve(const std::string& address, uint16_t port, const std::string& pack_path, const std::string& data_dir) {
    auto pack = pack_or_default(pack_path);
    if (!pack) return 2;
    SessionService service(ServiceConfig{data_dir, pack});
    const std::size_t restored = service.recover();
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    run_server(service, ServerOptions{address, port}, g_stop, [&](uint16_t bound) {
        std::cerr << "trickery listening on " << address << ":" << bound << " (" << restored
                  << " sessions restored from " << service.sessions_dir().string() << ")\n";
    });
    return 0;
}

int cmd_validate(const std::string& path) {
    auto text = read_text(path);
    if (!text) {
        std::cerr << "cannot read " << path << "\n";
        return 2;
    }
    auto parsed = parse_pack(*text);
    if (!parsed) {
        print_issues(parsed.error());
        return 1;
    }
    const auto issues = validate_pack(*parsed);
    if (!issues.empty()) {
        print_issues(issues);
        return 1;
    }
    std::cout << "ok " << parsed->name << " (" << parsed->language << ") hash " << parsed->hash() << "\n";
    return 0;
}

int cmd_dump_secrets(uint64_t seed, const std::string& pack_path) {
    auto pack = pack_or_default(pack_path);
    if (!pack) return 2;
    Engine engine(pack);
    std::cout << dump_secrets(*pack, engine.new_session(seed)).dump(2) << "\n";
    return 0;
}

std::optional<std::array<bool, 5>> parse_give(const std::string& bits) {
    if (bits.size() != 5) return std::nullopt;
    std::array<bool, 5> out{};
    for (std::size_t i = 0; i < 5; ++i) {
        if (bits[i] != '0' && bits[i] != '1') return std::nullopt;
        out[i] = bits[i] == '1';
    }
    return out;
}

int cmd_simulate(const std::string& policy_text, uint64_t seed, int runs, const std::string& out,
                 const std::string& out_dir, const std::string& give, int loops, const std::string& pack_path) {
    auto policy = parse_policy(policy_text);
    if (!policy) {
        std::cerr << "unknown policy " << policy_text << " (naive, vigilant, curious, resilient, give-vector)\n";
        return 2;
    }
    auto pack = pack_or_default(pack_path);
    if (!pack) return 2;
    Engine engine(pack);
    BotConfig config;
    config.policy = *policy;
    config.naive_loops = loops;
    if (!give.empty()) {
        auto g = parse_give(give);
        if (!g) {
            std::cerr << "--give takes five 0/1 digits, e.g. 11100\n";
            return 2;
        }
        config.give = *g;
    }
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
    for (int i = 0; i < runs; ++i) {
        const uint64_t s = seed + static_cast<uint64_t>(i);
        auto run = run_policy(engine, config, s);
        if (!run) {
            std::cerr << "PolicyStuck (seed " << s << ", step " << run.error().step << "): " << run.error().reason << "\n";
            return 1;
        }
        const std::string log = render_log(run->header, run->events);
        std::string target = out;
        if (!out_dir.empty()) {
            target = (std::filesystem::path(out_dir) / (std::string(policy_name(*policy)) + "_" + std::to_string(s) + ".jsonl")).string();
        }
        if (!write_text(target, log)) {
            std::cerr << "cannot write " << target << "\n";
            return 2;
        }
        if (!target.empty() && target != "-") {
            std::cerr << policy_name(*policy) << " seed " << s << ": " << outcome_name(run->final_state.outcome) << " after "
                      << run->final_state.step << " steps -> " << target << "\n";
        }
    }
    return 0;
}

int cmd_metrics(const std::string& dir, const std::string& out) {
    auto rows = load_log_dir(dir);
    if (!rows) {
        std::cerr << error_name(rows.error().code) << ": " << rows.error().message << "\n";
        return 1;
    }
    if (rows->empty()) {
        std::cerr << "no *.jsonl logs in " << dir << "\n";
        return 1;
    }
    return write_text(out, summary_csv(summarize(*rows))) ? 0 : 2;
}

int cmd_stats(const std::string& path, const std::string& format, const std::string& out) {
    auto text = read_text(path);
    if (!text) {
        std::cerr << "cannot read " << path << "\n";
        return 2;
    }
    auto records = parse_survey_csv(*text);
    if (!records) {
        std::cerr << stats_error_name(records.error().code) << ": " << records.error().message << "\n";
        return 1;
    }
    const auto table = pattern_table(*records);
    return write_text(out, format == "csv" ? table_csv(table) : table_text(table)) ? 0 : 2;
}

int cmd_replay(const std::string& path, const std::string& pack_path) {
    auto text = read_text(path);
    if (!text) {
        std::cerr << "cannot read " << path << "\n";
        return 2;
    }
    auto log = parse_log(*text);
    if (!log) {
        std::cerr << error_name(log.error().code) << ": " << log.error().message << "\n";
        return 1;
    }
    auto pack = pack_or_default(pack_path);
    if (!pack) return 2;
    Engine engine(pack);
    if (engine.pack_hash() != log->header.pack_hash) {
        std::cerr << "log was recorded with pack " << log->header.pack_hash << ", loaded pack is " << engine.pack_hash()
                  << "\n";
        return 1;
    }
    auto r = replay_log(engine, *log);
    if (!r) {
        std::cerr << "replay failed at event " << r.error().index << ": " << error_name(r.error().error.code) << " "
                  << r.error().error.message << "\n";
        return 1;
    }
    const bool identical = render_log(log->header, r->events) == render_log(log->header, log->events);
    const SessionState& s = r->state;
    nlohmann::ordered_json j;
    j["identical"] = identical;
    j["events"] = r->events.size();
    j["room"] = room_name(s.room);
    j["location"] = s.location;
    j["outcome"] = outcome_name(s.outcome);
    j["step"] = s.step;
    j["screws_held"] = s.inventory.held;
    j["loop_count"] = s.loop.loop_count;
    std::cout << j.dump() << "\n";
    return identical ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trickery: deceptive-pattern escape game engine and tools"};
    app.require_subcommand(1);

    std::string pack_path;

    auto* serve = app.add_subcommand("serve", "run the session service (HTTP + WebSocket)");
    std::string address = "0.0.0.0";
    uint16_t port = 8080;
    std::string data_dir = "data";
    serve->add_option("--address", address, "listen address");
    serve->add_option("--port", port, "listen port (0 picks a free one)");
    serve->add_option("--pack", pack_path, "content pack file (default: built-in English pack)");
    serve->add_option("--data-dir", data_dir, "directory for sessions/<id>.jsonl");

    auto* validate = app.add_subcommand("validate-pack", "parse and validate a content pack");
    std::string validate_path;
    validate->add_option("pack", validate_path, "pack file")->required();

    auto* secrets = app.add_subcommand("dump-secrets", "print the secrets drawn for a seed");
    uint64_t seed = 0;
    secrets->add_option("--seed", seed, "session seed")->required();
    secrets->add_option("--pack", pack_path, "content pack file");

    auto* simulate = app.add_subcommand("simulate", "play sessions with a scripted bot");
    std::string policy = "vigilant";
    std::string out;
    std::string out_dir;
    std::string give;
    int runs = 1;
    int loops = 5;
    uint64_t sim_seed = 1;
    simulate->add_option("--policy", policy, "naive, vigilant, curious, resilient or give-vector");
    simulate->add_option("--seed", sim_seed, "first seed");
    simulate->add_option("--runs", runs, "number of consecutive seeds")->check(CLI::PositiveNumber);
    simulate->add_option("--out", out, "log file for a single run (default stdout)");
    simulate->add_option("--out-dir", out_dir, "directory receiving one log per run");
    simulate->add_option("--give", give, "give-vector: five 0/1 digits for the five screw prompts");
    simulate->add_option("--loops", loops, "naive: loops before quitting");
    simulate->add_option("--pack", pack_path, "content pack file");

    auto* metrics = app.add_subcommand("metrics", "summarize a directory of session logs as CSV");
    std::string metrics_dir;
    std::string metrics_out;
    metrics->add_option("dir", metrics_dir, "directory of *.jsonl logs")->required();
    metrics->add_option("--out", metrics_out, "CSV output (default stdout)");

    auto* stats = app.add_subcommand("stats", "helpfulness table from survey ratings");
    std::string stats_path;
    std::string stats_format = "text";
    std::string stats_out;
    stats->add_option("csv", stats_path, "survey CSV (responses or histogram)")->required();
    stats->add_option("--format", stats_format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
    stats->add_option("--out", stats_out, "output file (default stdout)");

    auto* replay = app.add_subcommand("replay", "replay a session log and check it reproduces");
    std::string replay_path;
    replay->add_option("log", replay_path, "session log")->required();
    replay->add_option("--pack", pack_path, "content pack the log was recorded with");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*serve) return cmd_serve(address, port, pack_path, data_dir);
        if (*validate) return cmd_validate(validate_path);
        if (*secrets) return cmd_dump_secrets(seed, pack_path);
        if (*simulate) {
            if (runs > 1 && out_dir.empty()) {
                std::cerr << "--runs > 1 needs --out-dir\n";
                return 2;
            }
            return cmd_simulate(policy, sim_seed, runs, out, out_dir, give, loops, pack_path);
        }
        if (*metrics) return cmd_metrics(metrics_dir, metrics_out);
        if (*stats) return cmd_stats(stats_path, stats_format, stats_out);
        if (*replay) return cmd_replay(replay_path, pack_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
