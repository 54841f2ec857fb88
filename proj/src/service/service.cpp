#include "trickery/service.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace trickery {

using nlohmann::json;

struct SessionService::Session {
    std::mutex mu;
    std::shared_ptr<const Engine> engine;
    SessionState state;
    LogHeader header;
    std::filesystem::path log_path;
    std::vector<Event> unseen;  // events since the last view was sent
};

namespace {

uint64_t fresh_random() {
    static std::mutex mu;
    static std::mt19937_64 gen{std::random_device{}()};
    std::lock_guard lock(mu);
    return gen();
}

std::string hex_id(uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out = "s";
    for (int shift = 60; shift >= 0; shift -= 4) out += digits[(v >> shift) & 0xf];
    return out;
}

void write_all(const std::filesystem::path& path, std::string_view data) {
    const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
    if (fd < 0) throw std::runtime_error("cannot open " + path.string() + ": " + std::strerror(errno));
    while (!data.empty()) {
        const ssize_t n = ::write(fd, data.data(), data.size());
        if (n < 0) {
            if (errno == EINTR) continue;
            const int err = errno;
            ::close(fd);
            throw std::runtime_error("cannot write " + path.string() + ": " + std::strerror(err));
        }
        data.remove_prefix(static_cast<std::size_t>(n));
    }
    ::close(fd);
}

std::optional<std::string> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::optional<uint64_t> seed_from(const json& j) {
    if (j.is_number_unsigned()) return j.get<uint64_t>();
    if (j.is_number_integer() && j.get<int64_t>() >= 0) return static_cast<uint64_t>(j.get<int64_t>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

json game_error(const GameError& e) { return error_response(error_wire_code(e.code), e.message); }

}  // namespace

json error_response(std::string_view code, std::string_view message) {
    return {{"type", "error"}, {"code", code}, {"message", message}};
}

SessionService::SessionService(ServiceConfig config)
    : config_(std::move(config)), sessions_dir_(config_.data_dir / "sessions") {
    if (!config_.pack) config_.pack = default_pack();
    default_engine_ = std::make_shared<const Engine>(config_.pack);
    engines_[default_engine_->pack_hash()] = default_engine_;
    std::filesystem::create_directories(sessions_dir_);
}

SessionService::~SessionService() = default;

std::shared_ptr<SessionService::Session> SessionService::find(const std::string& id) const {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

std::shared_ptr<const Engine> SessionService::engine_for_pack(const std::string& path, std::string& error) {
    auto loaded = load_pack(path);
    if (!loaded) {
        error = path + ":";
        for (const auto& issue : loaded.error()) error += " " + std::string(pack_issue_name(issue.kind)) + " " + issue.detail + ";";
        return nullptr;
    }
    auto pack = std::make_shared<const ContentPack>(std::move(loaded).value());
    const std::string hash = pack->hash();
    std::lock_guard lock(mu_);
    auto& slot = engines_[hash];
    if (!slot) slot = std::make_shared<const Engine>(pack);
    return slot;
}

void SessionService::append(Session& s, std::span<const Event> events) {
    if (events.empty()) return;
    std::string chunk;
    for (const Event& e : events) {
        chunk += to_jsonl(e);
        chunk += '\n';
    }
    write_all(s.log_path, chunk);
}

json SessionService::view(Session& s) {
    const View v = make_view(*s.engine, s.state, s.unseen);
    s.unseen.clear();
    return {{"type", "view"}, {"session_id", s.state.session_id}, {"view", to_json(v)}};
}

json SessionService::create(const json& req) {
    uint64_t seed = 0;
    if (req.contains("seed") && !req["seed"].is_null()) {
        auto parsed = seed_from(req["seed"]);
        if (!parsed) return error_response("bad_request", "seed must be a non-negative integer");
        seed = *parsed;
    } else {
        seed = fresh_random();
    }
    std::shared_ptr<const Engine> engine = default_engine_;
    if (req.contains("pack") && req["pack"].is_string()) {
        std::string error;
        engine = engine_for_pack(req["pack"].get<std::string>(), error);
        if (!engine) return error_response("invalid_pack", error);
    }

    auto session = std::make_shared<Session>();
    session->engine = engine;
    {
        std::lock_guard lock(mu_);
        std::string id;
        do {
            id = hex_id(fresh_random());
        } while (sessions_.count(id) || std::filesystem::exists(sessions_dir_ / (id + ".jsonl")));
        session->state = engine->new_session(seed, id);
        session->header = LogHeader{seed, engine->pack_hash()};
        session->log_path = sessions_dir_ / (id + ".jsonl");
        sessions_[id] = session;
    }
    std::lock_guard lock(session->mu);
    write_all(session->log_path, to_jsonl(session->header) + "\n");
    json out = view(*session);
    out["type"] = "session";
    out["seed"] = seed;
    out["pack_hash"] = engine->pack_hash();
    return out;
}

json SessionService::act(Session& s, const json& req) {
    if (!req.contains("action")) return error_response("bad_request", "act needs an action");
    auto action = action_from_json(req["action"]);
    if (!action) return game_error(action.error());
    auto t = s.engine->apply(s.state, *action);
    if (!t) return game_error(t.error());
    append(s, t->events);
    s.state = std::move(t->state);
    for (auto& e : t->events) s.unseen.push_back(std::move(e));
    return view(s);
}

json SessionService::quit(Session& s) {
    if (s.state.outcome != Outcome::Running) {
        return game_error(GameError{ErrorCode::SessionEnded, "the session is already over"});
    }
    const Action q = Action::simple(ActionKind::Quit);
    const auto available = s.engine->available_actions(s.state);
    auto t = is_offered(available, q) ? s.engine->apply(s.state, q) : s.engine->abandon(s.state);
    if (!t) return game_error(t.error());
    append(s, t->events);
    s.state = std::move(t->state);
    for (auto& e : t->events) s.unseen.push_back(std::move(e));
    return view(s);
}

json SessionService::handle(const json& req) {
    json out;
    if (!req.is_object()) return error_response("bad_request", "a request must be a JSON object");
    const std::string type = req.value("type", "");
    try {
        if (type == "create") {
            out = create(req);
        } else if (type == "act" || type == "view" || type == "quit" || type == "export") {
            if (!req.contains("session_id") || !req["session_id"].is_string()) {
                out = error_response("bad_request", type + " needs a session_id");
            } else {
                const std::string id = req["session_id"].get<std::string>();
                auto session = find(id);
                if (!session) {
                    out = error_response("unknown_session", "no session " + id);
                } else {
                    std::lock_guard lock(session->mu);
                    if (type == "act") {
                        out = act(*session, req);
                    } else if (type == "view") {
                        out = view(*session);
                    } else if (type == "quit") {
                        out = quit(*session);
                    } else {
                        auto text = read_file(session->log_path);
                        out = text ? json{{"type", "log"}, {"session_id", id}, {"log", *text}}
                                   : error_response("internal", "log file missing");
                    }
                }
            }
        } else {
            out = error_response("bad_request", "unknown request type '" + type + "'");
        }
    } catch (const std::exception& e) {
        out = error_response("internal", e.what());
    }
    if (req.contains("request_id")) out["request_id"] = req["request_id"];
    return out;
}

std::string SessionService::handle_text(std::string_view frame) {
    json req;
    try {
        req = json::parse(frame);
    } catch (const json::parse_error& e) {
        return error_response("bad_request", std::string("invalid JSON: ") + e.what()).dump();
    }
    return handle(req).dump();
}

std::size_t SessionService::recover() {
    std::error_code ec;
    if (!std::filesystem::is_directory(sessions_dir_, ec)) return 0;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(sessions_dir_)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::size_t restored = 0;
    for (const auto& path : files) {
        const std::string id = path.stem().string();
        if (find(id)) continue;
        auto text = read_file(path);
        if (!text) continue;
        auto log = parse_log(*text);
        if (!log) continue;
        std::shared_ptr<const Engine> engine;
        {
            std::lock_guard lock(mu_);
            auto it = engines_.find(log->header.pack_hash);
            if (it != engines_.end()) engine = it->second;
        }
        if (!engine) continue;
        auto replayed = replay_log(*engine, *log);
        if (!replayed) continue;
        auto session = std::make_shared<Session>();
        session->engine = engine;
        session->header = log->header;
        session->log_path = path;
        session->state = std::move(replayed->state);
        session->state.session_id = id;
        std::lock_guard lock(mu_);
        sessions_[id] = std::move(session);
        ++restored;
    }
    return restored;
}

std::optional<SessionState> SessionService::state_of(const std::string& session_id) const {
    auto s = find(session_id);
    if (!s) return std::nullopt;
    std::lock_guard lock(s->mu);
    return s->state;
}

std::optional<std::string> SessionService::export_log(const std::string& session_id) const {
    auto s = find(session_id);
    if (!s) return std::nullopt;
    std::lock_guard lock(s->mu);
    return read_file(s->log_path);
}

std::size_t SessionService::session_count() const {
    std::lock_guard lock(mu_);
    return sessions_.size();
}

}  // namespace trickery
