#pragma once

// Session service: JSON request/response handling, write-ahead event logs,
// and restart recovery. Transport lives in server.hpp.

#include "trickery/content_pack.hpp"
#include "trickery/engine.hpp"
#include "trickery/view.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace trickery {

struct ServiceConfig {
    std::filesystem::path data_dir = "data";
    std::shared_ptr<const ContentPack> pack;  // default pack when null
};

// Requests:  {"type": "create"|"act"|"view"|"quit"|"export", ...}
// Responses: {"type": "session"|"view"|"log"|"error", ...}
// See docs/wire_protocol.md.
class SessionService {
public:
    explicit SessionService(ServiceConfig config);
    ~SessionService();

    SessionService(const SessionService&) = delete;
    SessionService& operator=(const SessionService&) = delete;

    nlohmann::json handle(const nlohmann::json& request);
    // Parses a text frame; malformed JSON yields a bad_request error.
    std::string handle_text(std::string_view frame);

    // Replays every log under <data_dir>/sessions whose pack is known.
    // Returns the number of sessions restored.
    std::size_t recover();

    std::optional<SessionState> state_of(const std::string& session_id) const;
    std::optional<std::string> export_log(const std::string& session_id) const;
    std::size_t session_count() const;

    const std::filesystem::path& sessions_dir() const { return sessions_dir_; }

private:
    struct Session;

    std::shared_ptr<Session> find(const std::string& id) const;
    std::shared_ptr<const Engine> engine_for_pack(const std::string& path, std::string& error);
    nlohmann::json create(const nlohmann::json& req);
    nlohmann::json act(Session& s, const nlohmann::json& req);
    nlohmann::json view(Session& s);
    nlohmann::json quit(Session& s);
    void append(Session& s, std::span<const Event> events);

    ServiceConfig config_;
    std::filesystem::path sessions_dir_;
    std::shared_ptr<const Engine> default_engine_;

    mutable std::mutex mu_;  // guards sessions_ and engines_
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::map<std::string, std::shared_ptr<const Engine>> engines_;  // by pack hash
};

nlohmann::json error_response(std::string_view code, std::string_view message);

}  // namespace trickery
