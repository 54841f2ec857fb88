#include "trickery/event.hpp"

#include <sstream>

namespace trickery {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_jsonl(const Event& e) {
    ordered_json j;
    j["seq"] = e.seq;
    j["step"] = e.step;
    j["room"] = std::string(room_name(e.room));
    j["actor"] = std::string(actor_name(e.actor));
    j["kind"] = e.kind;
    j["payload"] = ordered_json::parse(e.payload.dump());
    return j.dump();
}

Result<Event> event_from_jsonl(std::string_view line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return fail(ErrorCode::MalformedLog, "event is not a JSON object");
    auto need = [&](const char* k) { return j.contains(k); };
    if (!need("seq") || !need("step") || !need("room") || !need("actor") || !need("kind") ||
        !need("payload")) {
        return fail(ErrorCode::MalformedLog, "event is missing a required field");
    }
    if (!j["seq"].is_number_unsigned() || !j["step"].is_number_unsigned() || !j["room"].is_string() ||
        !j["actor"].is_string() || !j["kind"].is_string() || !j["payload"].is_object()) {
        return fail(ErrorCode::MalformedLog, "event field has the wrong type");
    }
    auto room = parse_room(j["room"].get<std::string>());
    auto actor = parse_actor(j["actor"].get<std::string>());
    if (!room || !actor) return fail(ErrorCode::MalformedLog, "unknown room or actor");
    Event e;
    e.seq = j["seq"].get<uint64_t>();
    e.step = j["step"].get<uint64_t>();
    e.room = *room;
    e.actor = *actor;
    e.kind = j["kind"].get<std::string>();
    e.payload = j["payload"];
    return e;
}

std::string to_jsonl(const LogHeader& h) {
    ordered_json j;
    j["seed"] = h.seed;
    j["pack_hash"] = h.pack_hash;
    return j.dump();
}

std::string render_log(const LogHeader& header, std::span<const Event> events) {
    std::string out = to_jsonl(header);
    out += '\n';
    for (const Event& e : events) {
        out += to_jsonl(e);
        out += '\n';
    }
    return out;
}

Result<EventLog> parse_log(std::string_view text) {
    EventLog log;
    bool have_header = false;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

        if (!have_header) {
            json j = json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object() || !j.contains("seed") || !j["seed"].is_number_unsigned() ||
                !j.contains("pack_hash") || !j["pack_hash"].is_string()) {
                return fail(ErrorCode::MalformedLog, "line 1: expected a {seed, pack_hash} header");
            }
            log.header.seed = j["seed"].get<uint64_t>();
            log.header.pack_hash = j["pack_hash"].get<std::string>();
            have_header = true;
            continue;
        }
        auto e = event_from_jsonl(line);
        if (!e) {
            return fail(ErrorCode::MalformedLog, "line " + std::to_string(line_no) + ": " + e.error().message);
        }
        if (e->seq != log.events.size()) {
            return fail(ErrorCode::MalformedLog, "line " + std::to_string(line_no) + ": seq gap (expected " +
                                                     std::to_string(log.events.size()) + ")");
        }
        log.events.push_back(std::move(e).value());
    }
    if (!have_header) return fail(ErrorCode::MalformedLog, "empty log");
    return log;
}

}  // namespace trickery
