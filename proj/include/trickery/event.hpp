#pragma once

#include "trickery/ids.hpp"
#include "trickery/result.hpp"

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trickery {

// One entry of the append-only session record.
struct Event {
    uint64_t seq = 0;
    uint64_t step = 0;
    RoomId room = RoomId::Keymap;
    Actor actor = Actor::System;
    std::string kind;
    nlohmann::json payload = nlohmann::json::object();

    bool operator==(const Event&) const = default;
};

// Single JSONL line (no trailing newline). Field order is fixed:
// seq, step, room, actor, kind, payload.
std::string to_jsonl(const Event& e);
Result<Event> event_from_jsonl(std::string_view line);

// First line of every persisted log.
struct LogHeader {
    uint64_t seed = 0;
    std::string pack_hash;

    bool operator==(const LogHeader&) const = default;
};

std::string to_jsonl(const LogHeader& h);

struct EventLog {
    LogHeader header;
    std::vector<Event> events;
};

// Header line followed by one line per event, each newline-terminated.
std::string render_log(const LogHeader& header, std::span<const Event> events);

// Parses a full log. Blank lines are skipped. Fails with MalformedLog on
// bad JSON, missing fields, or a seq gap.
Result<EventLog> parse_log(std::string_view text);

// Well-known event kinds.
namespace ev {
inline constexpr std::string_view kAction = "action";
inline constexpr std::string_view kNarration = "narration";
}  // namespace ev

}  // namespace trickery
