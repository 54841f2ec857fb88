#pragma once

// Client-facing snapshot of a session. Built from public state only; never
// carries the lever target, maze layout, platform solutions, or key spot.

#include "trickery/action.hpp"
#include "trickery/content_pack.hpp"
#include "trickery/engine.hpp"
#include "trickery/event.hpp"
#include "trickery/state.hpp"

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace trickery {

struct MapView {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
};

struct Hud {
    int screws_held = 0;
    int loop_count = 0;
    int hints_revealed = 0;
    KeyBindings key_bindings{};
    bool mapping_confirmed = false;
    std::optional<std::array<bool, 8>> levers;      // TextWallsRoom only
    std::optional<std::vector<std::string>> cart;   // ShopRoom only
    std::optional<std::vector<std::string>> shopping_list;
};

// A system event the player can perceive, as {kind, payload}.
struct Message {
    uint64_t seq = 0;
    std::string kind;
    nlohmann::json payload;
};

struct View {
    std::string session_id;
    RoomId room = RoomId::Keymap;
    std::string description;
    std::string location;
    Outcome outcome = Outcome::Running;
    uint64_t step = 0;
    int loops_endured = 0;
    std::optional<std::string> prompt;  // pending nag prompt
    std::vector<Action> available_actions;
    std::vector<NarratorLine> narrator_lines;
    std::vector<Message> messages;
    Hud hud;
    MapView map;
};

// `since` holds the events produced after the previous view was built.
View make_view(const Engine& engine, const SessionState& s, std::span<const Event> since);

// Visible part of the current room's graph.
MapView visible_map(const SessionState& s);

// Wire form. Rebind actions collapse into one descriptor per game action
// listing the keys that are still free.
nlohmann::json to_json(const View& v);
nlohmann::json actions_to_json(std::span<const Action> actions);

}  // namespace trickery
