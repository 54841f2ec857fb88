#include "trickery/view.hpp"

#include "trickery/world.hpp"

#include <algorithm>
#include <set>

namespace trickery {

using nlohmann::json;

namespace {

bool node_visible(const SessionState& s, const std::string& id) {
    switch (s.room) {
        case RoomId::Hallway:
            if (id.rfind("shortcut_", 0) == 0) return s.hallway.shortcut_discovered;
            return true;
        case RoomId::Obstacle:
            if (id == "screw_cache") return s.inventory.need_screws_seen;
            return true;
        case RoomId::Loop:
            if (id == "backtrack") return s.inventory.need_screws_seen && !s.inventory.cache_collected;
            return true;
        default: return true;
    }
}

json bindings_json(const KeyBindings& b) {
    json j = json::object();
    for (GameAction g : kAllGameActions) j[std::string(game_action_name(g))] = std::string(1, binding_for(b, g));
    return j;
}

}  // namespace

MapView visible_map(const SessionState& s) {
    MapView m;
    const RoomGraph& g = room_graph(s.room);
    for (const RoomNode& n : g.nodes) {
        if (node_visible(s, n.id)) m.nodes.push_back(n.id);
    }
    for (const auto& [a, b] : g.edges) {
        if (node_visible(s, a) && node_visible(s, b)) m.edges.emplace_back(a, b);
    }
    return m;
}

View make_view(const Engine& engine, const SessionState& s, std::span<const Event> since) {
    View v;
    v.session_id = s.session_id;
    v.room = s.room;
    v.description = engine.pack().room_description(s.room);
    v.location = s.location;
    v.outcome = s.outcome;
    v.step = s.step;
    v.loops_endured = s.loop.loop_count;
    v.prompt = s.inventory.pending_prompt;
    v.available_actions = engine.available_actions(s);
    for (const Event& e : since) {
        if (e.actor == Actor::Narrator) {
            v.narrator_lines.push_back({e.payload.value("trigger", ""), e.payload.value("text", ""), e.step});
        } else if (e.actor == Actor::System) {
            v.messages.push_back({e.seq, e.kind, e.payload});
        }
    }
    v.hud.screws_held = s.inventory.held;
    v.hud.loop_count = s.loop.loop_count;
    v.hud.hints_revealed = s.loop.hints_revealed;
    v.hud.key_bindings = s.keymap.mapping.bindings;
    v.hud.mapping_confirmed = s.keymap.mapping.confirmed;
    if (s.room == RoomId::TextWalls) v.hud.levers = s.textwalls.levers;
    if (s.room == RoomId::Shop) {
        v.hud.cart = s.cart.entries;
        v.hud.shopping_list = s.cart.required;
    }
    v.map = visible_map(s);
    return v;
}

json actions_to_json(std::span<const Action> actions) {
    json out = json::array();
    std::map<std::string, std::string> rebind_keys;
    std::vector<std::string> rebind_order;
    for (const Action& a : actions) {
        if (a.kind == ActionKind::Rebind) {
            if (!rebind_keys.count(a.target)) rebind_order.push_back(a.target);
            rebind_keys[a.target] += a.key;
            continue;
        }
        json j = to_json_value(a);
        if (a.kind == ActionKind::PressKey && a.key.empty()) {
            j.erase("key");
            j["free_text"] = "key";
        } else if ((a.kind == ActionKind::AnswerPuzzle || a.kind == ActionKind::AnswerQuestion) && a.text.empty()) {
            j.erase("text");
            j["free_text"] = "text";
        }
        j["label"] = describe(a);
        out.push_back(std::move(j));
    }
    for (const auto& g : rebind_order) {
        out.push_back({{"kind", "Rebind"}, {"game_action", g}, {"keys", rebind_keys[g]}, {"label", "Rebind(" + g + ")"}});
    }
    return out;
}

json to_json(const View& v) {
    json j;
    j["session_id"] = v.session_id;
    j["room"] = room_name(v.room);
    j["description"] = v.description;
    j["location"] = v.location;
    j["outcome"] = outcome_name(v.outcome);
    j["step"] = v.step;
    j["loops_endured"] = v.loops_endured;
    j["prompt"] = v.prompt ? json(*v.prompt) : json(nullptr);
    j["available_actions"] = actions_to_json(v.available_actions);
    json lines = json::array();
    for (const auto& l : v.narrator_lines) lines.push_back({{"trigger_id", l.trigger_id}, {"text", l.text}, {"step", l.step}});
    j["narrator_lines"] = lines;
    json msgs = json::array();
    for (const auto& m : v.messages) msgs.push_back({{"seq", m.seq}, {"kind", m.kind}, {"payload", m.payload}});
    j["messages"] = msgs;
    json hud;
    hud["screws_held"] = v.hud.screws_held;
    hud["loop_count"] = v.hud.loop_count;
    hud["hints_revealed"] = v.hud.hints_revealed;
    hud["key_bindings"] = bindings_json(v.hud.key_bindings);
    hud["mapping_confirmed"] = v.hud.mapping_confirmed;
    if (v.hud.levers) hud["levers"] = *v.hud.levers;
    if (v.hud.cart) hud["cart"] = *v.hud.cart;
    if (v.hud.shopping_list) hud["shopping_list"] = *v.hud.shopping_list;
    j["hud"] = hud;
    json edges = json::array();
    for (const auto& [a, b] : v.map.edges) edges.push_back({a, b});
    j["map"] = {{"nodes", v.map.nodes}, {"edges", edges}};
    return j;
}

}  // namespace trickery
