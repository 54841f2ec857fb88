#include "trickery/world.hpp"

#include <algorithm>
#include <array>
#include <charconv>

namespace trickery {

namespace {

void chain(RoomGraph& g, std::initializer_list<std::string_view> ids) {
    const std::string_view* prev = nullptr;
    for (const std::string_view& id : ids) {
        if (prev) g.edges.emplace_back(std::string(*prev), std::string(id));
        prev = &id;
    }
}

void add(RoomGraph& g, std::string id, std::string label, bool mandatory = false) {
    g.nodes.push_back({std::move(id), std::move(label), mandatory});
}

RoomGraph make_keymap() {
    RoomGraph g{RoomId::Keymap, "start", {}, {}};
    add(g, "start", "Calibration platform", true);
    add(g, "hall", "Short corridor", true);
    add(g, std::string(kExitNode), "Exit door", true);
    chain(g, {"start", "hall", kExitNode});
    return g;
}

RoomGraph make_shop() {
    RoomGraph g{RoomId::Shop, "entrance", {}, {}};
    add(g, "entrance", "Shop entrance", true);
    add(g, "squeaky_door", "Squeaking door", true);
    add(g, "vending_machine", "Vending machine", true);
    add(g, std::string(kExitNode), "Disinfection lock", true);
    chain(g, {"entrance", "squeaky_door", "vending_machine", kExitNode});
    return g;
}

RoomGraph make_textwalls() {
    RoomGraph g{RoomId::TextWalls, "entrance", {}, {}};
    add(g, "entrance", "Archive entrance", true);
    add(g, "broken_monitor", "Flickering monitor", true);
    add(g, "screens", "Bank of four screens and eight levers", true);
    add(g, std::string(kExitNode), "Lever door", true);
    chain(g, {"entrance", "broken_monitor", "screens", kExitNode});
    return g;
}

RoomGraph make_hallway() {
    RoomGraph g{RoomId::Hallway, "entrance", {}, {}};
    add(g, "entrance", "Hallway entrance", true);
    add(g, "dim_lamp", "Dim lamp", true);
    add(g, "center", "Fork under the lamps", true);
    for (int i = 1; i < kWindingSegments; ++i) {
        add(g, "winding_" + std::to_string(i), "Lit corridor, bend " + std::to_string(i));
    }
    add(g, "dark_area", "Dark corner");
    for (int i = 1; i < kShortcutSegments; ++i) {
        add(g, "shortcut_" + std::to_string(i), "Dark corridor, part " + std::to_string(i));
    }
    add(g, std::string(kExitNode), "Hallway exit", true);

    chain(g, {"entrance", "dim_lamp", "center"});
    g.edges.emplace_back("center", "winding_1");
    for (int i = 1; i + 1 < kWindingSegments; ++i) {
        g.edges.emplace_back("winding_" + std::to_string(i), "winding_" + std::to_string(i + 1));
    }
    g.edges.emplace_back("winding_" + std::to_string(kWindingSegments - 1), std::string(kExitNode));
    g.edges.emplace_back("center", "dark_area");
    g.edges.emplace_back("dark_area", "shortcut_1");
    for (int i = 1; i + 1 < kShortcutSegments; ++i) {
        g.edges.emplace_back("shortcut_" + std::to_string(i), "shortcut_" + std::to_string(i + 1));
    }
    g.edges.emplace_back("shortcut_" + std::to_string(kShortcutSegments - 1), std::string(kExitNode));
    return g;
}

RoomGraph make_obstacle() {
    RoomGraph g{RoomId::Obstacle, "entrance", {}, {}};
    add(g, "entrance", "Course entrance", true);
    add(g, "course_start", "First platforms", true);
    for (int r = 0; r < kMazeSize; ++r) {
        for (int c = 0; c < kMazeSize; ++c) {
            const GridPos p{r, c};
            add(g, maze_node(p), "Maze floor", p == kMazeEntrance || p == kMazeExit);
        }
    }
    add(g, "jumprun2_start", "Second platforms", true);
    add(g, "bridge", "Question bridge", true);
    add(g, "search_hall", "Storage hall", true);
    add(g, "screw_cache", "Narrator's screw box");
    add(g, std::string(kExitNode), "Course exit door", true);

    chain(g, {"entrance", "course_start"});
    g.edges.emplace_back("course_start", maze_node(kMazeEntrance));
    for (int r = 0; r < kMazeSize; ++r) {
        for (int c = 0; c < kMazeSize; ++c) {
            if (c + 1 < kMazeSize) g.edges.emplace_back(maze_node({r, c}), maze_node({r, c + 1}));
            if (r + 1 < kMazeSize) g.edges.emplace_back(maze_node({r, c}), maze_node({r + 1, c}));
        }
    }
    g.edges.emplace_back(maze_node(kMazeExit), "jumprun2_start");
    chain(g, {"jumprun2_start", "bridge", "search_hall"});
    g.edges.emplace_back("search_hall", "screw_cache");
    g.edges.emplace_back("search_hall", std::string(kExitNode));
    return g;
}

RoomGraph make_loop() {
    RoomGraph g{RoomId::Loop, "approach", {}, {}};
    add(g, "approach", "Approach", true);
    add(g, "door_hinge", "Creaking door hinge", true);
    add(g, "keypad", "Broken number pad", true);
    add(g, "exit_hall", "Hall before the last door", true);
    add(g, "backtrack", "Way back to the storage hall");
    chain(g, {"approach", "door_hinge", "keypad", "exit_hall"});
    g.edges.emplace_back("keypad", "backtrack");
    return g;
}

constexpr std::array<TriggerSpec, 42> kTriggers = {{
    {"keymap_accepted", RoomId::Keymap, false},
    {"keymap_declined", RoomId::Keymap, false},
    {"keymap_menu", RoomId::Keymap, false},
    {"keymap_confirmed", RoomId::Keymap, false},
    {"keymap_duplicate", RoomId::Keymap, false},
    {"shop_intro", RoomId::Shop, false},
    {"shop_rejected", RoomId::Shop, false},
    {"shop_accepted", RoomId::Shop, false},
    {"nag_shop_door", RoomId::Shop, true},
    {"textwalls_intro", RoomId::TextWalls, false},
    {"textwalls_puzzle", RoomId::TextWalls, false},
    {"textwalls_fragment", RoomId::TextWalls, false},
    {"textwalls_wrong", RoomId::TextWalls, false},
    {"textwalls_door_locked", RoomId::TextWalls, false},
    {"textwalls_door_open", RoomId::TextWalls, false},
    {"nag_textwalls_monitor", RoomId::TextWalls, true},
    {"hallway_intro", RoomId::Hallway, false},
    {"hallway_cue", RoomId::Hallway, false},
    {"hallway_ad", RoomId::Hallway, false},
    {"hallway_shortcut", RoomId::Hallway, false},
    {"hallway_exit", RoomId::Hallway, false},
    {"nag_hallway_lamp", RoomId::Hallway, true},
    {"obstacle_intro", RoomId::Obstacle, false},
    {"obstacle_teleporter", RoomId::Obstacle, false},
    {"obstacle_fall", RoomId::Obstacle, false},
    {"obstacle_maze_wall", RoomId::Obstacle, false},
    {"obstacle_question", RoomId::Obstacle, false},
    {"obstacle_door_locked", RoomId::Obstacle, false},
    {"obstacle_key_found", RoomId::Obstacle, false},
    {"nag_obstacle_teleporter", RoomId::Obstacle, true},
    {"backtrack_cache", RoomId::Obstacle, false},
    {"nag_loop_hinge", RoomId::Loop, true},
    {"nag_thanks", RoomId::Loop, false},
    {"nag_declined", RoomId::Loop, false},
    {"keypad_need_screws", RoomId::Loop, false},
    {"keypad_open", RoomId::Loop, false},
    {"loop_intro", RoomId::Loop, false},
    {"loop_not_enough_data", RoomId::Loop, false},
    {"loop_teleporter", RoomId::Loop, false},
    {"loop_fade", RoomId::Loop, false},
    {"loop_hint", RoomId::Loop, false},
    {"loop_quit", RoomId::Loop, false},
}};

}  // namespace

bool RoomGraph::has_node(std::string_view id) const { return node(id) != nullptr; }

const RoomNode* RoomGraph::node(std::string_view id) const {
    for (const RoomNode& n : nodes) {
        if (n.id == id) return &n;
    }
    return nullptr;
}

std::vector<std::string> RoomGraph::neighbors(std::string_view id) const {
    std::vector<std::string> out;
    for (const auto& [a, b] : edges) {
        if (a == id) out.push_back(b);
        if (b == id) out.push_back(a);
    }
    return out;
}

const RoomGraph& room_graph(RoomId room) {
    static const std::array<RoomGraph, 6> graphs = {
        make_keymap(), make_shop(), make_textwalls(), make_hallway(), make_obstacle(), make_loop(),
    };
    return graphs[static_cast<std::size_t>(room)];
}

std::string maze_node(GridPos p) { return "maze_" + std::to_string(p.row) + "_" + std::to_string(p.col); }

std::optional<GridPos> parse_maze_node(std::string_view id) {
    if (id.substr(0, 5) != "maze_") return std::nullopt;
    id.remove_prefix(5);
    const auto sep = id.find('_');
    if (sep == std::string_view::npos) return std::nullopt;
    GridPos p;
    auto r1 = std::from_chars(id.data(), id.data() + sep, p.row);
    auto r2 = std::from_chars(id.data() + sep + 1, id.data() + id.size(), p.col);
    if (r1.ec != std::errc{} || r1.ptr != id.data() + sep || r2.ec != std::errc{} ||
        r2.ptr != id.data() + id.size()) {
        return std::nullopt;
    }
    if (p.row < 0 || p.row >= kMazeSize || p.col < 0 || p.col >= kMazeSize) return std::nullopt;
    return p;
}

std::string search_spot(int spot) { return "search_" + std::to_string(spot); }
std::string screen_target(int screen) { return "screen_" + std::to_string(screen); }

std::span<const TriggerSpec> engine_triggers() { return kTriggers; }

const TriggerSpec* find_trigger(std::string_view id) {
    auto it = std::find_if(kTriggers.begin(), kTriggers.end(), [&](const TriggerSpec& t) { return t.id == id; });
    return it == kTriggers.end() ? nullptr : &*it;
}

}  // namespace trickery
