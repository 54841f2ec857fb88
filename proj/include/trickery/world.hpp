#pragma once

#include "trickery/ids.hpp"
#include "trickery/state.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace trickery {

// Static navigation graph of one room. Dynamic gating (locked doors,
// hidden passages, invisible walls) is applied by the room logic on top.
struct RoomNode {
    std::string id;
    std::string label;
    bool mandatory = false;  // every first-pass walk through the room crosses it
};

struct RoomGraph {
    RoomId room = RoomId::Keymap;
    std::string entry;
    std::vector<RoomNode> nodes;
    std::vector<std::pair<std::string, std::string>> edges;  // undirected

    bool has_node(std::string_view id) const;
    const RoomNode* node(std::string_view id) const;
    std::vector<std::string> neighbors(std::string_view id) const;
};

const RoomGraph& room_graph(RoomId room);

// Every room's exit is the node "exit"; stepping onto it leaves the room.
inline constexpr std::string_view kExitNode = "exit";

// Obstacle room dimensions.
inline constexpr int kMazeSize = 5;
inline constexpr int kJumpRun1Length = 4;
inline constexpr int kJumpRun2Length = 7;
inline constexpr int kBridgeQuestions = 5;
inline constexpr int kSearchSpots = 6;
inline constexpr int kPlatformChoices = 3;
inline constexpr GridPos kMazeEntrance{0, 0};
inline constexpr GridPos kMazeExit{kMazeSize - 1, kMazeSize - 1};

// Hallway dimensions, counted in Move steps from the fork.
inline constexpr int kWindingSegments = 20;
inline constexpr int kShortcutSegments = 3;

// Screw economy.
inline constexpr int kStartingScrews = 6;
inline constexpr int kKeypadCost = 4;
inline constexpr int kCacheScrews = 4;

std::string maze_node(GridPos p);
std::optional<GridPos> parse_maze_node(std::string_view id);
std::string search_spot(int spot);  // "search_3"
std::string screen_target(int screen);  // "screen_2"

// Engine-side trigger catalogue. A content pack must script exactly these.
struct TriggerSpec {
    std::string_view id;
    RoomId room;
    bool nag;
};

std::span<const TriggerSpec> engine_triggers();
const TriggerSpec* find_trigger(std::string_view id);

// Nag prompts in encounter order (one per room from Shop to Loop).
inline constexpr std::array<std::string_view, 5> kNagTriggers = {
    "nag_shop_door", "nag_textwalls_monitor", "nag_hallway_lamp",
    "nag_obstacle_teleporter", "nag_loop_hinge",
};

}  // namespace trickery
