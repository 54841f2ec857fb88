#pragma once

#include "trickery/ids.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace trickery {

struct KeyMapping {
    KeyBindings bindings = kBadDefaultBindings;
    bool confirmed = false;

    bool operator==(const KeyMapping&) const = default;
};

struct KeymapProgress {
    KeyMapping mapping;
    bool preselection_pending = true;
    bool accepted_preselection = false;
    bool menu_open = false;
    int rebinds = 0;

    bool operator==(const KeymapProgress&) const = default;
};

// Shopping cart. `entries` keeps insertion order but is compared as a multiset.
struct Cart {
    std::vector<std::string> entries;
    std::vector<std::string> required;
    int attempts = 0;      // rejected checkouts
    int player_adds = 0;   // successful CartAdd actions
    bool accepted = false;

    bool operator==(const Cart&) const = default;
};

struct TextWallsProgress {
    std::array<bool, 8> levers{};
    std::array<bool, 4> read{};
    std::array<bool, 4> puzzle_revealed{};
    std::array<bool, 4> solved{};
    bool door_open = false;
    int door_attempts = 0;

    bool operator==(const TextWallsProgress&) const = default;
};

enum class HallwayPath : uint8_t { None, Winding, Shortcut };

struct HallwayProgress {
    bool cue_fired = false;
    bool shortcut_discovered = false;
    HallwayPath path_taken = HallwayPath::None;
    int segment_index = 0;  // path segments traversed so far

    bool operator==(const HallwayProgress&) const = default;
};

struct GridPos {
    int row = 0;
    int col = 0;

    bool operator==(const GridPos&) const = default;
    auto operator<=>(const GridPos&) const = default;
};

// Obstacles in order. Stage == kObstacleCount means all are cleared.
enum class Obstacle : uint8_t { JumpRun1, InvisibleMaze, JumpRun2, QuestionBridge, KeySearch };
inline constexpr int kObstacleCount = 5;

struct ObstacleProgress {
    int stage = 0;
    int run_position = 0;  // correct platforms in a row in the current jump run
    GridPos maze_pos{};
    int questions_answered = 0;
    std::array<bool, 6> searched{};
    bool key_found = false;
    bool door_open = false;
    int t1_color = 0;
    bool t3_rotated = false;
    std::map<std::string, int> teleporter_uses;

    bool operator==(const ObstacleProgress&) const = default;
};

struct LoopState {
    bool reached = false;         // LoopRoom entered at least once
    bool in_replay_pass = false;  // sent back to KeymapRoom by the loop teleporter
    int loop_count = 0;
    int hints_revealed = 0;
    bool teleporter_spawned = false;
    int door_attempts = 0;

    bool operator==(const LoopState&) const = default;
};

struct GivenScrew {
    RoomId room;
    std::string trigger_id;

    bool operator==(const GivenScrew&) const = default;
};

struct ScrewLedger {
    int held = 6;
    std::vector<GivenScrew> given_log;
    bool cache_collected = false;
    bool need_screws_seen = false;  // keypad refused at least once; cache route open
    bool keypad_open = false;
    std::optional<std::string> pending_prompt;  // nag trigger awaiting Give/Decline
    std::map<std::string, int> prompted_pass;   // trigger -> loop pass it last fired in

    bool operator==(const ScrewLedger&) const = default;
};

// Per-session secrets drawn from the seed. Never shown in a View.
struct SessionSecrets {
    std::array<bool, 8> lever_target{};
    std::vector<int> jump_run1;  // correct platform per position, 1..3
    std::vector<int> jump_run2;
    std::array<std::array<bool, 5>, 5> maze_open{};
    std::vector<GridPos> maze_path;
    int key_spot = 1;  // search spot holding the key, 1..6

    bool operator==(const SessionSecrets&) const = default;
};

struct FireRecord {
    int count = 0;
    int last_pass = -1;

    bool operator==(const FireRecord&) const = default;
};

struct SessionState {
    std::string session_id;
    uint64_t seed = 0;
    std::string pack_hash;
    RoomId room = RoomId::Keymap;
    std::string location;
    uint64_t step = 0;
    uint64_t next_seq = 0;
    Outcome outcome = Outcome::Running;
    ScrewLedger inventory;
    SessionSecrets secrets;
    KeymapProgress keymap;
    Cart cart;
    TextWallsProgress textwalls;
    HallwayProgress hallway;
    ObstacleProgress obstacle;
    LoopState loop;
    std::map<std::string, FireRecord> fired;

    bool operator==(const SessionState&) const = default;

    // Loop pass index used by once-per-loop policies.
    int loop_pass() const { return loop.loop_count; }
};

}  // namespace trickery
