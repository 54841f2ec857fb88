#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace trickery {

// Rooms in the order a first playthrough visits them.
enum class RoomId : uint8_t {
    Keymap,
    Shop,
    TextWalls,
    Hallway,
    Obstacle,
    Loop,
};

inline constexpr std::array<RoomId, 6> kAllRooms = {
    RoomId::Keymap, RoomId::Shop,     RoomId::TextWalls,
    RoomId::Hallway, RoomId::Obstacle, RoomId::Loop,
};

std::string_view room_name(RoomId room);
std::optional<RoomId> parse_room(std::string_view name);

enum class GameAction : uint8_t {
    MoveForward,
    MoveBack,
    MoveLeft,
    MoveRight,
    Interact,
    Jump,
};

inline constexpr std::array<GameAction, 6> kAllGameActions = {
    GameAction::MoveForward, GameAction::MoveBack, GameAction::MoveLeft,
    GameAction::MoveRight,   GameAction::Interact, GameAction::Jump,
};

std::string_view game_action_name(GameAction action);
std::optional<GameAction> parse_game_action(std::string_view name);

// Indexed by GameAction.
using KeyBindings = std::array<char, 6>;

// The narrator's "preferred control": scattered all over a QWERTY board.
inline constexpr KeyBindings kBadDefaultBindings = {'p', 'q', 'm', 'z', 'x', 'k'};
// w/s/a/d + e + space.
inline constexpr KeyBindings kConventionalBindings = {'w', 's', 'a', 'd', 'e', ' '};

inline char binding_for(const KeyBindings& bindings, GameAction action) {
    return bindings[static_cast<std::size_t>(action)];
}

// Keys a player may bind: printable ASCII including space.
inline bool is_bindable_key(char c) { return c >= 0x20 && c <= 0x7e; }

// The seven deceptive pattern concepts, in survey-table order.
enum class Pattern : uint8_t {
    Preselection,
    Sneaking,
    HiddenInformation,
    AestheticManipulation,
    Obstruction,
    Nagging,
    ForcedAction,
};

inline constexpr std::array<Pattern, 7> kAllPatterns = {
    Pattern::Preselection,          Pattern::Sneaking,    Pattern::HiddenInformation,
    Pattern::AestheticManipulation, Pattern::Obstruction, Pattern::Nagging,
    Pattern::ForcedAction,
};

// Concept name, e.g. "Hidden Information".
std::string_view pattern_concept(Pattern p);
// In-game name, e.g. "Walls of Text".
std::string_view pattern_game_name(Pattern p);
// Machine key, e.g. "hidden_information".
std::string_view pattern_key(Pattern p);
std::optional<Pattern> parse_pattern(std::string_view text);

enum class Outcome : uint8_t { Running, Escaped, Abandoned };
std::string_view outcome_name(Outcome o);
std::optional<Outcome> parse_outcome(std::string_view name);

enum class Actor : uint8_t { Player, Narrator, System };
std::string_view actor_name(Actor a);
std::optional<Actor> parse_actor(std::string_view name);

}  // namespace trickery
