#include "trickery/ids.hpp"
#include "trickery/result.hpp"

#include <algorithm>
#include <cctype>

namespace trickery {

namespace {

std::string lowered(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == ' ' || c == '-' || c == '_' || c == '&') continue;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

}  // namespace

std::string_view room_name(RoomId room) {
    switch (room) {
        case RoomId::Keymap: return "KeymapRoom";
        case RoomId::Shop: return "ShopRoom";
        case RoomId::TextWalls: return "TextWallsRoom";
        case RoomId::Hallway: return "HallwayRoom";
        case RoomId::Obstacle: return "ObstacleRoom";
        case RoomId::Loop: return "LoopRoom";
    }
    return "?";
}

std::optional<RoomId> parse_room(std::string_view name) {
    for (RoomId r : kAllRooms) {
        if (room_name(r) == name) return r;
    }
    return std::nullopt;
}

std::string_view game_action_name(GameAction action) {
    switch (action) {
        case GameAction::MoveForward: return "MoveForward";
        case GameAction::MoveBack: return "MoveBack";
        case GameAction::MoveLeft: return "MoveLeft";
        case GameAction::MoveRight: return "MoveRight";
        case GameAction::Interact: return "Interact";
        case GameAction::Jump: return "Jump";
    }
    return "?";
}

std::optional<GameAction> parse_game_action(std::string_view name) {
    for (GameAction a : kAllGameActions) {
        if (game_action_name(a) == name) return a;
    }
    return std::nullopt;
}

std::string_view pattern_concept(Pattern p) {
    switch (p) {
        case Pattern::Preselection: return "Preselection";
        case Pattern::Sneaking: return "Sneaking";
        case Pattern::HiddenInformation: return "Hidden Information";
        case Pattern::AestheticManipulation: return "Aesthetic Manipulation";
        case Pattern::Obstruction: return "Obstruction";
        case Pattern::Nagging: return "Nagging";
        case Pattern::ForcedAction: return "Forced Action";
    }
    return "?";
}

std::string_view pattern_game_name(Pattern p) {
    switch (p) {
        case Pattern::Preselection: return "Insensible Key Mapping";
        case Pattern::Sneaking: return "Sneaky Shop";
        case Pattern::HiddenInformation: return "Walls of Text";
        case Pattern::AestheticManipulation: return "Winding Hallway & Shortcut";
        case Pattern::Obstruction: return "Obstacle Onslaught";
        case Pattern::Nagging: return "Insistent Questioning";
        case Pattern::ForcedAction: return "Looping Gameplay";
    }
    return "?";
}

std::string_view pattern_key(Pattern p) {
    switch (p) {
        case Pattern::Preselection: return "preselection";
        case Pattern::Sneaking: return "sneaking";
        case Pattern::HiddenInformation: return "hidden_information";
        case Pattern::AestheticManipulation: return "aesthetic_manipulation";
        case Pattern::Obstruction: return "obstruction";
        case Pattern::Nagging: return "nagging";
        case Pattern::ForcedAction: return "forced_action";
    }
    return "?";
}

std::optional<Pattern> parse_pattern(std::string_view text) {
    const std::string want = lowered(text);
    for (Pattern p : kAllPatterns) {
        if (want == lowered(pattern_concept(p)) || want == lowered(pattern_game_name(p)) ||
            want == lowered(pattern_key(p))) {
            return p;
        }
    }
    return std::nullopt;
}

std::string_view outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Running: return "Running";
        case Outcome::Escaped: return "Escaped";
        case Outcome::Abandoned: return "Abandoned";
    }
    return "?";
}

std::optional<Outcome> parse_outcome(std::string_view name) {
    for (Outcome o : {Outcome::Running, Outcome::Escaped, Outcome::Abandoned}) {
        if (outcome_name(o) == name) return o;
    }
    return std::nullopt;
}

std::string_view actor_name(Actor a) {
    switch (a) {
        case Actor::Player: return "Player";
        case Actor::Narrator: return "Narrator";
        case Actor::System: return "System";
    }
    return "?";
}

std::optional<Actor> parse_actor(std::string_view name) {
    for (Actor a : {Actor::Player, Actor::Narrator, Actor::System}) {
        if (actor_name(a) == name) return a;
    }
    return std::nullopt;
}

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ActionNotAvailable: return "ActionNotAvailable";
        case ErrorCode::SessionEnded: return "SessionEnded";
        case ErrorCode::MovementLocked: return "MovementLocked";
        case ErrorCode::DuplicateKeyBinding: return "DuplicateKeyBinding";
        case ErrorCode::ShortcutHidden: return "ShortcutHidden";
        case ErrorCode::CacheEmpty: return "CacheEmpty";
        case ErrorCode::WrongAnswer: return "WrongAnswer";
        case ErrorCode::DoorLocked: return "DoorLocked";
        case ErrorCode::NeedScrews: return "NeedScrews";
        case ErrorCode::InvalidContentPack: return "InvalidContentPack";
        case ErrorCode::UnknownTrigger: return "UnknownTrigger";
        case ErrorCode::MalformedLog: return "MalformedLog";
        case ErrorCode::MalformedAction: return "MalformedAction";
    }
    return "?";
}

std::string_view error_wire_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::ActionNotAvailable: return "action_not_available";
        case ErrorCode::SessionEnded: return "session_ended";
        case ErrorCode::MovementLocked: return "movement_locked";
        case ErrorCode::DuplicateKeyBinding: return "duplicate_key_binding";
        case ErrorCode::ShortcutHidden: return "shortcut_hidden";
        case ErrorCode::CacheEmpty: return "cache_empty";
        case ErrorCode::WrongAnswer: return "wrong_answer";
        case ErrorCode::DoorLocked: return "door_locked";
        case ErrorCode::NeedScrews: return "need_screws";
        case ErrorCode::InvalidContentPack: return "invalid_pack";
        case ErrorCode::UnknownTrigger: return "unknown_trigger";
        case ErrorCode::MalformedLog: return "malformed_log";
        case ErrorCode::MalformedAction: return "malformed_action";
    }
    return "?";
}

}  // namespace trickery
