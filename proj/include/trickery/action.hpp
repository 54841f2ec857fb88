#pragma once

#include "trickery/ids.hpp"
#include "trickery/result.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trickery {

enum class ActionKind : uint8_t {
    Move,
    Inspect,
    MenuOpen,
    Rebind,
    AcceptPreselection,
    DeclinePreselection,
    ConfirmMapping,
    CartAdd,
    CartRemove,
    Checkout,
    PressKey,
    AnswerPuzzle,
    SetLever,
    TryDoor,
    UseTeleporter,
    PressTeleporterButton,
    AttemptObstacleStep,
    AnswerQuestion,
    GiveScrew,
    DeclineScrew,
    KeypadAttempt,
    CollectCache,
    TakeLoopTeleporter,
    ReadWall,
    Quit,
};

std::string_view action_kind_name(ActionKind kind);
std::optional<ActionKind> parse_action_kind(std::string_view name);

// Kinds whose text/key parameter is player-typed. In available_actions()
// they appear with an empty parameter, meaning "any non-empty value".
bool takes_free_text(ActionKind kind);

// One player input. Which fields are meaningful depends on kind:
//   Move: target = node id            Inspect: target = inspectable id
//   Rebind: target = game action, key = one printable char
//   CartAdd/CartRemove: target = item id
//   PressKey: key                     AnswerPuzzle: index = screen (1..4), text
//   SetLever: index = lever (1..8), up
//   UseTeleporter/PressTeleporterButton: target = "T1".."T4"
//   AttemptObstacleStep: index = platform choice (1..3)
//   AnswerQuestion: text
struct Action {
    ActionKind kind = ActionKind::Quit;
    std::string target;
    std::string key;
    std::string text;
    int index = 0;
    bool up = false;

    bool operator==(const Action&) const = default;

    static Action move(std::string node) { return {ActionKind::Move, std::move(node)}; }
    static Action inspect(std::string target) { return {ActionKind::Inspect, std::move(target)}; }
    static Action rebind(GameAction action, char key);
    static Action cart_add(std::string item) { return {ActionKind::CartAdd, std::move(item)}; }
    static Action cart_remove(std::string item) { return {ActionKind::CartRemove, std::move(item)}; }
    static Action press_key(std::string key);
    static Action answer_puzzle(int screen, std::string text);
    static Action set_lever(int lever, bool up);
    static Action use_teleporter(std::string id) { return {ActionKind::UseTeleporter, std::move(id)}; }
    static Action press_teleporter_button(std::string id) {
        return {ActionKind::PressTeleporterButton, std::move(id)};
    }
    static Action obstacle_step(int choice);
    static Action answer_question(std::string text);
    static Action simple(ActionKind kind) { return {kind}; }
};

nlohmann::json to_json_value(const Action& a);
Result<Action> action_from_json(const nlohmann::json& j);
std::string describe(const Action& a);

// True when `a` is one of `available`, treating empty free-text
// parameters in `available` as wildcards.
bool is_offered(std::span<const Action> available, const Action& a);

}  // namespace trickery
