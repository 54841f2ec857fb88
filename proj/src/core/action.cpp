#include "trickery/action.hpp"

#include <array>
#include <sstream>

namespace trickery {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 25> kKindNames = {
    "Move",          "Inspect",          "MenuOpen",        "Rebind",
    "AcceptPreselection", "DeclinePreselection", "ConfirmMapping", "CartAdd",
    "CartRemove",    "Checkout",         "PressKey",        "AnswerPuzzle",
    "SetLever",      "TryDoor",          "UseTeleporter",   "PressTeleporterButton",
    "AttemptObstacleStep", "AnswerQuestion", "GiveScrew",   "DeclineScrew",
    "KeypadAttempt", "CollectCache",     "TakeLoopTeleporter", "ReadWall",
    "Quit",
};

Result<std::string> string_field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end() || !it->is_string()) {
        return fail(ErrorCode::MalformedAction, std::string("missing string field '") + name + "'");
    }
    return it->get<std::string>();
}

Result<int> int_field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end() || !it->is_number_integer()) {
        return fail(ErrorCode::MalformedAction, std::string("missing integer field '") + name + "'");
    }
    return it->get<int>();
}

}  // namespace

std::string_view action_kind_name(ActionKind kind) {
    return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<ActionKind> parse_action_kind(std::string_view name) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == name) return static_cast<ActionKind>(i);
    }
    return std::nullopt;
}

bool takes_free_text(ActionKind kind) {
    return kind == ActionKind::PressKey || kind == ActionKind::AnswerPuzzle ||
           kind == ActionKind::AnswerQuestion;
}

Action Action::rebind(GameAction action, char key) {
    Action a{ActionKind::Rebind, std::string(game_action_name(action))};
    a.key = std::string(1, key);
    return a;
}

Action Action::press_key(std::string key) {
    Action a{ActionKind::PressKey};
    a.key = std::move(key);
    return a;
}

Action Action::answer_puzzle(int screen, std::string text) {
    Action a{ActionKind::AnswerPuzzle};
    a.index = screen;
    a.text = std::move(text);
    return a;
}

Action Action::set_lever(int lever, bool up) {
    Action a{ActionKind::SetLever};
    a.index = lever;
    a.up = up;
    return a;
}

Action Action::obstacle_step(int choice) {
    Action a{ActionKind::AttemptObstacleStep};
    a.index = choice;
    return a;
}

Action Action::answer_question(std::string text) {
    Action a{ActionKind::AnswerQuestion};
    a.text = std::move(text);
    return a;
}

json to_json_value(const Action& a) {
    json j = json::object();
    j["kind"] = std::string(action_kind_name(a.kind));
    switch (a.kind) {
        case ActionKind::Move: j["node"] = a.target; break;
        case ActionKind::Inspect: j["target"] = a.target; break;
        case ActionKind::Rebind:
            j["game_action"] = a.target;
            j["key"] = a.key;
            break;
        case ActionKind::CartAdd:
        case ActionKind::CartRemove: j["item"] = a.target; break;
        case ActionKind::PressKey: j["key"] = a.key; break;
        case ActionKind::AnswerPuzzle:
            j["screen"] = a.index;
            j["text"] = a.text;
            break;
        case ActionKind::SetLever:
            j["lever"] = a.index;
            j["up"] = a.up;
            break;
        case ActionKind::UseTeleporter:
        case ActionKind::PressTeleporterButton: j["id"] = a.target; break;
        case ActionKind::AttemptObstacleStep: j["choice"] = a.index; break;
        case ActionKind::AnswerQuestion: j["text"] = a.text; break;
        default: break;
    }
    return j;
}

Result<Action> action_from_json(const json& j) {
    if (!j.is_object()) return fail(ErrorCode::MalformedAction, "action must be an object");
    auto kind_name = string_field(j, "kind");
    if (!kind_name) return fail(kind_name.error());
    auto kind = parse_action_kind(*kind_name);
    if (!kind) return fail(ErrorCode::MalformedAction, "unknown action kind '" + *kind_name + "'");

    Action a{*kind};
    auto take_string = [&](const char* name, std::string& into) -> std::optional<GameError> {
        auto v = string_field(j, name);
        if (!v) return v.error();
        into = std::move(v).value();
        return std::nullopt;
    };
    auto take_int = [&](const char* name, int& into) -> std::optional<GameError> {
        auto v = int_field(j, name);
        if (!v) return v.error();
        into = *v;
        return std::nullopt;
    };

    std::optional<GameError> err;
    switch (*kind) {
        case ActionKind::Move: err = take_string("node", a.target); break;
        case ActionKind::Inspect: err = take_string("target", a.target); break;
        case ActionKind::Rebind:
            err = take_string("game_action", a.target);
            if (!err) err = take_string("key", a.key);
            if (!err && a.key.size() != 1) {
                err = GameError{ErrorCode::MalformedAction, "rebind key must be one character"};
            }
            break;
        case ActionKind::CartAdd:
        case ActionKind::CartRemove: err = take_string("item", a.target); break;
        case ActionKind::PressKey: err = take_string("key", a.key); break;
        case ActionKind::AnswerPuzzle:
            err = take_int("screen", a.index);
            if (!err) err = take_string("text", a.text);
            break;
        case ActionKind::SetLever: {
            err = take_int("lever", a.index);
            auto it = j.find("up");
            if (!err && (it == j.end() || !it->is_boolean())) {
                err = GameError{ErrorCode::MalformedAction, "missing boolean field 'up'"};
            } else if (!err) {
                a.up = it->get<bool>();
            }
            break;
        }
        case ActionKind::UseTeleporter:
        case ActionKind::PressTeleporterButton: err = take_string("id", a.target); break;
        case ActionKind::AttemptObstacleStep: err = take_int("choice", a.index); break;
        case ActionKind::AnswerQuestion: err = take_string("text", a.text); break;
        default: break;
    }
    if (err) return fail(*err);
    return a;
}

std::string describe(const Action& a) {
    std::ostringstream os;
    os << action_kind_name(a.kind);
    switch (a.kind) {
        case ActionKind::Move:
        case ActionKind::Inspect:
        case ActionKind::CartAdd:
        case ActionKind::CartRemove:
        case ActionKind::UseTeleporter:
        case ActionKind::PressTeleporterButton: os << '(' << a.target << ')'; break;
        case ActionKind::Rebind: os << '(' << a.target << ", '" << a.key << "')"; break;
        case ActionKind::PressKey: os << '(' << (a.key.empty() ? "<key>" : a.key) << ')'; break;
        case ActionKind::AnswerPuzzle:
            os << '(' << a.index << ", " << (a.text.empty() ? "<text>" : '"' + a.text + '"') << ')';
            break;
        case ActionKind::SetLever: os << '(' << a.index << ", " << (a.up ? "up" : "down") << ')'; break;
        case ActionKind::AttemptObstacleStep: os << '(' << a.index << ')'; break;
        case ActionKind::AnswerQuestion:
            os << '(' << (a.text.empty() ? "<text>" : '"' + a.text + '"') << ')';
            break;
        default: break;
    }
    return os.str();
}

bool is_offered(std::span<const Action> available, const Action& a) {
    for (const Action& b : available) {
        if (b.kind != a.kind) continue;
        switch (a.kind) {
            case ActionKind::PressKey:
                if (b.key.empty() ? !a.key.empty() : b.key == a.key) return true;
                break;
            case ActionKind::AnswerPuzzle:
                if (b.index == a.index && (b.text.empty() ? !a.text.empty() : b.text == a.text)) {
                    return true;
                }
                break;
            case ActionKind::AnswerQuestion:
                if (b.text.empty() ? !a.text.empty() : b.text == a.text) return true;
                break;
            default:
                if (b == a) return true;
        }
    }
    return false;
}

}  // namespace trickery
