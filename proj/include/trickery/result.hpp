#pragma once

#include <cassert>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace trickery {

// Every way the engine can turn an action down, plus the outcomes of
// attempts that are accepted but fail in-game (WrongAnswer, DoorLocked,
// NeedScrews), which are reported through events rather than rejections.
enum class ErrorCode {
    ActionNotAvailable,
    SessionEnded,
    MovementLocked,
    DuplicateKeyBinding,
    ShortcutHidden,
    CacheEmpty,
    WrongAnswer,
    DoorLocked,
    NeedScrews,
    InvalidContentPack,
    UnknownTrigger,
    MalformedLog,
    MalformedAction,
};

// "ActionNotAvailable"
std::string_view error_name(ErrorCode code);
// "action_not_available", used on the wire.
std::string_view error_wire_code(ErrorCode code);

struct GameError {
    ErrorCode code;
    std::string message;

    bool operator==(const GameError&) const = default;
};

template <class E>
struct Unexpected {
    E error;
};

template <class E>
Unexpected<std::decay_t<E>> fail(E&& e) {
    return {std::forward<E>(e)};
}

inline Unexpected<GameError> fail(ErrorCode code, std::string message = {}) {
    return {GameError{code, std::move(message)}};
}

// Minimal value-or-error holder.
template <class T, class E = GameError>
class Result {
public:
    Result(T value) : v_(std::in_place_index<0>, std::move(value)) {}
    template <class U>
    Result(Unexpected<U> e) : v_(std::in_place_index<1>, E(std::move(e.error))) {}

    bool ok() const { return v_.index() == 0; }
    explicit operator bool() const { return ok(); }

    T& value() & {
        assert(ok());
        return std::get<0>(v_);
    }
    const T& value() const& {
        assert(ok());
        return std::get<0>(v_);
    }
    T&& value() && {
        assert(ok());
        return std::get<0>(std::move(v_));
    }
    const E& error() const {
        assert(!ok());
        return std::get<1>(v_);
    }

    T* operator->() { return &value(); }
    const T* operator->() const { return &value(); }
    T& operator*() & { return value(); }
    const T& operator*() const& { return value(); }

private:
    std::variant<T, E> v_;
};

}  // namespace trickery
