#pragma once

#include "trickery/content_pack.hpp"
#include "trickery/event.hpp"
#include "trickery/rng.hpp"
#include "trickery/state.hpp"

#include <string_view>
#include <vector>

namespace trickery {

// Scratch context for one accepted action: the state being rewritten and
// the events produced so far. Room logic only ever talks to this.
class Tx {
public:
    Tx(const ContentPack& pack, SessionState& state) : pack_(pack), state_(state) {}

    SessionState& state() { return state_; }
    const SessionState& state() const { return state_; }
    const ContentPack& pack() const { return pack_; }
    CounterRng rng() const { return CounterRng(state_.seed); }

    void emit(Actor actor, std::string_view kind, nlohmann::json payload = nlohmann::json::object());
    void system(std::string_view kind, nlohmann::json payload = nlohmann::json::object()) {
        emit(Actor::System, kind, std::move(payload));
    }
    // Fires a narrator trigger through its fire policy.
    void narrate(std::string_view trigger_id, const TemplateVars& vars = {});

    std::vector<Event>& events() { return events_; }

private:
    const ContentPack& pack_;
    SessionState& state_;
    std::vector<Event> events_;
};

// Walks to `node` inside the current room and runs its arrival hooks
// (nag prompts, cues, obstacle bookkeeping).
void move_to(Tx& tx, const std::string& node);

// Leaves the current room through its exit and arrives at `node` of `room`
// (the room's entry node when empty).
void enter_room(Tx& tx, RoomId room, std::string node = {});

}  // namespace trickery
