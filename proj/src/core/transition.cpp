#include "trickery/transition.hpp"

namespace trickery {

void Tx::emit(Actor actor, std::string_view kind, nlohmann::json payload) {
    Event e;
    e.seq = state_.next_seq++;
    e.step = state_.step;
    e.room = state_.room;
    e.actor = actor;
    e.kind = std::string(kind);
    e.payload = std::move(payload);
    events_.push_back(std::move(e));
}

void Tx::narrate(std::string_view trigger_id, const TemplateVars& vars) {
    auto lines = lines_for(pack_, trigger_id, state_, vars);
    if (!lines) return;
    for (const NarratorLine& line : *lines) {
        emit(Actor::Narrator, ev::kNarration, {{"trigger", line.trigger_id}, {"text", line.text}});
    }
    if (!lines->empty()) {
        FireRecord& rec = state_.fired[std::string(trigger_id)];
        ++rec.count;
        rec.last_pass = state_.loop_pass();
    }
}

}  // namespace trickery
