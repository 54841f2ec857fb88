#pragma once

#include "trickery/action.hpp"
#include "trickery/content_pack.hpp"
#include "trickery/event.hpp"
#include "trickery/result.hpp"
#include "trickery/state.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace trickery {

struct Transition {
    SessionState state;
    std::vector<Event> events;
};

// Pure session state machine over one validated content pack. Safe to share
// between threads; it holds no mutable state.
class Engine {
public:
    // Throws std::invalid_argument if the pack does not validate.
    explicit Engine(std::shared_ptr<const ContentPack> pack);
    static Result<Engine, PackIssues> create(std::shared_ptr<const ContentPack> pack);

    const ContentPack& pack() const { return *pack_; }
    std::shared_ptr<const ContentPack> pack_ptr() const { return pack_; }
    const std::string& pack_hash() const { return pack_hash_; }

    // KeymapRoom, step 0, six screws, Running. An empty id derives one
    // from the seed so identical seeds give identical states.
    SessionState new_session(uint64_t seed, std::string session_id = {}) const;

    // Every action apply() would accept in this state. Free-text parameters
    // are left empty (see is_offered).
    std::vector<Action> available_actions(const SessionState& s) const;

    Result<Transition> apply(const SessionState& s, const Action& a) const;

    // Ends a running session without escaping (client walked away).
    Result<Transition> abandon(const SessionState& s) const;

private:
    Engine() = default;

    std::shared_ptr<const ContentPack> pack_;
    std::string pack_hash_;
};

// new_session with pack validation folded in.
Result<SessionState> new_session(uint64_t seed, const ContentPack& pack);

struct ReplayError {
    std::size_t index = 0;
    GameError error;
};

// Folds apply over new_session(seed).
Result<Transition, ReplayError> replay(const Engine& engine, uint64_t seed,
                                       std::span<const Action> actions);

// Re-runs a recorded log: player actions and abandonment markers, in order.
Result<Transition, ReplayError> replay_log(const Engine& engine, const EventLog& log);

// Player actions recorded in a log, in order.
std::vector<Action> actions_in_log(std::span<const Event> events);

std::string derive_session_id(uint64_t seed);

// Session secrets in a debug form for test oracles and `dump-secrets`.
nlohmann::json dump_secrets(const ContentPack& pack, const SessionState& s);
SessionSecrets draw_secrets(uint64_t seed);

}  // namespace trickery
