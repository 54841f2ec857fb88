#pragma once

// Scripted players. Bots see only what a client sees (views and the
// messages inside them) plus what a careful reader could learn from the
// content pack's public text.

#include "trickery/engine.hpp"
#include "trickery/event.hpp"
#include "trickery/result.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace trickery {

enum class Policy : uint8_t { Naive, Vigilant, Curious, Resilient, GiveVector };

std::string_view policy_name(Policy p);
std::optional<Policy> parse_policy(std::string_view name);

struct BotConfig {
    Policy policy = Policy::Vigilant;
    // GiveVector only: give (true) or decline at the five nag prompts, in
    // encounter order. Otherwise plays like Vigilant.
    std::array<bool, 5> give{};
    int naive_loops = 5;
    uint64_t step_cap = 20000;
};

struct BotRun {
    LogHeader header;
    std::vector<Event> events;
    SessionState final_state;
};

// The policy found nothing to do, picked something the engine refused, or
// ran past the step cap. Reaching this is always a bug.
struct PolicyStuck {
    std::string reason;
    uint64_t step = 0;
};

Result<BotRun, PolicyStuck> run_policy(const Engine& engine, const BotConfig& config, uint64_t seed);

}  // namespace trickery
