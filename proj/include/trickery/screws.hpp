#pragma once

// Insistent Questioning: the six-screw ledger, nag prompts, keypad gate,
// and the backtrack cache.

#include "trickery/action.hpp"
#include "trickery/state.hpp"
#include "trickery/transition.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace trickery {

// Opens the Give/Decline prompt for a nag trigger unless it already fired
// during this loop pass. Returns true when the prompt opened.
bool nag_trigger(Tx& tx, std::string_view trigger_id);

// Nag trigger placed on `node` of the current room, if any.
std::optional<std::string> nag_trigger_at(const ContentPack& pack, RoomId room, std::string_view node);

struct KeypadResult {
    bool open = false;
    int missing = 0;

    bool operator==(const KeypadResult&) const = default;
};

// Spends exactly kKeypadCost screws if enough are held; otherwise reports
// how many are missing and opens the route back to the cache.
KeypadResult keypad_attempt(ScrewLedger& ledger);

// Single-use: adds kCacheScrews. Requires a prior keypad refusal.
Result<int> collect_cache(ScrewLedger& ledger);

// Prompt actions while a nag prompt is pending.
void screw_prompt_actions(const SessionState& s, std::vector<Action>& out);
void screw_prompt_transition(Tx& tx, const Action& a);

}  // namespace trickery
