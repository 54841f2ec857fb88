#pragma once

// GUI-style rooms: Insensible Key Mapping, Sneaky Shop, Walls of Text.

#include "trickery/action.hpp"
#include "trickery/content_pack.hpp"
#include "trickery/rng.hpp"
#include "trickery/state.hpp"
#include "trickery/transition.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace trickery {

// --- Insensible Key Mapping -------------------------------------------------

bool bindings_injective(const KeyBindings& bindings);
// The action currently bound to `key`, if any.
std::optional<GameAction> bound_action(const KeyBindings& bindings, char key);

void keymap_actions(const SessionState& s, std::vector<Action>& out);
std::optional<ErrorCode> keymap_diagnose(const SessionState& s, const Action& a);
void keymap_transition(Tx& tx, const Action& a);

// --- Sneaky Shop ------------------------------------------------------------

// Runs after every successful CartAdd. Every second player add appends one
// decoy (an item not on the shopping list) chosen by the rng. Returns the
// injected item. No narrator line accompanies it.
std::optional<std::string> sneak_inject(Cart& cart, std::span<const CatalogItem> catalog,
                                        const CounterRng& rng);

enum class Disinfection : uint8_t { Accept, Reject };

bool same_multiset(std::vector<std::string> a, std::vector<std::string> b);

// Accept iff the cart equals the shopping list as a multiset. Reject
// recycles the whole cart and counts the attempt.
Disinfection disinfect_check(Cart& cart);

void shop_actions(const SessionState& s, const ContentPack& pack, std::vector<Action>& out);
std::optional<ErrorCode> shop_diagnose(const SessionState& s, const Action& a);
void shop_transition(Tx& tx, const Action& a);

// --- Walls of Text ----------------------------------------------------------

// Levers (1-based) whose positions a solved screen (1-based) reveals.
std::pair<int, int> fragment_levers(int screen);
bool lever_door_opens(const std::array<bool, 8>& levers, const std::array<bool, 8>& target);
// Case-insensitive comparison after trimming surrounding whitespace.
bool answer_matches(std::string_view expected, std::string_view attempt);
int solved_count(const TextWallsProgress& p);

void textwalls_actions(const SessionState& s, std::vector<Action>& out);
std::optional<ErrorCode> textwalls_diagnose(const SessionState& s, const Action& a);
void textwalls_transition(Tx& tx, const Action& a);

}  // namespace trickery
