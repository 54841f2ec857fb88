#pragma once

// World-manipulation rooms: Winding Hallway & Shortcut, Obstacle Onslaught,
// Looping Gameplay.

#include "trickery/action.hpp"
#include "trickery/state.hpp"
#include "trickery/transition.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trickery {

// --- Winding Hallway & Shortcut ---------------------------------------------

void hallway_actions(const SessionState& s, std::vector<Action>& out);
std::optional<ErrorCode> hallway_diagnose(const SessionState& s, const Action& a);
void hallway_transition(Tx& tx, const Action& a);
void hallway_on_arrive(Tx& tx, const std::string& from);

// --- Obstacle Onslaught -----------------------------------------------------

std::string_view obstacle_name(int stage);

// Teleporter ids "T1".."T4" and the node each one stands on.
std::string teleporter_node(std::string_view id);
// Stage at which a teleporter shows up.
int teleporter_stage(std::string_view id);
bool teleporter_visible(const ObstacleProgress& p, std::string_view id);

// Effect of using (or pressing the button of) a teleporter. Never touches
// stage or key_found; only colour, rotation, and location can change.
void teleporter_effect(Tx& tx, std::string_view id, bool button);

// Station node that holds the obstacle for a stage.
std::string station_node(int stage);

void obstacle_actions(const SessionState& s, std::vector<Action>& out);
std::optional<ErrorCode> obstacle_diagnose(const SessionState& s, const Action& a);
void obstacle_transition(Tx& tx, const Action& a);
void obstacle_on_arrive(Tx& tx, const std::string& from);

// --- Looping Gameplay -------------------------------------------------------

void loop_actions(const SessionState& s, std::vector<Action>& out);
std::optional<ErrorCode> loop_diagnose(const SessionState& s, const Action& a);
void loop_transition(Tx& tx, const Action& a);
// KeymapRoom exit during a replay pass: fade to black, back to the exit hall.
void loop_fade_return(Tx& tx);
int hints_for_loop(int loop_count, int hint_count);

}  // namespace trickery
