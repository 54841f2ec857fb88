#include "trickery/rooms_interface.hpp"

#include "trickery/rooms_world.hpp"
#include "trickery/world.hpp"

#include <algorithm>
#include <cctype>

namespace trickery {

using nlohmann::json;

namespace {

void offer_moves(const SessionState& s, std::vector<Action>& out, bool exit_open) {
    for (const auto& n : room_graph(s.room).neighbors(s.location)) {
        if (n == kExitNode && !exit_open) continue;
        out.push_back(Action::move(n));
    }
}

bool is_neighbor(const SessionState& s, const std::string& node) {
    const auto ns = room_graph(s.room).neighbors(s.location);
    return std::find(ns.begin(), ns.end(), node) != ns.end();
}

json bindings_json(const KeyBindings& b) {
    json j = json::object();
    for (GameAction g : kAllGameActions) j[std::string(game_action_name(g))] = std::string(1, binding_for(b, g));
    return j;
}

std::string lowered_trimmed(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    std::string out(s.substr(b, e - b + 1));
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

// --- Insensible Key Mapping -------------------------------------------------

bool bindings_injective(const KeyBindings& bindings) {
    for (std::size_t i = 0; i < bindings.size(); ++i) {
        for (std::size_t j = i + 1; j < bindings.size(); ++j) {
            if (bindings[i] == bindings[j]) return false;
        }
    }
    return true;
}

std::optional<GameAction> bound_action(const KeyBindings& bindings, char key) {
    for (GameAction g : kAllGameActions) {
        if (binding_for(bindings, g) == key) return g;
    }
    return std::nullopt;
}

void keymap_actions(const SessionState& s, std::vector<Action>& out) {
    const KeymapProgress& k = s.keymap;
    if (k.preselection_pending) {
        out.push_back(Action::simple(ActionKind::AcceptPreselection));
        out.push_back(Action::simple(ActionKind::DeclinePreselection));
        return;
    }
    if (k.menu_open) {
        for (GameAction g : kAllGameActions) {
            const char current = binding_for(k.mapping.bindings, g);
            for (int c = 0x20; c <= 0x7e; ++c) {
                const char key = static_cast<char>(c);
                if (key == current) continue;
                if (bound_action(k.mapping.bindings, key)) continue;
                out.push_back(Action::rebind(g, key));
            }
        }
        out.push_back(Action::simple(ActionKind::ConfirmMapping));
        return;
    }
    out.push_back(Action::simple(ActionKind::MenuOpen));
    if (k.mapping.confirmed) offer_moves(s, out, true);
}

std::optional<ErrorCode> keymap_diagnose(const SessionState& s, const Action& a) {
    const KeymapProgress& k = s.keymap;
    if (a.kind == ActionKind::Move && !k.preselection_pending && !k.menu_open && !k.mapping.confirmed &&
        is_neighbor(s, a.target)) {
        return ErrorCode::MovementLocked;
    }
    if (a.kind == ActionKind::Rebind && k.menu_open && a.key.size() == 1 && is_bindable_key(a.key[0])) {
        auto g = parse_game_action(a.target);
        auto holder = bound_action(k.mapping.bindings, a.key[0]);
        if (g && holder && *holder != *g) return ErrorCode::DuplicateKeyBinding;
    }
    return std::nullopt;
}

void keymap_transition(Tx& tx, const Action& a) {
    SessionState& s = tx.state();
    KeymapProgress& k = s.keymap;
    switch (a.kind) {
        case ActionKind::AcceptPreselection:
            k.preselection_pending = false;
            k.accepted_preselection = true;
            k.mapping.bindings = kBadDefaultBindings;
            k.mapping.confirmed = true;
            tx.system("preselection_accepted", {{"bindings", bindings_json(k.mapping.bindings)}});
            tx.narrate("keymap_accepted");
            break;
        case ActionKind::DeclinePreselection:
            k.preselection_pending = false;
            k.mapping.confirmed = false;
            tx.system("preselection_declined");
            tx.narrate("keymap_declined");
            break;
        case ActionKind::MenuOpen:
            k.menu_open = true;
            tx.system("menu_opened", {{"bindings", bindings_json(k.mapping.bindings)}});
            tx.narrate("keymap_menu");
            break;
        case ActionKind::Rebind: {
            const GameAction g = *parse_game_action(a.target);
            const char previous = binding_for(k.mapping.bindings, g);
            k.mapping.bindings[static_cast<std::size_t>(g)] = a.key[0];
            ++k.rebinds;
            tx.system("key_rebound",
                      {{"game_action", a.target}, {"key", a.key}, {"previous", std::string(1, previous)}});
            break;
        }
        case ActionKind::ConfirmMapping:
            k.menu_open = false;
            k.mapping.confirmed = true;
            tx.system("mapping_confirmed", {{"bindings", bindings_json(k.mapping.bindings)}});
            tx.narrate("keymap_confirmed");
            break;
        case ActionKind::Move:
            if (a.target == kExitNode) {
                if (s.loop.in_replay_pass) {
                    loop_fade_return(tx);
                } else {
                    enter_room(tx, RoomId::Shop);
                }
            } else {
                move_to(tx, a.target);
            }
            break;
        default: break;
    }
}

// --- Sneaky Shop ------------------------------------------------------------

std::optional<std::string> sneak_inject(Cart& cart, std::span<const CatalogItem> catalog, const CounterRng& rng) {
    if (cart.player_adds == 0 || cart.player_adds % 2 != 0) return std::nullopt;
    std::vector<const CatalogItem*> decoys;
    for (const auto& c : catalog) {
        if (std::find(cart.required.begin(), cart.required.end(), c.id) == cart.required.end()) {
            decoys.push_back(&c);
        }
    }
    if (decoys.empty()) return std::nullopt;
    const auto pick = rng.uniform("sneak", static_cast<uint64_t>(cart.player_adds), decoys.size());
    cart.entries.push_back(decoys[pick]->id);
    return decoys[pick]->id;
}

bool same_multiset(std::vector<std::string> a, std::vector<std::string> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

Disinfection disinfect_check(Cart& cart) {
    if (same_multiset(cart.entries, cart.required)) {
        cart.accepted = true;
        return Disinfection::Accept;
    }
    cart.entries.clear();
    ++cart.attempts;
    return Disinfection::Reject;
}

void shop_actions(const SessionState& s, const ContentPack& pack, std::vector<Action>& out) {
    const Cart& c = s.cart;
    if (s.location == "vending_machine" && !c.accepted) {
        for (const auto& item : pack.catalog) out.push_back(Action::cart_add(item.id));
        std::vector<std::string> distinct;
        for (const auto& e : c.entries) {
            if (std::find(distinct.begin(), distinct.end(), e) == distinct.end()) distinct.push_back(e);
        }
        for (const auto& e : distinct) out.push_back(Action::cart_remove(e));
        if (!c.entries.empty()) out.push_back(Action::simple(ActionKind::Checkout));
    }
    offer_moves(s, out, c.accepted);
}

std::optional<ErrorCode> shop_diagnose(const SessionState&, const Action&) { return std::nullopt; }

void shop_transition(Tx& tx, const Action& a) {
    SessionState& s = tx.state();
    Cart& c = s.cart;
    switch (a.kind) {
        case ActionKind::CartAdd:
            c.entries.push_back(a.target);
            ++c.player_adds;
            tx.system("cart_added", {{"item", a.target}});
            if (auto injected = sneak_inject(c, tx.pack().catalog, tx.rng())) {
                tx.system("sneak_injected", {{"item", *injected}});
            }
            break;
        case ActionKind::CartRemove: {
            auto it = std::find(c.entries.begin(), c.entries.end(), a.target);
            c.entries.erase(it);
            tx.system("cart_removed", {{"item", a.target}});
            break;
        }
        case ActionKind::Checkout: {
            const json cart = c.entries;
            const Disinfection d = disinfect_check(c);
            const bool ok = d == Disinfection::Accept;
            tx.system("checkout", {{"result", ok ? "Accept" : "Reject"}, {"cart", cart}, {"attempts", c.attempts}});
            tx.narrate(ok ? "shop_accepted" : "shop_rejected");
            break;
        }
        case ActionKind::Move:
            if (a.target == kExitNode) {
                enter_room(tx, RoomId::TextWalls);
            } else {
                move_to(tx, a.target);
            }
            break;
        default: break;
    }
}

// --- Walls of Text ----------------------------------------------------------

std::pair<int, int> fragment_levers(int screen) { return {2 * screen - 1, 2 * screen}; }

bool lever_door_opens(const std::array<bool, 8>& levers, const std::array<bool, 8>& target) {
    return levers == target;
}

bool answer_matches(std::string_view expected, std::string_view attempt) {
    const auto want = lowered_trimmed(expected);
    return !want.empty() && want == lowered_trimmed(attempt);
}

int solved_count(const TextWallsProgress& p) {
    return static_cast<int>(std::count(p.solved.begin(), p.solved.end(), true));
}

void textwalls_actions(const SessionState& s, std::vector<Action>& out) {
    const TextWallsProgress& p = s.textwalls;
    if (s.location == "screens") {
        for (int i = 1; i <= 4; ++i) out.push_back(Action::inspect(screen_target(i)));
        out.push_back(Action::press_key(""));
        for (int i = 1; i <= 4; ++i) {
            if (p.puzzle_revealed[i - 1] && !p.solved[i - 1]) out.push_back(Action::answer_puzzle(i, ""));
        }
        for (int i = 1; i <= 8; ++i) {
            out.push_back(Action::set_lever(i, true));
            out.push_back(Action::set_lever(i, false));
        }
        if (!p.door_open) out.push_back(Action::simple(ActionKind::TryDoor));
    }
    offer_moves(s, out, p.door_open);
}

std::optional<ErrorCode> textwalls_diagnose(const SessionState&, const Action&) { return std::nullopt; }

void textwalls_transition(Tx& tx, const Action& a) {
    SessionState& s = tx.state();
    TextWallsProgress& p = s.textwalls;
    const auto& screens = tx.pack().screens;
    switch (a.kind) {
        case ActionKind::Inspect: {
            const int i = std::stoi(a.target.substr(7));
            const ScreenText& scr = screens[i - 1];
            p.read[i - 1] = true;
            tx.system("screen_read", {{"screen", i}, {"title", scr.title}, {"body", scr.body}});
            break;
        }
        case ActionKind::PressKey: {
            json revealed = json::array();
            for (int i = 1; i <= 4; ++i) {
                const ScreenText& scr = screens[i - 1];
                if (p.read[i - 1] && !p.puzzle_revealed[i - 1] && answer_matches(scr.hidden_key, a.key)) {
                    p.puzzle_revealed[i - 1] = true;
                    revealed.push_back(i);
                }
            }
            tx.system("key_pressed", {{"key", a.key}, {"revealed", revealed}});
            for (const auto& i : revealed) {
                const int n = i.get<int>();
                tx.system("puzzle_revealed", {{"screen", n}, {"puzzle", screens[n - 1].puzzle}});
                tx.narrate("textwalls_puzzle", {{"screen", std::to_string(n)}, {"puzzle", screens[n - 1].puzzle}});
            }
            break;
        }
        case ActionKind::AnswerPuzzle: {
            const int i = a.index;
            if (answer_matches(screens[i - 1].answer, a.text)) {
                p.solved[i - 1] = true;
                const auto [la, lb] = fragment_levers(i);
                const auto& target = s.secrets.lever_target;
                const char* pa = target[la - 1] ? "up" : "down";
                const char* pb = target[lb - 1] ? "up" : "down";
                tx.system("puzzle_solved",
                          {{"screen", i}, {"fragment", {{{"lever", la}, {"up", target[la - 1]}},
                                                        {{"lever", lb}, {"up", target[lb - 1]}}}}});
                tx.narrate("textwalls_fragment", {{"screen", std::to_string(i)},
                                                  {"lever_a", std::to_string(la)},
                                                  {"pos_a", pa},
                                                  {"lever_b", std::to_string(lb)},
                                                  {"pos_b", pb}});
            } else {
                tx.system("puzzle_wrong", {{"screen", i}, {"error", std::string(error_name(ErrorCode::WrongAnswer))}});
                tx.narrate("textwalls_wrong");
            }
            break;
        }
        case ActionKind::SetLever:
            p.levers[a.index - 1] = a.up;
            tx.system("lever_set", {{"lever", a.index}, {"up", a.up}});
            break;
        case ActionKind::TryDoor:
            ++p.door_attempts;
            if (lever_door_opens(p.levers, s.secrets.lever_target)) {
                p.door_open = true;
                tx.system("door_opened", {{"solved", solved_count(p)}, {"guessed", solved_count(p) < 4}});
                tx.narrate("textwalls_door_open");
            } else {
                tx.system("door_locked", {{"solved", solved_count(p)},
                                          {"error", std::string(error_name(ErrorCode::DoorLocked))}});
                tx.narrate("textwalls_door_locked");
            }
            break;
        case ActionKind::Move:
            if (a.target == kExitNode) {
                enter_room(tx, RoomId::Hallway);
            } else {
                move_to(tx, a.target);
            }
            break;
        default: break;
    }
}

}  // namespace trickery
