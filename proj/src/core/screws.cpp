#include "trickery/screws.hpp"

#include "trickery/world.hpp"

namespace trickery {

namespace {

// What the narrator "fixes" with a donated screw. Nothing here changes play.
std::string_view benefit_for(std::string_view trigger_id) {
    if (trigger_id == "nag_shop_door") return "the shop door stops squeaking";
    if (trigger_id == "nag_textwalls_monitor") return "the monitor stops flickering";
    if (trigger_id == "nag_hallway_lamp") return "the lamp glows a little brighter";
    if (trigger_id == "nag_obstacle_teleporter") return "a teleporter hums more quietly";
    if (trigger_id == "nag_loop_hinge") return "the hinge no longer creaks";
    return "nothing noticeable";
}

}  // namespace

bool nag_trigger(Tx& tx, std::string_view trigger_id) {
    SessionState& s = tx.state();
    ScrewLedger& inv = s.inventory;
    const std::string id(trigger_id);
    if (auto it = inv.prompted_pass.find(id); it != inv.prompted_pass.end() && it->second == s.loop_pass()) {
        return false;
    }
    inv.prompted_pass[id] = s.loop_pass();
    inv.pending_prompt = id;
    tx.system("nag_prompt", {{"trigger", id}, {"held", inv.held}});
    tx.narrate(trigger_id, {{"held", std::to_string(inv.held)}});
    return true;
}

std::optional<std::string> nag_trigger_at(const ContentPack& pack, RoomId room, std::string_view node) {
    for (auto id : kNagTriggers) {
        const ScriptEntry* e = pack.script(id);
        if (e && e->room == room && e->node == node) return std::string(id);
    }
    return std::nullopt;
}

KeypadResult keypad_attempt(ScrewLedger& ledger) {
    if (ledger.held >= kKeypadCost) {
        ledger.held -= kKeypadCost;
        ledger.keypad_open = true;
        return {true, 0};
    }
    ledger.need_screws_seen = true;
    return {false, kKeypadCost - ledger.held};
}

Result<int> collect_cache(ScrewLedger& ledger) {
    if (ledger.cache_collected) return fail(ErrorCode::CacheEmpty, "the screw box is empty");
    if (!ledger.need_screws_seen) return fail(ErrorCode::ActionNotAvailable, "there is no screw box yet");
    ledger.held += kCacheScrews;
    ledger.cache_collected = true;
    return kCacheScrews;
}

void screw_prompt_actions(const SessionState& s, std::vector<Action>& out) {
    if (!s.inventory.pending_prompt) return;
    if (s.inventory.held > 0) out.push_back(Action::simple(ActionKind::GiveScrew));
    out.push_back(Action::simple(ActionKind::DeclineScrew));
}

void screw_prompt_transition(Tx& tx, const Action& a) {
    SessionState& s = tx.state();
    ScrewLedger& inv = s.inventory;
    const std::string trigger = *inv.pending_prompt;
    inv.pending_prompt.reset();
    if (a.kind == ActionKind::GiveScrew) {
        --inv.held;
        inv.given_log.push_back({s.room, trigger});
        tx.system("screw_given", {{"trigger", trigger},
                                  {"held", inv.held},
                                  {"given", inv.given_log.size()},
                                  {"benefit", benefit_for(trigger)}});
        tx.narrate("nag_thanks", {{"held", std::to_string(inv.held)}});
    } else {
        tx.system("screw_declined", {{"trigger", trigger}, {"held", inv.held}});
        tx.narrate("nag_declined");
    }
}

}  // namespace trickery
