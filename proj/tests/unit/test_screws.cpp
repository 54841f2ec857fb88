#include "support/helpers.hpp"

#include "trickery/bots.hpp"
#include "trickery/engine.hpp"
#include "trickery/screws.hpp"
#include "trickery/world.hpp"

#include <doctest.h>

using namespace trickery;
using namespace trickery::testing;

namespace {

const Engine& engine() {
    static const Engine e(default_pack());
    return e;
}

std::array<bool, 5> vector_of(int mask) {
    std::array<bool, 5> g{};
    for (int i = 0; i < 5; ++i) g[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    return g;
}

int count_kind(const std::vector<Event>& events, std::string_view kind) {
    return static_cast<int>(std::count_if(events.begin(), events.end(), [&](const Event& e) { return e.kind == kind; }));
}

}  // namespace

TEST_SUITE("screws") {

TEST_CASE("the keypad spends exactly four screws or reports the shortfall") {
    ScrewLedger six;
    six.held = 6;
    CHECK(keypad_attempt(six) == KeypadResult{true, 0});
    CHECK(six.held == 2);
    CHECK(six.keypad_open);

    ScrewLedger three;
    three.held = 3;
    CHECK(keypad_attempt(three) == KeypadResult{false, 1});
    CHECK(three.held == 3);
    CHECK(three.need_screws_seen);
    CHECK_FALSE(three.keypad_open);

    ScrewLedger four;
    four.held = 4;
    CHECK(keypad_attempt(four) == KeypadResult{true, 0});
    CHECK(four.held == 0);
}

TEST_CASE("the cache needs a refusal first and empties after one use") {
    ScrewLedger l;
    l.held = 1;
    auto early = collect_cache(l);
    REQUIRE_FALSE(early.ok());
    CHECK(early.error().code == ErrorCode::ActionNotAvailable);
    CHECK(l.held == 1);
    keypad_attempt(l);
    auto first = collect_cache(l);
    REQUIRE(first.ok());
    CHECK(*first == kCacheScrews);
    CHECK(l.held == 5);
    auto second = collect_cache(l);
    REQUIRE_FALSE(second.ok());
    CHECK(second.error().code == ErrorCode::CacheEmpty);
    CHECK(l.held == 5);
}

TEST_CASE("collecting through the engine before any refusal or twice is refused") {
    const SessionState obstacle = state_in_room(engine(), 3, RoomId::Obstacle);
    CHECK(engine().apply(obstacle, Action::simple(ActionKind::CollectCache)).error().code == ErrorCode::ActionNotAvailable);

    Walkthrough giver;
    giver.give = {true, true, true, true, true};
    giver.quit_at_loop = false;
    SessionState s = play(engine(), engine().new_session(3), giver,
                          [](const SessionState& st) { return st.inventory.cache_collected; }).state;
    REQUIRE(s.inventory.cache_collected);
    REQUIRE(s.location == "screw_cache");
    auto again = engine().apply(s, Action::simple(ActionKind::CollectCache));
    REQUIRE_FALSE(again.ok());
    CHECK(again.error().code == ErrorCode::CacheEmpty);
}

TEST_CASE("GiveScrew is not offered with nothing left to give") {
    SessionState s = play(engine(), engine().new_session(4), Walkthrough{},
                          [](const SessionState& st) { return st.inventory.pending_prompt.has_value(); }).state;
    REQUIRE(s.inventory.pending_prompt);
    CHECK(is_offered(engine().available_actions(s), Action::simple(ActionKind::GiveScrew)));
    s.inventory.held = 0;
    const auto available = engine().available_actions(s);
    CHECK_FALSE(is_offered(available, Action::simple(ActionKind::GiveScrew)));
    CHECK(is_offered(available, Action::simple(ActionKind::DeclineScrew)));
    CHECK(engine().apply(s, Action::simple(ActionKind::GiveScrew)).error().code == ErrorCode::ActionNotAvailable);
}

TEST_CASE("a pending prompt blocks everything but the answer") {
    const SessionState s = play(engine(), engine().new_session(4), Walkthrough{},
                                [](const SessionState& st) { return st.inventory.pending_prompt.has_value(); }).state;
    REQUIRE(s.inventory.pending_prompt);
    CHECK(*s.inventory.pending_prompt == kNagTriggers[0]);
    for (const Action& a : engine().available_actions(s)) {
        CHECK((a.kind == ActionKind::GiveScrew || a.kind == ActionKind::DeclineScrew));
    }
    CHECK(engine().apply(s, Action::move("vending_machine")).error().code == ErrorCode::ActionNotAvailable);
}

TEST_CASE("the five prompts come in encounter order, one per room from the shop on") {
    const Played p = play(engine(), engine().new_session(6), Walkthrough{},
                          [](const SessionState& s) { return s.outcome != Outcome::Running; });
    std::vector<std::string> prompts;
    std::vector<RoomId> rooms;
    for (const Event& e : p.events) {
        if (e.kind == "nag_prompt") {
            prompts.push_back(e.payload["trigger"]);
            rooms.push_back(e.room);
        }
    }
    CHECK(prompts == std::vector<std::string>(kNagTriggers.begin(), kNagTriggers.end()));
    CHECK(rooms == std::vector<RoomId>{RoomId::Shop, RoomId::TextWalls, RoomId::Hallway, RoomId::Obstacle, RoomId::Loop});
}

TEST_CASE("all 32 give vectors: backtrack iff three or more given, keypad takes exactly four") {
    std::size_t decline_all_len = 0;
    std::size_t shortest_backtrack = SIZE_MAX;
    for (uint64_t seed : {1ULL, 17ULL}) {
        for (int mask = 0; mask < 32; ++mask) {
            Walkthrough w;
            w.give = vector_of(mask);
            const Played p = play(engine(), engine().new_session(seed), w,
                                  [](const SessionState& s) { return s.outcome != Outcome::Running; });
            REQUIRE(p.state.outcome == Outcome::Escaped);
            const int given = __builtin_popcount(static_cast<unsigned>(mask));
            CHECK(static_cast<int>(p.state.inventory.given_log.size()) == given);
            const bool backtracked = count_kind(p.events, "backtrack_started") > 0;
            CHECK_MESSAGE(backtracked == (given >= 3), "mask " << mask);
            CHECK(p.state.inventory.cache_collected == backtracked);
            CHECK(count_kind(p.events, "keypad_open") == 1);
            for (const Event& e : p.events) {
                if (e.kind == "keypad_open") CHECK(e.payload["spent"] == kKeypadCost);
            }
            const int expected_held = kStartingScrews - given + (backtracked ? kCacheScrews : 0) - kKeypadCost;
            CHECK(p.state.inventory.held == expected_held);
            if (mask == 0) decline_all_len = p.actions.size();
            if (backtracked) shortest_backtrack = std::min(shortest_backtrack, p.actions.size());
        }
        CHECK(decline_all_len < shortest_backtrack);
    }
}

TEST_CASE("the give-vector bot agrees with the walkthrough on every vector") {
    for (int mask = 0; mask < 32; ++mask) {
        BotConfig config;
        config.policy = Policy::GiveVector;
        config.give = vector_of(mask);
        auto run = run_policy(engine(), config, 23);
        REQUIRE_MESSAGE(run.ok(), "mask " << mask);
        const int given = __builtin_popcount(static_cast<unsigned>(mask));
        CHECK(static_cast<int>(run->final_state.inventory.given_log.size()) == given);
        CHECK((count_kind(run->events, "backtrack_started") > 0) == (given >= 3));
        CHECK(run->final_state.outcome == Outcome::Escaped);
    }
}

}  // TEST_SUITE
