#include <doctest.h>

#include "dasw/attractor.hpp"
#include "support.hpp"

using namespace dasw;
using namespace dasw::testing;

TEST_CASE("four-state game: Win1 = {s0, s1}") {
  WinRegions r = asw(four_state_game());
  CHECK(r.win1_states() == std::vector<StateId>{s0, s1});
  CHECK(r.win2_states() == std::vector<StateId>{s2, s3});
  CHECK(r.level[s0] == 0);
  CHECK(r.level[s1] == 1);
  CHECK(r.level[s2] == kUnreached);
  CHECK(r.rounds == 1);
}

TEST_CASE("four-state game restricted to {a2}, only s0 is winning") {
  WinRegions r = asw(restrict(four_state_game(), ActionSet{a2}));
  CHECK(r.win1_states() == std::vector<StateId>{s0});
  CHECK(r.win2_states() == std::vector<StateId>{s1, s2, s3});
}

TEST_CASE("everything final") {
  GameGraph g = four_state_game();
  auto states = g.states();
  for (auto& s : states) s.final = true;
  WinRegions r = asw(GameGraph(states, g.actions(), g.transitions(), s2));
  CHECK(r.win1_states().size() == 4);
  for (auto l : r.level) CHECK(l == 0);
}

TEST_CASE("dead ends outside F are losing for P1") {
  // s0 P2 dead end, s1 P1 whose only move goes there.
  std::vector<StateInfo> states{{Player::P2, false, "x"}, {Player::P1, false, "y"}, {Player::P1, true, "f"}};
  std::vector<ActionInfo> actions{{Player::P1, "a"}, {Player::P2, "b"}};
  WinRegions r = asw(GameGraph(states, actions, {{1, 0, 0}}, 1));
  CHECK(r.win1_states() == std::vector<StateId>{2});
}

TEST_CASE("asw strategy") {
  GameGraph g = four_state_game();
  WinRegions r = asw(g);
  auto strat = asw_strategy(g, r);
  CHECK(strat[s1] == a1);
  CHECK(strat[s0] == kNone);
  CHECK(strat[s3] == kNone);
  CHECK(asw_decreasing_actions(g, r, s1) == std::vector<ActionId>{a1});

  GameGraph f2 = restrict(g, ActionSet{a2});
  CHECK(asw_strategy(f2, asw(f2))[s1] == kNone);
}

TEST_CASE("worklist matches literal rounds and brute force on random games") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto inst = random_instance(seed);
    CAPTURE(seed);
    WinRegions fast = asw(inst.game);
    WinRegions slow = asw_by_rounds(inst.game);
    REQUIRE(fast.win1 == slow.win1);
    REQUIRE(fast.level == slow.level);
    REQUIRE(fast.rounds == slow.rounds);
    REQUIRE(fast.win1 == brute_force_win1(inst.game));
    for (StateId s = 0; s < inst.game.num_states(); ++s) REQUIRE(fast.win2[s] == !fast.win1[s]);
  }
}

TEST_CASE("strategy strictly decreases the level") {
  for (std::uint64_t seed = 300; seed < 500; ++seed) {
    auto inst = random_instance(seed);
    const auto& g = inst.game;
    WinRegions r = asw(g);
    auto strat = asw_strategy(g, r);
    for (StateId s = 0; s < g.num_states(); ++s) {
      if (!r.win1[s] || g.is_final(s)) continue;
      if (g.owner(s) == Player::P1) {
        REQUIRE(strat[s] != kNone);
        REQUIRE(r.level[g.successor(s, strat[s])] < r.level[s]);
      } else {
        for (const Edge& e : g.successors(s)) REQUIRE(r.level[e.to] < r.level[s]);
      }
    }
  }
}

TEST_CASE("Win1 is monotone in the P1 alphabet") {
  for (std::uint64_t seed = 500; seed < 700; ++seed) {
    auto inst = random_instance(seed);
    const auto& g = inst.game;
    ActionSet all = g.p1_action_set();
    auto small = asw(restrict(g, inst.x0)).win1;
    auto big = asw(restrict(g, inst.x0 | ActionSet{g.p1_actions().front()})).win1;
    auto full = asw(restrict(g, all)).win1;
    for (StateId s = 0; s < g.num_states(); ++s) {
      REQUIRE((!small[s] || big[s]));
      REQUIRE((!big[s] || full[s]));
    }
  }
}
