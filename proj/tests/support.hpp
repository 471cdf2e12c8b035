#pragma once

// Fixtures and independent oracles shared by the unit tests and the
// acceptance runner.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dasw/dasw.hpp"
#include "dasw/game.hpp"
#include "dasw/hypergame.hpp"
#include "dasw/inference.hpp"

namespace dasw::testing {

// Four-state game: s0 (P2, final), s1 (P1), s2 (P2, initial), s3 (P1).
// Actions a1, a2 (P1), b1, b2 (P2).
enum Fig1State : StateId { s0 = 0, s1 = 1, s2 = 2, s3 = 3 };
enum Fig1Action : ActionId { a1 = 0, a2 = 1, b1 = 2, b2 = 3 };

inline GameGraph four_state_game() {
  std::vector<StateInfo> states{
      {Player::P2, true, "s0"}, {Player::P1, false, "s1"}, {Player::P2, false, "s2"}, {Player::P1, false, "s3"}};
  std::vector<ActionInfo> actions{{Player::P1, "a1"}, {Player::P1, "a2"}, {Player::P2, "b1"}, {Player::P2, "b2"}};
  std::vector<Transition> t{{s1, a1, s0}, {s1, a2, s2}, {s2, b1, s1}, {s2, b2, s3}, {s3, a1, s2}, {s3, a2, s2}};
  return GameGraph(std::move(states), std::move(actions), std::move(t), s2);
}

inline Hypergame four_state_hypergame() {
  GameGraph g = four_state_game();
  return build_hypergame(g, ActionSet{a2}, InferenceMechanism::union_rule(g));
}

inline VertexId at(const Hypergame& h, StateId s, const ActionSet& perception) {
  auto p = h.perceptions().find(perception);
  if (!p) return kNone;
  return h.find(s, *p).value_or(kNone);
}

inline std::vector<bool> indicator(std::size_t n, std::initializer_list<std::uint32_t> ids) {
  std::vector<bool> out(n, false);
  for (auto i : ids) out[i] = true;
  return out;
}

struct RandomInstance {
  GameGraph game;
  ActionSet x0;
  std::uint64_t seed = 0;
};

// 4–12 states, 2–4 actions per side; each state's owner-side action is
// defined with probability ~0.7 and points to a uniform target. One or two
// final states; the initial state is drawn uniformly.
inline RandomInstance random_instance(std::uint64_t seed, std::uint32_t min_states = 4, std::uint32_t max_states = 12) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::uint32_t lo, std::uint32_t hi) { return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng); };
  const std::uint32_t n = uniform(min_states, max_states);
  const std::uint32_t k1 = uniform(2, 4);
  const std::uint32_t k2 = uniform(2, 4);
  std::vector<StateInfo> states(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    states[s].owner = uniform(0, 1) == 0 ? Player::P1 : Player::P2;
    states[s].label = "s" + std::to_string(s);
  }
  const std::uint32_t finals = uniform(1, 2);
  for (std::uint32_t i = 0; i < finals; ++i) states[uniform(0, n - 1)].final = true;
  std::vector<ActionInfo> actions;
  for (std::uint32_t a = 0; a < k1; ++a) actions.push_back({Player::P1, "a" + std::to_string(a)});
  for (std::uint32_t b = 0; b < k2; ++b) actions.push_back({Player::P2, "b" + std::to_string(b)});
  std::vector<Transition> t;
  for (std::uint32_t s = 0; s < n; ++s) {
    const bool p1 = states[s].owner == Player::P1;
    const std::uint32_t first = p1 ? 0 : k1;
    const std::uint32_t k = p1 ? k1 : k2;
    for (std::uint32_t a = first; a < first + k; ++a) {
      if (uniform(0, 9) < 7) t.push_back({s, a, uniform(0, n - 1)});
    }
  }
  RandomInstance out;
  out.seed = seed;
  const StateId init = uniform(0, n - 1);
  out.game = GameGraph(std::move(states), std::move(actions), std::move(t), init);
  for (std::uint32_t a = 0; a < k1; ++a)
    if (uniform(0, 1) == 1) out.x0.insert(a);
  return out;
}

// Win1 by enumerating every memoryless P1 strategy (memoryless strategies
// suffice for reachability). For a fixed P1 choice, P2 escapes from s iff s
// reaches, avoiding F, a dead end or a cycle: the greatest fixed point of
// non-final states with a kept successor (P1: the chosen one, P2: any).
inline std::vector<bool> brute_force_win1(const GameGraph& g) {
  const std::size_t n = g.num_states();
  std::vector<StateId> p1_states;
  for (StateId s = 0; s < n; ++s)
    if (g.owner(s) == Player::P1 && !g.is_final(s) && !g.successors(s).empty()) p1_states.push_back(s);
  std::vector<std::size_t> choice(p1_states.size(), 0);
  std::vector<StateId> chosen(n, kNone);
  std::vector<bool> win(n, false);
  for (;;) {
    for (std::size_t i = 0; i < p1_states.size(); ++i) chosen[p1_states[i]] = g.successors(p1_states[i])[choice[i]].to;
    std::vector<bool> escape(n);
    for (StateId s = 0; s < n; ++s) escape[s] = !g.is_final(s);
    for (bool changed = true; changed;) {
      changed = false;
      for (StateId s = 0; s < n; ++s) {
        if (!escape[s]) continue;
        auto succ = g.successors(s);
        bool keep = succ.empty();
        if (!keep && g.owner(s) == Player::P1) keep = escape[chosen[s]];
        if (!keep && g.owner(s) == Player::P2)
          for (const Edge& e : succ) keep = keep || escape[e.to];
        if (!keep) {
          escape[s] = false;
          changed = true;
        }
      }
    }
    for (StateId s = 0; s < n; ++s)
      if (!escape[s]) win[s] = true;
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == g.successors(p1_states[i]).size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  return win;
}

}  // namespace dasw::testing
