#pragma once

#include <vector>

#include "dasw/game.hpp"

namespace dasw {

inline constexpr std::uint32_t kUnreached = kNone;

/// Winning regions of a reachability game. Turn-based deterministic
/// reachability games are determined, so win2 is the complement of win1;
/// almost-sure and sure winning coincide.
struct WinRegions {
  std::vector<bool> win1;
  std::vector<bool> win2;
  /// Attractor layer at which a state joined win1 (0 for final states),
  /// kUnreached for states of win2.
  std::vector<std::uint32_t> level;
  /// Number of attractor rounds that added at least one state.
  std::uint32_t rounds = 0;

  std::vector<StateId> win1_states() const;
  std::vector<StateId> win2_states() const;
};

/// Almost-sure winning region of P1 (the attractor of the final set).
///
/// Pre1(Z) = P1 states with some defined action into Z.
/// Pre2(Z) = P2 states with at least one defined action, all of them into Z.
/// A state with no outgoing transition is a dead end and is never attracted
/// unless it is final: a play stuck outside F is won by P2.
///
/// Worklist over reverse edges, O(|S| + |E|).
WinRegions asw(const GameGraph& game);

/// Literal set iteration Z_{k+1} = Z_k ∪ Pre1(Z_k) ∪ Pre2(Z_k). Quadratic;
/// kept as a reference implementation for differential testing.
WinRegions asw_by_rounds(const GameGraph& game);

/// Rank-decreasing P1 strategy on win1 \ F: the lowest-index action whose
/// successor sits on a strictly smaller attractor level. kNone elsewhere.
std::vector<ActionId> asw_strategy(const GameGraph& game, const WinRegions& regions);

/// All level-decreasing actions at `s` (empty outside win1 \ F or at P2 states).
std::vector<ActionId> asw_decreasing_actions(const GameGraph& game, const WinRegions& regions, StateId s);

}  // namespace dasw
