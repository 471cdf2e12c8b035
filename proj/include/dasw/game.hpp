#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dasw/action_set.hpp"
#include "dasw/types.hpp"

namespace dasw {

struct StateInfo {
  Player owner = Player::P1;
  bool final = false;
  std::optional<std::string> label;
};

struct ActionInfo {
  Player owner = Player::P1;
  std::optional<std::string> label;
};

struct Transition {
  StateId from = 0;
  ActionId action = 0;
  StateId to = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// A (successor-list entry) edge leaving a known state.
struct Edge {
  ActionId action = 0;
  StateId to = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Turn-based deterministic reachability arena.
///
/// States and actions are dense indices. Transitions are stored sorted by
/// (from, action) so every enumeration is reproducible. The constructor does
/// not reject broken inputs: `validate` reports them, and `load_game` refuses
/// to return an invalid game. Transitions whose source is out of range are
/// retained only so that `validate` can name them.
class GameGraph {
 public:
  GameGraph() = default;
  GameGraph(std::vector<StateInfo> states, std::vector<ActionInfo> actions,
            std::vector<Transition> transitions, std::optional<StateId> initial = std::nullopt);

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_actions() const { return actions_.size(); }

  const StateInfo& state(StateId s) const { return states_.at(s); }
  const ActionInfo& action(ActionId a) const { return actions_.at(a); }
  const std::vector<StateInfo>& states() const { return states_; }
  const std::vector<ActionInfo>& actions() const { return actions_; }
  const std::vector<Transition>& transitions() const { return transitions_; }

  Player owner(StateId s) const { return states_[s].owner; }
  bool is_final(StateId s) const { return states_[s].final; }
  std::optional<StateId> initial() const { return initial_; }

  /// P1's alphabet A1 and P2's alphabet A2, ascending. For a restricted game
  /// G(X) the P1 alphabet is X; the other P1 actions keep their ids.
  const std::vector<ActionId>& p1_actions() const { return a1_; }
  const std::vector<ActionId>& p2_actions() const { return a2_; }
  ActionSet p1_action_set() const { return ActionSet::of(a1_); }

  /// Outgoing edges in action-index order. Throws GameError on unknown ids.
  std::span<const Edge> successors(StateId s) const;

  /// T(s, a), or kNone if undefined.
  StateId successor(StateId s, ActionId a) const;

  /// Display name used in diagnostics and reports.
  std::string state_name(StateId s) const;
  std::string action_name(ActionId a) const;

  /// Looks up an action by label, falling back to a decimal id.
  std::optional<ActionId> find_action(std::string_view name) const;
  std::optional<StateId> find_state(std::string_view name) const;

  friend bool operator==(const GameGraph& a, const GameGraph& b);
  friend GameGraph restrict(const GameGraph& game, const ActionSet& x);

 private:
  std::vector<StateInfo> states_;
  std::vector<ActionInfo> actions_;
  std::vector<Transition> transitions_;
  std::optional<StateId> initial_;

  std::vector<ActionId> a1_;
  std::vector<ActionId> a2_;
  std::vector<std::size_t> offsets_;
  std::vector<Edge> edges_;
};

struct Violation {
  enum class Kind {
    kDanglingState,
    kDanglingAction,
    kPartition,
    kNondeterministic,
    kDuplicateLabel,
  };
  Kind kind;
  std::string message;
};

/// Lists every broken invariant; empty iff the game is well formed.
std::vector<Violation> validate(const GameGraph& game);

/// G(X): same states, owners and final set, P1's alphabet cut down to `x`
/// and every transition labeled by an action of A1 \ X dropped.
GameGraph restrict(const GameGraph& game, const ActionSet& x);

/// States reachable from `from` (forward closure over defined transitions).
std::vector<bool> reachable_states(const GameGraph& game, StateId from);

}  // namespace dasw
