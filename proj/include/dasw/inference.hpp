#pragma once

#include <span>
#include <vector>

#include "dasw/action_set.hpp"
#include "dasw/game.hpp"
#include "vendor_json.hpp"

namespace dasw {

/// How P2 revises his perceived subset of P1's actions after watching P1 move.
///
/// UNION adds the observed action. CLOSURE adds a per-action implied set
/// (which always contains the action itself). Both only ever grow the
/// perception, and P2's own actions never change it.
class InferenceMechanism {
 public:
  enum class Kind { kUnion, kClosure };

  static InferenceMechanism union_rule(const GameGraph& game);
  /// `implied[a]` lists what observing `a` reveals; `a` is added to its own
  /// entry if missing. Actions without an entry reveal only themselves.
  static InferenceMechanism closure_rule(const GameGraph& game, std::vector<std::pair<ActionId, ActionSet>> implied);

  Kind kind() const { return kind_; }
  const ActionSet& p1_actions() const { return a1_; }
  /// What observing `a` reveals (just {a} under UNION).
  const ActionSet& implied(ActionId a) const;

  /// η(x, a). Throws GameError when `a` is not a P1 action.
  ActionSet step(const ActionSet& x, ActionId a) const;

  /// Left fold of `step` over `history`.
  ActionSet infer(const ActionSet& x0, std::span<const ActionId> history) const;

 private:
  Kind kind_ = Kind::kUnion;
  ActionSet a1_;
  std::vector<ActionSet> implied_;
};

/// Inference sidecar file: P2's initial perception plus the update rule.
///
///   {"kind": "union", "x0": ["a2"]}
///   {"kind": "closure", "x0": ["N","E"], "map": {"NE": ["N","E","S","W","NE","NW","SW"]}}
///
/// Actions are named by label or by decimal id.
struct InferenceSpec {
  InferenceMechanism mechanism;
  ActionSet x0;
};

InferenceSpec inference_from_json(const nlohmann::json& doc, const GameGraph& game);
nlohmann::json inference_to_json(const InferenceSpec& spec, const GameGraph& game);

/// Parses "a1,a2" style action lists against the game's labels/ids.
ActionSet parse_action_list(std::string_view text, const GameGraph& game);
nlohmann::json action_set_to_json(const ActionSet& set, const GameGraph& game);

}  // namespace dasw
