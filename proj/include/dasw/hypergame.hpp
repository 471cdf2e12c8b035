#pragma once

#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dasw/action_set.hpp"
#include "dasw/game.hpp"
#include "dasw/inference.hpp"
#include "vendor_json.hpp"

namespace dasw {

/// Dense indices for the perception sets P2 can hold. Index 0 is always the
/// initial perception; the rest are numbered in discovery order.
class PerceptionTable {
 public:
  std::uint32_t intern(const ActionSet& set);
  std::optional<std::uint32_t> find(const ActionSet& set) const;
  const ActionSet& set(std::uint32_t index) const { return sets_.at(index); }
  std::size_t size() const { return sets_.size(); }
  const std::vector<ActionSet>& sets() const { return sets_; }

 private:
  std::vector<ActionSet> sets_;
  std::unordered_map<ActionSet, std::uint32_t, ActionSetHash> index_;
};

struct HVertex {
  StateId state = 0;
  std::uint32_t perception = 0;

  friend bool operator==(const HVertex&, const HVertex&) = default;
};

struct HEdge {
  ActionId action = 0;
  VertexId to = 0;
};

enum class HypergameMode {
  /// Only vertices reachable from (initial, x0).
  kReachable,
  /// Every base state paired with every perception set reachable from x0 by
  /// repeated inference over actions that label some transition.
  kProduct,
};

/// Game-state sequence with the connecting actions (one fewer than states).
struct Run {
  std::vector<StateId> states;
  std::vector<ActionId> actions;
};

/// Product of base-game states with P2's perception index. P1 moves update
/// the perception through the inference mechanism; P2 moves keep it.
class Hypergame {
 public:
  const GameGraph& base() const { return *base_; }
  std::shared_ptr<const GameGraph> base_ptr() const { return base_; }
  const PerceptionTable& perceptions() const { return ptable_; }
  const InferenceMechanism& mechanism() const { return mechanism_; }
  HypergameMode mode() const { return mode_; }

  std::size_t num_vertices() const { return vertices_.size(); }
  const HVertex& vertex(VertexId v) const { return vertices_.at(v); }
  const std::vector<HVertex>& vertices() const { return vertices_; }
  Player owner(VertexId v) const { return base_->owner(vertices_[v].state); }
  bool is_final(VertexId v) const { return base_->is_final(vertices_[v].state); }
  const ActionSet& perception(VertexId v) const { return ptable_.set(vertices_[v].perception); }

  /// Successors in action-index order.
  std::span<const HEdge> successors(VertexId v) const {
    return {edges_.data() + offsets_[v], edges_.data() + offsets_[v + 1]};
  }
  VertexId successor(VertexId v, ActionId a) const;
  std::size_t num_edges() const { return edges_.size(); }

  std::optional<VertexId> find(StateId s, std::uint32_t perception) const;
  /// kNone when the hypergame was built without an initial state.
  VertexId initial() const { return initial_; }

  /// "(s2,1)"-style display name.
  std::string vertex_name(VertexId v) const;

  friend Hypergame build_hypergame(std::shared_ptr<const GameGraph>, const ActionSet&, const InferenceMechanism&,
                                   HypergameMode);
  friend Hypergame hypergame_from_json(const nlohmann::json&, std::shared_ptr<const GameGraph>);

 private:
  void index_edges(std::vector<std::vector<HEdge>> adjacency);

  std::shared_ptr<const GameGraph> base_;
  InferenceMechanism mechanism_;
  HypergameMode mode_ = HypergameMode::kReachable;
  PerceptionTable ptable_;
  std::vector<HVertex> vertices_;
  std::unordered_map<std::uint64_t, VertexId> lookup_;
  std::vector<std::size_t> offsets_;
  std::vector<HEdge> edges_;
  VertexId initial_ = kNone;
};

/// Builds the dynamic hypergame. In kReachable mode the exploration is
/// breadth-first from (initial, x0) and requires the base game to have an
/// initial state (GameError otherwise).
Hypergame build_hypergame(std::shared_ptr<const GameGraph> game, const ActionSet& x0, const InferenceMechanism& mech,
                          HypergameMode mode = HypergameMode::kReachable);

inline Hypergame build_hypergame(const GameGraph& game, const ActionSet& x0, const InferenceMechanism& mech,
                                 HypergameMode mode = HypergameMode::kReachable) {
  return build_hypergame(std::make_shared<const GameGraph>(game), x0, mech, mode);
}

/// Projects a connected vertex sequence onto game states. The connecting
/// action is the lowest-index one. Throws GameError on a disconnected input.
Run project_run(const Hypergame& h, std::span<const VertexId> hrun);

/// Export format: perception sets, vertices `{id, state, perception:[labels]}`,
/// transitions and the inference spec. Loading checks every edge against the
/// base game and the inference rule.
nlohmann::json hypergame_to_json(const Hypergame& h);
Hypergame hypergame_from_json(const nlohmann::json& doc, std::shared_ptr<const GameGraph> base);

}  // namespace dasw
