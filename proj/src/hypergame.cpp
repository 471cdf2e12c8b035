#include "dasw/hypergame.hpp"

#include <algorithm>
#include <deque>

#include "dasw/game_io.hpp"

namespace dasw {

using nlohmann::json;

namespace {

std::uint64_t key(StateId s, std::uint32_t p) { return (std::uint64_t{p} << 32) | s; }

}  // namespace

std::uint32_t PerceptionTable::intern(const ActionSet& set) {
  auto [it, inserted] = index_.try_emplace(set, static_cast<std::uint32_t>(sets_.size()));
  if (inserted) sets_.push_back(set);
  return it->second;
}

std::optional<std::uint32_t> PerceptionTable::find(const ActionSet& set) const {
  auto it = index_.find(set);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId Hypergame::successor(VertexId v, ActionId a) const {
  for (const HEdge& e : successors(v)) {
    if (e.action == a) return e.to;
  }
  return kNone;
}

std::optional<VertexId> Hypergame::find(StateId s, std::uint32_t perception) const {
  auto it = lookup_.find(key(s, perception));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::string Hypergame::vertex_name(VertexId v) const {
  const HVertex& hv = vertices_.at(v);
  return "(" + base_->state_name(hv.state) + "," + std::to_string(hv.perception) + ")";
}

void Hypergame::index_edges(std::vector<std::vector<HEdge>> adjacency) {
  offsets_.assign(vertices_.size() + 1, 0);
  for (std::size_t v = 0; v < adjacency.size(); ++v) offsets_[v + 1] = offsets_[v] + adjacency[v].size();
  edges_.clear();
  edges_.reserve(offsets_.back());
  for (auto& list : adjacency) edges_.insert(edges_.end(), list.begin(), list.end());
}

Hypergame build_hypergame(std::shared_ptr<const GameGraph> game, const ActionSet& x0, const InferenceMechanism& mech,
                          HypergameMode mode) {
  if (!x0.subset_of(game->p1_action_set())) throw GameError("initial perception is not a subset of P1's actions");
  Hypergame h;
  h.base_ = std::move(game);
  h.mechanism_ = mech;
  h.mode_ = mode;
  const GameGraph& g = *h.base_;
  h.ptable_.intern(x0);

  auto next_perception = [&](std::uint32_t p, const Edge& e) -> std::uint32_t {
    if (g.action(e.action).owner != Player::P1) return p;
    return h.ptable_.intern(mech.step(h.ptable_.set(p), e.action));
  };

  std::vector<std::vector<HEdge>> adjacency;
  if (mode == HypergameMode::kReachable) {
    auto init = g.initial();
    if (!init) throw GameError("hypergame construction needs an initial state");
    auto add_vertex = [&](StateId s, std::uint32_t p) {
      auto [it, inserted] = h.lookup_.try_emplace(key(s, p), static_cast<VertexId>(h.vertices_.size()));
      if (inserted) {
        h.vertices_.push_back({s, p});
        adjacency.emplace_back();
      }
      return std::pair{it->second, inserted};
    };
    std::deque<VertexId> queue{add_vertex(*init, 0).first};
    h.initial_ = 0;
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      const HVertex hv = h.vertices_[v];
      for (const Edge& e : g.successors(hv.state)) {
        auto [w, fresh] = add_vertex(e.to, next_perception(hv.perception, e));
        adjacency[v].push_back({e.action, w});
        if (fresh) queue.push_back(w);
      }
    }
  } else {
    // Perception closure first, so vertex ids can be laid out as p * |S| + s.
    std::vector<ActionId> used;
    {
      ActionSet labels;
      for (const auto& t : g.transitions())
        if (g.action(t.action).owner == Player::P1) labels.insert(t.action);
      used = labels.to_vector();
    }
    for (std::uint32_t p = 0; p < h.ptable_.size(); ++p) {
      for (ActionId a : used) h.ptable_.intern(mech.step(h.ptable_.set(p), a));
    }
    const auto n = static_cast<StateId>(g.num_states());
    for (std::uint32_t p = 0; p < h.ptable_.size(); ++p) {
      for (StateId s = 0; s < n; ++s) {
        h.lookup_.emplace(key(s, p), static_cast<VertexId>(h.vertices_.size()));
        h.vertices_.push_back({s, p});
      }
    }
    adjacency.resize(h.vertices_.size());
    for (VertexId v = 0; v < h.vertices_.size(); ++v) {
      const HVertex hv = h.vertices_[v];
      for (const Edge& e : g.successors(hv.state)) {
        adjacency[v].push_back({e.action, next_perception(hv.perception, e) * n + e.to});
      }
    }
    if (auto init = g.initial()) h.initial_ = *init;
  }
  h.index_edges(std::move(adjacency));
  return h;
}

Run project_run(const Hypergame& h, std::span<const VertexId> hrun) {
  Run run;
  for (std::size_t k = 0; k < hrun.size(); ++k) {
    if (hrun[k] >= h.num_vertices()) throw GameError("unknown hypergame vertex " + std::to_string(hrun[k]));
    run.states.push_back(h.vertex(hrun[k]).state);
    if (k == 0) continue;
    ActionId via = kNone;
    for (const HEdge& e : h.successors(hrun[k - 1])) {
      if (e.to == hrun[k]) {
        via = e.action;
        break;
      }
    }
    if (via == kNone) {
      throw GameError("h-run is disconnected between " + h.vertex_name(hrun[k - 1]) + " and " +
                      h.vertex_name(hrun[k]));
    }
    run.actions.push_back(via);
  }
  return run;
}

json hypergame_to_json(const Hypergame& h) {
  const GameGraph& g = h.base();
  json perceptions = json::array();
  for (const auto& set : h.perceptions().sets()) perceptions.push_back(action_set_to_json(set, g));
  json vertices = json::array();
  json transitions = json::array();
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    const HVertex& hv = h.vertex(v);
    vertices.push_back({{"id", v},
                        {"state", hv.state},
                        {"index", hv.perception},
                        {"perception", action_set_to_json(h.perception(v), g)},
                        {"owner", to_string(h.owner(v))},
                        {"final", h.is_final(v)}});
    for (const HEdge& e : h.successors(v)) transitions.push_back({{"from", v}, {"action", e.action}, {"to", e.to}});
  }
  json doc = {{"mode", h.mode() == HypergameMode::kReachable ? "reachable" : "product"},
              {"inference", inference_to_json({h.mechanism(), h.perceptions().set(0)}, g)},
              {"perceptions", std::move(perceptions)},
              {"vertices", std::move(vertices)},
              {"transitions", std::move(transitions)}};
  doc["initial"] = h.initial() == kNone ? json(nullptr) : json(h.initial());
  return doc;
}

Hypergame hypergame_from_json(const json& doc, std::shared_ptr<const GameGraph> base) {
  using json_field::as_index;
  using json_field::require;
  const GameGraph& g = *base;
  InferenceSpec spec = inference_from_json(require(doc, "inference", "$"), g);

  Hypergame h;
  h.base_ = std::move(base);
  h.mechanism_ = spec.mechanism;
  const std::string mode = json_field::as_string(require(doc, "mode", "$"), "mode");
  if (mode != "reachable" && mode != "product") throw ParseError("mode: expected reachable or product");
  h.mode_ = mode == "reachable" ? HypergameMode::kReachable : HypergameMode::kProduct;

  const json& perceptions = require(doc, "perceptions", "$");
  if (!perceptions.is_array() || perceptions.empty()) throw ParseError("perceptions: expected a non-empty list");
  for (std::size_t i = 0; i < perceptions.size(); ++i) {
    ActionSet set;
    for (const auto& name : perceptions[i]) {
      auto a = g.find_action(json_field::as_string(name, "perceptions[" + std::to_string(i) + "]"));
      if (!a) throw ParseError("perceptions[" + std::to_string(i) + "]: unknown action " + name.dump());
      set.insert(*a);
    }
    if (h.ptable_.intern(set) != i) throw ParseError("perceptions[" + std::to_string(i) + "]: duplicate set");
  }
  if (h.ptable_.set(0) != spec.x0) throw ParseError("perceptions[0] differs from inference.x0");

  const json& vertices = require(doc, "vertices", "$");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string path = "vertices[" + std::to_string(i) + "]";
    if (as_index(require(vertices[i], "id", path), path + ".id") != i) throw ParseError(path + ".id: ids must be dense");
    StateId s = as_index(require(vertices[i], "state", path), path + ".state");
    std::uint32_t p = as_index(require(vertices[i], "index", path), path + ".index");
    if (s >= g.num_states() || p >= h.ptable_.size()) throw ParseError(path + ": state or perception out of range");
    if (!h.lookup_.emplace(key(s, p), static_cast<VertexId>(i)).second) throw ParseError(path + ": duplicate vertex");
    h.vertices_.push_back({s, p});
  }

  std::vector<std::vector<HEdge>> adjacency(h.vertices_.size());
  const json& transitions = require(doc, "transitions", "$");
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const std::string path = "transitions[" + std::to_string(i) + "]";
    VertexId from = as_index(require(transitions[i], "from", path), path + ".from");
    ActionId a = as_index(require(transitions[i], "action", path), path + ".action");
    VertexId to = as_index(require(transitions[i], "to", path), path + ".to");
    if (from >= h.vertices_.size() || to >= h.vertices_.size()) throw ParseError(path + ": vertex out of range");
    const HVertex src = h.vertices_[from];
    const HVertex dst = h.vertices_[to];
    if (g.successor(src.state, a) != dst.state) throw GameError(path + ": not a transition of the base game");
    const ActionSet expected =
        g.action(a).owner == Player::P1 ? spec.mechanism.step(h.ptable_.set(src.perception), a) : h.ptable_.set(src.perception);
    if (expected != h.ptable_.set(dst.perception)) throw GameError(path + ": perception update disagrees with inference rule");
    adjacency[from].push_back({a, to});
  }
  for (auto& list : adjacency) {
    std::sort(list.begin(), list.end(), [](const HEdge& x, const HEdge& y) { return x.action < y.action; });
  }
  if (auto it = doc.find("initial"); it != doc.end() && !it->is_null()) {
    h.initial_ = as_index(*it, "initial");
    if (h.initial_ >= h.vertices_.size()) throw ParseError("initial: vertex out of range");
  }
  h.index_edges(std::move(adjacency));
  return h;
}

}  // namespace dasw
