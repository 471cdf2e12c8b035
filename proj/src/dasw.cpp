#include "dasw/dasw.hpp"

#include <algorithm>
#include <deque>

#include "dasw/game_io.hpp"

namespace dasw {

using nlohmann::json;

std::vector<VertexId> members(const VertexSet& set) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < set.size(); ++v)
    if (set[v]) out.push_back(v);
  return out;
}

std::size_t count(const VertexSet& set) { return static_cast<std::size_t>(std::count(set.begin(), set.end(), true)); }

bool subset_of(const VertexSet& a, const VertexSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

namespace {

VertexSet complement(const VertexSet& s) {
  VertexSet out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = !s[i];
  return out;
}

bool in_support(const PermissiveTable& perm, VertexId v, ActionId a) {
  for (const HEdge& e : perm.support[v])
    if (e.action == a) return true;
  return false;
}

// Reverse adjacency of the hypergame with the per-edge facts the fixed
// points need.
struct ReverseEdge {
  VertexId from;
  bool supported;   // P2 source: edge is in support(from)
  bool quantified;  // P1 source: edge counts for Safe-2's universal quantifier
};

class Arena {
 public:
  Arena(const Hypergame& h, const PermissiveTable& perm, const DaswOptions& options) : h_(h), perm_(perm) {
    const auto n = h.num_vertices();
    start_.assign(n + 1, 0);
    for (VertexId v = 0; v < n; ++v)
      for (const HEdge& e : h.successors(v)) ++start_[e.to + 1];
    for (std::size_t i = 1; i <= n; ++i) start_[i] += start_[i - 1];
    rev_.resize(start_.back());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (VertexId v = 0; v < n; ++v) {
      const bool p1 = h.owner(v) == Player::P1;
      for (const HEdge& e : h.successors(v)) {
        ReverseEdge r{v, false, false};
        if (p1) {
          r.quantified = options.safe2_quantifier == Safe2Quantifier::kFull || h.perception(v).contains(e.action);
        } else {
          r.supported = in_support(perm, v, e.action);
        }
        rev_[fill[e.to]++] = r;
      }
    }
  }

  std::span<const ReverseEdge> preds(VertexId w) const {
    return {rev_.data() + start_[w], rev_.data() + start_[w + 1]};
  }

  bool quantified(VertexId v, ActionId a, const DaswOptions& options) const {
    return options.safe2_quantifier == Safe2Quantifier::kFull || h_.perception(v).contains(a);
  }

  VertexSet safe(Player who, const VertexSet& u, const DaswOptions& options) const {
    const auto n = h_.num_vertices();
    VertexSet in = u;
    std::vector<std::uint32_t> inside(n, 0);
    std::deque<VertexId> removed;
    auto drop = [&](VertexId v) {
      in[v] = false;
      removed.push_back(v);
    };
    for (VertexId v = 0; v < n; ++v) {
      if (!in[v]) continue;
      if (who == Player::P1 && h_.is_final(v)) continue;
      bool keep = true;
      if (h_.owner(v) == Player::P2) {
        for (const HEdge& e : perm_.support[v]) keep = keep && u[e.to];
      } else if (who == Player::P1) {
        for (const HEdge& e : h_.successors(v)) inside[v] += u[e.to] ? 1 : 0;
        keep = inside[v] > 0;
      } else {
        for (const HEdge& e : h_.successors(v)) keep = keep && (!quantified(v, e.action, options) || u[e.to]);
      }
      if (!keep) drop(v);
    }
    while (!removed.empty()) {
      VertexId w = removed.front();
      removed.pop_front();
      for (const ReverseEdge& r : preds(w)) {
        VertexId v = r.from;
        if (!in[v]) continue;
        if (who == Player::P1 && h_.is_final(v)) continue;
        if (h_.owner(v) == Player::P2) {
          if (r.supported) drop(v);
        } else if (who == Player::P1) {
          if (--inside[v] == 0) drop(v);
        } else if (r.quantified) {
          drop(v);
        }
      }
    }
    return in;
  }

  // Breadth-first layers of the positive-probability attractor of `target`
  // inside `within`; kUnreached for vertices of `within` it never reaches.
  std::vector<std::uint32_t> layers(const VertexSet& target, const VertexSet& within) const {
    const auto n = h_.num_vertices();
    std::vector<std::uint32_t> layer(n, kUnreached);
    std::deque<VertexId> queue;
    for (VertexId v = 0; v < n; ++v) {
      if (target[v]) {
        layer[v] = 0;
        queue.push_back(v);
      }
    }
    while (!queue.empty()) {
      VertexId w = queue.front();
      queue.pop_front();
      for (const ReverseEdge& r : preds(w)) {
        VertexId v = r.from;
        if (!within[v] || layer[v] != kUnreached) continue;
        if (h_.owner(v) == Player::P2 && !r.supported) continue;
        layer[v] = layer[w] + 1;
        queue.push_back(v);
      }
    }
    return layer;
  }

 private:
  const Hypergame& h_;
  const PermissiveTable& perm_;
  std::vector<std::size_t> start_;
  std::vector<ReverseEdge> rev_;
};

VertexSet reached(const std::vector<std::uint32_t>& layer) {
  VertexSet out(layer.size());
  for (std::size_t i = 0; i < layer.size(); ++i) out[i] = layer[i] != kUnreached;
  return out;
}

}  // namespace

PermissiveTable permissive(const Hypergame& h) {
  const GameGraph& g = h.base();
  PermissiveTable t;
  t.full = asw(g);
  t.win2_cache.reserve(h.perceptions().size());
  for (const ActionSet& x : h.perceptions().sets()) t.win2_cache.push_back(asw(restrict(g, x)));

  t.m.resize(h.num_vertices());
  t.support.resize(h.num_vertices());
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    if (h.owner(v) != Player::P2) continue;
    const WinRegions& perceived = t.win2_cache[h.vertex(v).perception];
    for (const HEdge& e : h.successors(v)) {
      if (perceived.win2[h.vertex(e.to).state]) {
        t.m[v].insert(e.action);
        t.support[v].push_back(e);
      }
    }
    if (t.support[v].empty()) {
      auto all = h.successors(v);
      t.support[v].assign(all.begin(), all.end());
    }
  }
  return t;
}

SafeResult safe(const Hypergame& h, const PermissiveTable& perm, Player who, const VertexSet& u,
                const DaswOptions& options) {
  auto quantified = [&](VertexId v, ActionId a) {
    return options.safe2_quantifier == Safe2Quantifier::kFull || h.perception(v).contains(a);
  };
  // One application of Y ∩ (DAPre_i^1(Y) ∪ DAPre_i^2(Y)).
  auto round = [&](const VertexSet& y) {
    VertexSet next(y.size(), false);
    for (VertexId v = 0; v < y.size(); ++v) {
      if (!y[v]) continue;
      bool keep;
      if (who == Player::P1 && h.is_final(v)) {
        keep = true;
      } else if (h.owner(v) == Player::P2) {
        keep = std::all_of(perm.support[v].begin(), perm.support[v].end(), [&](const HEdge& e) { return y[e.to]; });
      } else if (who == Player::P1) {
        auto succ = h.successors(v);
        keep = std::any_of(succ.begin(), succ.end(), [&](const HEdge& e) { return y[e.to]; });
      } else {
        auto succ = h.successors(v);
        keep = std::all_of(succ.begin(), succ.end(), [&](const HEdge& e) { return !quantified(v, e.action) || y[e.to]; });
      }
      next[v] = keep;
    }
    return next;
  };
  SafeResult r;
  r.set = round(u);
  r.rounds = 1;
  for (;;) {
    VertexSet next = round(r.set);
    ++r.rounds;
    if (next == r.set) break;
    r.set = std::move(next);
  }
  return r;
}

VertexSet safe_worklist(const Hypergame& h, const PermissiveTable& perm, Player who, const VertexSet& u,
                        const DaswOptions& options) {
  return Arena(h, perm, options).safe(who, u, options);
}

DaswResult solve_dasw(const Hypergame& h, const PermissiveTable& perm, const DaswOptions& options) {
  const Arena arena(h, perm, options);
  const auto n = h.num_vertices();
  DaswResult r;
  VertexSet z(n, false);
  for (VertexId v = 0; v < n; ++v) z[v] = perm.full.win1[h.vertex(v).state];
  r.levels.push_back(z);

  for (;;) {
    ++r.outer_iterations;
    VertexSet c = arena.safe(Player::P2, complement(z), options);
    VertexSet next = arena.safe(Player::P1, complement(c), options);
    r.safe2_trace.push_back(std::move(c));
    if (options.fixpoint == FixpointMode::kProgressive) {
      for (;;) {
        VertexSet progressing = reached(arena.layers(z, next));
        if (progressing == next) break;
        next = arena.safe(Player::P1, progressing, options);
      }
    }
    if (next == z) break;
    z = std::move(next);
    r.levels.push_back(z);
  }

  r.region = z;
  r.rank.assign(n, kUnreached);
  for (std::uint32_t k = 0; k < r.levels.size(); ++k) {
    for (VertexId v = 0; v < n; ++v)
      if (r.levels[k][v] && r.rank[v] == kUnreached) r.rank[v] = k;
  }
  return r;
}

std::vector<std::uint32_t> progress_layers(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r) {
  const Arena arena(h, perm, {});
  std::vector<std::uint32_t> out(h.num_vertices(), kUnreached);
  for (VertexId v = 0; v < h.num_vertices(); ++v)
    if (r.rank[v] == 0) out[v] = 0;
  for (std::size_t k = 1; k < r.levels.size(); ++k) {
    auto layer = arena.layers(r.levels[k - 1], r.levels[k]);
    for (VertexId v = 0; v < h.num_vertices(); ++v)
      if (r.rank[v] == k) out[v] = layer[v];
  }
  return out;
}

StrategyMap extract_strategy(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r) {
  const GameGraph& g = h.base();
  const auto layer = progress_layers(h, perm, r);
  StrategyMap s;
  s.p1.resize(h.num_vertices());
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    if (!r.region[v] || h.owner(v) != Player::P1 || h.is_final(v)) continue;
    const std::uint32_t k = r.rank[v];
    if (k == 0) {
      s.p1[v] = asw_decreasing_actions(g, perm.full, h.vertex(v).state);
      continue;
    }
    if (layer[v] == kUnreached) continue;
    for (const HEdge& e : h.successors(v)) {
      const std::uint32_t kw = r.rank[e.to];
      if (kw < k || (kw == k && layer[e.to] < layer[v])) s.p1[v].push_back(e.action);
    }
  }
  return s;
}

VertexSet mdp_oracle(const Hypergame& h, const PermissiveTable& perm) {
  const auto n = h.num_vertices();
  VertexSet alive(n, true);
  for (;;) {
    // Vertices that reach a final vertex with positive probability while
    // every random move stays alive and P1 only uses alive moves.
    VertexSet good(n, false);
    for (VertexId v = 0; v < n; ++v) good[v] = alive[v] && h.is_final(v);
    bool changed = true;
    while (changed) {
      changed = false;
      for (VertexId v = 0; v < n; ++v) {
        if (!alive[v] || good[v]) continue;
        bool ok = false;
        if (h.owner(v) == Player::P1) {
          for (const HEdge& e : h.successors(v)) ok = ok || (alive[e.to] && good[e.to]);
        } else {
          const auto& sup = perm.support[v];
          bool stays = !sup.empty();
          bool hits = false;
          for (const HEdge& e : sup) {
            stays = stays && alive[e.to];
            hits = hits || good[e.to];
          }
          ok = stays && hits;
        }
        if (ok) {
          good[v] = true;
          changed = true;
        }
      }
    }
    if (good == alive) return alive;
    alive = std::move(good);
  }
}

namespace checks {

std::vector<std::string> monotone_levels(const DaswResult& r) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k + 1 < r.levels.size(); ++k) {
    if (!subset_of(r.levels[k], r.levels[k + 1])) out.push_back("Z_" + std::to_string(k) + " is not contained in Z_" + std::to_string(k + 1));
  }
  if (!r.levels.empty() && !subset_of(r.levels.back(), r.region)) out.push_back("last level not contained in region");
  return out;
}

std::vector<std::string> projection_covers_asw(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r) {
  const auto ns = h.base().num_states();
  std::vector<bool> present(ns, false), projected(ns, false);
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    present[h.vertex(v).state] = true;
    if (r.region[v]) projected[h.vertex(v).state] = true;
  }
  std::vector<std::string> out;
  for (StateId s = 0; s < ns; ++s) {
    if (present[s] && perm.full.win1[s] && !projected[s]) {
      out.push_back("ASW state " + h.base().state_name(s) + " missing from the projected region");
    }
  }
  return out;
}

std::vector<std::string> closure(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < r.levels.size(); ++k) {
    const VertexSet& z = r.levels[k];
    for (VertexId v = 0; v < h.num_vertices(); ++v) {
      if (!z[v] || h.is_final(v)) continue;
      if (h.owner(v) == Player::P1) {
        auto succ = h.successors(v);
        if (std::none_of(succ.begin(), succ.end(), [&](const HEdge& e) { return z[e.to]; })) {
          out.push_back("Z_" + std::to_string(k) + ": P1 vertex " + h.vertex_name(v) + " cannot stay");
        }
      } else {
        for (const HEdge& e : perm.support[v]) {
          if (!z[e.to]) {
            out.push_back("Z_" + std::to_string(k) + ": P2 vertex " + h.vertex_name(v) + " leaves via " +
                          h.base().action_name(e.action));
          }
        }
      }
    }
  }
  return out;
}

std::vector<std::string> one_step_progress(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k + 1 < r.levels.size(); ++k) {
    const VertexSet& lo = r.levels[k];
    const VertexSet& hi = r.levels[k + 1];
    for (VertexId v = 0; v < h.num_vertices(); ++v) {
      if (!hi[v] || lo[v]) continue;
      bool ok = false;
      if (h.owner(v) == Player::P1) {
        for (const HEdge& e : h.successors(v)) ok = ok || lo[e.to];
      } else {
        for (const HEdge& e : perm.support[v]) ok = ok || lo[e.to];
      }
      if (!ok) out.push_back("Z_" + std::to_string(k + 1) + ": " + h.vertex_name(v) + " has no move into Z_" + std::to_string(k));
    }
  }
  return out;
}

std::vector<std::string> reachable_progress(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r) {
  const Arena arena(h, perm, {});
  std::vector<std::string> out;
  for (std::size_t k = 0; k + 1 < r.levels.size(); ++k) {
    auto layer = arena.layers(r.levels[k], r.levels[k + 1]);
    for (VertexId v = 0; v < h.num_vertices(); ++v) {
      if (r.levels[k + 1][v] && layer[v] == kUnreached) {
        out.push_back("Z_" + std::to_string(k + 1) + ": " + h.vertex_name(v) + " cannot reach Z_" + std::to_string(k));
      }
    }
  }
  return out;
}

std::vector<std::string> strategy_descends(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r,
                                           const StrategyMap& s) {
  const auto layer = progress_layers(h, perm, r);
  const GameGraph& g = h.base();
  std::vector<std::string> out;
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    const bool needs = r.region[v] && h.owner(v) == Player::P1 && !h.is_final(v);
    if (needs && !s.defined_at(v)) out.push_back(h.vertex_name(v) + ": no strategy action");
    if (!s.defined_at(v)) continue;
    for (ActionId a : s.p1[v]) {
      VertexId w = h.successor(v, a);
      bool ok = w != kNone && r.region[w];
      if (ok && r.rank[v] == 0) {
        ok = perm.full.level[h.vertex(w).state] < perm.full.level[h.vertex(v).state];
      } else if (ok) {
        ok = r.rank[w] < r.rank[v] || (r.rank[w] == r.rank[v] && layer[w] < layer[v]);
      }
      if (!ok) out.push_back(h.vertex_name(v) + ": action " + g.action_name(a) + " does not descend");
    }
  }
  return out;
}

}  // namespace checks

json dasw_result_to_json(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r, const StrategyMap& s) {
  const GameGraph& g = h.base();
  json region = json::array();
  for (VertexId v : r.region_vertices()) {
    json e = {{"vertex", v},
              {"name", h.vertex_name(v)},
              {"state", h.vertex(v).state},
              {"perception", h.vertex(v).perception},
              {"rank", r.rank[v]}};
    if (s.defined_at(v)) {
      json acts = json::array();
      for (ActionId a : s.p1[v]) acts.push_back(g.action_name(a));
      e["strategy"] = std::move(acts);
    }
    region.push_back(std::move(e));
  }
  json permissive_sets = json::object();
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    if (h.owner(v) == Player::P2) permissive_sets[std::to_string(v)] = action_set_to_json(perm.m[v], g);
  }
  json level_sizes = json::array();
  for (const auto& z : r.levels) level_sizes.push_back(count(z));
  json trace = json::array();
  for (const auto& c : r.safe2_trace) trace.push_back(members(c));

  std::vector<bool> projected(g.num_states(), false);
  for (VertexId v : r.region_vertices()) projected[h.vertex(v).state] = true;
  return {{"vertices", h.num_vertices()},
          {"region", std::move(region)},
          {"region_size", count(r.region)},
          {"projected_states", std::count(projected.begin(), projected.end(), true)},
          {"asw_states", perm.full.win1_states().size()},
          {"level_sizes", std::move(level_sizes)},
          {"outer_iterations", r.outer_iterations},
          {"safe2_trace", std::move(trace)},
          {"permissive", std::move(permissive_sets)},
          {"policy", s.p2_policy_kind == P2PolicyKind::kUniform ? "uniform" : "random"}};
}

LoadedDaswResult dasw_result_from_json(const json& doc, const Hypergame& h) {
  using json_field::as_index;
  using json_field::require;
  const auto n = h.num_vertices();
  if (as_index(require(doc, "vertices", "$"), "vertices") != n) throw ParseError("vertices: size differs from hypergame");
  LoadedDaswResult out;
  DaswResult& r = out.result;
  r.rank.assign(n, kUnreached);
  r.region.assign(n, false);
  out.strategy.p1.resize(n);
  std::uint32_t max_rank = 0;
  const json& region = require(doc, "region", "$");
  for (std::size_t i = 0; i < region.size(); ++i) {
    const std::string path = "region[" + std::to_string(i) + "]";
    VertexId v = as_index(require(region[i], "vertex", path), path + ".vertex");
    if (v >= n) throw ParseError(path + ".vertex: out of range");
    r.region[v] = true;
    r.rank[v] = as_index(require(region[i], "rank", path), path + ".rank");
    max_rank = std::max(max_rank, r.rank[v]);
    if (auto it = region[i].find("strategy"); it != region[i].end()) {
      for (const auto& name : *it) {
        auto a = h.base().find_action(json_field::as_string(name, path + ".strategy"));
        if (!a) throw ParseError(path + ".strategy: unknown action " + name.dump());
        out.strategy.p1[v].push_back(*a);
      }
    }
  }
  for (std::uint32_t k = 0; k <= max_rank && !region.empty(); ++k) {
    VertexSet z(n, false);
    for (VertexId v = 0; v < n; ++v) z[v] = r.rank[v] <= k;
    r.levels.push_back(std::move(z));
  }
  for (const auto& c : require(doc, "safe2_trace", "$")) {
    VertexSet set(n, false);
    for (const auto& v : c) set.at(as_index(v, "safe2_trace")) = true;
    r.safe2_trace.push_back(std::move(set));
  }
  r.outer_iterations = as_index(require(doc, "outer_iterations", "$"), "outer_iterations");
  const std::string policy = json_field::as_string(require(doc, "policy", "$"), "policy");
  out.strategy.p2_policy_kind = policy == "random" ? P2PolicyKind::kRandomWeights : P2PolicyKind::kUniform;
  return out;
}

}  // namespace dasw
