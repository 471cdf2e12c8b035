#include "dasw/simulator.hpp"

#include <algorithm>

namespace dasw {

using nlohmann::json;

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::kReachedFinal:
      return "REACHED_F";
    case Outcome::kStepCap:
      return "STEP_CAP";
    case Outcome::kDeadEnd:
      return "DEAD_END";
  }
  return "?";
}

bool BatchStats::all_reached() const {
  return std::all_of(per_start.begin(), per_start.end(), [](const StartStats& s) { return s.reached == s.episodes; });
}

namespace {

// Per-episode weights, drawn lazily so only visited vertices consume
// randomness. Stamped to avoid clearing between episodes.
class WeightCache {
 public:
  WeightCache(const PermissiveTable& perm, double floor)
      : perm_(perm), floor_(floor), stamp_(perm.support.size(), 0), offset_(perm.support.size(), 0) {
    if (!(floor > 0.0 && floor <= 1.0)) throw GameError("minimum P2 weight must lie in (0, 1]");
    std::size_t total = 0;
    for (std::size_t v = 0; v < perm.support.size(); ++v) {
      offset_[v] = total;
      total += perm.support[v].size();
    }
    weights_.resize(total);
  }

  void next_episode() { ++episode_; }

  std::span<const double> at(VertexId v, std::mt19937_64& rng) {
    const std::size_t k = perm_.support[v].size();
    double* w = weights_.data() + offset_[v];
    if (stamp_[v] != episode_) {
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (std::size_t i = 0; i < k; ++i) w[i] = 1.0 - (1.0 - floor_) * unit(rng);  // (floor, 1]
      stamp_[v] = episode_;
    }
    return {w, k};
  }

 private:
  const PermissiveTable& perm_;
  double floor_;
  std::vector<std::uint64_t> stamp_;
  std::vector<std::size_t> offset_;
  std::vector<double> weights_;
  std::uint64_t episode_ = 1;
};

std::size_t draw(std::span<const double> weights, std::mt19937_64& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  double x = std::uniform_real_distribution<double>(0.0, total)(rng);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (x < weights[i]) return i;
    x -= weights[i];
  }
  return weights.size() - 1;
}

Episode play(const Hypergame& h, const PermissiveTable& perm, const StrategyMap& strat, P2Policy policy,
             VertexId start, std::uint64_t seed, std::uint32_t cap, WeightCache& weights, bool record,
             std::uint64_t& violations) {
  if (cap == 0) throw GameError("step cap must be at least 1");
  if (start >= h.num_vertices()) throw GameError("start vertex out of range");
  if (h.owner(start) == Player::P1 && !h.is_final(start) && !strat.defined_at(start)) {
    throw GameError("start " + h.vertex_name(start) + " is a P1 vertex outside the strategy's domain");
  }
  std::mt19937_64 rng(seed);
  weights.next_episode();
  Episode ep;
  ep.seed = seed;
  ep.start = start;
  ep.vertices.push_back(start);
  VertexId v = start;
  for (;;) {
    if (h.is_final(v)) {
      ep.outcome = Outcome::kReachedFinal;
      break;
    }
    if (ep.steps == cap) {
      ep.outcome = Outcome::kStepCap;
      break;
    }
    ActionId a = kNone;
    VertexId next = kNone;
    if (h.owner(v) == Player::P1) {
      if (strat.defined_at(v)) {
        a = strat.p1[v].front();
        next = h.successor(v, a);
      } else if (auto succ = h.successors(v); !succ.empty()) {
        a = succ.front().action;
        next = succ.front().to;
      }
    } else {
      const auto& sup = perm.support[v];
      if (!sup.empty()) {
        std::size_t i = policy.kind == P2PolicyKind::kUniform
                            ? std::uniform_int_distribution<std::size_t>(0, sup.size() - 1)(rng)
                            : draw(weights.at(v, rng), rng);
        a = sup[i].action;
        next = sup[i].to;
        const bool permitted = perm.m[v].empty() ? h.successor(v, a) == next : perm.m[v].contains(a);
        if (!permitted) ++violations;
      }
    }
    if (next == kNone) {
      ep.outcome = Outcome::kDeadEnd;
      break;
    }
    ++ep.steps;
    if (record) {
      ep.actions.push_back(a);
      ep.vertices.push_back(next);
    }
    v = next;
  }
  if (!record && ep.vertices.back() != v) ep.vertices.push_back(v);
  return ep;
}

}  // namespace

Episode run_episode(const Hypergame& h, const PermissiveTable& perm, const StrategyMap& strat, P2Policy policy,
                    VertexId start, std::uint64_t seed, std::uint32_t cap) {
  WeightCache weights(perm, policy.min_weight);
  std::uint64_t violations = 0;
  Episode ep = play(h, perm, strat, policy, start, seed, cap, weights, true, violations);
  if (violations != 0) throw GameError("P2 draw outside the permissive support");
  return ep;
}

BatchStats run_batch(const Hypergame& h, const PermissiveTable& perm, const StrategyMap& strat, P2Policy policy,
                     std::span<const VertexId> starts, std::uint32_t episodes, std::uint32_t cap,
                     std::uint64_t base_seed) {
  if (episodes == 0) throw GameError("a batch needs at least one episode");
  WeightCache weights(perm, policy.min_weight);
  BatchStats stats;
  for (VertexId start : starts) {
    StartStats s;
    s.start = start;
    double total_steps = 0.0;
    for (std::uint32_t i = 0; i < episodes; ++i) {
      const std::uint64_t seed = base_seed + i;
      Episode ep = play(h, perm, strat, policy, start, seed, cap, weights, false, stats.support_violations);
      ++s.episodes;
      total_steps += ep.steps;
      s.max_steps = std::max(s.max_steps, ep.steps);
      if (ep.outcome == Outcome::kReachedFinal) {
        ++s.reached;
      } else if (!stats.counterexample) {
        // Replay with tracing; identical seed gives the identical run.
        stats.counterexample = run_episode(h, perm, strat, policy, start, seed, cap);
      }
    }
    s.mean_steps = total_steps / episodes;
    stats.per_start.push_back(s);
  }
  return stats;
}

json episode_to_json(const Hypergame& h, const Episode& e) {
  json vertices = json::array();
  for (VertexId v : e.vertices) {
    vertices.push_back({{"id", v}, {"name", h.vertex_name(v)}, {"state", h.vertex(v).state}, {"perception", h.vertex(v).perception}});
  }
  json actions = json::array();
  for (ActionId a : e.actions) actions.push_back(h.base().action_name(a));
  return {{"seed", e.seed},
          {"start", e.start},
          {"outcome", to_string(e.outcome)},
          {"steps", e.steps},
          {"vertices", std::move(vertices)},
          {"actions", std::move(actions)}};
}

json batch_to_json(const Hypergame& h, const BatchStats& stats) {
  json starts = json::array();
  for (const auto& s : stats.per_start) {
    starts.push_back({{"start", s.start},
                      {"name", h.vertex_name(s.start)},
                      {"episodes", s.episodes},
                      {"reached", s.reached},
                      {"reach_rate", s.reach_rate()},
                      {"mean_steps", s.mean_steps},
                      {"max_steps", s.max_steps}});
  }
  json doc = {{"starts", std::move(starts)}, {"all_reached", stats.all_reached()}, {"support_violations", stats.support_violations}};
  doc["counterexample"] = stats.counterexample ? episode_to_json(h, *stats.counterexample) : json(nullptr);
  return doc;
}

}  // namespace dasw
