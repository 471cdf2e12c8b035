#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "dasw/dasw.hpp"

namespace dasw {

enum class Outcome { kReachedFinal, kStepCap, kDeadEnd };

std::string_view to_string(Outcome o);

struct Episode {
  std::uint64_t seed = 0;
  VertexId start = 0;
  std::vector<VertexId> vertices;  // h-run, starts with `start`
  std::vector<ActionId> actions;   // one fewer than vertices
  Outcome outcome = Outcome::kStepCap;
  std::uint32_t steps = 0;
};

/// P2's randomized play. The distribution at v always has support exactly
/// `perm.support[v]`: uniform, or weights drawn once per episode from
/// (min_weight, 1] for each vertex the episode visits. Weights arbitrarily
/// close to zero make a fixed step cap unreliable (the hitting time stays
/// finite almost surely but its tail is heavy), hence the floor.
struct P2Policy {
  P2PolicyKind kind = P2PolicyKind::kUniform;
  double min_weight = 0.5;
};

/// Plays one episode. P1 plays the lowest-index action of `strat.p1[v]`;
/// outside the strategy's domain she falls back to her lowest-index move.
/// Throws GameError when `start` is a non-final P1 vertex the strategy does
/// not cover, or when `cap` is zero.
Episode run_episode(const Hypergame& h, const PermissiveTable& perm, const StrategyMap& strat, P2Policy policy,
                    VertexId start, std::uint64_t seed, std::uint32_t cap);

struct StartStats {
  VertexId start = 0;
  std::uint32_t episodes = 0;
  std::uint32_t reached = 0;
  double mean_steps = 0.0;  // over all episodes
  std::uint32_t max_steps = 0;

  double reach_rate() const { return episodes == 0 ? 0.0 : static_cast<double>(reached) / episodes; }
};

struct BatchStats {
  std::vector<StartStats> per_start;
  /// First non-reaching episode in (start order, episode index) order.
  std::optional<Episode> counterexample;
  /// P2 draws that fell outside support(v); always 0 unless the table is corrupt.
  std::uint64_t support_violations = 0;

  bool all_reached() const;
};

/// Episode i of each start uses seed base_seed + i. Results are independent
/// of evaluation order.
BatchStats run_batch(const Hypergame& h, const PermissiveTable& perm, const StrategyMap& strat, P2Policy policy,
                     std::span<const VertexId> starts, std::uint32_t episodes, std::uint32_t cap,
                     std::uint64_t base_seed);

nlohmann::json episode_to_json(const Hypergame& h, const Episode& e);
nlohmann::json batch_to_json(const Hypergame& h, const BatchStats& stats);

}  // namespace dasw
