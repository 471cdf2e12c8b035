#pragma once

#include <string>
#include <vector>

#include "dasw/attractor.hpp"
#include "dasw/hypergame.hpp"

namespace dasw {

using VertexSet = std::vector<bool>;

std::vector<VertexId> members(const VertexSet& set);
std::size_t count(const VertexSet& set);
bool subset_of(const VertexSet& a, const VertexSet& b);

/// Perceptually permissive actions. For a P2 vertex u = (s, i), M(u) holds
/// the actions b whose base successor T(s, b) lies in P2's winning region of
/// the perceived game G(γ(i)). P2 moves never change the perception, so the
/// successor's index is i as well.
struct PermissiveTable {
  /// M(v) for P2 vertices, empty for P1 vertices.
  std::vector<ActionSet> m;
  /// Moves P2 randomizes over at v: the edges labeled by M(v) or, when M(v)
  /// is empty (P2 believes he has lost), every defined move. Empty only at
  /// P2 dead ends.
  std::vector<std::vector<HEdge>> support;
  /// Solution of restrict(base, γ(i)) for every perception index i.
  std::vector<WinRegions> win2_cache;
  /// Solution of the unrestricted base game, Win1(A1).
  WinRegions full;
};

PermissiveTable permissive(const Hypergame& h);

/// Which P1 actions Safe-2 quantifies over. kFull uses all of A1 (the
/// default); kPerceived only the actions in the vertex's perception set.
enum class Safe2Quantifier { kFull, kPerceived };

/// kProgressive (default) additionally discards, after each Safe-1 step,
/// vertices from which the previous level cannot be reached inside the
/// candidate set, and re-closes. kLiteral runs the two nested greatest
/// fixed points as printed, which can keep P1 loops that never make
/// progress.
enum class FixpointMode { kProgressive, kLiteral };

struct DaswOptions {
  Safe2Quantifier safe2_quantifier = Safe2Quantifier::kFull;
  FixpointMode fixpoint = FixpointMode::kProgressive;
};

struct SafeResult {
  VertexSet set;
  /// DAPre rounds until two consecutive rounds agree. The input set is not
  /// counted as a round result, so every call takes at least two rounds.
  std::uint32_t rounds = 0;
};

/// Safe-1 (P1 keeps the play inside): P1 vertices need some move inside,
/// P2 vertices need every supported move inside; final vertices are
/// absorbing and always kept. Safe-2 (P2 believes he keeps the play inside):
/// P1 vertices need every quantified move inside. Literal round-by-round
/// set iteration.
SafeResult safe(const Hypergame& h, const PermissiveTable& perm, Player who, const VertexSet& u,
                const DaswOptions& options = {});

/// Same greatest fixed point via a removal worklist over reverse edges.
VertexSet safe_worklist(const Hypergame& h, const PermissiveTable& perm, Player who, const VertexSet& u,
                        const DaswOptions& options = {});

struct DaswResult {
  /// Z_0 ⊂ Z_1 ⊂ ... ⊂ Z_K, strictly increasing; Z_K is the region.
  std::vector<VertexSet> levels;
  /// C_k = Safe-2(V \ Z_k), one per outer iteration.
  std::vector<VertexSet> safe2_trace;
  /// Smallest k with v ∈ Z_k, kUnreached outside the region.
  std::vector<std::uint32_t> rank;
  VertexSet region;
  /// Outer iterations run, including the one that confirmed the fixed point.
  std::uint32_t outer_iterations = 0;

  std::vector<VertexId> region_vertices() const { return members(region); }
};

DaswResult solve_dasw(const Hypergame& h, const PermissiveTable& perm, const DaswOptions& options = {});

/// Distance to Z_{k-1} inside Z_k for every vertex of rank k ≥ 1 (P1 vertices
/// need one move, P2 vertices one supported move, into a smaller distance);
/// 0 for rank-0 vertices, kUnreached where no such path exists.
std::vector<std::uint32_t> progress_layers(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r);

enum class P2PolicyKind { kUniform, kRandomWeights };

struct StrategyMap {
  /// P1's allowed actions per vertex, ascending; empty outside the domain
  /// (P2 vertices, final vertices, vertices outside the region).
  std::vector<std::vector<ActionId>> p1;
  P2PolicyKind p2_policy_kind = P2PolicyKind::kUniform;

  bool defined_at(VertexId v) const { return v < p1.size() && !p1[v].empty(); }
};

/// Rank 0: the lifted rank-decreasing ASW strategy of the unrestricted game.
/// Rank k ≥ 1: actions that step into Z_{k-1} or, failing that, stay in Z_k
/// and strictly reduce the progress layer.
StrategyMap extract_strategy(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r);

/// Almost-sure reachability of the final vertices in the Markov decision
/// process where P1 picks moves and each P2 vertex draws uniformly from its
/// support. Computed as the classic greatest/least fixed point on the MDP,
/// without any of the Safe-i machinery.
VertexSet mdp_oracle(const Hypergame& h, const PermissiveTable& perm);

/// Invariant diagnostics; each returns human-readable failures (empty = ok).
namespace checks {

std::vector<std::string> monotone_levels(const DaswResult& r);
/// Every state of Win1(A1) that appears in the hypergame appears in the region.
std::vector<std::string> projection_covers_asw(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r);
/// P1 can stay in every level; no supported P2 move leaves a level.
std::vector<std::string> closure(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r);
/// Every vertex of Z_{k+1} \ Z_k has a move (P1) or supported move (P2) into Z_k.
std::vector<std::string> one_step_progress(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r);
/// Every vertex of Z_{k+1} \ Z_k reaches Z_k inside Z_{k+1}.
std::vector<std::string> reachable_progress(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r);
/// Strategy actions stay in the level and strictly descend (rank, layer).
std::vector<std::string> strategy_descends(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r,
                                           const StrategyMap& s);

}  // namespace checks

/// Result file: region, ranks, level sizes and strategy table, sorted by vertex id.
nlohmann::json dasw_result_to_json(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r,
                                   const StrategyMap& s);

struct LoadedDaswResult {
  DaswResult result;
  StrategyMap strategy;
};
LoadedDaswResult dasw_result_from_json(const nlohmann::json& doc, const Hypergame& h);

}  // namespace dasw
