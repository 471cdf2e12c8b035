// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dasw/gridworld.hpp"
#include "dasw/simulator.hpp"
#include "support.hpp"

using namespace dasw;
using namespace dasw::testing;

namespace {

constexpr double kFig1BudgetMs = 1.0;
constexpr double kExample4BudgetMs = 10.0;
constexpr double kCorpusBudgetS = 30.0;
constexpr double kSimulationBudgetS = 60.0;
constexpr double kGridBudgetS = 10.0;
constexpr std::size_t kCorpusSize = 500;
constexpr std::uint64_t kCorpusSeed = 20240;
constexpr std::size_t kSimInstances = 20;
constexpr std::uint32_t kEpisodes = 10000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Line {
  int id;
  bool pass;
  std::string detail;
};

std::vector<Line> lines;

void report(int id, bool pass, const std::string& detail) {
  lines.push_back({id, pass, detail});
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Solved {
  RandomInstance inst;
  Hypergame h;
  PermissiveTable p;
  DaswResult r;
};

Solved solve(RandomInstance inst) {
  Hypergame h = build_hypergame(inst.game, inst.x0, InferenceMechanism::union_rule(inst.game));
  PermissiveTable p = permissive(h);
  DaswResult r = solve_dasw(h, p);
  return {std::move(inst), std::move(h), std::move(p), std::move(r)};
}

VertexSet set_of(const Hypergame& h, std::initializer_list<std::pair<StateId, ActionSet>> vs) {
  VertexSet out(h.num_vertices(), false);
  for (const auto& [s, x] : vs) {
    VertexId v = at(h, s, x);
    if (v != kNone) out[v] = true;
  }
  return out;
}

struct SimOutcome {
  std::size_t starts = 0;
  std::uint64_t episodes = 0;
  std::uint64_t reached = 0;
  std::uint64_t violations = 0;
  std::string first_failure;
};

void simulate(const Hypergame& h, const PermissiveTable& p, const DaswResult& r, const std::string& name,
              SimOutcome& out) {
  StrategyMap s = extract_strategy(h, p, r);
  std::vector<VertexId> starts = r.region_vertices();
  const auto cap = static_cast<std::uint32_t>(10 * h.num_vertices());
  for (auto kind : {P2PolicyKind::kUniform, P2PolicyKind::kRandomWeights}) {
    BatchStats b = run_batch(h, p, s, {kind}, starts, kEpisodes, cap, 0);
    out.starts += b.per_start.size();
    out.violations += b.support_violations;
    for (const auto& st : b.per_start) {
      out.episodes += st.episodes;
      out.reached += st.reached;
      if (st.reached != st.episodes && out.first_failure.empty()) {
        out.first_failure = name + " start " + h.vertex_name(st.start);
      }
    }
  }
}

}  // namespace

int main() {
  const ActionSet kX0{a2};
  const ActionSet kAll{a1, a2};

  // 1. ASW region of the four-state game.
  {
    GameGraph g = four_state_game();
    auto t0 = Clock::now();
    WinRegions w = asw(g);
    const double ms = seconds_since(t0) * 1e3;
    const bool exact = w.win1_states() == std::vector<StateId>{s0, s1};
    report(1, exact && ms < kFig1BudgetMs, fmt("Win1 = {s0,s1}: %s; %.3f ms (< %.0f ms)", exact ? "yes" : "no", ms, kFig1BudgetMs));
  }

  // 2-4. Hypergame of the four-state game with x0 = {a2}.
  {
    auto t0 = Clock::now();
    Hypergame h = four_state_hypergame();
    PermissiveTable p = permissive(h);
    DaswResult r = solve_dasw(h, p);
    const double ms = seconds_since(t0) * 1e3;

    VertexSet z0 = r.levels.front();
    VertexSet not_z0 = z0;
    not_z0.flip();
    SafeResult c0 = safe(h, p, Player::P2, not_z0);
    VertexSet not_c0 = c0.set;
    not_c0.flip();
    SafeResult z1 = safe(h, p, Player::P1, not_c0);

    const VertexSet want_c0 = set_of(h, {{s2, kAll}, {s3, kAll}});
    const VertexSet want_region = set_of(h, {{s0, kAll}, {s1, kX0}, {s1, kAll}, {s2, kX0}, {s3, kX0}});
    const bool ok = count(z0) == 3 && c0.set == want_c0 && r.safe2_trace.front() == want_c0 && c0.rounds == 3 &&
                    z1.rounds == 2 && r.outer_iterations == 2 && r.region == want_region;
    report(2, ok && ms < kExample4BudgetMs,
           fmt("|Z0|=%zu, C0 ok=%d, Safe-2 rounds=%u, Safe-1 rounds=%u, outer=%u, region ok=%d; %.3f ms (< %.0f ms)",
               count(z0), c0.set == want_c0, c0.rounds, z1.rounds, r.outer_iterations, r.region == want_region, ms,
               kExample4BudgetMs));

    const bool m_ok = p.m[at(h, s2, kX0)] == ActionSet{b1, b2} && p.m[at(h, s2, kAll)] == ActionSet{b2};
    report(3, m_ok, fmt("M((s2,{a2})) = {b1,b2} and M((s2,A1)) = {b2}: %s", m_ok ? "yes" : "no"));

    const bool witness = !p.full.win1[s2] && !p.full.win1[s3] && r.region[at(h, s2, kX0)] && r.region[at(h, s3, kX0)];
    report(4, witness, fmt("s2,s3 outside Win1(A1) and (s2,{a2}),(s3,{a2}) in region: %s", witness ? "yes" : "no"));
  }

  // 5-7. Random corpus.
  std::vector<Solved> corpus;
  {
    auto t0 = Clock::now();
    std::size_t mono_fail = 0;
    std::size_t cover_fail = 0;
    for (std::size_t i = 0; i < kCorpusSize; ++i) {
      corpus.push_back(solve(random_instance(kCorpusSeed + i)));
      const auto& c = corpus.back();
      mono_fail += checks::monotone_levels(c.r).empty() ? 0 : 1;
      cover_fail += checks::projection_covers_asw(c.h, c.p, c.r).empty() ? 0 : 1;
    }
    const double s = seconds_since(t0);
    report(5, mono_fail == 0 && cover_fail == 0 && s < kCorpusBudgetS,
           fmt("%zu games: monotone failures %zu, projection failures %zu; %.2f s (< %.0f s)", kCorpusSize, mono_fail,
               cover_fail, s, kCorpusBudgetS));

    std::size_t mismatch = 0;
    std::size_t literal_mismatch = 0;
    DaswOptions literal;
    literal.fixpoint = FixpointMode::kLiteral;
    for (const auto& c : corpus) {
      mismatch += c.r.region == mdp_oracle(c.h, c.p) ? 0 : 1;
      literal_mismatch += solve_dasw(c.h, c.p, literal).region == c.r.region ? 0 : 1;
    }
    report(6, mismatch == 0,
           fmt("region = oracle on %zu/%zu games (unpruned fixed point differs on %zu)", kCorpusSize - mismatch,
               kCorpusSize, literal_mismatch));

    std::size_t closure_fail = 0;
    std::size_t progress_fail = 0;
    std::size_t reach_fail = 0;
    std::string example;
    auto check_one = [&](const Hypergame& h, const PermissiveTable& p, const DaswResult& r, const std::string& name) {
      auto cl = checks::closure(h, p, r);
      auto pr = checks::one_step_progress(h, p, r);
      closure_fail += cl.empty() ? 0 : 1;
      progress_fail += pr.empty() ? 0 : 1;
      reach_fail += checks::reachable_progress(h, p, r).empty() ? 0 : 1;
      if (example.empty() && !(cl.empty() && pr.empty())) example = name + ": " + (cl.empty() ? pr : cl).front();
    };
    Hypergame h4 = four_state_hypergame();
    PermissiveTable p4 = permissive(h4);
    check_one(h4, p4, solve_dasw(h4, p4), "four-state game");
    for (const auto& c : corpus) check_one(c.h, c.p, c.r, "seed " + std::to_string(c.inst.seed));
    const std::size_t solved = corpus.size() + 1;
    report(7, closure_fail == 0 && progress_fail == 0,
           fmt("%zu instances: closure failures %zu, one-step progress failures %zu (multi-step progress failures %zu)%s%s",
               solved, closure_fail, progress_fail, reach_fail, example.empty() ? "" : "; first: ", example.c_str()));
  }

  // 8. Simulation.
  {
    auto t0 = Clock::now();
    SimOutcome out;
    Hypergame h4 = four_state_hypergame();
    PermissiveTable p4 = permissive(h4);
    simulate(h4, p4, solve_dasw(h4, p4), "four-state game", out);
    std::size_t used = 0;
    for (const auto& c : corpus) {
      if (used == kSimInstances) break;
      // Instances whose region holds a vertex that still has to play.
      bool nontrivial = false;
      for (VertexId v : c.r.region_vertices()) nontrivial = nontrivial || !c.h.is_final(v);
      if (!nontrivial) continue;
      simulate(c.h, c.p, c.r, "seed " + std::to_string(c.inst.seed), out);
      ++used;
    }
    const double s = seconds_since(t0);
    const bool ok = used == kSimInstances && out.reached == out.episodes && out.violations == 0 && s < kSimulationBudgetS;
    report(8, ok,
           fmt("%zu instances, %zu starts x 2 policies, %llu episodes, reach rate %.6f, support violations %llu; %.2f s "
               "(< %.0f s)%s%s",
               used + 1, out.starts / 2, static_cast<unsigned long long>(out.episodes),
               out.episodes == 0 ? 0.0 : static_cast<double>(out.reached) / out.episodes,
               static_cast<unsigned long long>(out.violations), s, kSimulationBudgetS,
               out.first_failure.empty() ? "" : "; first failure: ", out.first_failure.c_str()));
  }

  // 9. Gridworld.
  {
    auto t0 = Clock::now();
    gridworld::GridGame g = gridworld::generate(gridworld::default_config());
    auto spec = g.inference();
    Hypergame h = build_hypergame(g.game_ptr(), spec.x0, spec.mechanism, HypergameMode::kProduct);
    PermissiveTable p = permissive(h);
    DaswResult r = solve_dasw(h, p);
    StrategyMap strat = extract_strategy(h, p, r);
    const double solve_s = seconds_since(t0);
    gridworld::LayoutReport rep = gridworld::layout_report(h, p, r);

    const bool counts = g.game().num_states() == 2048 && h.num_vertices() == 4096;
    const bool c5 = checks::monotone_levels(r).empty() && checks::projection_covers_asw(h, p, r).empty();
    const bool c6 = r.region == mdp_oracle(h, p);
    const bool c7 = checks::closure(h, p, r).empty() && checks::one_step_progress(h, p, r).empty();
    const bool strat_ok = checks::strategy_descends(h, p, r, strat).empty();
    SimOutcome out;
    simulate(h, p, r, "gridworld", out);
    const bool c8 = out.reached == out.episodes && out.violations == 0;
    const bool gain_ok = rep.projected_states >= rep.asw_states;
    report(9, counts && c5 && c6 && c7 && c8 && strat_ok && gain_ok && solve_s < kGridBudgetS,
           fmt("|S|=%zu |V|=%zu; coverage %d, oracle %d, progress %d, strategy %d, simulation %d (%zu starts); "
               "DASW %zu vertices, projection %zu >= ASW %zu (gain %lld); solve %.2f s (< %.0f s)",
               g.game().num_states(), h.num_vertices(), c5, c6, c7, strat_ok, c8, out.starts / 2, rep.dasw_vertices,
               rep.projected_states, rep.asw_states, rep.gain, solve_s, kGridBudgetS));
  }

  std::size_t passed = 0;
  for (const auto& l : lines) passed += l.pass ? 1 : 0;
  std::printf("acceptance: %zu/%zu criteria passed\n", passed, lines.size());
  return passed == lines.size() ? 0 : 1;
}
