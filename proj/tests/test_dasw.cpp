#include <doctest.h>

#include "dasw/dasw.hpp"
#include "support.hpp"

using namespace dasw;
using namespace dasw::testing;

namespace {

const ActionSet kX0{a2};
const ActionSet kAll{a1, a2};

VertexSet set_of(const Hypergame& h, std::initializer_list<std::pair<StateId, ActionSet>> vs) {
  VertexSet out(h.num_vertices(), false);
  for (const auto& [s, x] : vs) {
    VertexId v = at(h, s, x);
    REQUIRE(v != kNone);
    out[v] = true;
  }
  return out;
}

VertexSet complement(VertexSet s) {
  s.flip();
  return s;
}

// P1 can loop at v forever; the only exit passes a P2 vertex y whose
// permissive move leads to x, a P2 trap. The unpruned fixed point keeps v.
GameGraph looping_game() {
  std::vector<StateInfo> states{{Player::P1, false, "v"}, {Player::P2, false, "y"}, {Player::P1, false, "t"},
                                {Player::P2, false, "x"}, {Player::P1, true, "fin"}};
  std::vector<ActionInfo> actions{{Player::P1, "a0"}, {Player::P1, "a1"}, {Player::P1, "a2"}, {Player::P2, "b0"},
                                  {Player::P2, "b1"}};
  std::vector<Transition> t{{0, 0, 0}, {0, 1, 1}, {1, 3, 2}, {1, 4, 3}, {2, 2, 4}, {3, 3, 3}};
  return GameGraph(states, actions, t, 0);
}

}  // namespace

TEST_CASE("four-state game: permissive sets") {
  Hypergame h = four_state_hypergame();
  PermissiveTable p = permissive(h);
  CHECK(p.m[at(h, s2, kX0)] == ActionSet{b1, b2});
  CHECK(p.m[at(h, s2, kAll)] == ActionSet{b2});
  CHECK(p.m[at(h, s1, kX0)].empty());  // P1 vertex
  CHECK(p.support[at(h, s2, kAll)].size() == 1);
  CHECK(p.win2_cache.size() == 2);
  CHECK(p.full.win1_states() == std::vector<StateId>{s0, s1});
}

TEST_CASE("four-state game: Safe-2 and Safe-1 of the first iteration") {
  Hypergame h = four_state_hypergame();
  PermissiveTable p = permissive(h);
  VertexSet z0 = set_of(h, {{s0, kAll}, {s1, kX0}, {s1, kAll}});

  SafeResult c0 = safe(h, p, Player::P2, complement(z0));
  CHECK(c0.set == set_of(h, {{s2, kAll}, {s3, kAll}}));
  CHECK(c0.rounds == 3);

  SafeResult z1 = safe(h, p, Player::P1, complement(c0.set));
  CHECK(z1.set == set_of(h, {{s0, kAll}, {s1, kX0}, {s1, kAll}, {s2, kX0}, {s3, kX0}}));
  CHECK(z1.rounds == 2);
}

TEST_CASE("four-state game: region and ranks") {
  Hypergame h = four_state_hypergame();
  PermissiveTable p = permissive(h);
  DaswResult r = solve_dasw(h, p);
  CHECK(r.levels.size() == 2);
  CHECK(count(r.levels[0]) == 3);
  CHECK(r.outer_iterations == 2);
  CHECK(r.region == set_of(h, {{s0, kAll}, {s1, kX0}, {s1, kAll}, {s2, kX0}, {s3, kX0}}));
  CHECK(r.safe2_trace[0] == set_of(h, {{s2, kAll}, {s3, kAll}}));
  CHECK(r.rank[at(h, s2, kX0)] == 1);
  CHECK(r.rank[at(h, s1, kX0)] == 0);
  CHECK(r.rank[at(h, s2, kAll)] == kUnreached);

  // deception wins from s2 and s3, which full knowledge loses
  CHECK(!p.full.win1[s2]);
  CHECK(!p.full.win1[s3]);
  CHECK(r.region[at(h, s2, kX0)]);
  CHECK(r.region[at(h, s3, kX0)]);

  CHECK(mdp_oracle(h, p) == r.region);
  CHECK(checks::monotone_levels(r).empty());
  CHECK(checks::closure(h, p, r).empty());
  CHECK(checks::projection_covers_asw(h, p, r).empty());
  CHECK(checks::reachable_progress(h, p, r).empty());
  // (s3,{a2}) joins Z_1 together with (s2,{a2}) but both of its moves lead
  // to s2, outside Z_0: progress takes two steps there, not one.
  CHECK(checks::one_step_progress(h, p, r) == std::vector<std::string>{"Z_1: (s3,0) has no move into Z_0"});
}

TEST_CASE("four-state game: perceived quantifier gives the same answer") {
  Hypergame h = four_state_hypergame();
  PermissiveTable p = permissive(h);
  DaswOptions opts;
  opts.safe2_quantifier = Safe2Quantifier::kPerceived;
  DaswResult r = solve_dasw(h, p, opts);
  CHECK(r.region == solve_dasw(h, p).region);
  CHECK(r.safe2_trace[0] == set_of(h, {{s2, kAll}, {s3, kAll}}));
}

TEST_CASE("safe of the empty set is empty") {
  Hypergame h = four_state_hypergame();
  PermissiveTable p = permissive(h);
  VertexSet none(h.num_vertices(), false);
  for (Player who : {Player::P1, Player::P2}) {
    CHECK(safe(h, p, who, none).set == none);
    CHECK(safe_worklist(h, p, who, none) == none);
  }
}

TEST_CASE("empty permissive set when the perceived game is lost") {
  // w (P2) has a single move into the final state, so P2 believes he loses.
  std::vector<StateInfo> states{{Player::P2, false, "w"}, {Player::P1, true, "f"}};
  std::vector<ActionInfo> actions{{Player::P1, "a"}, {Player::P2, "b"}};
  GameGraph g(states, actions, {{0, 1, 1}, {1, 0, 0}}, 0);
  Hypergame h = build_hypergame(g, ActionSet{}, InferenceMechanism::union_rule(g));
  PermissiveTable p = permissive(h);
  VertexId w = *h.find(0, 0);
  CHECK(p.win2_cache[0].win2_states().empty());
  CHECK(p.m[w].empty());
  CHECK(p.support[w].size() == 1);  // falls back to every defined move
  DaswResult r = solve_dasw(h, p);
  CHECK(r.region[w]);
}

TEST_CASE("full knowledge: region is Win1 at the single index") {
  GameGraph g = four_state_game();
  Hypergame h = build_hypergame(g, kAll, InferenceMechanism::union_rule(g));
  PermissiveTable p = permissive(h);
  DaswResult r = solve_dasw(h, p);
  for (VertexId v = 0; v < h.num_vertices(); ++v) CHECK(r.region[v] == p.full.win1[h.vertex(v).state]);
}

TEST_CASE("all final: oracle and region hold everything") {
  GameGraph g = four_state_game();
  auto states = g.states();
  for (auto& s : states) s.final = true;
  GameGraph all(states, g.actions(), g.transitions(), s2);
  Hypergame h = build_hypergame(all, kX0, InferenceMechanism::union_rule(all));
  PermissiveTable p = permissive(h);
  CHECK(count(mdp_oracle(h, p)) == h.num_vertices());
  CHECK(count(solve_dasw(h, p).region) == h.num_vertices());
}

TEST_CASE("literal fixed point keeps a P1 loop that never progresses") {
  GameGraph g = looping_game();
  Hypergame h = build_hypergame(g, ActionSet{0, 1}, InferenceMechanism::union_rule(g));
  PermissiveTable p = permissive(h);
  DaswOptions literal;
  literal.fixpoint = FixpointMode::kLiteral;
  VertexId v = h.initial();
  CHECK(solve_dasw(h, p, literal).region[v]);
  CHECK(!solve_dasw(h, p).region[v]);
  CHECK(!mdp_oracle(h, p)[v]);
}

TEST_CASE("worklist fixed points match the literal rounds") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto inst = random_instance(seed);
    Hypergame h = build_hypergame(inst.game, inst.x0, InferenceMechanism::union_rule(inst.game));
    PermissiveTable p = permissive(h);
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 4; ++trial) {
      VertexSet u(h.num_vertices());
      for (VertexId v = 0; v < h.num_vertices(); ++v) u[v] = rng() % 3 != 0;
      for (auto q : {Safe2Quantifier::kFull, Safe2Quantifier::kPerceived}) {
        DaswOptions o;
        o.safe2_quantifier = q;
        for (Player who : {Player::P1, Player::P2}) {
          CAPTURE(seed);
          REQUIRE(safe(h, p, who, u, o).set == safe_worklist(h, p, who, u, o));
        }
      }
    }
  }
}

TEST_CASE("region equals the MDP oracle on small random games") {
  for (std::uint64_t seed = 1000; seed < 1300; ++seed) {
    auto inst = random_instance(seed, 4, 6);
    Hypergame h = build_hypergame(inst.game, inst.x0, InferenceMechanism::union_rule(inst.game));
    PermissiveTable p = permissive(h);
    DaswResult r = solve_dasw(h, p);
    CAPTURE(seed);
    REQUIRE(r.region == mdp_oracle(h, p));
    REQUIRE(checks::monotone_levels(r).empty());
    REQUIRE(checks::projection_covers_asw(h, p, r).empty());
    REQUIRE(checks::closure(h, p, r).empty());
    REQUIRE(checks::reachable_progress(h, p, r).empty());
  }
}

TEST_CASE("strategy: lifted ASW inside Z0, descending elsewhere") {
  Hypergame h = four_state_hypergame();
  PermissiveTable p = permissive(h);
  DaswResult r = solve_dasw(h, p);
  StrategyMap s = extract_strategy(h, p, r);
  CHECK(s.p1[at(h, s1, kX0)] == std::vector<ActionId>{a1});
  CHECK(s.p1[at(h, s1, kAll)] == std::vector<ActionId>{a1});
  CHECK(s.p1[at(h, s3, kX0)] == std::vector<ActionId>{a2});
  CHECK(!s.defined_at(at(h, s0, kAll)));
  CHECK(!s.defined_at(at(h, s3, kAll)));
  CHECK(checks::strategy_descends(h, p, r, s).empty());

  for (std::uint64_t seed = 2000; seed < 2200; ++seed) {
    auto inst = random_instance(seed);
    Hypergame hh = build_hypergame(inst.game, inst.x0, InferenceMechanism::union_rule(inst.game));
    PermissiveTable pp = permissive(hh);
    DaswResult rr = solve_dasw(hh, pp);
    StrategyMap ss = extract_strategy(hh, pp, rr);
    CAPTURE(seed);
    REQUIRE(checks::strategy_descends(hh, pp, rr, ss).empty());
    for (VertexId v : rr.region_vertices())
      if (hh.owner(v) == Player::P1 && !hh.is_final(v)) REQUIRE(ss.defined_at(v));
  }
}

TEST_CASE("result file round trip") {
  Hypergame h = four_state_hypergame();
  PermissiveTable p = permissive(h);
  DaswResult r = solve_dasw(h, p);
  StrategyMap s = extract_strategy(h, p, r);
  auto doc = dasw_result_to_json(h, p, r, s);
  CHECK(doc["region_size"] == 5);
  auto back = dasw_result_from_json(doc, h);
  CHECK(back.result.region == r.region);
  CHECK(back.result.rank == r.rank);
  CHECK(back.strategy.p1 == s.p1);
  CHECK(dasw_result_to_json(h, p, back.result, back.strategy) == doc);
}
