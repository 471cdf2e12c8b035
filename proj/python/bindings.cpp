// Python bindings. Structured results cross the boundary as JSON text and
// are decoded by the pure-Python wrapper in dasw/__init__.py.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dasw/game_io.hpp"
#include "dasw/gridworld.hpp"
#include "dasw/simulator.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace dasw;

namespace {

// pybind11 holders cannot be pointers to const; the game is never mutated.
using GamePtr = std::shared_ptr<GameGraph>;

struct HypergameHandle {
  std::shared_ptr<const Hypergame> h;
};

struct Solution {
  std::shared_ptr<const Hypergame> h;
  PermissiveTable perm;
  DaswResult result;
  StrategyMap strategy;
};

GamePtr game_from_text(const std::string& text) {
  std::istringstream in(text);
  return std::make_shared<GameGraph>(read_game(in));
}

std::string asw_json(const GamePtr& g, std::optional<std::vector<std::string>> restrict_to) {
  GameGraph game = *g;
  if (restrict_to) {
    ActionSet x;
    for (const auto& name : *restrict_to) {
      auto a = game.find_action(name);
      if (!a) throw ParseError("unknown action '" + name + "'");
      x.insert(*a);
    }
    game = restrict(game, x);
  }
  WinRegions r = asw(game);
  auto strat = asw_strategy(game, r);
  json win1 = json::array(), win2 = json::array(), levels = json::object(), strategy = json::object();
  for (StateId s : r.win1_states()) {
    win1.push_back(game.state_name(s));
    levels[game.state_name(s)] = r.level[s];
    if (strat[s] != kNone) strategy[game.state_name(s)] = game.action_name(strat[s]);
  }
  for (StateId s : r.win2_states()) win2.push_back(game.state_name(s));
  return json{{"win1", win1}, {"win2", win2}, {"levels", levels}, {"strategy", strategy}}.dump();
}

HypergameHandle make_hypergame(const GamePtr& g, std::optional<std::vector<std::string>> x0,
                               std::optional<std::string> inference, bool product) {
  InferenceSpec spec;
  if (inference) {
    spec = inference_from_json(json::parse(*inference), *g);
  } else {
    spec.mechanism = InferenceMechanism::union_rule(*g);
    for (const auto& name : x0.value_or(std::vector<std::string>{})) {
      auto a = g->find_action(name);
      if (!a) throw ParseError("unknown action '" + name + "'");
      spec.x0.insert(*a);
    }
  }
  auto mode = product ? HypergameMode::kProduct : HypergameMode::kReachable;
  return {std::make_shared<const Hypergame>(build_hypergame(g, spec.x0, spec.mechanism, mode))};
}

std::shared_ptr<Solution> solve(const HypergameHandle& hh, const std::string& quantifier, const std::string& fixpoint) {
  DaswOptions o;
  if (quantifier == "perceived") {
    o.safe2_quantifier = Safe2Quantifier::kPerceived;
  } else if (quantifier != "full") {
    throw ParseError("quantifier must be 'full' or 'perceived'");
  }
  if (fixpoint == "literal") {
    o.fixpoint = FixpointMode::kLiteral;
  } else if (fixpoint != "progressive") {
    throw ParseError("fixpoint must be 'progressive' or 'literal'");
  }
  auto s = std::make_shared<Solution>();
  s->h = hh.h;
  s->perm = permissive(*hh.h);
  s->result = solve_dasw(*hh.h, s->perm, o);
  s->strategy = extract_strategy(*hh.h, s->perm, s->result);
  return s;
}

std::string simulate(const Solution& s, std::uint32_t episodes, std::optional<std::uint32_t> cap, std::uint64_t seed,
                     const std::string& policy, std::optional<std::vector<VertexId>> starts) {
  if (policy != "uniform" && policy != "random") throw ParseError("policy must be 'uniform' or 'random'");
  P2Policy p{policy == "random" ? P2PolicyKind::kRandomWeights : P2PolicyKind::kUniform};
  std::vector<VertexId> from = starts.value_or(s.result.region_vertices());
  const auto c = cap.value_or(static_cast<std::uint32_t>(10 * s.h->num_vertices()));
  return batch_to_json(*s.h, run_batch(*s.h, s.perm, s.strategy, p, from, episodes, c, seed)).dump();
}

py::tuple gridworld_instance(std::optional<std::string> config) {
  gridworld::GridConfig cfg =
      config ? gridworld::config_from_json(json::parse(*config)) : gridworld::default_config();
  gridworld::GridGame grid = gridworld::generate(cfg);
  auto spec = grid.inference();
  return py::make_tuple(std::const_pointer_cast<GameGraph>(grid.game_ptr()), inference_to_json(spec, grid.game()).dump(),
                        gridworld::config_to_json(cfg).dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Deceptive almost-sure winning strategies for reachability games";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<GameError>(m, "GameError", PyExc_ValueError);

  py::class_<GameGraph, GamePtr>(m, "Game")
      .def_static("load", [](const std::string& path) { return std::make_shared<GameGraph>(load_game(path)); })
      .def_static("from_json", &game_from_text)
      .def("to_json", [](const GameGraph& g) { return game_to_json(g).dump(); })
      .def_property_readonly("num_states", &GameGraph::num_states)
      .def_property_readonly("num_actions", &GameGraph::num_actions)
      .def("state_name", &GameGraph::state_name)
      .def("action_name", &GameGraph::action_name)
      .def("violations", [](const GameGraph& g) {
        std::vector<std::string> out;
        for (const auto& v : validate(g)) out.push_back(v.message);
        return out;
      });

  m.def("asw_json", &asw_json, py::arg("game"), py::arg("restrict_to") = py::none());

  py::class_<HypergameHandle>(m, "Hypergame")
      .def_property_readonly("num_vertices", [](const HypergameHandle& hh) { return hh.h->num_vertices(); })
      .def_property_readonly("num_edges", [](const HypergameHandle& hh) { return hh.h->num_edges(); })
      .def_property_readonly("num_perceptions", [](const HypergameHandle& hh) { return hh.h->perceptions().size(); })
      .def("vertex_name", [](const HypergameHandle& hh, VertexId v) { return hh.h->vertex_name(v); })
      .def("to_json", [](const HypergameHandle& hh) { return hypergame_to_json(*hh.h).dump(); });

  m.def("build_hypergame", &make_hypergame, py::arg("game"), py::arg("x0") = py::none(),
        py::arg("inference") = py::none(), py::arg("product") = false);

  py::class_<Solution, std::shared_ptr<Solution>>(m, "Solution")
      .def_property_readonly("region", [](const Solution& s) { return s.result.region_vertices(); })
      .def_property_readonly("outer_iterations", [](const Solution& s) { return s.result.outer_iterations; })
      .def("oracle_agrees", [](const Solution& s) { return s.result.region == mdp_oracle(*s.h, s.perm); })
      .def("to_json", [](const Solution& s) { return dasw_result_to_json(*s.h, s.perm, s.result, s.strategy).dump(); })
      .def("layout_report_json",
           [](const Solution& s) { return gridworld::layout_report(*s.h, s.perm, s.result).to_json().dump(); });

  m.def("solve", &solve, py::arg("hypergame"), py::arg("quantifier") = "full", py::arg("fixpoint") = "progressive");
  m.def("simulate_json", &simulate, py::arg("solution"), py::arg("episodes") = 1000, py::arg("cap") = py::none(),
        py::arg("seed") = 0, py::arg("policy") = "uniform", py::arg("starts") = py::none());
  m.def("gridworld", &gridworld_instance, py::arg("config") = py::none());
}
