// dasw: command-line front end for the game, hypergame and deceptive
// synthesis library.
//
// Exit codes: 0 success, 1 usage or parse error, 2 invalid game or
// configuration, 3 internal error (including oracle disagreement).

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "dasw/game_io.hpp"
#include "dasw/gridworld.hpp"
#include "dasw/simulator.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dasw;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 3;

struct Globals {
  std::string output;
  std::string format = "text";
};

struct GameArgs {
  std::string game;
  std::string inference;
  std::optional<std::string> x0;
  std::string mode = "reachable";
};

void add_game_args(CLI::App* cmd, GameArgs& a) {
  cmd->add_option("game", a.game, "Game file (JSON)")->required();
  auto* inf = cmd->add_option("--inference", a.inference, "Inference sidecar: {kind, x0, map}");
  auto* x0 = cmd->add_option("--x0", a.x0, "Initial perception as a comma-separated action list (UNION inference)");
  inf->excludes(x0);
  cmd->add_option("--mode", a.mode, "Hypergame construction")->check(CLI::IsMember({"reachable", "product"}));
}

struct Loaded {
  std::shared_ptr<const GameGraph> game;
  InferenceSpec spec;
  Hypergame h;
};

Loaded load(const GameArgs& a) {
  auto game = std::make_shared<const GameGraph>(load_game(a.game));
  InferenceSpec spec;
  if (!a.inference.empty()) {
    spec = inference_from_json(read_json_file(a.inference), *game);
  } else if (a.x0) {
    spec = {InferenceMechanism::union_rule(*game), parse_action_list(*a.x0, *game)};
  } else {
    throw ParseError("either --inference or --x0 is required");
  }
  const auto mode = a.mode == "product" ? HypergameMode::kProduct : HypergameMode::kReachable;
  Hypergame h = build_hypergame(game, spec.x0, spec.mechanism, mode);
  return {game, std::move(spec), std::move(h)};
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("DASW_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError(std::string("DASW_SEED is not an unsigned integer: ") + env);
    }
  }
  return 0;
}

std::string join_states(const GameGraph& g, const std::vector<StateId>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? ", " : "") + g.state_name(ids[i]);
  return out + "}";
}

std::string join_actions(const GameGraph& g, const ActionSet& set) {
  std::string out = "{";
  bool first = true;
  for (ActionId a : set.to_vector()) {
    out += (first ? "" : ", ") + g.action_name(a);
    first = false;
  }
  return out + "}";
}

// Writes `doc` to <output>/<name> when --output is set; otherwise prints it
// (JSON format) or `text` (text format) to stdout.
void emit(const Globals& gl, const std::string& name, const json& doc, const std::string& text) {
  if (!gl.output.empty()) {
    fs::create_directories(gl.output);
    const fs::path path = fs::path(gl.output) / name;
    write_json_file(doc, path);
    std::cerr << "wrote " << path.string() << '\n';
    if (gl.format == "text") std::cout << text;
    return;
  }
  if (gl.format == "json") {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << text;
  }
}

int cmd_validate(const Globals&, const std::string& path) {
  const json doc = read_json_file(path);
  GameGraph g;
  try {
    g = game_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
  auto vs = validate(g);
  for (const auto& v : vs) std::cout << path << ": " << v.message << '\n';
  if (!vs.empty()) return kExitInvalid;
  std::cout << path << ": ok (" << g.num_states() << " states, " << g.num_actions() << " actions, "
            << g.transitions().size() << " transitions)\n";
  return 0;
}

int cmd_asw(const Globals& gl, const std::string& path, const std::optional<std::string>& restrict_to) {
  GameGraph g = load_game(path);
  if (restrict_to) g = restrict(g, parse_action_list(*restrict_to, g));
  WinRegions r = asw(g);
  auto strat = asw_strategy(g, r);
  json levels = json::object();
  json strategy = json::object();
  for (StateId s : r.win1_states()) {
    levels[g.state_name(s)] = r.level[s];
    if (strat[s] != kNone) strategy[g.state_name(s)] = g.action_name(strat[s]);
  }
  json win1 = json::array();
  json win2 = json::array();
  for (StateId s : r.win1_states()) win1.push_back(g.state_name(s));
  for (StateId s : r.win2_states()) win2.push_back(g.state_name(s));
  json doc = {{"win1", win1}, {"win2", win2}, {"levels", levels}, {"strategy", strategy}, {"rounds", r.rounds}};
  if (restrict_to) doc["restricted_to"] = action_set_to_json(g.p1_action_set(), g);

  std::ostringstream text;
  text << "Win1 = " << join_states(g, r.win1_states()) << '\n' << "Win2 = " << join_states(g, r.win2_states()) << '\n';
  for (StateId s : r.win1_states()) {
    text << "  " << g.state_name(s) << ": level " << r.level[s];
    if (strat[s] != kNone) text << ", play " << g.action_name(strat[s]);
    text << '\n';
  }
  emit(gl, "asw.json", doc, text.str());
  return 0;
}

int cmd_hypergame(const Globals& gl, const GameArgs& a) {
  Loaded l = load(a);
  std::ostringstream text;
  text << l.h.num_vertices() << " vertices, " << l.h.num_edges() << " edges, " << l.h.perceptions().size()
       << " perception sets\n";
  for (std::uint32_t i = 0; i < l.h.perceptions().size(); ++i) {
    text << "  " << i << ": " << join_actions(*l.game, l.h.perceptions().set(i)) << '\n';
  }
  for (VertexId v = 0; v < l.h.num_vertices(); ++v) {
    text << l.h.vertex_name(v) << (l.h.is_final(v) ? " [final]" : "") << (v == l.h.initial() ? " [initial]" : "") << ":";
    for (const HEdge& e : l.h.successors(v)) text << ' ' << l.game->action_name(e.action) << "->" << l.h.vertex_name(e.to);
    text << '\n';
  }
  emit(gl, "hypergame.json", hypergame_to_json(l.h), text.str());
  return 0;
}

struct SolveArgs {
  std::string quantifier = "full";
  std::string fixpoint = "progressive";
};

void add_solve_args(CLI::App* cmd, SolveArgs& s) {
  cmd->add_option("--safe2-quantifier", s.quantifier, "P1 actions Safe-2 ranges over")
      ->check(CLI::IsMember({"full", "perceived"}));
  cmd->add_option("--fixpoint", s.fixpoint, "progressive (default) or the unpruned literal iteration")
      ->check(CLI::IsMember({"progressive", "literal"}));
}

DaswOptions options_of(const SolveArgs& s) {
  DaswOptions o;
  o.safe2_quantifier = s.quantifier == "perceived" ? Safe2Quantifier::kPerceived : Safe2Quantifier::kFull;
  o.fixpoint = s.fixpoint == "literal" ? FixpointMode::kLiteral : FixpointMode::kProgressive;
  return o;
}

int cmd_dasw(const Globals& gl, const GameArgs& a, const SolveArgs& sa) {
  Loaded l = load(a);
  PermissiveTable p = permissive(l.h);
  DaswResult r = solve_dasw(l.h, p, options_of(sa));
  StrategyMap s = extract_strategy(l.h, p, r);
  json doc = dasw_result_to_json(l.h, p, r, s);

  std::ostringstream text;
  text << "region: " << count(r.region) << " of " << l.h.num_vertices() << " vertices, " << r.levels.size()
       << " levels, fixed point at outer iteration " << r.outer_iterations << '\n';
  for (VertexId v : r.region_vertices()) {
    text << "  " << l.h.vertex_name(v) << " rank " << r.rank[v];
    if (!s.p1[v].empty()) {
      text << ", play";
      for (ActionId act : s.p1[v]) text << ' ' << l.game->action_name(act);
    }
    text << '\n';
  }
  std::vector<bool> projected(l.game->num_states(), false);
  for (VertexId v : r.region_vertices()) projected[l.h.vertex(v).state] = true;
  std::vector<StateId> proj;
  for (StateId st = 0; st < projected.size(); ++st)
    if (projected[st]) proj.push_back(st);
  text << "projection: " << join_states(*l.game, proj) << '\n'
       << "Win1(A1):   " << join_states(*l.game, p.full.win1_states()) << '\n';

  const bool agrees = r.region == mdp_oracle(l.h, p);
  doc["oracle_agrees"] = agrees;
  emit(gl, "dasw.json", doc, text.str());
  if (!agrees) {
    std::cerr << "error: region differs from the almost-sure reachability oracle\n";
    return kExitInternal;
  }
  return 0;
}

struct SimArgs {
  std::uint32_t episodes = 1000;
  std::optional<std::uint32_t> cap;
  std::optional<std::uint64_t> seed;
  std::string policy = "uniform";
  std::string starts = "region";
  double min_weight = 0.5;
};

std::vector<VertexId> parse_starts(const std::string& spec, const Hypergame& h, const DaswResult& r) {
  if (spec == "region") return r.region_vertices();
  std::vector<VertexId> out;
  if (spec == "all") {
    for (VertexId v = 0; v < h.num_vertices(); ++v) out.push_back(v);
    return out;
  }
  // "(s2,0);(s3,0)" or "4,5": vertex names or ids.
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(spec);
  const char sep = spec.find('(') != std::string::npos ? ';' : ',';
  while (std::getline(in, item, sep))
    if (!item.empty()) items.push_back(item);
  for (const auto& it : items) {
    std::optional<VertexId> found;
    for (VertexId v = 0; v < h.num_vertices() && !found; ++v)
      if (h.vertex_name(v) == it) found = v;
    if (!found) {
      try {
        std::size_t used = 0;
        unsigned long id = std::stoul(it, &used);
        if (used == it.size() && id < h.num_vertices()) found = static_cast<VertexId>(id);
      } catch (const std::exception&) {
      }
    }
    if (!found) throw ParseError("unknown start vertex '" + it + "'");
    out.push_back(*found);
  }
  return out;
}

int cmd_simulate(const Globals& gl, const GameArgs& a, const SimArgs& sa) {
  Loaded l = load(a);
  PermissiveTable p = permissive(l.h);
  DaswResult r = solve_dasw(l.h, p);
  StrategyMap s = extract_strategy(l.h, p, r);
  std::vector<VertexId> starts = parse_starts(sa.starts, l.h, r);
  // Non-final P1 starts outside the strategy have nothing to simulate.
  std::erase_if(starts, [&](VertexId v) { return l.h.owner(v) == Player::P1 && !l.h.is_final(v) && !s.defined_at(v); });
  if (sa.starts != "region" && sa.starts != "all" && starts.empty()) {
    throw GameError("no start lies in the strategy's domain");
  }
  P2Policy policy{sa.policy == "random" ? P2PolicyKind::kRandomWeights : P2PolicyKind::kUniform, sa.min_weight};
  const std::uint32_t cap = sa.cap.value_or(static_cast<std::uint32_t>(10 * l.h.num_vertices()));
  const std::uint64_t seed = sa.seed.value_or(default_seed());
  BatchStats b = run_batch(l.h, p, s, policy, starts, sa.episodes, cap, seed);

  json doc = batch_to_json(l.h, b);
  doc["policy"] = sa.policy;
  doc["cap"] = cap;
  doc["base_seed"] = seed;
  std::ostringstream text;
  text << "policy " << sa.policy << ", " << sa.episodes << " episodes per start, cap " << cap << ", base seed " << seed
       << '\n';
  for (const auto& st : b.per_start) {
    text << "  " << l.h.vertex_name(st.start) << (r.region[st.start] ? "" : " (outside region)") << ": reach rate "
         << st.reach_rate() << ", mean steps " << st.mean_steps << ", max steps " << st.max_steps << '\n';
  }
  if (b.counterexample) {
    text << "counterexample: start " << l.h.vertex_name(b.counterexample->start) << ", seed "
         << b.counterexample->seed << ", " << to_string(b.counterexample->outcome) << " after "
         << b.counterexample->steps << " steps\n";
    if (!gl.output.empty()) {
      fs::create_directories(gl.output);
      write_json_file(episode_to_json(l.h, *b.counterexample), fs::path(gl.output) / "counterexample.json");
    }
  }
  emit(gl, "simulation.json", doc, text.str());
  return 0;
}

struct GridArgs {
  std::string size = "4x4";
  std::string flags = "3,1;3,3";
  std::optional<std::string> obstacles;
  std::string p1_start = "0,0";
  std::string p2_start = "3,2";
  std::string x0 = "N,E,S,W";
  std::string p1_moves = "N,E,S,W,NE,NW,SW";
  std::string p2_moves = "N,E,S,W";
  std::string name = "gridworld";
};

gridworld::Cell parse_cell(const std::string& text, char sep = ',') {
  std::istringstream in(text);
  gridworld::Cell c;
  char got = 0;
  if (!(in >> c.x >> got >> c.y) || got != sep || !(in >> std::ws).eof()) {
    throw ParseError("expected a cell as x" + std::string(1, sep) + "y, got '" + text + "'");
  }
  return c;
}

std::vector<gridworld::Cell> parse_cells(const std::string& text) {
  std::vector<gridworld::Cell> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ';'))
    if (!item.empty()) out.push_back(parse_cell(item));
  return out;
}

std::vector<gridworld::Move> parse_moves(const std::string& text) {
  std::vector<gridworld::Move> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(gridworld::parse_move(item));
  return out;
}

int cmd_gridworld(const Globals& gl, const GridArgs& a) {
  gridworld::GridConfig cfg = gridworld::default_config();
  const auto wh = parse_cell(a.size, 'x');
  cfg.width = wh.x;
  cfg.height = wh.y;
  auto flags = parse_cells(a.flags);
  if (flags.size() != 2) throw ParseError("--flags needs exactly two cells");
  cfg.flags = {flags[0], flags[1]};
  if (a.obstacles) cfg.obstacles = parse_cells(*a.obstacles);
  cfg.p1_start = parse_cell(a.p1_start);
  cfg.p2_start = parse_cell(a.p2_start);
  cfg.x0 = parse_moves(a.x0);
  cfg.p1_moves = parse_moves(a.p1_moves);
  cfg.p2_moves = parse_moves(a.p2_moves);

  gridworld::GridGame grid = gridworld::generate(cfg);
  InferenceSpec spec = grid.inference();
  Hypergame h = build_hypergame(grid.game_ptr(), spec.x0, spec.mechanism, HypergameMode::kProduct);
  PermissiveTable p = permissive(h);
  DaswResult r = solve_dasw(h, p);
  gridworld::LayoutReport rep = gridworld::layout_report(h, p, r);

  const fs::path dir = gl.output.empty() ? fs::path(".") : fs::path(gl.output);
  fs::create_directories(dir);
  save_game(grid.game(), dir / (a.name + ".game.json"));
  write_json_file(inference_to_json(spec, grid.game()), dir / (a.name + ".inference.json"));
  write_json_file(gridworld::config_to_json(cfg), dir / (a.name + ".config.json"));
  std::cerr << "wrote " << (dir / (a.name + ".game.json")).string() << ", " << a.name << ".inference.json, " << a.name
            << ".config.json\n";

  if (gl.format == "json") {
    std::cout << json{{"config", gridworld::config_to_json(cfg)}, {"report", rep.to_json()}}.dump(2) << '\n';
  } else {
    std::cout << rep.text();
  }
  return 0;
}

struct PlayArgs {
  std::optional<std::uint32_t> cap;
};

// Human plays P2 against the synthesized P1 strategy.
int cmd_play(const GameArgs& a, const PlayArgs& pa) {
  Loaded l = load(a);
  PermissiveTable p = permissive(l.h);
  DaswResult r = solve_dasw(l.h, p);
  StrategyMap s = extract_strategy(l.h, p, r);
  const GameGraph& g = *l.game;
  const std::uint32_t cap = pa.cap.value_or(static_cast<std::uint32_t>(10 * l.h.num_vertices()));

  VertexId v = l.h.initial();
  std::cout << "You are P2. P1 starts at " << l.h.vertex_name(v)
            << (r.region[v] ? " inside" : " outside") << " her deceptive winning region.\n"
            << "Type an action name to move, or 'quit'.\n";
  bool revealed = false;
  for (std::uint32_t step = 0;; ++step) {
    if (l.h.is_final(v)) {
      std::cout << "P1 reached a final state at " << l.h.vertex_name(v) << " after " << step << " steps.\n";
      return 0;
    }
    if (step == cap) {
      std::cout << "Step cap " << cap << " reached at " << l.h.vertex_name(v) << ".\n";
      if (!revealed) {
        std::cout << "P1 never revealed an action outside your initial perception "
                  << join_actions(g, l.h.perceptions().set(0)) << "; she stayed confined to moves you expected.\n";
      }
      return 0;
    }
    auto succ = l.h.successors(v);
    if (succ.empty()) {
      std::cout << l.h.vertex_name(v) << " is a dead end; P1 cannot reach a final state.\n";
      return 0;
    }
    if (l.h.owner(v) == Player::P1) {
      ActionId act = s.defined_at(v) ? s.p1[v].front() : succ.front().action;
      VertexId next = l.h.successor(v, act);
      if (!l.h.perception(v).contains(act)) revealed = true;
      std::cout << "P1 plays " << g.action_name(act) << " -> " << l.h.vertex_name(next)
                << (l.h.vertex(next).perception != l.h.vertex(v).perception
                        ? "  (you now believe P1 can play " + join_actions(g, l.h.perception(next)) + ")"
                        : "")
                << '\n';
      v = next;
      continue;
    }
    std::cout << "At " << l.h.vertex_name(v) << " you may play:";
    for (const HEdge& e : succ) std::cout << ' ' << g.action_name(e.action);
    std::cout << "   (perceived safe: " << join_actions(g, p.m[v]) << ")\n> " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) {
      std::cout << "\nend of input\n";
      return 0;
    }
    line.erase(0, line.find_first_not_of(" \t"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line == "quit" || line == "q") {
      std::cout << "bye\n";
      return 0;
    }
    auto act = g.find_action(line);
    VertexId next = act ? l.h.successor(v, *act) : kNone;
    if (next == kNone) {
      std::cout << "'" << line << "' is not available here\n";
      --step;
      continue;
    }
    std::cout << "P2 plays " << g.action_name(*act) << " -> " << l.h.vertex_name(next) << '\n';
    v = next;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deceptive almost-sure winning strategies for reachability games"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals gl;
  app.add_option("--output", gl.output, "Directory for result files");
  app.add_option("--format", gl.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a game file for structural errors");
  validate_cmd->add_option("game", validate_path, "Game file (JSON)")->required();

  std::string asw_path;
  std::optional<std::string> restrict_to;
  auto* asw_cmd = app.add_subcommand("asw", "Almost-sure winning region of P1");
  asw_cmd->add_option("game", asw_path, "Game file (JSON)")->required();
  asw_cmd->add_option("--restrict", restrict_to, "Solve the game with P1 limited to these actions");

  GameArgs hg_args;
  auto* hg_cmd = app.add_subcommand("hypergame", "Build and export the dynamic hypergame");
  add_game_args(hg_cmd, hg_args);

  GameArgs dasw_args;
  SolveArgs solve_args;
  auto* dasw_cmd = app.add_subcommand("dasw", "Deceptive almost-sure winning region and strategy");
  add_game_args(dasw_cmd, dasw_args);
  add_solve_args(dasw_cmd, solve_args);

  GameArgs sim_game;
  SimArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo check of the deceptive strategy");
  add_game_args(sim_cmd, sim_game);
  sim_cmd->add_option("--episodes", sim.episodes, "Episodes per start")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--cap", sim.cap, "Step cap per episode (default 10 x vertices)")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed, "Base seed (default: $DASW_SEED or 0)");
  sim_cmd->add_option("--policy", sim.policy, "P2 policy")->check(CLI::IsMember({"uniform", "random"}));
  sim_cmd->add_option("--min-weight", sim.min_weight, "Lower bound of random P2 weights")->check(CLI::Range(1e-9, 1.0));
  sim_cmd->add_option("--starts", sim.starts, "region, all, or a list of vertex names/ids");

  GridArgs grid;
  auto* grid_cmd = app.add_subcommand("gridworld", "Generate the robot/adversary gridworld and report its regions");
  grid_cmd->add_option("--size", grid.size, "Grid size WxH");
  grid_cmd->add_option("--flags", grid.flags, "Two flag cells 'x1,y1;x2,y2'");
  grid_cmd->add_option("--obstacles", grid.obstacles, "Obstacle cells 'x,y;...' (default: 2,2;2,3)");
  grid_cmd->add_option("--p1-start", grid.p1_start, "Robot start cell x,y");
  grid_cmd->add_option("--p2-start", grid.p2_start, "Adversary start cell x,y");
  grid_cmd->add_option("--x0", grid.x0, "Robot moves the adversary initially knows");
  grid_cmd->add_option("--p1-moves", grid.p1_moves, "Robot moves");
  grid_cmd->add_option("--p2-moves", grid.p2_moves, "Adversary moves");
  grid_cmd->add_option("--name", grid.name, "File name stem");

  GameArgs play_args;
  PlayArgs play;
  auto* play_cmd = app.add_subcommand("play", "Play P2 interactively against the deceptive strategy");
  add_game_args(play_cmd, play_args);
  play_cmd->add_option("--cap", play.cap, "Stop after this many steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(gl, validate_path);
    if (*asw_cmd) return cmd_asw(gl, asw_path, restrict_to);
    if (*hg_cmd) return cmd_hypergame(gl, hg_args);
    if (*dasw_cmd) return cmd_dasw(gl, dasw_args, solve_args);
    if (*sim_cmd) return cmd_simulate(gl, sim_game, sim);
    if (*grid_cmd) return cmd_gridworld(gl, grid);
    if (*play_cmd) return cmd_play(play_args, play);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GameError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
