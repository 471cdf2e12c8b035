#include "dasw/gridworld.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "dasw/game_io.hpp"

namespace dasw::gridworld {

using nlohmann::json;

namespace {

constexpr int kDfaStates = 4;

Cell delta(Move m) {
  switch (m) {
    case Move::N: return {0, 1};
    case Move::E: return {1, 0};
    case Move::S: return {0, -1};
    case Move::W: return {-1, 0};
    case Move::NE: return {1, 1};
    case Move::NW: return {-1, 1};
    case Move::SW: return {-1, -1};
    case Move::SE: return {1, -1};
  }
  return {0, 0};
}

std::string cell_text(Cell c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }

}  // namespace

std::string_view to_string(Move m) {
  static constexpr std::array<std::string_view, 8> names{"N", "E", "S", "W", "NE", "NW", "SW", "SE"};
  return names[static_cast<std::size_t>(m)];
}

Move parse_move(std::string_view text) {
  for (Move m : kAllMoves)
    if (to_string(m) == text) return m;
  throw ParseError("unknown move '" + std::string(text) + "'");
}

GridConfig default_config() {
  GridConfig cfg;
  cfg.obstacles = {Cell{2, 2}, Cell{2, 3}};
  return cfg;
}

void check(const GridConfig& cfg) {
  if (cfg.width < 1 || cfg.height < 1) throw ParseError("grid dimensions must be positive");
  if (cfg.width * cfg.height < 2) throw ParseError("grid needs at least two cells so the agents can stand apart");
  auto inside = [&](Cell c) { return c.x >= 0 && c.y >= 0 && c.x < cfg.width && c.y < cfg.height; };
  auto blocked = [&](Cell c) { return std::find(cfg.obstacles.begin(), cfg.obstacles.end(), c) != cfg.obstacles.end(); };
  for (Cell c : cfg.obstacles)
    if (!inside(c)) throw ParseError("obstacle " + cell_text(c) + " lies outside the grid");
  for (Cell c : cfg.flags) {
    if (!inside(c)) throw ParseError("flag " + cell_text(c) + " lies outside the grid");
    if (blocked(c)) throw ParseError("flag " + cell_text(c) + " is an obstacle");
  }
  if (cfg.flags[0] == cfg.flags[1]) throw ParseError("the two flags must be distinct cells");
  for (Cell c : {cfg.p1_start, cfg.p2_start}) {
    if (!inside(c)) throw ParseError("start " + cell_text(c) + " lies outside the grid");
    if (blocked(c)) throw ParseError("start " + cell_text(c) + " is an obstacle");
  }
  if (cfg.p1_start == cfg.p2_start) throw ParseError("the agents must start on distinct cells");
  auto unique = [](std::vector<Move> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (cfg.p1_moves.empty() || !unique(cfg.p1_moves)) throw ParseError("robot moves must be non-empty and distinct");
  if (cfg.p2_moves.empty() || !unique(cfg.p2_moves)) throw ParseError("adversary moves must be non-empty and distinct");
  for (Move m : cfg.x0) {
    if (std::find(cfg.p1_moves.begin(), cfg.p1_moves.end(), m) == cfg.p1_moves.end()) {
      throw ParseError("x0 move " + std::string(to_string(m)) + " is not a robot move");
    }
  }
}

int ObjectiveDfa::step(int q, Cell robot) const {
  if (robot == flags[0]) q |= 1;
  if (robot == flags[1]) q |= 2;
  return q;
}

GridGame::GridGame(GridConfig cfg) : cfg_(std::move(cfg)) {}

StateId GridGame::encode(const GridState& s) const {
  const int cells = cfg_.width * cfg_.height;
  const int a = s.p1.y * cfg_.width + s.p1.x;
  const int b = s.p2.y * cfg_.width + s.p2.x;
  const int t = s.turn == Player::P1 ? 0 : 1;
  return static_cast<StateId>(((a * cells + b) * 2 + t) * kDfaStates + s.q);
}

GridState GridGame::decode(StateId id) const {
  const int cells = cfg_.width * cfg_.height;
  int rest = static_cast<int>(id);
  GridState s;
  s.q = rest % kDfaStates;
  rest /= kDfaStates;
  s.turn = rest % 2 == 0 ? Player::P1 : Player::P2;
  rest /= 2;
  const int b = rest % cells;
  const int a = rest / cells;
  s.p1 = {a % cfg_.width, a / cfg_.width};
  s.p2 = {b % cfg_.width, b / cfg_.width};
  return s;
}

ActionId GridGame::p1_action(Move m) const {
  auto it = std::find(cfg_.p1_moves.begin(), cfg_.p1_moves.end(), m);
  if (it == cfg_.p1_moves.end()) throw GameError("robot has no move " + std::string(to_string(m)));
  return static_cast<ActionId>(it - cfg_.p1_moves.begin());
}

ActionId GridGame::p2_action(Move m) const {
  auto it = std::find(cfg_.p2_moves.begin(), cfg_.p2_moves.end(), m);
  if (it == cfg_.p2_moves.end()) throw GameError("adversary has no move " + std::string(to_string(m)));
  return static_cast<ActionId>(cfg_.p1_moves.size() + static_cast<std::size_t>(it - cfg_.p2_moves.begin()));
}

InferenceSpec GridGame::inference() const {
  ActionSet all = game_.p1_action_set();
  ActionSet x0;
  for (Move m : cfg_.x0) x0.insert(p1_action(m));
  std::vector<std::pair<ActionId, ActionSet>> implied;
  for (Move m : cfg_.p1_moves) {
    if (!x0.contains(p1_action(m))) implied.emplace_back(p1_action(m), all);
  }
  return {InferenceMechanism::closure_rule(game_, std::move(implied)), x0};
}

GridGame generate(const GridConfig& cfg) {
  check(cfg);
  GridGame out(cfg);
  const int cells = cfg.width * cfg.height;
  const ObjectiveDfa dfa{cfg.flags};
  std::set<Cell> blocked(cfg.obstacles.begin(), cfg.obstacles.end());
  auto inside = [&](Cell c) { return c.x >= 0 && c.y >= 0 && c.x < cfg.width && c.y < cfg.height; };
  auto open = [&](Cell c) { return inside(c) && !blocked.contains(c); };

  std::vector<ActionInfo> actions;
  for (Move m : cfg.p1_moves) actions.push_back({Player::P1, std::string(to_string(m))});
  for (Move m : cfg.p2_moves) actions.push_back({Player::P2, "adv_" + std::string(to_string(m))});

  const auto n = static_cast<std::size_t>(cells) * cells * 2 * kDfaStates;
  std::vector<StateInfo> states(n);
  std::vector<Transition> transitions;
  for (StateId id = 0; id < n; ++id) {
    const GridState s = out.decode(id);
    const bool broken = s.p1 == s.p2 || !open(s.p1) || !open(s.p2);
    states[id].owner = s.turn;
    states[id].final = !broken && s.q == ObjectiveDfa::kAccepting;
    std::ostringstream label;
    // robot cell, adversary cell, turn, automaton state: r0,1_a3,2_P1_q0
    label << 'r' << s.p1.x << ',' << s.p1.y << "_a" << s.p2.x << ',' << s.p2.y << '_' << to_string(s.turn) << "_q" << s.q;
    states[id].label = label.str();
    if (broken) continue;
    if (s.turn == Player::P1) {
      for (Move m : cfg.p1_moves) {
        Cell c{s.p1.x + delta(m).x, s.p1.y + delta(m).y};
        if (!open(c) || c == s.p2) continue;
        transitions.push_back({id, out.p1_action(m), out.encode({c, s.p2, Player::P2, dfa.step(s.q, c)})});
      }
    } else {
      for (Move m : cfg.p2_moves) {
        Cell c{s.p2.x + delta(m).x, s.p2.y + delta(m).y};
        if (!open(c) || c == s.p1) continue;
        transitions.push_back({id, out.p2_action(m), out.encode({s.p1, c, Player::P1, s.q})});
      }
    }
  }
  const StateId init = out.encode({cfg.p1_start, cfg.p2_start, Player::P1, dfa.initial(cfg.p1_start)});
  out.game_ = GameGraph(std::move(states), std::move(actions), std::move(transitions), init);
  out.ptr_ = std::make_shared<const GameGraph>(out.game_);
  return out;
}

std::string LayoutReport::text() const {
  std::ostringstream os;
  os << "game states:         " << game_states << '\n'
     << "hypergame vertices:  " << hypergame_vertices << " (" << perception_sets << " perception sets)\n"
     << "DASW vertices:       " << dasw_vertices << " out of " << hypergame_vertices << '\n'
     << "DASW projection:     " << projected_states << " game states\n"
     << "ASW region:          " << asw_states << " game states\n"
     << "gain from deception: " << projected_states << " - " << asw_states << " = " << gain << " game states\n";
  return os.str();
}

json LayoutReport::to_json() const {
  return {{"game_states", game_states},       {"hypergame_vertices", hypergame_vertices},
          {"perception_sets", perception_sets}, {"dasw_vertices", dasw_vertices},
          {"projected_states", projected_states}, {"asw_states", asw_states},
          {"gain", gain}};
}

LayoutReport layout_report(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r) {
  LayoutReport rep;
  rep.game_states = h.base().num_states();
  rep.hypergame_vertices = h.num_vertices();
  rep.perception_sets = h.perceptions().size();
  rep.dasw_vertices = count(r.region);
  std::vector<bool> projected(rep.game_states, false);
  for (VertexId v : r.region_vertices()) projected[h.vertex(v).state] = true;
  rep.projected_states = static_cast<std::size_t>(std::count(projected.begin(), projected.end(), true));
  rep.asw_states = perm.full.win1_states().size();
  rep.gain = static_cast<long long>(rep.projected_states) - static_cast<long long>(rep.asw_states);
  return rep;
}

namespace {

Cell cell_from_json(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
    throw ParseError(path + ": expected [x, y]");
  }
  return {v[0].get<int>(), v[1].get<int>()};
}

std::vector<Move> moves_from_json(const json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path + ": expected a list of moves");
  std::vector<Move> out;
  for (const auto& m : v) out.push_back(parse_move(json_field::as_string(m, path)));
  return out;
}

json moves_to_json(const std::vector<Move>& moves) {
  json out = json::array();
  for (Move m : moves) out.push_back(to_string(m));
  return out;
}

}  // namespace

GridConfig config_from_json(const json& doc) {
  GridConfig cfg;
  const json& size = json_field::require(doc, "size", "$");
  Cell wh = cell_from_json(size, "size");
  cfg.width = wh.x;
  cfg.height = wh.y;
  const json& flags = json_field::require(doc, "flags", "$");
  if (!flags.is_array() || flags.size() != 2) throw ParseError("flags: expected two cells");
  cfg.flags = {cell_from_json(flags[0], "flags[0]"), cell_from_json(flags[1], "flags[1]")};
  cfg.obstacles.clear();
  for (const auto& c : json_field::require(doc, "obstacles", "$")) cfg.obstacles.push_back(cell_from_json(c, "obstacles"));
  cfg.p1_moves = moves_from_json(json_field::require(doc, "p1_moves", "$"), "p1_moves");
  cfg.p2_moves = moves_from_json(json_field::require(doc, "p2_moves", "$"), "p2_moves");
  cfg.p1_start = cell_from_json(json_field::require(doc, "p1_start", "$"), "p1_start");
  cfg.p2_start = cell_from_json(json_field::require(doc, "p2_start", "$"), "p2_start");
  cfg.x0 = moves_from_json(json_field::require(doc, "x0", "$"), "x0");
  check(cfg);
  return cfg;
}

json config_to_json(const GridConfig& cfg) {
  json obstacles = json::array();
  for (Cell c : cfg.obstacles) obstacles.push_back({c.x, c.y});
  return {{"size", {cfg.width, cfg.height}},
          {"flags", {{cfg.flags[0].x, cfg.flags[0].y}, {cfg.flags[1].x, cfg.flags[1].y}}},
          {"obstacles", std::move(obstacles)},
          {"p1_moves", moves_to_json(cfg.p1_moves)},
          {"p2_moves", moves_to_json(cfg.p2_moves)},
          {"p1_start", {cfg.p1_start.x, cfg.p1_start.y}},
          {"p2_start", {cfg.p2_start.x, cfg.p2_start.y}},
          {"x0", moves_to_json(cfg.x0)}};
}

}  // namespace dasw::gridworld
