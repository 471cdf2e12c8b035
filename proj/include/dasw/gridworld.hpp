#pragma once

#include <array>
#include <string>
#include <vector>

#include "dasw/dasw.hpp"
#include "dasw/game.hpp"
#include "dasw/inference.hpp"

namespace dasw::gridworld {

/// Compass moves. N increases y, E increases x.
enum class Move : std::uint8_t { N, E, S, W, NE, NW, SW, SE };

inline constexpr std::array<Move, 8> kAllMoves{Move::N, Move::E, Move::S, Move::W, Move::NE, Move::NW, Move::SW, Move::SE};

std::string_view to_string(Move m);
Move parse_move(std::string_view text);

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct GridConfig {
  int width = 4;
  int height = 4;
  std::array<Cell, 2> flags{Cell{3, 1}, Cell{3, 3}};
  std::vector<Cell> obstacles;
  std::vector<Move> p1_moves{Move::N, Move::E, Move::S, Move::W, Move::NE, Move::NW, Move::SW};
  std::vector<Move> p2_moves{Move::N, Move::E, Move::S, Move::W};
  Cell p1_start{0, 0};
  Cell p2_start{3, 2};
  /// Moves the adversary initially believes the robot has.
  std::vector<Move> x0{Move::N, Move::E, Move::S, Move::W};
};

/// The documented default instance: 4×4 grid, flags (3,1) and (3,3),
/// obstacles (2,2) and (2,3), robot moves N,E,S,W,NE,NW,SW against adversary
/// moves N,E,S,W, and the adversary initially unaware of the diagonals. The
/// wall in front of the upper flag is what makes hidden diagonals pay off:
/// the robot's start is winning only by deception.
GridConfig default_config();

/// Throws ParseError describing the first broken constraint.
void check(const GridConfig& cfg);

/// Progress automaton for "visit G1 and visit G2": q0 neither, q1 only G1,
/// q2 only G2, q3 both (accepting, absorbing). Advanced on the robot's cell.
struct ObjectiveDfa {
  std::array<Cell, 2> flags;
  int step(int q, Cell robot) const;
  int initial(Cell robot) const { return step(0, robot); }
  static constexpr int kAccepting = 3;
};

/// Decodes a product state id into (robot cell, adversary cell, turn, q).
struct GridState {
  Cell p1;
  Cell p2;
  Player turn;
  int q;
};

class GridGame;
GridGame generate(const GridConfig& cfg);

class GridGame {
 public:
  explicit GridGame(GridConfig cfg);

  const GridConfig& config() const { return cfg_; }
  const GameGraph& game() const { return game_; }
  std::shared_ptr<const GameGraph> game_ptr() const { return ptr_; }

  StateId encode(const GridState& s) const;
  GridState decode(StateId id) const;

  /// Robot move -> action id (and likewise for the adversary).
  ActionId p1_action(Move m) const;
  ActionId p2_action(Move m) const;

  /// Observing a diagonal (any robot move outside x0) reveals every robot move.
  InferenceSpec inference() const;

 private:
  friend GridGame generate(const GridConfig& cfg);

  GridConfig cfg_;
  GameGraph game_;
  std::shared_ptr<const GameGraph> ptr_;
};

/// Builds the product arena: states (robot cell, adversary cell, turn, q) for
/// every combination, |S| = (w·h)² · 2 · 4. Moves off the grid, into an
/// obstacle or onto the other agent are disabled; tuples with a collision or
/// an agent on an obstacle have no moves and are never final.
GridGame generate(const GridConfig& cfg);

struct LayoutReport {
  std::size_t game_states = 0;
  std::size_t hypergame_vertices = 0;
  std::size_t perception_sets = 0;
  std::size_t dasw_vertices = 0;
  std::size_t projected_states = 0;
  std::size_t asw_states = 0;
  /// projected_states - asw_states, signed for the report.
  long long gain = 0;

  std::string text() const;
  nlohmann::json to_json() const;
};

LayoutReport layout_report(const Hypergame& h, const PermissiveTable& perm, const DaswResult& r);

GridConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const GridConfig& cfg);

}  // namespace dasw::gridworld
