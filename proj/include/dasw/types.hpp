#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dasw {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;
using VertexId = std::uint32_t;

inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

enum class Player : std::uint8_t { P1, P2 };

inline constexpr std::string_view to_string(Player p) { return p == Player::P1 ? "P1" : "P2"; }

Player parse_player(std::string_view text);

// Raised for malformed input data (files, configs, argument values).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a structurally valid object breaks a domain invariant.
class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dasw
