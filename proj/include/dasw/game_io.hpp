#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dasw/game.hpp"
#include "vendor_json.hpp"

namespace dasw {

/// JSON game format:
///
///   { "states":      [ {"id": 0, "label": "s0", "owner": "P2", "final": true}, ... ],
///     "actions":     [ {"id": 0, "label": "a1", "owner": "P1"}, ... ],
///     "transitions": [ {"from": 1, "action": 0, "to": 0}, ... ],
///     "initial":     2 }
///
/// Ids must be dense and listed in ascending order. `label` and `initial`
/// are optional. Errors carry the JSON path of the offending field (e.g.
/// `states[2].final`) or the line number of a syntax error.
GameGraph game_from_json(const nlohmann::json& doc);
nlohmann::json game_to_json(const GameGraph& game);

/// Parses and validates; any `validate` violation becomes a GameError.
GameGraph read_game(std::istream& in);
GameGraph load_game(const std::filesystem::path& path);

/// Canonical form: states ascending, transitions sorted by (from, action).
void write_game(std::ostream& out, const GameGraph& game);
void save_game(const GameGraph& game, const std::filesystem::path& path);

/// Parses a JSON document, mapping syntax errors to ParseError with a line number.
nlohmann::json parse_json(std::istream& in, const std::string& source = "<input>");
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const nlohmann::json& doc, const std::filesystem::path& path);

namespace json_field {

/// Required-field accessors that report the JSON path on failure.
const nlohmann::json& require(const nlohmann::json& obj, const std::string& key, const std::string& path);
std::uint32_t as_index(const nlohmann::json& value, const std::string& path);
std::string as_string(const nlohmann::json& value, const std::string& path);
bool as_bool(const nlohmann::json& value, const std::string& path);

}  // namespace json_field

}  // namespace dasw
