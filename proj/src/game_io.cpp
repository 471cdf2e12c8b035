#include "dasw/game_io.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

namespace dasw {

using nlohmann::json;

namespace json_field {

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + ": missing required field '" + key + "'");
  return *it;
}

std::uint32_t as_index(const json& value, const std::string& path) {
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
    throw ParseError(path + ": expected a non-negative integer");
  }
  auto v = value.get<unsigned long long>();
  if (v >= kNone) throw ParseError(path + ": index out of range");
  return static_cast<std::uint32_t>(v);
}

std::string as_string(const json& value, const std::string& path) {
  if (!value.is_string()) throw ParseError(path + ": expected a string");
  return value.get<std::string>();
}

bool as_bool(const json& value, const std::string& path) {
  if (!value.is_boolean()) throw ParseError(path + ": expected true or false");
  return value.get<bool>();
}

}  // namespace json_field

namespace {

using json_field::as_bool;
using json_field::as_index;
using json_field::as_string;
using json_field::require;

const json& require_array(const json& obj, const std::string& key) {
  const json& v = require(obj, key, "$");
  if (!v.is_array()) throw ParseError(key + ": expected an array");
  return v;
}

std::optional<std::string> optional_label(const json& entry, const std::string& path) {
  auto it = entry.find("label");
  if (it == entry.end() || it->is_null()) return std::nullopt;
  return as_string(*it, path + ".label");
}

}  // namespace

GameGraph game_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("$: expected a game object");

  std::vector<StateInfo> states;
  const json& js = require_array(doc, "states");
  for (std::size_t i = 0; i < js.size(); ++i) {
    const std::string path = "states[" + std::to_string(i) + "]";
    const json& e = js[i];
    if (as_index(require(e, "id", path), path + ".id") != i) {
      throw ParseError(path + ".id: ids must be dense and ascending (expected " + std::to_string(i) + ")");
    }
    StateInfo info;
    info.owner = parse_player(as_string(require(e, "owner", path), path + ".owner"));
    info.final = as_bool(require(e, "final", path), path + ".final");
    info.label = optional_label(e, path);
    states.push_back(std::move(info));
  }

  std::vector<ActionInfo> actions;
  const json& ja = require_array(doc, "actions");
  for (std::size_t i = 0; i < ja.size(); ++i) {
    const std::string path = "actions[" + std::to_string(i) + "]";
    const json& e = ja[i];
    if (as_index(require(e, "id", path), path + ".id") != i) {
      throw ParseError(path + ".id: ids must be dense and ascending (expected " + std::to_string(i) + ")");
    }
    ActionInfo info;
    info.owner = parse_player(as_string(require(e, "owner", path), path + ".owner"));
    info.label = optional_label(e, path);
    actions.push_back(std::move(info));
  }

  std::vector<Transition> transitions;
  const json& jt = require_array(doc, "transitions");
  for (std::size_t i = 0; i < jt.size(); ++i) {
    const std::string path = "transitions[" + std::to_string(i) + "]";
    const json& e = jt[i];
    transitions.push_back({as_index(require(e, "from", path), path + ".from"),
                           as_index(require(e, "action", path), path + ".action"),
                           as_index(require(e, "to", path), path + ".to")});
  }

  std::optional<StateId> initial;
  if (auto it = doc.find("initial"); it != doc.end() && !it->is_null()) initial = as_index(*it, "initial");

  return GameGraph(std::move(states), std::move(actions), std::move(transitions), initial);
}

json game_to_json(const GameGraph& game) {
  json states = json::array();
  for (StateId s = 0; s < game.num_states(); ++s) {
    const auto& info = game.state(s);
    json e = {{"id", s}, {"owner", to_string(info.owner)}, {"final", info.final}};
    if (info.label) e["label"] = *info.label;
    states.push_back(std::move(e));
  }
  json actions = json::array();
  for (ActionId a = 0; a < game.num_actions(); ++a) {
    const auto& info = game.action(a);
    json e = {{"id", a}, {"owner", to_string(info.owner)}};
    if (info.label) e["label"] = *info.label;
    actions.push_back(std::move(e));
  }
  json transitions = json::array();
  for (const auto& t : game.transitions()) {
    transitions.push_back({{"from", t.from}, {"action", t.action}, {"to", t.to}});
  }
  json doc = {{"states", std::move(states)}, {"actions", std::move(actions)}, {"transitions", std::move(transitions)}};
  if (game.initial()) doc["initial"] = *game.initial();
  return doc;
}

json parse_json(std::istream& in, const std::string& source) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and may point one past the end on truncated input.
    const std::size_t end = e.byte > text.size() ? text.size() : (e.byte > 0 ? e.byte - 1 : 0);
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n');
    throw ParseError(source + ":" + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return parse_json(in, path.string());
}

void write_json_file(const json& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

namespace {

GameGraph checked(const json& doc) {
  GameGraph game = game_from_json(doc);
  if (auto violations = validate(game); !violations.empty()) {
    std::string msg = "invalid game:";
    for (const auto& v : violations) msg += "\n  " + v.message;
    throw GameError(msg);
  }
  return game;
}

}  // namespace

GameGraph read_game(std::istream& in) { return checked(parse_json(in)); }

GameGraph load_game(const std::filesystem::path& path) {
  const json doc = read_json_file(path);
  try {
    return checked(doc);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const GameError& e) {
    throw GameError(path.string() + ": " + e.what());
  }
}

void write_game(std::ostream& out, const GameGraph& game) { out << game_to_json(game).dump(2) << '\n'; }

void save_game(const GameGraph& game, const std::filesystem::path& path) {
  write_json_file(game_to_json(game), path);
}

}  // namespace dasw
