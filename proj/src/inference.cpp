#include "dasw/inference.hpp"

#include "dasw/game_io.hpp"

namespace dasw {

using nlohmann::json;

InferenceMechanism InferenceMechanism::union_rule(const GameGraph& game) {
  InferenceMechanism m;
  m.kind_ = Kind::kUnion;
  m.a1_ = game.p1_action_set();
  m.implied_.resize(game.num_actions());
  for (ActionId a : game.p1_actions()) m.implied_[a] = ActionSet{a};
  return m;
}

InferenceMechanism InferenceMechanism::closure_rule(const GameGraph& game,
                                                    std::vector<std::pair<ActionId, ActionSet>> implied) {
  InferenceMechanism m = union_rule(game);
  m.kind_ = Kind::kClosure;
  for (auto& [a, set] : implied) {
    if (!m.a1_.contains(a)) throw GameError("closure map key " + game.action_name(a) + " is not a P1 action");
    if (!set.subset_of(m.a1_)) throw GameError("closure map for " + game.action_name(a) + " names non-P1 actions");
    set.insert(a);
    m.implied_[a] = std::move(set);
  }
  return m;
}

const ActionSet& InferenceMechanism::implied(ActionId a) const {
  if (!a1_.contains(a)) throw GameError("action " + std::to_string(a) + " is not a P1 action");
  return implied_[a];
}

ActionSet InferenceMechanism::step(const ActionSet& x, ActionId a) const { return x | implied(a); }

ActionSet InferenceMechanism::infer(const ActionSet& x0, std::span<const ActionId> history) const {
  ActionSet x = x0;
  for (ActionId a : history) x |= implied(a);
  return x;
}

ActionSet parse_action_list(std::string_view text, const GameGraph& game) {
  ActionSet out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(pos, end - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      auto a = game.find_action(item);
      if (!a) throw ParseError("unknown action '" + std::string(item) + "'");
      out.insert(*a);
    }
    pos = end + 1;
  }
  return out;
}

json action_set_to_json(const ActionSet& set, const GameGraph& game) {
  json out = json::array();
  for (ActionId a : set.to_vector()) out.push_back(game.action_name(a));
  return out;
}

namespace {

ActionId action_ref(const json& v, const GameGraph& game, const std::string& path) {
  std::optional<ActionId> a;
  if (v.is_string()) a = game.find_action(v.get<std::string>());
  else if (v.is_number_unsigned()) a = json_field::as_index(v, path);
  if (!a || *a >= game.num_actions()) throw ParseError(path + ": unknown action " + v.dump());
  return *a;
}

ActionSet action_list(const json& v, const GameGraph& game, const std::string& path) {
  if (!v.is_array()) throw ParseError(path + ": expected a list of actions");
  ActionSet out;
  for (std::size_t i = 0; i < v.size(); ++i) out.insert(action_ref(v[i], game, path + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

InferenceSpec inference_from_json(const json& doc, const GameGraph& game) {
  const std::string kind = json_field::as_string(json_field::require(doc, "kind", "$"), "kind");
  ActionSet x0 = action_list(json_field::require(doc, "x0", "$"), game, "x0");
  if (!x0.subset_of(game.p1_action_set())) throw GameError("x0 must be a subset of P1's actions");
  if (kind == "union") return {InferenceMechanism::union_rule(game), std::move(x0)};
  if (kind == "closure") {
    const json& map = json_field::require(doc, "map", "$");
    if (!map.is_object()) throw ParseError("map: expected an object");
    std::vector<std::pair<ActionId, ActionSet>> implied;
    for (auto it = map.begin(); it != map.end(); ++it) {
      auto a = game.find_action(it.key());
      if (!a) throw ParseError("map: unknown action '" + it.key() + "'");
      implied.emplace_back(*a, action_list(it.value(), game, "map." + it.key()));
    }
    return {InferenceMechanism::closure_rule(game, std::move(implied)), std::move(x0)};
  }
  throw ParseError("kind: expected \"union\" or \"closure\", got \"" + kind + "\"");
}

json inference_to_json(const InferenceSpec& spec, const GameGraph& game) {
  json doc;
  doc["x0"] = action_set_to_json(spec.x0, game);
  if (spec.mechanism.kind() == InferenceMechanism::Kind::kUnion) {
    doc["kind"] = "union";
    return doc;
  }
  doc["kind"] = "closure";
  json map = json::object();
  for (ActionId a : game.p1_actions()) {
    const ActionSet& implied = spec.mechanism.implied(a);
    if (implied != ActionSet{a}) map[game.action_name(a)] = action_set_to_json(implied, game);
  }
  doc["map"] = std::move(map);
  return doc;
}

}  // namespace dasw
