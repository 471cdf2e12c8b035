#include "dasw/game.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace dasw {

namespace {

std::optional<std::uint32_t> parse_index(std::string_view text) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

}  // namespace

GameGraph::GameGraph(std::vector<StateInfo> states, std::vector<ActionInfo> actions,
                     std::vector<Transition> transitions, std::optional<StateId> initial)
    : states_(std::move(states)),
      actions_(std::move(actions)),
      transitions_(std::move(transitions)),
      initial_(initial) {
  std::stable_sort(transitions_.begin(), transitions_.end(), [](const Transition& a, const Transition& b) {
    return a.from != b.from ? a.from < b.from : a.action < b.action;
  });
  for (ActionId a = 0; a < actions_.size(); ++a) {
    (actions_[a].owner == Player::P1 ? a1_ : a2_).push_back(a);
  }
  offsets_.assign(states_.size() + 1, 0);
  for (const auto& t : transitions_) {
    if (t.from < states_.size()) ++offsets_[t.from + 1];
  }
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  edges_.reserve(offsets_.back());
  for (const auto& t : transitions_) {
    if (t.from < states_.size()) edges_.push_back({t.action, t.to});
  }
}

std::span<const Edge> GameGraph::successors(StateId s) const {
  if (s >= states_.size()) throw GameError("unknown state id " + std::to_string(s));
  return {edges_.data() + offsets_[s], edges_.data() + offsets_[s + 1]};
}

StateId GameGraph::successor(StateId s, ActionId a) const {
  for (const Edge& e : successors(s)) {
    if (e.action == a) return e.to;
    if (e.action > a) break;
  }
  return kNone;
}

std::string GameGraph::state_name(StateId s) const {
  if (s < states_.size() && states_[s].label) return *states_[s].label;
  return std::to_string(s);
}

std::string GameGraph::action_name(ActionId a) const {
  if (a < actions_.size() && actions_[a].label) return *actions_[a].label;
  return std::to_string(a);
}

std::optional<ActionId> GameGraph::find_action(std::string_view name) const {
  for (ActionId a = 0; a < actions_.size(); ++a) {
    if (actions_[a].label && *actions_[a].label == name) return a;
  }
  if (auto id = parse_index(name); id && *id < actions_.size()) return id;
  return std::nullopt;
}

std::optional<StateId> GameGraph::find_state(std::string_view name) const {
  for (StateId s = 0; s < states_.size(); ++s) {
    if (states_[s].label && *states_[s].label == name) return s;
  }
  if (auto id = parse_index(name); id && *id < states_.size()) return id;
  return std::nullopt;
}

bool operator==(const GameGraph& a, const GameGraph& b) {
  auto same_state = [](const StateInfo& x, const StateInfo& y) {
    return x.owner == y.owner && x.final == y.final && x.label == y.label;
  };
  auto same_action = [](const ActionInfo& x, const ActionInfo& y) {
    return x.owner == y.owner && x.label == y.label;
  };
  return std::equal(a.states_.begin(), a.states_.end(), b.states_.begin(), b.states_.end(), same_state) &&
         std::equal(a.actions_.begin(), a.actions_.end(), b.actions_.begin(), b.actions_.end(),
                    same_action) &&
         a.transitions_ == b.transitions_ && a.initial_ == b.initial_ && a.a1_ == b.a1_;
}

std::vector<Violation> validate(const GameGraph& game) {
  std::vector<Violation> out;
  auto add = [&out](Violation::Kind kind, std::string msg) { out.push_back({kind, std::move(msg)}); };
  const auto n = game.num_states();
  const auto m = game.num_actions();

  if (auto init = game.initial(); init && *init >= n) {
    add(Violation::Kind::kDanglingState, "initial state " + std::to_string(*init) + " does not exist");
  }

  const auto& ts = game.transitions();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& t = ts[i];
    std::ostringstream where;
    where << "transition (" << t.from << ", " << t.action << ", " << t.to << ")";
    bool ok = true;
    if (t.from >= n) {
      add(Violation::Kind::kDanglingState, where.str() + ": source state " + std::to_string(t.from) + " does not exist");
      ok = false;
    }
    if (t.to >= n) {
      add(Violation::Kind::kDanglingState, where.str() + ": target state " + std::to_string(t.to) + " does not exist");
      ok = false;
    }
    if (t.action >= m) {
      add(Violation::Kind::kDanglingAction, where.str() + ": action " + std::to_string(t.action) + " does not exist");
      ok = false;
    }
    if (ok && game.owner(t.from) != game.action(t.action).owner) {
      add(Violation::Kind::kPartition, where.str() + ": action " + game.action_name(t.action) + " owned by " +
                                           std::string(to_string(game.action(t.action).owner)) + " leaves " +
                                           std::string(to_string(game.owner(t.from))) + " state " +
                                           game.state_name(t.from));
    }
    if (i > 0 && ts[i - 1].from == t.from && ts[i - 1].action == t.action) {
      add(Violation::Kind::kNondeterministic, where.str() + ": state " + std::to_string(t.from) +
                                                  " has several successors under action " +
                                                  std::to_string(t.action));
    }
  }

  std::set<std::string> seen;
  for (StateId s = 0; s < n; ++s) {
    if (auto& l = game.state(s).label; l && !seen.insert(*l).second) {
      add(Violation::Kind::kDuplicateLabel, "state label '" + *l + "' is used twice");
    }
  }
  seen.clear();
  for (ActionId a = 0; a < m; ++a) {
    if (auto& l = game.action(a).label; l && !seen.insert(*l).second) {
      add(Violation::Kind::kDuplicateLabel, "action label '" + *l + "' is used twice");
    }
  }
  return out;
}

GameGraph restrict(const GameGraph& game, const ActionSet& x) {
  for (ActionId a : x.to_vector()) {
    if (std::find(game.a1_.begin(), game.a1_.end(), a) == game.a1_.end()) {
      throw GameError("restriction set contains " + game.action_name(a) + ", which is not a P1 action");
    }
  }
  std::vector<ActionInfo> actions = game.actions();
  std::vector<Transition> kept;
  kept.reserve(game.transitions().size());
  for (const auto& t : game.transitions()) {
    if (t.action < actions.size() && actions[t.action].owner == Player::P1 && !x.contains(t.action)) continue;
    kept.push_back(t);
  }
  // Actions of A1 \ X keep their ids so state/vertex data stays comparable
  // across restrictions; they simply label no transition.
  GameGraph out(game.states(), std::move(actions), std::move(kept), game.initial());
  std::erase_if(out.a1_, [&x](ActionId a) { return !x.contains(a); });
  return out;
}

std::vector<bool> reachable_states(const GameGraph& game, StateId from) {
  std::vector<bool> seen(game.num_states(), false);
  std::vector<StateId> stack{from};
  seen.at(from) = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Edge& e : game.successors(s)) {
      if (e.to < seen.size() && !seen[e.to]) {
        seen[e.to] = true;
        stack.push_back(e.to);
      }
    }
  }
  return seen;
}

}  // namespace dasw
