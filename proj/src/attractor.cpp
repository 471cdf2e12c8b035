#include "dasw/attractor.hpp"

#include <deque>

namespace dasw {

namespace {

WinRegions finish(const GameGraph& game, std::vector<std::uint32_t> level) {
  WinRegions r;
  r.win1.assign(game.num_states(), false);
  r.win2.assign(game.num_states(), false);
  for (StateId s = 0; s < game.num_states(); ++s) {
    r.win1[s] = level[s] != kUnreached;
    r.win2[s] = !r.win1[s];
    if (r.win1[s] && level[s] > r.rounds) r.rounds = level[s];
  }
  r.level = std::move(level);
  return r;
}

}  // namespace

std::vector<StateId> WinRegions::win1_states() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < win1.size(); ++s)
    if (win1[s]) out.push_back(s);
  return out;
}

std::vector<StateId> WinRegions::win2_states() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < win2.size(); ++s)
    if (win2[s]) out.push_back(s);
  return out;
}

WinRegions asw(const GameGraph& game) {
  const auto n = game.num_states();
  // Reverse adjacency in CSR form.
  std::vector<std::size_t> start(n + 1, 0);
  for (StateId s = 0; s < n; ++s)
    for (const Edge& e : game.successors(s)) ++start[e.to + 1];
  for (std::size_t i = 1; i <= n; ++i) start[i] += start[i - 1];
  std::vector<StateId> preds(start.back());
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (StateId s = 0; s < n; ++s)
      for (const Edge& e : game.successors(s)) preds[fill[e.to]++] = s;
  }

  // P2 states need every defined move inside; count the ones still outside.
  std::vector<std::uint32_t> pending(n, 0);
  for (StateId s = 0; s < n; ++s) pending[s] = static_cast<std::uint32_t>(game.successors(s).size());

  std::vector<std::uint32_t> level(n, kUnreached);
  std::deque<StateId> queue;
  for (StateId s = 0; s < n; ++s) {
    if (game.is_final(s)) {
      level[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    StateId t = queue.front();
    queue.pop_front();
    for (std::size_t i = start[t]; i < start[t + 1]; ++i) {
      StateId p = preds[i];
      if (level[p] != kUnreached) continue;
      bool attracted = game.owner(p) == Player::P1 ? true : --pending[p] == 0;
      if (attracted) {
        level[p] = level[t] + 1;
        queue.push_back(p);
      }
    }
  }
  // BFS order assigns P1 states their first layer, but a P2 state joins one
  // layer after its *last* successor; the FIFO discipline gives exactly that.
  return finish(game, std::move(level));
}

WinRegions asw_by_rounds(const GameGraph& game) {
  const auto n = game.num_states();
  std::vector<std::uint32_t> level(n, kUnreached);
  for (StateId s = 0; s < n; ++s)
    if (game.is_final(s)) level[s] = 0;
  for (std::uint32_t k = 0;; ++k) {
    std::vector<StateId> added;
    for (StateId s = 0; s < n; ++s) {
      if (level[s] != kUnreached) continue;
      auto succ = game.successors(s);
      bool in = false;
      if (game.owner(s) == Player::P1) {
        for (const Edge& e : succ) in = in || level[e.to] != kUnreached;
      } else {
        in = !succ.empty();
        for (const Edge& e : succ) in = in && level[e.to] != kUnreached;
      }
      if (in) added.push_back(s);
    }
    if (added.empty()) break;
    for (StateId s : added) level[s] = k + 1;
  }
  return finish(game, std::move(level));
}

std::vector<ActionId> asw_decreasing_actions(const GameGraph& game, const WinRegions& regions, StateId s) {
  std::vector<ActionId> out;
  if (game.owner(s) != Player::P1 || !regions.win1[s] || game.is_final(s)) return out;
  for (const Edge& e : game.successors(s)) {
    if (regions.level[e.to] < regions.level[s]) out.push_back(e.action);
  }
  return out;
}

std::vector<ActionId> asw_strategy(const GameGraph& game, const WinRegions& regions) {
  std::vector<ActionId> out(game.num_states(), kNone);
  for (StateId s = 0; s < game.num_states(); ++s) {
    auto acts = asw_decreasing_actions(game, regions, s);
    if (!acts.empty()) out[s] = acts.front();
  }
  return out;
}

}  // namespace dasw
