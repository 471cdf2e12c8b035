#include "dasw/action_set.hpp"

#include <algorithm>
#include <bit>

namespace dasw {

Player parse_player(std::string_view text) {
  if (text == "P1") return Player::P1;
  if (text == "P2") return Player::P2;
  throw ParseError("unknown player tag '" + std::string(text) + "' (expected P1 or P2)");
}

ActionSet::ActionSet(std::initializer_list<ActionId> ids) {
  for (ActionId a : ids) insert(a);
}

bool ActionSet::contains(ActionId a) const {
  std::size_t w = a / 64;
  return w < words_.size() && ((words_[w] >> (a % 64)) & 1U) != 0;
}

void ActionSet::insert(ActionId a) {
  std::size_t w = a / 64;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] |= std::uint64_t{1} << (a % 64);
}

void ActionSet::erase(ActionId a) {
  std::size_t w = a / 64;
  if (w >= words_.size()) return;
  words_[w] &= ~(std::uint64_t{1} << (a % 64));
  trim();
}

std::size_t ActionSet::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool ActionSet::subset_of(const ActionSet& other) const {
  if (words_.size() > other.words_.size()) return false;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

ActionSet ActionSet::operator|(const ActionSet& other) const {
  ActionSet out = *this;
  out |= other;
  return out;
}

ActionSet& ActionSet::operator|=(const ActionSet& other) {
  if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

std::vector<ActionId> ActionSet::to_vector() const {
  std::vector<ActionId> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w != 0) {
      int bit = std::countr_zero(w);
      out.push_back(static_cast<ActionId>(i * 64 + static_cast<std::size_t>(bit)));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t ActionSet::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto w : words_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x100000001b3ULL;
  return h;
}

void ActionSet::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

}  // namespace dasw
