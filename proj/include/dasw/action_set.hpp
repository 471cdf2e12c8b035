#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

#include "dasw/types.hpp"

namespace dasw {

/// Finite set of action ids stored as a bitmask. Used for perception sets
/// (subsets of P1's alphabet) and permissive sets. Trailing zero words are
/// trimmed so that equal sets compare equal regardless of history.
class ActionSet {
 public:
  ActionSet() = default;
  ActionSet(std::initializer_list<ActionId> ids);

  template <typename Range>
  static ActionSet of(const Range& ids) {
    ActionSet out;
    for (ActionId a : ids) out.insert(a);
    return out;
  }

  bool contains(ActionId a) const;
  void insert(ActionId a);
  void erase(ActionId a);

  bool empty() const { return words_.empty(); }
  std::size_t size() const;

  bool subset_of(const ActionSet& other) const;
  ActionSet operator|(const ActionSet& other) const;
  ActionSet& operator|=(const ActionSet& other);

  /// Members in ascending order.
  std::vector<ActionId> to_vector() const;

  friend bool operator==(const ActionSet&, const ActionSet&) = default;
  friend bool operator<(const ActionSet& a, const ActionSet& b) { return a.words_ < b.words_; }

  std::size_t hash() const;

 private:
  void trim();
  std::vector<std::uint64_t> words_;
};

struct ActionSetHash {
  std::size_t operator()(const ActionSet& s) const { return s.hash(); }
};

}  // namespace dasw
