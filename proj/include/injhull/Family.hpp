#pragma once

#include "injhull/MetricSpace.hpp"

#include <string>
#include <vector>

namespace injhull {

// Families and permutations are indexed by I_n = {±1, ..., ±(n+1)}. Internally a
// signed index i is stored at a position: +k at 2(k-1), -k at 2(k-1)+1, so the
// involution i -> -i is position ^ 1 and positions order as 1, -1, 2, -2, ...

inline int position_of(int signed_index) {
  return signed_index > 0 ? 2 * (signed_index - 1) : 2 * (-signed_index - 1) + 1;
}
inline int signed_index_of(int position) { return position % 2 == 0 ? position / 2 + 1 : -(position / 2 + 1); }
inline int partner(int position) { return position ^ 1; }

/// Points x_i for i in I_n, repetition allowed.
class PairedFamily {
 public:
  /// entries[p] is the point at position p; the size must be even and >= 2.
  explicit PairedFamily(std::vector<Index> entries);
  /// Pairs {x_k, x_-k} in order.
  static PairedFamily from_pairs(const std::vector<std::pair<Index, Index>>& pairs);

  int n() const { return static_cast<int>(entries_.size() / 2) - 1; }
  int size() const { return static_cast<int>(entries_.size()); }
  Index at(int position) const { return entries_[static_cast<std::size_t>(position)]; }
  Index operator[](int signed_index) const { return at(position_of(signed_index)); }
  const std::vector<Index>& entries() const { return entries_; }
  bool injective() const;

  /// "(a,c | b,d)"
  std::string describe(const FiniteMetricSpace& space) const;

  friend bool operator==(const PairedFamily&, const PairedFamily&) = default;

 private:
  std::vector<Index> entries_;
};

/// Bijection on I_n, stored by position.
class IndexPermutation {
 public:
  explicit IndexPermutation(std::vector<int> positions);
  static IndexPermutation identity(int n);
  static IndexPermutation minus_identity(int n);

  int n() const { return static_cast<int>(map_.size() / 2) - 1; }
  int size() const { return static_cast<int>(map_.size()); }
  /// Image of a position.
  int at(int position) const { return map_[static_cast<std::size_t>(position)]; }
  /// Image of a signed index.
  int operator()(int signed_index) const { return signed_index_of(at(position_of(signed_index))); }
  const std::vector<int>& positions() const { return map_; }

  bool is_minus_id() const;
  bool is_identity() const;
  bool fixed_point_free() const;

  /// "1->-1 -1->2 ..."
  std::string describe() const;

  friend bool operator==(const IndexPermutation&, const IndexPermutation&) = default;
  friend auto operator<=>(const IndexPermutation& a, const IndexPermutation& b) { return a.map_ <=> b.map_; }

 private:
  std::vector<int> map_;
};

}  // namespace injhull
