#include "injhull/Family.hpp"

#include <set>
#include <stdexcept>

namespace injhull {

PairedFamily::PairedFamily(std::vector<Index> entries) : entries_(std::move(entries)) {
  if (entries_.size() < 2 || entries_.size() % 2 != 0)
    throw std::invalid_argument("a paired family needs 2(n+1) entries");
}

PairedFamily PairedFamily::from_pairs(const std::vector<std::pair<Index, Index>>& pairs) {
  std::vector<Index> e;
  for (auto [a, b] : pairs) {
    e.push_back(a);
    e.push_back(b);
  }
  return PairedFamily(std::move(e));
}

bool PairedFamily::injective() const {
  return std::set<Index>(entries_.begin(), entries_.end()).size() == entries_.size();
}

std::string PairedFamily::describe(const FiniteMetricSpace& space) const {
  std::string s = "(";
  for (int p = 0; p < size(); p += 2) {
    if (p) s += " | ";
    s += space.label(at(p)) + "," + space.label(at(p + 1));
  }
  return s + ")";
}

IndexPermutation::IndexPermutation(std::vector<int> positions) : map_(std::move(positions)) {
  if (map_.size() < 2 || map_.size() % 2 != 0) throw std::invalid_argument("permutation of I_n needs 2(n+1) entries");
  std::vector<bool> hit(map_.size());
  for (int q : map_) {
    if (q < 0 || q >= static_cast<int>(map_.size()) || hit[static_cast<std::size_t>(q)])
      throw std::invalid_argument("not a bijection on I_n");
    hit[static_cast<std::size_t>(q)] = true;
  }
}

IndexPermutation IndexPermutation::identity(int n) {
  std::vector<int> m(static_cast<std::size_t>(2 * (n + 1)));
  for (int p = 0; p < static_cast<int>(m.size()); ++p) m[static_cast<std::size_t>(p)] = p;
  return IndexPermutation(std::move(m));
}

IndexPermutation IndexPermutation::minus_identity(int n) {
  std::vector<int> m(static_cast<std::size_t>(2 * (n + 1)));
  for (int p = 0; p < static_cast<int>(m.size()); ++p) m[static_cast<std::size_t>(p)] = partner(p);
  return IndexPermutation(std::move(m));
}

bool IndexPermutation::is_minus_id() const {
  for (int p = 0; p < size(); ++p)
    if (at(p) != partner(p)) return false;
  return true;
}

bool IndexPermutation::is_identity() const {
  for (int p = 0; p < size(); ++p)
    if (at(p) != p) return false;
  return true;
}

bool IndexPermutation::fixed_point_free() const {
  for (int p = 0; p < size(); ++p)
    if (at(p) == p) return false;
  return true;
}

std::string IndexPermutation::describe() const {
  std::string s;
  for (int p = 0; p < size(); ++p) {
    if (p) s += ' ';
    s += std::to_string(signed_index_of(p)) + "->" + std::to_string(signed_index_of(at(p)));
  }
  return s;
}

}  // namespace injhull
