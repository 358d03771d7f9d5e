#pragma once

// Fixtures and brute-force oracles shared by the unit and acceptance tests.
// The oracles are deliberately naive and share no code with the engines.

#include "injhull/Family.hpp"
#include "injhull/Generators.hpp"
#include "injhull/MetricSpace.hpp"
#include "injhull/Scalar.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

namespace injhull::oracle {

inline Rational Q(const char* text) { return parse_rational(text); }

inline FiniteMetricSpace from_rows(std::vector<std::string> labels, const std::vector<std::vector<Rational>>& rows) {
  const Index m = static_cast<Index>(rows.size());
  RationalMatrix d(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) d(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return FiniteMetricSpace(std::move(labels), d);
}

/// a, b, c, d around a square; sides 1, diagonals 2.
inline FiniteMetricSpace c4() {
  return from_rows({"a", "b", "c", "d"}, {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}});
}

/// {+-e_1, +-e_2, +-e_3} in l_inf^3 scaled by s: antipodes at 2s, others at s.
inline FiniteMetricSpace orthoplex6(const Rational& s = Rational(1)) {
  std::vector<std::string> labels{"+1", "-1", "+2", "-2", "+3", "-3"};
  RationalMatrix d(6, 6);
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j) d(i, j) = i == j ? Rational(0) : ((i ^ 1) == j ? Rational(2) * s : s);
  return FiniteMetricSpace(labels, d);
}

/// Three leaves of a star with legs 2, 1, 3: d(a,b) = 3, d(a,c) = 5, d(b,c) = 4.
inline FiniteMetricSpace tripod() {
  return from_rows({"a", "b", "c"}, {{0, 3, 5}, {3, 0, 4}, {5, 4, 0}});
}

/// Calls visit(entries) for every map from the 2(n+1) positions to points.
inline void for_each_family(Index points, int n, const std::function<void(const std::vector<Index>&)>& visit) {
  const std::size_t m = static_cast<std::size_t>(2 * (n + 1));
  std::vector<Index> e(m, 0);
  while (true) {
    visit(e);
    std::size_t k = 0;
    while (k < m && ++e[k] == points) e[k++] = 0;
    if (k == m) return;
  }
}

/// sum over positions p of d(x_p, x_sigma(p)).
inline Rational score(const FiniteMetricSpace& s, const std::vector<Index>& x, const std::vector<int>& sigma) {
  Rational total = 0;
  for (std::size_t p = 0; p < x.size(); ++p) total += s(x[p], x[static_cast<std::size_t>(sigma[p])]);
  return total;
}

struct BruteScore {
  Rational value;
  std::vector<int> sigma;
};

/// Largest score over every permutation except the partner swap p -> p ^ 1,
/// ties to the lexicographically first; optionally only fixed-point-free ones.
inline std::optional<BruteScore> brute_max_score(const FiniteMetricSpace& s, const std::vector<Index>& x,
                                                 bool fixed_point_free = false) {
  std::vector<int> sigma(x.size());
  std::iota(sigma.begin(), sigma.end(), 0);
  std::optional<BruteScore> best;
  do {
    bool swap = true, has_fixed = false;
    for (std::size_t p = 0; p < sigma.size(); ++p) {
      swap = swap && sigma[p] == static_cast<int>(p ^ 1);
      has_fixed = has_fixed || sigma[p] == static_cast<int>(p);
    }
    if (swap || (fixed_point_free && has_fixed)) continue;
    Rational v = score(s, x, sigma);
    if (!best || v > best->value) best = BruteScore{v, sigma};
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

/// Largest defect over all families, repetition allowed.
inline Rational brute_min_delta(const FiniteMetricSpace& s, int n) {
  Rational worst = 0;
  std::vector<int> minus(static_cast<std::size_t>(2 * (n + 1)));
  for (std::size_t p = 0; p < minus.size(); ++p) minus[p] = static_cast<int>(p ^ 1);
  for_each_family(s.size(), n, [&](const std::vector<Index>& x) {
    Rational defect = (score(s, x, minus) - brute_max_score(s, x)->value) / 2;
    worst = std::max(worst, defect);
  });
  return worst;
}

inline Rational brute_gromov(const FiniteMetricSpace& s) {
  Rational worst = 0;
  const Index m = s.size();
  for (Index x = 0; x < m; ++x)
    for (Index x2 = 0; x2 < m; ++x2)
      for (Index y = 0; y < m; ++y)
        for (Index y2 = 0; y2 < m; ++y2) {
          Rational excess = s(x, x2) + s(y, y2) - std::max(s(x, y) + s(x2, y2), s(x, y2) + s(x2, y));
          worst = std::max(worst, excess / 2);
        }
  return worst;
}

/// Rank of a rational matrix by plain Gaussian elimination.
inline Index rank(RationalMatrix a) {
  Index r = 0;
  for (Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Index piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    a.row(piv).swap(a.row(r));
    for (Index i = 0; i < a.rows(); ++i)
      if (i != r && a(i, c) != 0) a.row(i) -= (a(i, c) / a(r, c)) * a.row(r);
    ++r;
  }
  return r;
}

/// Unique solution of a square system, or nullopt when singular.
inline std::optional<RationalVector> solve_square(RationalMatrix a, RationalVector b) {
  const Index m = a.rows();
  for (Index c = 0; c < m; ++c) {
    Index piv = c;
    while (piv < m && a(piv, c) == 0) ++piv;
    if (piv == m) return std::nullopt;
    a.row(piv).swap(a.row(c));
    std::swap(b(piv), b(c));
    for (Index i = 0; i < m; ++i)
      if (i != c && a(i, c) != 0) {
        const Rational f = a(i, c) / a(c, c);
        a.row(i) -= f * a.row(c);
        b(i) -= f * b(c);
      }
  }
  RationalVector x(m);
  for (Index i = 0; i < m; ++i) x(i) = b(i) / a(i, i);
  return x;
}

/// Vertices of the polyhedron {f : f(x) + f(y) >= d(x, y)} by trying every
/// choice of |X| pair equations, sorted lexicographically.
inline std::vector<RationalVector> brute_vertices(const FiniteMetricSpace& s) {
  const Index m = s.size();
  std::vector<std::pair<Index, Index>> pairs;
  for (Index x = 0; x < m; ++x)
    for (Index y = x; y < m; ++y) pairs.emplace_back(x, y);
  std::set<std::vector<Rational>> found;
  std::vector<bool> pick(pairs.size(), false);
  std::fill(pick.begin(), pick.begin() + m, true);
  do {
    RationalMatrix a = RationalMatrix::Zero(m, m);
    RationalVector b(m);
    Index row = 0;
    for (std::size_t u = 0; u < pairs.size(); ++u)
      if (pick[u]) {
        a(row, pairs[u].first) += 1;
        a(row, pairs[u].second) += 1;
        b(row) = s(pairs[u].first, pairs[u].second);
        ++row;
      }
    auto f = solve_square(a, b);
    if (!f) continue;
    bool ok = true;
    for (Index x = 0; x < m && ok; ++x)
      for (Index y = x; y < m && ok; ++y) ok = (*f)(x) + (*f)(y) >= s(x, y);
    if (ok) found.insert(std::vector<Rational>(f->data(), f->data() + m));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  std::vector<RationalVector> out;
  for (const auto& v : found) {
    RationalVector f(m);
    for (Index x = 0; x < m; ++x) f(x) = v[static_cast<std::size_t>(x)];
    out.push_back(f);
  }
  return out;
}

/// Random space of the given size from one of the generator families.
inline FiniteMetricSpace random_space(Rng& rng, int points) {
  switch (rng.below(3)) {
    case 0:
      return random_tree(points, rng.next());
    case 1:
      return random_graph(points, rng.next());
    default: {
      // a random subset of a 3x3 grid, l_inf or l_2
      FiniteMetricSpace grid = rng.percent(50) ? linf_grid(2, 3) : l2_grid(2, 3);
      std::vector<Index> all(static_cast<std::size_t>(grid.size()));
      std::iota(all.begin(), all.end(), 0);
      for (std::size_t u = all.size(); u > 1; --u) std::swap(all[u - 1], all[rng.below(u)]);
      all.resize(static_cast<std::size_t>(std::min<Index>(points, grid.size())));
      std::sort(all.begin(), all.end());
      return submetric(grid, std::span<const Index>(all));
    }
  }
}

}  // namespace injhull::oracle
