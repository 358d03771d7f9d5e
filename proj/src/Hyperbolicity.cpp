#include "injhull/Hyperbolicity.hpp"

#include "injhull/Assignment.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace injhull {

namespace {

// Distances scaled to a common denominator, as int64 when every sum the
// engines form stays far from overflow.
struct ScaledDistances {
  Matrix<std::int64_t> values;
  Integer scale;  // values = scale * d
};

std::optional<ScaledDistances> scale_to_integers(const RationalMatrix& d, int positions) {
  Integer scale = common_denominator(d);
  const Integer limit = Integer(1) << 56;
  Matrix<std::int64_t> out(d.rows(), d.cols());
  for (Index i = 0; i < d.rows(); ++i)
    for (Index j = 0; j < d.cols(); ++j) {
      Rational scaled = d(i, j) * Rational(scale);
      Integer v = numerator(scaled);
      if (abs(Rational(v)) * Rational(8 * (positions + 2)) >= Rational(limit)) return std::nullopt;
      out(i, j) = v.convert_to<std::int64_t>();
    }
  return ScaledDistances{std::move(out), std::move(scale)};
}

template <typename Scalar>
Matrix<Scalar> family_weights(const Matrix<Scalar>& d, const std::vector<Index>& entries) {
  const auto m = static_cast<Index>(entries.size());
  Matrix<Scalar> w(m, m);
  for (Index p = 0; p < m; ++p)
    for (Index q = 0; q < m; ++q) w(p, q) = d(entries[static_cast<std::size_t>(p)], entries[static_cast<std::size_t>(q)]);
  return w;
}

template <typename Scalar>
Scalar pairing_sum_of(const Matrix<Scalar>& w) {
  Scalar s(0);
  for (Index p = 0; p < w.rows(); ++p) s += w(p, p ^ 1);
  return s;
}

// Max over alpha != -id subject to `allowed`: some position r must avoid its
// partner, so take the best over the problems forbidding one arc (r, -r).
template <typename Scalar>
std::optional<Scalar> assignment_best(const Matrix<Scalar>& w, const BoolMatrix& allowed) {
  std::optional<Scalar> best;
  BoolMatrix restricted = allowed;
  bool unrestricted_done = false;
  for (Index r = 0; r < w.rows(); ++r) {
    if (!allowed(r, r ^ 1)) {
      // alpha(r) != -r already enforced
      if (unrestricted_done) continue;
      unrestricted_done = true;
      if (auto a = max_weight_assignment(w, &allowed); a && (!best || a->value > *best)) best = a->value;
      continue;
    }
    restricted(r, r ^ 1) = false;
    if (auto a = max_weight_assignment(w, &restricted); a && (!best || a->value > *best)) best = a->value;
    restricted(r, r ^ 1) = true;
  }
  return best;
}

template <typename Scalar>
Scalar assignment_value(const Matrix<Scalar>& w) {
  BoolMatrix all = BoolMatrix::Constant(w.rows(), w.cols(), true);
  return *assignment_best(w, all);
}

// Lexicographically first position map attaining `target`, by fixing images
// one position at a time.
template <typename Scalar>
std::vector<int> assignment_lex_first(const Matrix<Scalar>& w, const Scalar& target) {
  const Index m = w.rows();
  BoolMatrix allowed = BoolMatrix::Constant(m, m, true);
  std::vector<int> map(static_cast<std::size_t>(m), -1);
  for (Index p = 0; p < m; ++p) {
    bool placed = false;
    for (Index q = 0; q < m && !placed; ++q) {
      if (!allowed(p, q)) continue;
      BoolMatrix trial = allowed;
      trial.row(p).setConstant(false);
      trial.col(q).setConstant(false);
      trial(p, q) = true;
      auto v = assignment_best(w, trial);
      if (v && *v == target) {
        allowed = std::move(trial);
        map[static_cast<std::size_t>(p)] = static_cast<int>(q);
        placed = true;
      }
    }
    if (!placed) throw std::logic_error("assignment engine: no completion attains the maximum");
  }
  return map;
}

template <typename Scalar>
Scalar score_of(const Matrix<Scalar>& w, const std::vector<int>& map) {
  Scalar s(0);
  for (Index p = 0; p < w.rows(); ++p) s += w(p, map[static_cast<std::size_t>(p)]);
  return s;
}

bool is_minus_id_map(const std::vector<int>& map) {
  for (std::size_t p = 0; p < map.size(); ++p)
    if (map[p] != static_cast<int>(p ^ 1)) return false;
  return true;
}

template <typename Scalar>
std::pair<Scalar, std::vector<int>> brute_best(const Matrix<Scalar>& w, bool fixed_point_free_only) {
  std::vector<int> map(static_cast<std::size_t>(w.rows()));
  std::iota(map.begin(), map.end(), 0);
  std::optional<Scalar> best;
  std::vector<int> arg;
  do {
    if (is_minus_id_map(map)) continue;
    if (fixed_point_free_only) {
      bool has_fixed = false;
      for (std::size_t p = 0; p < map.size(); ++p) has_fixed |= map[p] == static_cast<int>(p);
      if (has_fixed) continue;
    }
    Scalar s = score_of(w, map);
    if (!best || s > *best) {
      best = s;
      arg = map;
    }
  } while (std::next_permutation(map.begin(), map.end()));
  if (!best) return {Scalar(0), {}};
  return {*best, arg};
}

template <typename Scalar>
Scalar best_value(const Matrix<Scalar>& w, ScoreEngine engine) {
  return engine == ScoreEngine::Brute ? brute_best(w, false).first : assignment_value(w);
}

void check_family(const FiniteMetricSpace& space, const PairedFamily& family) {
  for (Index x : family.entries())
    if (x < 0 || x >= space.size()) throw std::out_of_range("family refers to a point outside the space");
}

// Families as sequences of n+1 pair ids, in lexicographic order.
struct FamilyList {
  std::vector<std::pair<Index, Index>> pairs;
  std::vector<int> flat;  // (n+1) pair ids per family
  int width = 0;
  std::size_t count() const { return width ? flat.size() / static_cast<std::size_t>(width) : 0; }
};

FamilyList enumerate_families(Index points, int n, FamilyMode mode) {
  FamilyList list;
  list.width = n + 1;
  for (Index a = 0; a < points; ++a)
    for (Index b = (mode == FamilyMode::Full ? a : a + 1); b < points; ++b) list.pairs.emplace_back(a, b);
  const int P = static_cast<int>(list.pairs.size());
  std::vector<int> current;
  std::vector<int> used(static_cast<std::size_t>(points), 0);
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(current.size()) == list.width) {
      list.flat.insert(list.flat.end(), current.begin(), current.end());
      return;
    }
    for (int k = start; k < P; ++k) {
      auto [a, b] = list.pairs[static_cast<std::size_t>(k)];
      if (mode == FamilyMode::Distinct) {
        if (used[static_cast<std::size_t>(a)] || used[static_cast<std::size_t>(b)]) continue;
        used[static_cast<std::size_t>(a)] = used[static_cast<std::size_t>(b)] = 1;
      }
      current.push_back(k);
      self(self, mode == FamilyMode::Full ? k : k + 1);
      current.pop_back();
      if (mode == FamilyMode::Distinct) used[static_cast<std::size_t>(a)] = used[static_cast<std::size_t>(b)] = 0;
    }
  };
  rec(rec, 0);
  return list;
}

std::vector<Index> family_entries(const FamilyList& list, std::size_t f) {
  std::vector<Index> e;
  for (int k = 0; k < list.width; ++k) {
    auto [a, b] = list.pairs[static_cast<std::size_t>(list.flat[f * static_cast<std::size_t>(list.width) + static_cast<std::size_t>(k)])];
    e.push_back(a);
    e.push_back(b);
  }
  return e;
}

template <typename Scalar>
std::pair<Scalar, std::size_t> scan_families(const Matrix<Scalar>& d, const FamilyList& list, ScoreEngine engine,
                                             unsigned threads) {
  const std::size_t total = list.count();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
  struct Best {
    std::optional<Scalar> excess;
    std::size_t index = 0;
  };
  std::vector<Best> partial(threads);
  auto work = [&](unsigned t) {
    const std::size_t lo = total * t / threads, hi = total * (t + 1) / threads;
    Best& b = partial[t];
    for (std::size_t f = lo; f < hi; ++f) {
      Matrix<Scalar> w = family_weights(d, family_entries(list, f));
      Scalar excess = pairing_sum_of(w) - best_value(w, engine);
      if (!b.excess || excess > *b.excess) {
        b.excess = excess;
        b.index = f;
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  Best best;
  for (const auto& b : partial)  // chunks are in index order, so strict > keeps the first maximizer
    if (b.excess && (!best.excess || *b.excess > *best.excess)) best = b;
  return {best.excess.value_or(Scalar(0)), best.index};
}

}  // namespace

Rational permutation_score(const FiniteMetricSpace& space, const PairedFamily& family, const IndexPermutation& alpha) {
  if (alpha.size() != family.size()) throw std::invalid_argument("permutation and family use different index sets");
  check_family(space, family);
  Rational s(0);
  for (int p = 0; p < family.size(); ++p) s += space(family.at(p), family.at(alpha.at(p)));
  return s;
}

Rational pairing_sum(const FiniteMetricSpace& space, const PairedFamily& family) {
  check_family(space, family);
  Rational s(0);
  for (int p = 0; p < family.size(); ++p) s += space(family.at(p), family.at(partner(p)));
  return s;
}

ScoreResult max_score_excluding_minus_id(const FiniteMetricSpace& space, const PairedFamily& family,
                                         ScoreEngine engine) {
  check_family(space, family);
  RationalMatrix w = family_weights(space.distances(), family.entries());
  if (engine == ScoreEngine::Brute) {
    auto [score, map] = brute_best(w, false);
    return {score, IndexPermutation(std::move(map))};
  }
  Rational value = assignment_value(w);
  return {value, IndexPermutation(assignment_lex_first(w, value))};
}

std::optional<ScoreResult> max_score_fixed_point_free(const FiniteMetricSpace& space, const PairedFamily& family) {
  check_family(space, family);
  if (family.n() == 0) return std::nullopt;
  RationalMatrix w = family_weights(space.distances(), family.entries());
  auto [score, map] = brute_best(w, true);
  return ScoreResult{score, IndexPermutation(std::move(map))};
}

DefectReport family_defect(const FiniteMetricSpace& space, const PairedFamily& family, ScoreEngine engine) {
  auto best = max_score_excluding_minus_id(space, family, engine);
  Rational lhs = pairing_sum(space, family);
  Rational defect = std::max(Rational(0), Rational((lhs - best.score) / 2));
  return DefectReport{family, lhs, std::move(best.alpha), std::move(best.score), std::move(defect)};
}

std::size_t family_count(Index points, int n, FamilyMode mode) {
  if (n < 0 || points < 0) return 0;
  auto binom = [](long double a, long double b) {
    long double r = 1;
    for (long double i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  const long double N = static_cast<long double>(points);
  long double c;
  if (mode == FamilyMode::Full) {
    c = binom(N * (N + 1) / 2 + n, n + 1);
  } else {
    if (points < 2 * (n + 1)) return 0;
    long double pairings = 1;
    for (int k = 1; k <= 2 * n + 1; k += 2) pairings *= k;
    c = binom(N, 2 * (n + 1)) * pairings;
  }
  if (c > 1e18L) return static_cast<std::size_t>(1e18);
  return static_cast<std::size_t>(c + 0.5L);
}

DeltaResult min_delta(const FiniteMetricSpace& space, int n, const DeltaOptions& options) {
  if (n < 0) throw std::invalid_argument("min_delta: n must be >= 0");
  FamilyList list = enumerate_families(space.size(), n, options.mode);
  DeltaResult result{Rational(0), std::nullopt, list.count()};
  if (list.count() == 0) return result;

  std::size_t arg;
  if (auto scaled = scale_to_integers(space.distances(), 2 * (n + 1))) {
    auto [excess, index] = scan_families(scaled->values, list, options.engine, options.threads);
    arg = index;
  } else {
    auto [excess, index] = scan_families(space.distances(), list, options.engine, options.threads);
    arg = index;
  }
  DefectReport report = family_defect(space, PairedFamily(family_entries(list, arg)), options.engine);
  result.delta = report.defect;
  result.witness = std::move(report);
  return result;
}

GromovResult gromov_delta(const FiniteMetricSpace& space) {
  const Index n = space.size();
  auto run = [&](const auto& d) {
    using S = std::decay_t<decltype(d(0, 0))>;
    S best(0);
    std::array<Index, 4> arg{0, 0, 0, 0};
    for (Index x = 0; x < n; ++x)
      for (Index x2 = 0; x2 < n; ++x2)
        for (Index y = 0; y < n; ++y)
          for (Index y2 = 0; y2 < n; ++y2) {
            S excess = d(x, x2) + d(y, y2) - std::max<S>(d(x, y) + d(x2, y2), d(x, y2) + d(x2, y));
            if (excess > best) {
              best = excess;
              arg = {x, x2, y, y2};
            }
          }
    return std::pair<S, std::array<Index, 4>>(best, arg);
  };
  if (auto scaled = scale_to_integers(space.distances(), 4)) {
    auto [excess, arg] = run(scaled->values);
    return {Rational(Integer(excess), Integer(scaled->scale * 2)), arg};
  }
  auto [excess, arg] = run(space.distances());
  return {Rational(excess / 2), arg};
}

HyperbolicityCheck is_n_delta_hyperbolic(const FiniteMetricSpace& space, int n, const Rational& delta,
                                         const DeltaOptions& options) {
  if (delta < 0) throw std::invalid_argument("delta must be >= 0");
  auto r = min_delta(space, n, options);
  HyperbolicityCheck check{r.delta <= delta, r.delta, std::nullopt};
  if (!check.holds) check.violation = std::move(r.witness);
  return check;
}

}  // namespace injhull
