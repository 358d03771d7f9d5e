// Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
// exact over the rationals; the only tolerances are the wall-clock budgets.

#include "injhull/Hyperbolicity.hpp"
#include "injhull/Orthoplex.hpp"
#include "injhull/TightSpan.hpp"
#include "support/Oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace injhull;

namespace {

constexpr std::uint64_t kSeed = 20240601;

// Budgets in seconds.
constexpr double kGromovBudget = 60;
constexpr double kDodecahedronBudget = 10;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string describe(const FiniteMetricSpace& s) {
  std::ostringstream out;
  out << s.size() << " points [";
  for (Index i = 0; i < s.size(); ++i)
    for (Index j = i + 1; j < s.size(); ++j) out << to_string(s(i, j)) << (i + 2 == s.size() ? "" : " ");
  return out.str() + "]";
}

// 1. (1, delta) equals the four-point delta.
void gromov_equivalence(Outcome& o) {
  Rng rng(kSeed + 1);
  const auto t0 = std::chrono::steady_clock::now();
  int count = 0;
  for (; count < 240; ++count) {
    const auto s = oracle::random_space(rng, 4 + static_cast<int>(rng.below(5)));
    const Rational a = min_delta(s, 1).delta, b = gromov_delta(s).delta;
    if (a != b) o.fail(describe(s) + ": min_delta " + to_string(a) + " vs gromov " + to_string(b));
  }
  const double t = seconds_since(t0);
  if (t > kGromovBudget) o.fail("took " + std::to_string(t) + " s");
  o.detail << count << " spaces (4..8 points: trees, graphs, grid subsets), " << t << " s of " << kGromovBudget << " s";
}

int hyperbolic_level(const FiniteMetricSpace& s) {
  for (int n = 0;; ++n)
    if (min_delta(s, n).delta == 0) return n;
}

// 2. Least n with min_delta = 0 equals the tight-span dimension.
void dimension_correspondence(Outcome& o) {
  Rng rng(kSeed + 2);
  int count = 0;
  std::vector<int> seen(4, 0);
  for (; count < 120; ++count) {
    const auto s = oracle::random_space(rng, 3 + static_cast<int>(rng.below(4)));
    const int level = hyperbolic_level(s), dim = tight_span_dimension(s);
    if (level != dim) o.fail(describe(s) + ": level " + std::to_string(level) + " vs dimension " + std::to_string(dim));
    if (dim < 4) ++seen[static_cast<std::size_t>(dim)];
  }
  o.detail << count << " spaces (3..6 points); dimensions 0/1/2/3 seen " << seen[0] << "/" << seen[1] << "/" << seen[2]
           << "/" << seen[3];
}

bool witness_ok(const OrthoplexWitness& w, std::string& why) {
  const auto& f = w.fiber;
  const int m = f.size();
  const Rational s = w.maximum.s;
  Rational lhs = 0, rhs = 0;
  for (int p = 0; p < m; ++p) {
    lhs += f.d(p, partner(p));
    rhs += f.d(p, w.permutation.alpha.at(p));
  }
  if (lhs != rhs + Rational(w.permutation.k) * s) return why = "permutation identity", false;
  if (w.permutation.k < 2 || w.permutation.k > 2 * f.n()) return why = "k out of range", false;
  for (int p = 0; p < m; ++p) {
    if (!is_extremal(f.points, w.functions[static_cast<std::size_t>(p)])) return why = "f_i not extremal", false;
    for (int q = p + 1; q < m; ++q)
      if (sup_distance(w.functions[static_cast<std::size_t>(p)], w.functions[static_cast<std::size_t>(q)]) !=
          (q == partner(p) ? 2 * s : s))
        return why = "distance pattern", false;
  }
  return true;
}

// 3. s_hat <= min_delta <= n s_hat, or min_delta = 0 when s_hat <= 0.
void witness_sandwich(Outcome& o) {
  Rng rng(kSeed + 3);
  int spaces = 0, witnesses = 0, nonpositive = 0, cycles = 0, loops = 0;
  for (; spaces < 100; ++spaces) {
    const auto s = oracle::random_space(rng, 4 + static_cast<int>(rng.below(5)));
    for (int n = 1; n <= 2; ++n) {
      const auto b = best_scale(s, n);
      const Rational d = min_delta(s, n).delta;
      if (!b.s_hat) {
        if (d != 0) o.fail(describe(s) + ": too few points but delta " + to_string(d));
        continue;
      }
      const Rational sh = *b.s_hat;
      if (sh <= 0) {
        ++nonpositive;
        if (d != 0) o.fail(describe(s) + ": s_hat <= 0 but delta " + to_string(d));
        continue;
      }
      if (!(sh <= d && d <= n * sh))
        o.fail(describe(s) + ", n=" + std::to_string(n) + ": s_hat " + to_string(sh) + ", delta " + to_string(d));
      if (!b.witness) {
        o.fail("missing witness");
        continue;
      }
      ++witnesses;
      (b.witness->graph.type == AlternatingGraph::Type::Cycle ? cycles : loops)++;
      std::string why;
      if (!witness_ok(*b.witness, why)) o.fail(describe(s) + ": witness check " + why);
    }
  }
  o.detail << spaces << " spaces (4..8 points) x n in {1,2}: " << witnesses << " witnesses checked (" << cycles
           << " cycle, " << loops << " loops_path), " << nonpositive << " with s_hat <= 0";
}

// 4. l_inf products.
void product_theorem(Outcome& o) {
  Rng rng(kSeed + 4);
  int pairs = 0;
  for (; pairs < 20; ++pairs) {
    const auto p = linf_product(random_tree(3, rng.next()), random_tree(3, rng.next()));
    const Rational d = min_delta(p, 2).delta;
    if (d != 0) o.fail("tree x tree delta " + to_string(d));
  }
  int factors = 0;
  for (; factors < 20; ++factors) {
    const auto a = oracle::random_space(rng, 3 + static_cast<int>(rng.below(2)));
    const auto b = oracle::random_space(rng, 3);
    const Rational da = min_delta(a, 1).delta, db = min_delta(b, 1).delta;
    const Rational dp = min_delta(linf_product(a, b), 2).delta;
    if (dp > std::max(da, db)) o.fail("product delta " + to_string(dp) + " above factors " + to_string(da) + ", " + to_string(db));
  }
  o.detail << pairs << " tree pairs (3 leaves each, 9-point products, n=2); " << factors
           << " random factor pairs (n_A = n_B = 1)";
}

// 5. Tight span of the 6-point orthoplex.
void rhombic_dodecahedron(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto c = enumerate_cells(oracle::orthoplex6());
  const double t = seconds_since(t0);
  if (c.f_vector != std::vector<std::size_t>{14, 24, 12, 1}) o.fail("f_vector");
  if (c.dimension() != 3) o.fail("dimension");
  int cube = 0;
  for (const auto& v : c.vertices) {
    bool half = true;
    for (Index x = 0; x < v.size(); ++x) half = half && (v(x) == Rational(1, 2) || v(x) == Rational(3, 2));
    cube += half;
  }
  if (cube != 8) o.fail("cube vertices " + std::to_string(cube));
  if (t > kDodecahedronBudget) o.fail("took " + std::to_string(t) + " s");
  o.detail << "f_vector (";
  for (std::size_t k = 0; k < c.f_vector.size(); ++k) o.detail << (k ? ", " : "") << c.f_vector[k];
  o.detail << "), dimension " << c.dimension() << ", " << cube << " vertices valued in {1/2, 3/2}, " << t << " s of "
           << kDodecahedronBudget << " s";
}

// 6. The vertex set of E(X) has the same (1, delta).
void hull_preserves_delta(Outcome& o) {
  Rng rng(kSeed + 6);
  int count = 0;
  std::size_t most = 0;
  for (; count < 60; ++count) {
    const auto s = oracle::random_space(rng, 3 + static_cast<int>(rng.below(3)));
    const auto vs = enumerate_vertices(s);
    most = std::max(most, vs.size());
    const Rational a = min_delta(vertex_space(vs), 1).delta, b = min_delta(s, 1).delta;
    if (a != b) o.fail(describe(s) + ": hull vertices " + to_string(a) + " vs " + to_string(b));
  }
  o.detail << count << " spaces (3..5 points), up to " << most << " hull vertices";
}

// 7. l_inf grids stay (2,0); Euclidean grids grow linearly with scale.
void flat_vs_polyhedral(Outcome& o) {
  for (const char* scale : {"1", "10", "100", "1/3"}) {
    const Rational d = min_delta(linf_grid(2, 3, parse_rational(scale)), 2).delta;
    if (d != 0) o.fail(std::string("l_inf grid at scale ") + scale + " has delta " + to_string(d));
  }
  std::vector<Rational> deltas;
  for (int lambda : {1, 10, 100}) deltas.push_back(min_delta(l2_grid(2, 3, Rational(lambda)), 2).delta);
  if (!(deltas[0] < deltas[1] && deltas[1] < deltas[2])) o.fail("Euclidean deltas not strictly increasing");
  // c is the least delta / lambda; it must be positive
  const Rational c = std::min({deltas[0], deltas[1] / 10, deltas[2] / 100});
  if (c <= 0) o.fail("fitted c not positive");
  o.detail << "l_inf 3x3 at scales 1, 10, 100, 1/3: delta 0; l_2 3x3 at 1, 10, 100: " << to_string(deltas[0]) << ", "
           << to_string(deltas[1]) << ", " << to_string(deltas[2]) << " (~" << static_cast<double>(deltas[0])
           << " lambda), c = " << to_string(c);
}

// 8. Assignment engine equals brute force; fixed-point-free maxima.
void engine_equivalence(Outcome& o) {
  Rng rng(kSeed + 8);
  int families = 0, fpf = 0;
  for (; families < 10000; ++families) {
    const auto s = oracle::random_space(rng, 3 + static_cast<int>(rng.below(6)));
    const int n = static_cast<int>(rng.below(3));
    std::vector<Index> x(static_cast<std::size_t>(2 * (n + 1)));
    for (auto& e : x) e = static_cast<Index>(rng.below(static_cast<std::uint64_t>(s.size())));
    const PairedFamily fam(x);
    const auto a = max_score_excluding_minus_id(s, fam, ScoreEngine::Assignment);
    const auto b = max_score_excluding_minus_id(s, fam, ScoreEngine::Brute);
    if (a.score != b.score || !(a.alpha == b.alpha)) o.fail("engines differ on " + fam.describe(s));
    if (n >= 1) {
      ++fpf;
      const auto f = max_score_fixed_point_free(s, fam);
      if (!f || f->score != b.score) o.fail("fixed-point-free maximum lower on " + fam.describe(s));
    }
  }
  o.detail << families << " families (n <= 2), " << fpf << " fixed-point-free checks (n >= 1)";
}

// 9. extremal_below, distance to point functions, attainment.
void extremal_machinery(Outcome& o) {
  Rng rng(kSeed + 9);
  int functions = 0;
  for (; functions < 1000; ++functions) {
    const auto s = oracle::random_space(rng, 2 + static_cast<int>(rng.below(6)));
    RationalVector f(s.size());
    // admissible: at least half the diameter everywhere, plus noise
    for (Index x = 0; x < s.size(); ++x)
      f(x) = s.diameter() / 2 + Rational(static_cast<long>(rng.below(9)), static_cast<long>(1 + rng.below(3)));
    if (!is_admissible(s, f)) {
      o.fail("generated function not admissible");
      continue;
    }
    const auto g = extremal_below(s, f);
    if (!is_extremal(s, g)) o.fail("extremal_below output not extremal on " + describe(s));
    for (Index x = 0; x < s.size(); ++x)
      if (g(x) > f(x)) o.fail("extremal_below output above input");
  }
  int spaces = 0, vertex_checks = 0, pair_checks = 0;
  for (; spaces < 60; ++spaces) {
    const auto s = oracle::random_space(rng, 2 + static_cast<int>(rng.below(4)));
    const auto vs = enumerate_vertices(s);
    const auto e = canonical_embed(s);
    for (const auto& f : vs) {
      for (Index y = 0; y < s.size(); ++y) {
        ++vertex_checks;
        if (sup_distance(f, e[static_cast<std::size_t>(y)]) != f(y)) o.fail("distance to d_y differs from f(y)");
      }
      for (const auto& g : vs) {
        ++pair_checks;
        const auto [x, y] = attain_xfgy(s, f, g);
        if (f(x) + sup_distance(f, g) + g(y) != s(x, y)) o.fail("attainment pair not exact");
      }
    }
  }
  o.detail << functions << " admissible functions; " << spaces << " spaces (2..5 points): " << vertex_checks
           << " distance checks, " << pair_checks << " vertex pairs attained exactly";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "gromov-equivalence", gromov_equivalence},       {2, "dimension-correspondence", dimension_correspondence},
      {3, "witness-sandwich", witness_sandwich},           {4, "product-theorem", product_theorem},
      {5, "rhombic-dodecahedron", rhombic_dodecahedron},   {6, "hull-preserves-delta", hull_preserves_delta},
      {7, "flat-vs-polyhedral", flat_vs_polyhedral},       {8, "engine-equivalence", engine_equivalence},
      {9, "extremal-machinery", extremal_machinery},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double t = seconds_since(t0);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << " " << c.name << ": " << o.detail.str() << " ["
              << t << " s]" << std::endl;
    failed += !o.pass;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
