#pragma once

#include "injhull/MetricSpace.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace injhull {

/// Seeded pseudo-random stream: std::mt19937_64 (whose output sequence is fixed
/// by the standard) with bounded draws done here by rejection sampling, so a
/// seed yields the same instances on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// True with probability percent/100.
  bool percent(int percent) { return below(100) < static_cast<std::uint64_t>(percent); }

 private:
  std::mt19937_64 engine_;
};

/// Leaf-to-leaf distances of a random tree with rational edge weights
/// k/r, k in [1, max_weight], r in {1, 2}. Internal nodes are not points.
FiniteMetricSpace random_tree(int leaves, std::uint64_t seed, int max_weight = 8);

/// Shortest-path metric of a random connected graph: a random spanning tree plus
/// each remaining edge with probability density_percent, integer weights in
/// [1, max_weight].
FiniteMetricSpace random_graph(int points, std::uint64_t seed, int density_percent = 40, int max_weight = 8);

/// The side^dim lattice {0..side-1}^dim scaled by `scale`, with the max-norm.
FiniteMetricSpace linf_grid(int dim, int side, const Rational& scale = Rational(1));

/// Same lattice with Euclidean distances. Each distance is g * scale * r(|u|)
/// where v = g*u with u primitive and r rationalizes the norm with the given
/// denominator bound, so collinear lattice points stay exactly additive.
FiniteMetricSpace l2_grid(int dim, int side, const Rational& scale = Rational(1),
                          std::int64_t max_denominator = 1'000'000);

/// Graph metric of the m-cycle.
FiniteMetricSpace cycle(int m);

enum class GeneratorKind { RandomTree, RandomGraph, LinfGrid, L2Grid, Cycle };

GeneratorKind parse_generator_kind(std::string_view name);
std::string_view generator_name(GeneratorKind kind);

struct GeneratorParams {
  int size = 6;              ///< leaves (tree), points (graph), m (cycle)
  int dim = 2;               ///< grids
  int side = 3;              ///< grids
  Rational scale = Rational(1);
  int max_weight = 8;
  int density_percent = 40;
  std::int64_t max_denominator = 1'000'000;
};

/// Dispatches to the generator for `kind`. Throws std::invalid_argument on bad
/// parameters (size < 2, side < 1, ...).
FiniteMetricSpace generate(GeneratorKind kind, const GeneratorParams& params, std::uint64_t seed);

}  // namespace injhull
