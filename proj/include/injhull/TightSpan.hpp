#pragma once

#include "injhull/MetricSpace.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace injhull {

// Functions on a finite space are dense vectors indexed by point position.

/// f(x) + f(y) >= d(x, y) for all x, y (including x = y, so f >= 0).
bool is_admissible(const FiniteMetricSpace& space, const RationalVector& f);
/// Admissible and minimal: every x has some z (possibly x) with f(x) + f(z) = d(x, z).
bool is_extremal(const FiniteMetricSpace& space, const RationalVector& f);

class NotAdmissible : public std::invalid_argument {
 public:
  explicit NotAdmissible(const std::string& what) : std::invalid_argument(what) {}
};
class NotExtremal : public std::invalid_argument {
 public:
  explicit NotExtremal(const std::string& what) : std::invalid_argument(what) {}
};
/// Raised when an enumeration is asked for more points than its bound allows.
class SizeBoundExceeded : public std::runtime_error {
 public:
  explicit SizeBoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// f*(x) = max over z of d(x, z) - f(z).
RationalVector star(const FiniteMetricSpace& space, const RationalVector& f);

/// (f + f*) / 2, admissible and below f. Throws NotAdmissible.
RationalVector q_map(const FiniteMetricSpace& space, const RationalVector& f);

/// One coordinate sweep in `order`, replacing f(x) by max(0, max_{z != x} d(x,z) - f(z)).
/// The result is extremal and below f: a coordinate that became tight against
/// z stays tight, since a later lowering of f(z) would break admissibility.
/// Throws NotAdmissible, or std::invalid_argument if `order` is not a permutation.
RationalVector extremal_below(const FiniteMetricSpace& space, const RationalVector& f, std::span<const Index> order);
RationalVector extremal_below(const FiniteMetricSpace& space, const RationalVector& f);

/// The distance functions d_y, one per point.
std::vector<RationalVector> canonical_embed(const FiniteMetricSpace& space);

/// max |f - g|. Throws std::invalid_argument when the functions live on
/// spaces of different size.
Rational sup_distance(const RationalVector& f, const RationalVector& g);

/// Tight pairs {x, y} (x <= y) of a function; a loop {x, x} means f(x) = 0.
struct EqualityGraph {
  Index points = 0;
  std::vector<std::pair<Index, Index>> edges;

  bool has_edge(Index x, Index y) const;
  bool has_loop(Index x) const { return has_edge(x, x); }
  /// Every point lies on at least one edge.
  bool covering() const;
  /// Connected components (isolated points included), each sorted.
  std::vector<std::vector<Index>> components() const;

  friend bool operator==(const EqualityGraph&, const EqualityGraph&) = default;
};

/// Equality graph of an extremal function. Throws NotExtremal.
EqualityGraph equality_graph(const FiniteMetricSpace& space, const RationalVector& f);
/// Tight pairs of any function, no precondition.
EqualityGraph tight_pairs(const FiniteMetricSpace& space, const RationalVector& f);

/// Number of components with neither an odd cycle nor a loop. Throws
/// std::invalid_argument when the graph does not cover every point.
int cell_dimension(const EqualityGraph& graph);

struct Cell {
  EqualityGraph graph;
  int dimension = 0;
  RationalVector interior_point;   ///< extremal, tight exactly on graph.edges
  std::vector<Index> vertex_ids;   ///< indices into TightSpanComplex::vertices
};

struct TightSpanComplex {
  FiniteMetricSpace space;
  std::vector<RationalVector> vertices;  ///< lexicographic by value vector
  std::vector<Cell> cells;               ///< by dimension, then by vertex ids
  std::vector<std::size_t> f_vector;     ///< cell counts by dimension

  int dimension() const { return f_vector.empty() ? 0 : static_cast<int>(f_vector.size()) - 1; }
};

inline constexpr Index kDefaultVertexBound = 7;
inline constexpr Index kDefaultCellBound = 6;
/// Hard ceiling: pair sets are bit masks of |X|(|X|+1)/2 <= 64 pairs.
inline constexpr Index kMaxEnumerablePoints = 10;

/// Vertices of E(X) (extremal functions with no bipartite component), found by
/// choosing |X| linearly independent tight-pair equations, solving, and keeping
/// admissible solutions. Throws SizeBoundExceeded.
std::vector<RationalVector> enumerate_vertices(const FiniteMetricSpace& space, Index max_points = kDefaultVertexBound);

/// Certifies a covering set of pairs as the equality graph of a cell: maximizes
/// t subject to tightness on `edges` and slack >= t elsewhere. Returns the
/// optimizer when t > 0.
std::optional<RationalVector> certify_cell(const FiniteMetricSpace& space, const EqualityGraph& edges);

/// All cells of E(X). Candidate equality graphs are the covering intersections
/// of vertex tight sets; each is certified by certify_cell.
/// Throws SizeBoundExceeded, or std::logic_error on an internal inconsistency.
TightSpanComplex enumerate_cells(const FiniteMetricSpace& space, Index max_points = kDefaultCellBound);

/// Largest cell dimension of E(X).
int tight_span_dimension(const FiniteMetricSpace& space, Index max_points = kDefaultCellBound);

/// Points x, y with f(x) + |f - g| + g(y) = d(x, y) exactly (first in
/// lexicographic order). Throws NotExtremal if f or g is not extremal.
std::pair<Index, Index> attain_xfgy(const FiniteMetricSpace& space, const RationalVector& f, const RationalVector& g);

/// The vertices of E(X) as a finite metric space under the sup distance,
/// labelled v0, v1, ... in vertex order.
FiniteMetricSpace vertex_space(const std::vector<RationalVector>& vertices);

}  // namespace injhull
