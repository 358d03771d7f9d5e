#pragma once

#include "injhull/Family.hpp"
#include "injhull/MetricSpace.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace injhull {

// Functions on Z are vectors indexed by family position, i.e. functions on
// Fiber::points, the subspace Z listed in position order.

/// 2(n+1) distinct points with the pairing {x_i, x_-i} (red pairs); every other
/// pair of Z is blue.
struct Fiber {
  PairedFamily family;
  FiniteMetricSpace points;

  int n() const { return family.n(); }
  int size() const { return family.size(); }
  Rational d(int p, int q) const { return points(p, q); }
  /// Blue pairs (p < q) in lexicographic order.
  std::vector<std::pair<int, int>> blue_pairs() const;
};

/// Throws std::invalid_argument unless the family is injective.
Fiber make_fiber(const FiniteMetricSpace& space, const PairedFamily& family);

struct FiberMaximum {
  Rational s;                                ///< max of M over the fiber
  RationalVector f;                          ///< a maximizer with the fewest tight blue pairs
  std::vector<std::pair<int, int>> tight;    ///< B_f
};

/// M(f) = min over blue pairs of f(x) + f(y) - d(x, y), maximized over functions
/// with f(x_i) + f(x_-i) = d(x_i, x_-i). f is taken in the relative interior of
/// the optimal face, so B_f is contained in B_g for every maximizer g.
FiberMaximum max_M(const Fiber& fiber);
/// The optimum only, without the interior point.
Rational max_M_value(const Fiber& fiber);

/// Minimal red/blue subgraph found by the alternating walk.
struct AlternatingGraph {
  enum class Type { Cycle, LoopsPath };
  Type type = Type::Cycle;
  /// Cycle: the oriented cycle, starting with a red edge.
  std::vector<int> cycle;
  /// LoopsPath: loops start at z and z' with a blue edge (closing edge implied);
  /// path runs from z to z' and starts and ends with a red edge.
  std::vector<int> loop1, loop2, path;
};

const char* type_name(AlternatingGraph::Type type);

/// Throws std::invalid_argument when s <= 0, std::logic_error when a red pair has
/// exactly one endpoint on a tight blue pair.
AlternatingGraph build_alternating_graph(const Fiber& fiber, const FiberMaximum& maximum);

struct PermutationWitness {
  IndexPermutation alpha;
  int k = 0;  ///< indices whose alpha-edge is blue
};

/// alpha advances the cycle or the loops, swaps the ends of blue path edges and
/// maps the rest to the partner. Checks sum d(x_i, x_-i) = sum d(x_i, x_alpha(i)) + k s
/// exactly; throws std::logic_error otherwise.
PermutationWitness extract_permutation(const Fiber& fiber, const AlternatingGraph& graph, const FiberMaximum& maximum);

/// f_i = f + s at x_i, f - s at x_-i, f elsewhere, one per position. Checks that
/// each is extremal on Z and that the sup distances are 2s for partners and s
/// otherwise; throws std::logic_error on failure, std::invalid_argument if s <= 0.
std::vector<RationalVector> build_orthoplex(const Fiber& fiber, const RationalVector& f, const Rational& s);

struct OrthoplexWitness {
  Fiber fiber;
  FiberMaximum maximum;
  AlternatingGraph graph;
  PermutationWitness permutation;
  std::vector<RationalVector> functions;  ///< by position
};

/// Full construction on one fiber; nullopt when s <= 0.
std::optional<OrthoplexWitness> orthoplex_witness(const Fiber& fiber);

struct ScaleResult {
  /// Unset when |X| < 2(n+1).
  std::optional<Rational> s_hat;
  std::optional<PairedFamily> family;       ///< first maximizing fiber
  std::optional<OrthoplexWitness> witness;  ///< set when s_hat > 0
  std::size_t fibers = 0;
};

/// Largest max_M over all 2(n+1)-subsets and pairings. Fibers are ordered by
/// subset, then by pairing (each point paired with a later one, lexicographic);
/// ties go to the first.
ScaleResult best_scale(const FiniteMetricSpace& space, int n, unsigned threads = 1);

/// {"s", "Z", "pairing", "alpha", "k", "type", "functions", ...}; labels are
/// those of the ambient space.
nlohmann::json to_json(const OrthoplexWitness& witness);

}  // namespace injhull
