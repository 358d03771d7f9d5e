#pragma once

#include "injhull/Family.hpp"
#include "injhull/MetricSpace.hpp"

#include <array>
#include <cstddef>
#include <optional>

namespace injhull {

/// How max_score_excluding_minus_id is evaluated.
///  Brute:      every permutation of I_n in lexicographic order of its position map.
///  Assignment: max-weight assignment, once per forbidden arc (p, -p); the
///              lexicographically first maximizer is then recovered by fixing
///              images position by position.
/// Both engines return the same value and the same permutation.
enum class ScoreEngine { Brute, Assignment };

/// Which families min_delta ranges over: arbitrary (points may repeat) or
/// injective ones only.
enum class FamilyMode { Full, Distinct };

/// S(alpha) = sum over i in I of d(x_i, x_alpha(i)). Throws std::invalid_argument
/// when alpha and the family live on different index sets.
Rational permutation_score(const FiniteMetricSpace& space, const PairedFamily& family, const IndexPermutation& alpha);

/// sum over i in I of d(x_i, x_-i).
Rational pairing_sum(const FiniteMetricSpace& space, const PairedFamily& family);

struct ScoreResult {
  Rational score;
  IndexPermutation alpha;
};

/// Largest S(alpha) over alpha != -id; ties go to the lexicographically
/// smallest position map.
ScoreResult max_score_excluding_minus_id(const FiniteMetricSpace& space, const PairedFamily& family,
                                         ScoreEngine engine = ScoreEngine::Assignment);

/// Largest S(alpha) over fixed-point-free alpha != -id (brute force). nullopt for
/// n = 0, where no such permutation exists.
std::optional<ScoreResult> max_score_fixed_point_free(const FiniteMetricSpace& space, const PairedFamily& family);

struct DefectReport {
  PairedFamily family;
  Rational lhs;
  IndexPermutation best_alpha;
  Rational best_score;
  Rational defect;  ///< max(0, (lhs - best_score) / 2)
};

DefectReport family_defect(const FiniteMetricSpace& space, const PairedFamily& family,
                           ScoreEngine engine = ScoreEngine::Assignment);

struct DeltaOptions {
  FamilyMode mode = FamilyMode::Full;
  ScoreEngine engine = ScoreEngine::Assignment;
  unsigned threads = 1;
};

struct DeltaResult {
  Rational delta;
  /// Certifying report for a family attaining delta; empty only when no family
  /// exists (distinct mode with fewer than 2(n+1) points).
  std::optional<DefectReport> witness;
  std::size_t families = 0;
};

/// Least delta such that every family satisfies the (n, delta) inequality: the
/// largest family defect. Families are enumerated up to swapping x_i <-> x_-i
/// and reordering the n+1 pairs; ties go to the first family in that order,
/// independently of the thread count.
DeltaResult min_delta(const FiniteMetricSpace& space, int n, const DeltaOptions& options = {});

/// Number of families min_delta would examine.
std::size_t family_count(Index points, int n, FamilyMode mode);

struct GromovResult {
  Rational delta;
  std::array<Index, 4> quadruple{};  ///< (x, x', y, y') attaining delta
};

/// Four-point delta: half the largest excess of d(x,x') + d(y,y') over the
/// larger cross sum, over all quadruples.
GromovResult gromov_delta(const FiniteMetricSpace& space);

struct HyperbolicityCheck {
  bool holds;
  Rational min_delta;
  std::optional<DefectReport> violation;  ///< set when !holds
};

HyperbolicityCheck is_n_delta_hyperbolic(const FiniteMetricSpace& space, int n, const Rational& delta,
                                         const DeltaOptions& options = {});

}  // namespace injhull
