#pragma once

#include "injhull/Scalar.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace injhull {

/// A violated metric axiom, identified by point indices.
struct MetricViolation {
  enum class Kind { NonzeroDiagonal, Asymmetry, NonPositive, Triangle };
  Kind kind;
  Index i = 0;
  Index j = 0;
  Index k = 0;  // intermediate point, Triangle only
  std::string message;
};

std::string_view kind_name(MetricViolation::Kind kind);

struct MetricValidation;

/// Finite point set with an exact distance matrix. Immutable; construction
/// validates the metric axioms and throws std::invalid_argument on failure.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::vector<std::string> labels, RationalMatrix distances);

  Index size() const { return static_cast<Index>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Index i) const { return labels_[static_cast<std::size_t>(i)]; }
  const RationalMatrix& distances() const { return distances_; }
  const Rational& operator()(Index i, Index j) const { return distances_(i, j); }

  /// Position of a label, or nullopt.
  std::optional<Index> find(std::string_view label) const;
  /// Position of a label; throws std::out_of_range for unknown labels.
  Index index_of(std::string_view label) const;

  Rational diameter() const;

  friend bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    return a.labels_ == b.labels_ && a.distances_.rows() == b.distances_.rows() &&
           a.distances_ == b.distances_;
  }

 private:
  struct Trusted {};
  FiniteMetricSpace(Trusted, std::vector<std::string> labels, RationalMatrix distances)
      : labels_(std::move(labels)), distances_(std::move(distances)) {}
  friend MetricValidation validate_metric(std::vector<std::string>, RationalMatrix);
  friend FiniteMetricSpace submetric(const FiniteMetricSpace&, std::span<const Index>);
  friend FiniteMetricSpace linf_product(const FiniteMetricSpace&, const FiniteMetricSpace&);

  std::vector<std::string> labels_;
  RationalMatrix distances_;
};

struct MetricValidation {
  std::optional<FiniteMetricSpace> space;
  std::vector<MetricViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every metric axiom on a square matrix and reports every violated
/// instance. Throws std::invalid_argument on a non-square matrix, a label
/// count mismatch or duplicate labels.
MetricValidation validate_metric(std::vector<std::string> labels, RationalMatrix distances);

/// Cartesian product with the coordinatewise maximum distance. Labels are "(a,b)".
FiniteMetricSpace linf_product(const FiniteMetricSpace& a, const FiniteMetricSpace& b);

/// Restriction to the given points, in the given order. Throws on an empty or
/// repeated selection.
FiniteMetricSpace submetric(const FiniteMetricSpace& space, std::span<const Index> points);
/// Same, by label. Throws std::out_of_range for unknown labels.
FiniteMetricSpace submetric(const FiniteMetricSpace& space, const std::vector<std::string>& labels);

/// Space built from an arbitrary symmetric matrix of distances, labelled by
/// `prefix` + position. Throws when the matrix is not a metric.
FiniteMetricSpace make_space(const RationalMatrix& distances, const std::string& prefix = "p");

}  // namespace injhull
