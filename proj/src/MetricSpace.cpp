#include "injhull/MetricSpace.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace injhull {

std::string_view kind_name(MetricViolation::Kind kind) {
  switch (kind) {
    case MetricViolation::Kind::NonzeroDiagonal: return "nonzero_diagonal";
    case MetricViolation::Kind::Asymmetry: return "asymmetry";
    case MetricViolation::Kind::NonPositive: return "non_positive";
    case MetricViolation::Kind::Triangle: return "triangle";
  }
  return "unknown";
}

MetricValidation validate_metric(std::vector<std::string> labels, RationalMatrix distances) {
  if (distances.rows() != distances.cols())
    throw std::invalid_argument("distance matrix is not square");
  if (static_cast<Index>(labels.size()) != distances.rows())
    throw std::invalid_argument("label count does not match matrix size");
  {
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) throw std::invalid_argument("duplicate point labels");
  }

  const Index n = distances.rows();
  auto name = [&](Index i) { return labels[static_cast<std::size_t>(i)]; };
  MetricValidation result;
  for (Index i = 0; i < n; ++i) {
    if (distances(i, i) != 0)
      result.violations.push_back({MetricViolation::Kind::NonzeroDiagonal, i, i, 0,
                                   "d(" + name(i) + "," + name(i) + ") = " + to_string(distances(i, i))});
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (distances(i, j) != distances(j, i))
        result.violations.push_back({MetricViolation::Kind::Asymmetry, i, j, 0,
                                     "d(" + name(i) + "," + name(j) + ") = " + to_string(distances(i, j)) +
                                         " but d(" + name(j) + "," + name(i) + ") = " + to_string(distances(j, i))});
      if (distances(i, j) <= 0 || distances(j, i) <= 0)
        result.violations.push_back({MetricViolation::Kind::NonPositive, i, j, 0,
                                     "d(" + name(i) + "," + name(j) + ") is not positive"});
    }
  }
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      for (Index k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (distances(i, j) > distances(i, k) + distances(k, j))
          result.violations.push_back({MetricViolation::Kind::Triangle, i, j, k,
                                       "d(" + name(i) + "," + name(j) + ") = " + to_string(distances(i, j)) + " > " +
                                           to_string(distances(i, k)) + " + " + to_string(distances(k, j)) +
                                           " via " + name(k)});
      }
    }
  if (result.ok()) result.space = FiniteMetricSpace(FiniteMetricSpace::Trusted{}, std::move(labels), std::move(distances));
  return result;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, RationalMatrix distances) {
  auto checked = validate_metric(std::move(labels), std::move(distances));
  if (!checked.ok()) throw std::invalid_argument("not a metric: " + checked.violations.front().message);
  *this = std::move(*checked.space);
}

std::optional<Index> FiniteMetricSpace::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Index>(it - labels_.begin());
}

Index FiniteMetricSpace::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw std::out_of_range("unknown point label '" + std::string(label) + "'");
}

Rational FiniteMetricSpace::diameter() const {
  if (size() == 0) return Rational(0);
  return distances_.maxCoeff();
}

FiniteMetricSpace linf_product(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
  const Index na = a.size(), nb = b.size();
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(na * nb));
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < nb; ++j) labels.push_back("(" + a.label(i) + "," + b.label(j) + ")");
  RationalMatrix d(na * nb, na * nb);
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < nb; ++j)
      for (Index k = 0; k < na; ++k)
        for (Index l = 0; l < nb; ++l) d(i * nb + j, k * nb + l) = std::max(a(i, k), b(j, l));
  auto checked = validate_metric(std::move(labels), std::move(d));
  if (!checked.ok()) throw std::invalid_argument("product labels collide: " + checked.violations.front().message);
  return std::move(*checked.space);
}

FiniteMetricSpace submetric(const FiniteMetricSpace& space, std::span<const Index> points) {
  if (points.empty()) throw std::invalid_argument("submetric: empty point selection");
  std::set<Index> seen;
  std::vector<std::string> labels;
  for (Index p : points) {
    if (p < 0 || p >= space.size()) throw std::out_of_range("submetric: point index out of range");
    if (!seen.insert(p).second) throw std::invalid_argument("submetric: repeated point " + space.label(p));
    labels.push_back(space.label(p));
  }
  const auto m = static_cast<Index>(points.size());
  RationalMatrix d(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) d(i, j) = space(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
  return FiniteMetricSpace(FiniteMetricSpace::Trusted{}, std::move(labels), std::move(d));
}

FiniteMetricSpace submetric(const FiniteMetricSpace& space, const std::vector<std::string>& labels) {
  std::vector<Index> idx;
  idx.reserve(labels.size());
  for (const auto& l : labels) idx.push_back(space.index_of(l));
  return submetric(space, std::span<const Index>(idx));
}

FiniteMetricSpace make_space(const RationalMatrix& distances, const std::string& prefix) {
  std::vector<std::string> labels;
  for (Index i = 0; i < distances.rows(); ++i) labels.push_back(prefix + std::to_string(i));
  return FiniteMetricSpace(std::move(labels), distances);
}

}  // namespace injhull
