#pragma once

#include "injhull/Scalar.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace injhull {

/// maximize objective . x
/// subject to eq_lhs x == eq_rhs, geq_lhs x >= geq_rhs,
///            x_j >= 0 for every j with nonnegative[j], other variables free.
template <typename Scalar>
struct LinearProgram {
  std::vector<std::string> variables;
  Vector<Scalar> objective;
  Matrix<Scalar> eq_lhs;
  Vector<Scalar> eq_rhs;
  Matrix<Scalar> geq_lhs;
  Vector<Scalar> geq_rhs;
  std::vector<bool> nonnegative;  ///< empty means all free

  Index num_variables() const { return objective.size(); }

  /// Empty program over `n` free variables with a zero objective.
  static LinearProgram with_variables(Index n) {
    LinearProgram lp;
    lp.objective = Vector<Scalar>::Zero(n);
    lp.eq_lhs.resize(0, n);
    lp.eq_rhs.resize(0);
    lp.geq_lhs.resize(0, n);
    lp.geq_rhs.resize(0);
    for (Index j = 0; j < n; ++j) lp.variables.push_back("x" + std::to_string(j));
    return lp;
  }

  void add_eq(const Vector<Scalar>& row, const Scalar& rhs) { append(eq_lhs, eq_rhs, row, rhs); }
  void add_geq(const Vector<Scalar>& row, const Scalar& rhs) { append(geq_lhs, geq_rhs, row, rhs); }

 private:
  static void append(Matrix<Scalar>& m, Vector<Scalar>& b, const Vector<Scalar>& row, const Scalar& rhs) {
    m.conservativeResize(m.rows() + 1, Eigen::NoChange);
    m.row(m.rows() - 1) = row.transpose();
    b.conservativeResize(b.size() + 1);
    b(b.size() - 1) = rhs;
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <typename Scalar>
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Scalar optimum{0};
  Vector<Scalar> point;
  /// Indices of geq rows holding with equality at `point`.
  std::vector<Index> tight_set;
};

class MalformedProgram : public std::invalid_argument {
 public:
  explicit MalformedProgram(const std::string& what) : std::invalid_argument(what) {}
};

namespace detail {

template <typename Scalar>
void check_program(const LinearProgram<Scalar>& lp) {
  const Index n = lp.num_variables();
  if (lp.eq_lhs.cols() != n || lp.geq_lhs.cols() != n) throw MalformedProgram("constraint width differs from variable count");
  if (lp.eq_lhs.rows() != lp.eq_rhs.size() || lp.geq_lhs.rows() != lp.geq_rhs.size())
    throw MalformedProgram("constraint rows and right-hand sides differ in count");
  if (!lp.nonnegative.empty() && static_cast<Index>(lp.nonnegative.size()) != n)
    throw MalformedProgram("nonnegativity flags differ from variable count");
  if (!lp.variables.empty() && static_cast<Index>(lp.variables.size()) != n)
    throw MalformedProgram("variable names differ from variable count");
}

// Dense two-phase tableau simplex with Bland's rule. Columns: the nonnegative
// part u of every variable, the negative part v of every free variable, one
// surplus per geq row, one artificial per row. The last tableau row holds the
// reduced costs and, in its last cell, minus the objective value.
template <typename Scalar>
class Tableau {
 public:
  explicit Tableau(const LinearProgram<Scalar>& lp) : lp_(lp) {
    n_ = lp.num_variables();
    const Index me = lp.eq_lhs.rows(), mg = lp.geq_lhs.rows();
    m_ = me + mg;
    for (Index j = 0; j < n_; ++j)
      if (lp.nonnegative.empty() || !lp.nonnegative[static_cast<std::size_t>(j)]) free_.push_back(j);
    const Index nv = static_cast<Index>(free_.size());
    surplus0_ = n_ + nv;
    art0_ = surplus0_ + mg;
    cols_ = art0_ + m_;
    t_ = Matrix<Scalar>::Zero(m_ + 1, cols_ + 1);
    basis_.resize(static_cast<std::size_t>(m_));
    for (Index i = 0; i < m_; ++i) {
      const bool eq = i < me;
      const auto row = eq ? lp.eq_lhs.row(i) : lp.geq_lhs.row(i - me);
      Scalar rhs = eq ? lp.eq_rhs(i) : lp.geq_rhs(i - me);
      for (Index j = 0; j < n_; ++j) t_(i, j) = row(j);
      for (Index k = 0; k < nv; ++k) t_(i, n_ + k) = -row(free_[static_cast<std::size_t>(k)]);
      if (!eq) t_(i, surplus0_ + (i - me)) = Scalar(-1);
      t_(i, cols_) = rhs;
      if (rhs < 0) t_.row(i) *= Scalar(-1);
      t_(i, art0_ + i) = Scalar(1);
      basis_[static_cast<std::size_t>(i)] = art0_ + i;
    }
  }

  LpSolution<Scalar> solve() {
    // Phase 1: maximize -(sum of artificials).
    Vector<Scalar> phase1 = Vector<Scalar>::Zero(cols_);
    for (Index i = 0; i < m_; ++i) phase1(art0_ + i) = Scalar(-1);
    load_objective(phase1);
    run(/*allow_artificial=*/true);
    LpSolution<Scalar> out;
    if (-t_(m_, cols_) < 0) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    drive_out_artificials();

    Vector<Scalar> phase2 = Vector<Scalar>::Zero(cols_);
    for (Index j = 0; j < n_; ++j) phase2(j) = lp_.objective(j);
    for (std::size_t k = 0; k < free_.size(); ++k) phase2(n_ + static_cast<Index>(k)) = -lp_.objective(free_[k]);
    load_objective(phase2);
    if (!run(/*allow_artificial=*/false)) {
      out.status = LpStatus::Unbounded;
      return out;
    }
    out.status = LpStatus::Optimal;
    out.optimum = -t_(m_, cols_);
    Vector<Scalar> raw = Vector<Scalar>::Zero(cols_);
    for (Index i = 0; i < m_; ++i) raw(basis_[static_cast<std::size_t>(i)]) = t_(i, cols_);
    out.point = raw.head(n_);
    for (std::size_t k = 0; k < free_.size(); ++k) out.point(free_[k]) -= raw(n_ + static_cast<Index>(k));
    return out;
  }

 private:
  void load_objective(const Vector<Scalar>& c) {
    t_.row(m_).setZero();
    t_.row(m_).head(cols_) = c.transpose();
    for (Index i = 0; i < m_; ++i) {
      const Scalar cb = c(basis_[static_cast<std::size_t>(i)]);
      if (cb != 0) t_.row(m_) -= cb * t_.row(i);
    }
  }

  void pivot(Index r, Index c) {
    const Scalar p = t_(r, c);
    t_.row(r) /= p;
    for (Index i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const Scalar f = t_(i, c);
      if (f != 0) t_.row(i) -= f * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  // Returns false when the objective is unbounded.
  bool run(bool allow_artificial) {
    const Index limit = allow_artificial ? cols_ : art0_;
    while (true) {
      Index enter = -1;
      for (Index j = 0; j < limit; ++j)
        if (t_(m_, j) > 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      Index leave = -1;
      Scalar best_ratio(0);
      for (Index i = 0; i < m_; ++i) {
        if (t_(i, enter) <= 0) continue;
        Scalar ratio = t_(i, cols_) / t_(i, enter);
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void drive_out_artificials() {
    for (Index i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < art0_) continue;
      for (Index j = 0; j < art0_; ++j)
        if (t_(i, j) != 0) {
          pivot(i, j);
          break;
        }
      // otherwise the row is redundant and its artificial stays basic at zero
    }
  }

  const LinearProgram<Scalar>& lp_;
  Index n_ = 0, m_ = 0, surplus0_ = 0, art0_ = 0, cols_ = 0;
  std::vector<Index> free_;
  Matrix<Scalar> t_;
  std::vector<Index> basis_;
};

template <typename Scalar>
std::vector<Index> tight_rows(const LinearProgram<Scalar>& lp, const Vector<Scalar>& x) {
  std::vector<Index> tight;
  const Vector<Scalar> lhs = lp.geq_lhs * x;
  for (Index i = 0; i < lhs.size(); ++i)
    if (lhs(i) == lp.geq_rhs(i)) tight.push_back(i);
  return tight;
}

}  // namespace detail

/// Exact optimum of `lp`. The returned point satisfies every constraint exactly.
/// Throws MalformedProgram on inconsistent dimensions.
template <typename Scalar>
LpSolution<Scalar> solve(const LinearProgram<Scalar>& lp) {
  detail::check_program(lp);
  auto out = detail::Tableau<Scalar>(lp).solve();
  if (out.status == LpStatus::Optimal) out.tight_set = detail::tight_rows(lp, out.point);
  return out;
}

/// A point of the optimal face at which exactly the geq rows that are tight on
/// the whole face are tight. For each row not yet seen slack, its slack
/// (capped at 1) is maximized over the face; the maximizers found are averaged
/// with the given optimum. Throws std::invalid_argument if `optimum` is not an
/// optimal solution of `lp`.
template <typename Scalar>
LpSolution<Scalar> relative_interior_point(const LinearProgram<Scalar>& lp, const LpSolution<Scalar>& optimum) {
  if (optimum.status != LpStatus::Optimal) throw std::invalid_argument("relative_interior_point: no optimal face");
  detail::check_program(lp);
  const Index m = lp.geq_lhs.rows();

  LinearProgram<Scalar> face = lp;
  face.add_eq(lp.objective, optimum.optimum);

  std::vector<Vector<Scalar>> points{optimum.point};
  std::vector<bool> slack_seen(static_cast<std::size_t>(m), false);
  auto mark = [&](const Vector<Scalar>& x) {
    const Vector<Scalar> lhs = lp.geq_lhs * x;
    for (Index i = 0; i < m; ++i)
      if (lhs(i) > lp.geq_rhs(i)) slack_seen[static_cast<std::size_t>(i)] = true;
  };
  mark(optimum.point);
  for (Index i = 0; i < m; ++i) {
    if (slack_seen[static_cast<std::size_t>(i)]) continue;
    LinearProgram<Scalar> probe = face;
    probe.objective = lp.geq_lhs.row(i).transpose();
    Vector<Scalar> cap = -lp.geq_lhs.row(i).transpose();
    probe.add_geq(cap, Scalar(-1) - lp.geq_rhs(i));  // slack <= 1
    auto r = solve(probe);
    if (r.status != LpStatus::Optimal) throw std::invalid_argument("relative_interior_point: optimal face is empty");
    if (r.optimum - lp.geq_rhs(i) > 0) {
      mark(r.point);
      points.push_back(std::move(r.point));
    }
  }
  Vector<Scalar> sum = Vector<Scalar>::Zero(lp.num_variables());
  for (const auto& p : points) sum += p;
  LpSolution<Scalar> out;
  out.status = LpStatus::Optimal;
  out.point = sum / Scalar(static_cast<long>(points.size()));
  out.optimum = lp.objective.dot(out.point);
  out.tight_set = detail::tight_rows(lp, out.point);
  return out;
}

}  // namespace injhull
