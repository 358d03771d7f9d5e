#pragma once

#include "injhull/Scalar.hpp"

#include <optional>
#include <vector>

namespace injhull {

template <typename Scalar>
struct Assignment {
  Scalar value;
  std::vector<int> column_of_row;
};

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Maximum-weight perfect matching on the complete bipartite graph rows x
/// columns of a square weight matrix (Kuhn-Munkres with potentials, O(n^3)).
/// Arcs with allowed(i, j) == false are excluded outright rather than
/// penalised, so the result stays exact for any ordered field or integer type.
/// Returns nullopt when the allowed arcs admit no perfect matching.
template <typename Scalar>
std::optional<Assignment<Scalar>> max_weight_assignment(const Matrix<Scalar>& weight,
                                                        const BoolMatrix* allowed = nullptr) {
  const Index n = weight.rows();
  if (n == 0) return Assignment<Scalar>{Scalar(0), {}};
  auto ok = [&](Index i, Index j) { return allowed == nullptr || (*allowed)(i, j); };

  // Minimise cost = -weight; 1-based rows/columns, column 0 is the virtual root.
  std::vector<Scalar> u(static_cast<std::size_t>(n + 1), Scalar(0)), v(static_cast<std::size_t>(n + 1), Scalar(0));
  std::vector<Index> row_of(static_cast<std::size_t>(n + 1), 0), way(static_cast<std::size_t>(n + 1), 0);
  for (Index i = 1; i <= n; ++i) {
    row_of[0] = i;
    Index j0 = 0;
    std::vector<std::optional<Scalar>> minv(static_cast<std::size_t>(n + 1));
    std::vector<bool> used(static_cast<std::size_t>(n + 1), false);
    do {
      used[static_cast<std::size_t>(j0)] = true;
      const Index i0 = row_of[static_cast<std::size_t>(j0)];
      std::optional<Scalar> delta;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        if (used[uj]) continue;
        if (ok(i0 - 1, j - 1)) {
          Scalar cur = -weight(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[uj];
          if (!minv[uj] || cur < *minv[uj]) {
            minv[uj] = cur;
            way[uj] = j0;
          }
        }
        if (minv[uj] && (!delta || *minv[uj] < *delta)) {
          delta = minv[uj];
          j1 = j;
        }
      }
      if (!delta) return std::nullopt;
      for (Index j = 0; j <= n; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        if (used[uj]) {
          u[static_cast<std::size_t>(row_of[uj])] += *delta;
          v[uj] -= *delta;
        } else if (minv[uj]) {
          *minv[uj] -= *delta;
        }
      }
      j0 = j1;
    } while (row_of[static_cast<std::size_t>(j0)] != 0);
    do {
      const Index j1 = way[static_cast<std::size_t>(j0)];
      row_of[static_cast<std::size_t>(j0)] = row_of[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }

  Assignment<Scalar> result{Scalar(0), std::vector<int>(static_cast<std::size_t>(n))};
  for (Index j = 1; j <= n; ++j) {
    const Index i = row_of[static_cast<std::size_t>(j)] - 1;
    result.column_of_row[static_cast<std::size_t>(i)] = static_cast<int>(j - 1);
    result.value += weight(i, j - 1);
  }
  return result;
}

}  // namespace injhull
