#include "injhull/Generators.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace injhull {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

namespace {

struct WeightedEdge {
  int u, v;
  Rational w;
};

// All-pairs shortest paths on a small weighted graph; nullopt entries are +inf.
std::vector<std::vector<std::optional<Rational>>> shortest_paths(int nodes, const std::vector<WeightedEdge>& edges) {
  std::vector<std::vector<std::optional<Rational>>> d(static_cast<std::size_t>(nodes),
                                                       std::vector<std::optional<Rational>>(static_cast<std::size_t>(nodes)));
  for (int i = 0; i < nodes; ++i) d[i][i] = Rational(0);
  for (const auto& e : edges) {
    if (!d[e.u][e.v] || e.w < *d[e.u][e.v]) d[e.u][e.v] = d[e.v][e.u] = e.w;
  }
  for (int k = 0; k < nodes; ++k)
    for (int i = 0; i < nodes; ++i) {
      if (!d[i][k]) continue;
      for (int j = 0; j < nodes; ++j) {
        if (!d[k][j]) continue;
        Rational via = *d[i][k] + *d[k][j];
        if (!d[i][j] || via < *d[i][j]) d[i][j] = via;
      }
    }
  return d;
}

std::vector<std::vector<int>> lattice(int dim, int side) {
  if (dim < 1) throw std::invalid_argument("grid: dim must be >= 1");
  if (side < 1) throw std::invalid_argument("grid: side must be >= 1");
  std::vector<std::vector<int>> pts{{}};
  for (int d = 0; d < dim; ++d) {
    std::vector<std::vector<int>> next;
    for (const auto& p : pts)
      for (int c = 0; c < side; ++c) {
        auto q = p;
        q.push_back(c);
        next.push_back(std::move(q));
      }
    pts = std::move(next);
  }
  return pts;
}

std::string coord_label(const std::vector<int>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "_" : "") + std::to_string(p[i]);
  return s;
}

void check_scale(const Rational& scale) {
  if (scale <= 0) throw std::invalid_argument("grid: scale must be positive");
}

}  // namespace

FiniteMetricSpace random_tree(int leaves, std::uint64_t seed, int max_weight) {
  if (leaves < 2) throw std::invalid_argument("random_tree: need at least 2 leaves");
  if (max_weight < 1) throw std::invalid_argument("random_tree: max_weight must be >= 1");
  Rng rng(seed);
  auto weight = [&] { return Rational(Integer(rng.uniform(1, max_weight)), Integer(rng.uniform(1, 2))); };

  // Nodes 0..leaves-1 are leaves; internal nodes are appended.
  std::vector<WeightedEdge> edges{{0, 1, weight()}};
  std::vector<int> internal;
  int next_node = leaves;
  for (int leaf = 2; leaf < leaves; ++leaf) {
    if (!internal.empty() && rng.percent(30)) {
      int hub = internal[rng.below(internal.size())];
      edges.push_back({hub, leaf, weight()});
      continue;
    }
    auto pick = static_cast<std::size_t>(rng.below(edges.size()));
    WeightedEdge old = edges[pick];
    int mid = next_node++;
    internal.push_back(mid);
    edges[pick] = {old.u, mid, weight()};
    edges.push_back({mid, old.v, weight()});
    edges.push_back({mid, leaf, weight()});
  }
  auto d = shortest_paths(next_node, edges);
  RationalMatrix m(leaves, leaves);
  std::vector<std::string> labels;
  for (int i = 0; i < leaves; ++i) {
    labels.push_back("t" + std::to_string(i));
    for (int j = 0; j < leaves; ++j) m(i, j) = *d[i][j];
  }
  return FiniteMetricSpace(std::move(labels), std::move(m));
}

FiniteMetricSpace random_graph(int points, std::uint64_t seed, int density_percent, int max_weight) {
  if (points < 2) throw std::invalid_argument("random_graph: need at least 2 points");
  if (max_weight < 1) throw std::invalid_argument("random_graph: max_weight must be >= 1");
  if (density_percent < 0 || density_percent > 100) throw std::invalid_argument("random_graph: density must be in [0,100]");
  Rng rng(seed);
  std::vector<WeightedEdge> edges;
  std::vector<std::vector<bool>> present(static_cast<std::size_t>(points), std::vector<bool>(static_cast<std::size_t>(points)));
  for (int i = 1; i < points; ++i) {
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
    edges.push_back({i, j, Rational(rng.uniform(1, max_weight))});
    present[i][j] = present[j][i] = true;
  }
  for (int i = 0; i < points; ++i)
    for (int j = i + 1; j < points; ++j)
      if (!present[i][j] && rng.percent(density_percent)) edges.push_back({i, j, Rational(rng.uniform(1, max_weight))});
  auto d = shortest_paths(points, edges);
  RationalMatrix m(points, points);
  std::vector<std::string> labels;
  for (int i = 0; i < points; ++i) {
    labels.push_back("g" + std::to_string(i));
    for (int j = 0; j < points; ++j) m(i, j) = *d[i][j];
  }
  return FiniteMetricSpace(std::move(labels), std::move(m));
}

FiniteMetricSpace linf_grid(int dim, int side, const Rational& scale) {
  check_scale(scale);
  auto pts = lattice(dim, side);
  const auto n = static_cast<Index>(pts.size());
  RationalMatrix m(n, n);
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i) {
    labels.push_back(coord_label(pts[i]));
    for (Index j = 0; j < n; ++j) {
      int best = 0;
      for (int c = 0; c < dim; ++c) best = std::max(best, std::abs(pts[i][c] - pts[j][c]));
      m(i, j) = scale * best;
    }
  }
  return FiniteMetricSpace(std::move(labels), std::move(m));
}

FiniteMetricSpace l2_grid(int dim, int side, const Rational& scale, std::int64_t max_denominator) {
  check_scale(scale);
  auto pts = lattice(dim, side);
  const auto n = static_cast<Index>(pts.size());
  RationalMatrix m(n, n);
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i) {
    labels.push_back(coord_label(pts[i]));
    for (Index j = 0; j < n; ++j) {
      int g = 0;
      for (int c = 0; c < dim; ++c) g = std::gcd(g, std::abs(pts[i][c] - pts[j][c]));
      if (g == 0) {
        m(i, j) = 0;
        continue;
      }
      long long norm2 = 0;
      for (int c = 0; c < dim; ++c) {
        long long u = (pts[i][c] - pts[j][c]) / g;
        norm2 += u * u;
      }
      auto root = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(norm2))));
      Rational unit = root * root == norm2 ? Rational(root)
                                           : rationalize(std::sqrt(static_cast<double>(norm2)), max_denominator);
      m(i, j) = scale * g * unit;
    }
  }
  return FiniteMetricSpace(std::move(labels), std::move(m));
}

FiniteMetricSpace cycle(int m) {
  if (m < 2) throw std::invalid_argument("cycle: need m >= 2");
  RationalMatrix d(m, m);
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) {
    labels.push_back("c" + std::to_string(i));
    for (int j = 0; j < m; ++j) {
      int k = std::abs(i - j);
      d(i, j) = std::min(k, m - k);
    }
  }
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

GeneratorKind parse_generator_kind(std::string_view name) {
  if (name == "random_tree" || name == "tree") return GeneratorKind::RandomTree;
  if (name == "random_graph" || name == "graph") return GeneratorKind::RandomGraph;
  if (name == "linf_grid") return GeneratorKind::LinfGrid;
  if (name == "l2_grid") return GeneratorKind::L2Grid;
  if (name == "cycle") return GeneratorKind::Cycle;
  throw std::invalid_argument("unknown generator kind '" + std::string(name) + "'");
}

std::string_view generator_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::RandomTree: return "random_tree";
    case GeneratorKind::RandomGraph: return "random_graph";
    case GeneratorKind::LinfGrid: return "linf_grid";
    case GeneratorKind::L2Grid: return "l2_grid";
    case GeneratorKind::Cycle: return "cycle";
  }
  return "unknown";
}

FiniteMetricSpace generate(GeneratorKind kind, const GeneratorParams& p, std::uint64_t seed) {
  switch (kind) {
    case GeneratorKind::RandomTree: return random_tree(p.size, seed, p.max_weight);
    case GeneratorKind::RandomGraph: return random_graph(p.size, seed, p.density_percent, p.max_weight);
    case GeneratorKind::LinfGrid: return linf_grid(p.dim, p.side, p.scale);
    case GeneratorKind::L2Grid: return l2_grid(p.dim, p.side, p.scale, p.max_denominator);
    case GeneratorKind::Cycle: return cycle(p.size);
  }
  throw std::invalid_argument("unknown generator kind");
}

}  // namespace injhull
