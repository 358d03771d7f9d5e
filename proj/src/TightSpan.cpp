#include "injhull/TightSpan.hpp"

#include "injhull/ExactLP.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace injhull {

namespace {

void check_size(const FiniteMetricSpace& space, const RationalVector& f) {
  if (f.size() != space.size()) throw std::invalid_argument("function and space differ in size");
}

struct VectorLess {
  bool operator()(const RationalVector& a, const RationalVector& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

// Pairs {x, y}, x <= y, numbered lexicographically.
struct PairIndex {
  std::vector<std::pair<Index, Index>> pairs;
  explicit PairIndex(Index n) {
    for (Index x = 0; x < n; ++x)
      for (Index y = x; y < n; ++y) pairs.emplace_back(x, y);
  }
  std::size_t size() const { return pairs.size(); }
};

using PairMask = std::uint64_t;

PairMask mask_of(const PairIndex& index, const EqualityGraph& g) {
  PairMask m = 0;
  for (std::size_t k = 0; k < index.size(); ++k)
    if (g.has_edge(index.pairs[k].first, index.pairs[k].second)) m |= PairMask(1) << k;
  return m;
}

EqualityGraph graph_of(const PairIndex& index, Index points, PairMask m) {
  EqualityGraph g;
  g.points = points;
  for (std::size_t k = 0; k < index.size(); ++k)
    if (m >> k & 1) g.edges.push_back(index.pairs[k]);
  return g;
}

bool covering_mask(const PairIndex& index, Index points, PairMask m) {
  std::vector<bool> hit(static_cast<std::size_t>(points));
  for (std::size_t k = 0; k < index.size(); ++k)
    if (m >> k & 1) hit[static_cast<std::size_t>(index.pairs[k].first)] = hit[static_cast<std::size_t>(index.pairs[k].second)] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

void check_bound(const FiniteMetricSpace& space, Index max_points, const char* what) {
  const Index limit = std::min(max_points, kMaxEnumerablePoints);
  if (space.size() > limit)
    throw SizeBoundExceeded(std::string(what) + ": " + std::to_string(space.size()) + " points exceeds the bound of " +
                            std::to_string(limit));
}

}  // namespace

bool is_admissible(const FiniteMetricSpace& space, const RationalVector& f) {
  check_size(space, f);
  for (Index x = 0; x < space.size(); ++x)
    for (Index y = x; y < space.size(); ++y)
      if (f(x) + f(y) < space(x, y)) return false;
  return true;
}

bool is_extremal(const FiniteMetricSpace& space, const RationalVector& f) {
  if (!is_admissible(space, f)) return false;
  for (Index x = 0; x < space.size(); ++x) {
    bool tight = false;
    for (Index z = 0; z < space.size() && !tight; ++z) tight = f(x) + f(z) == space(x, z);
    if (!tight) return false;
  }
  return true;
}

RationalVector star(const FiniteMetricSpace& space, const RationalVector& f) {
  check_size(space, f);
  RationalVector out(space.size());
  for (Index x = 0; x < space.size(); ++x) {
    Rational best = space(x, 0) - f(0);
    for (Index z = 1; z < space.size(); ++z) best = std::max(best, Rational(space(x, z) - f(z)));
    out(x) = best;
  }
  return out;
}

RationalVector q_map(const FiniteMetricSpace& space, const RationalVector& f) {
  if (!is_admissible(space, f)) throw NotAdmissible("q_map: function is not admissible");
  return (f + star(space, f)) / Rational(2);
}

RationalVector extremal_below(const FiniteMetricSpace& space, const RationalVector& f, std::span<const Index> order) {
  if (!is_admissible(space, f)) throw NotAdmissible("extremal_below: function is not admissible");
  std::vector<Index> sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  bool permutation = static_cast<Index>(sorted.size()) == space.size();
  for (Index k = 0; permutation && k < space.size(); ++k) permutation = sorted[static_cast<std::size_t>(k)] == k;
  if (!permutation) throw std::invalid_argument("extremal_below: order is not a permutation of the points");

  RationalVector g = f;
  for (Index x : order) {
    Rational v(0);
    for (Index z = 0; z < space.size(); ++z)
      if (z != x) v = std::max(v, Rational(space(x, z) - g(z)));
    g(x) = v;
  }
  return g;
}

RationalVector extremal_below(const FiniteMetricSpace& space, const RationalVector& f) {
  std::vector<Index> order(static_cast<std::size_t>(space.size()));
  std::iota(order.begin(), order.end(), Index(0));
  return extremal_below(space, f, order);
}

std::vector<RationalVector> canonical_embed(const FiniteMetricSpace& space) {
  std::vector<RationalVector> out;
  for (Index y = 0; y < space.size(); ++y) out.push_back(space.distances().col(y));
  return out;
}

Rational sup_distance(const RationalVector& f, const RationalVector& g) {
  if (f.size() != g.size()) throw std::invalid_argument("sup_distance: functions on different spaces");
  Rational best(0);
  for (Index x = 0; x < f.size(); ++x) best = std::max(best, abs(Rational(f(x) - g(x))));
  return best;
}

bool EqualityGraph::has_edge(Index x, Index y) const {
  if (x > y) std::swap(x, y);
  return std::find(edges.begin(), edges.end(), std::pair<Index, Index>(x, y)) != edges.end();
}

bool EqualityGraph::covering() const {
  std::vector<bool> hit(static_cast<std::size_t>(points));
  for (auto [x, y] : edges) hit[static_cast<std::size_t>(x)] = hit[static_cast<std::size_t>(y)] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::vector<std::vector<Index>> EqualityGraph::components() const {
  std::vector<Index> root(static_cast<std::size_t>(points));
  std::iota(root.begin(), root.end(), Index(0));
  auto find = [&](Index x) {
    while (root[static_cast<std::size_t>(x)] != x) x = root[static_cast<std::size_t>(x)];
    return x;
  };
  for (auto [x, y] : edges) {
    Index a = find(x), b = find(y);
    if (a != b) root[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::map<Index, std::vector<Index>> groups;
  for (Index x = 0; x < points; ++x) groups[find(x)].push_back(x);
  std::vector<std::vector<Index>> out;
  for (auto& [r, members] : groups) out.push_back(std::move(members));
  return out;
}

EqualityGraph tight_pairs(const FiniteMetricSpace& space, const RationalVector& f) {
  check_size(space, f);
  EqualityGraph g;
  g.points = space.size();
  for (Index x = 0; x < space.size(); ++x)
    for (Index y = x; y < space.size(); ++y)
      if (f(x) + f(y) == space(x, y)) g.edges.emplace_back(x, y);
  return g;
}

EqualityGraph equality_graph(const FiniteMetricSpace& space, const RationalVector& f) {
  if (!is_extremal(space, f)) throw NotExtremal("equality_graph: function is not extremal");
  return tight_pairs(space, f);
}

int cell_dimension(const EqualityGraph& graph) {
  if (!graph.covering()) throw std::invalid_argument("cell_dimension: equality graph does not cover every point");
  // Two-colour each component; a loop or a same-colour edge rules it out.
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(graph.points));
  std::vector<bool> loop(static_cast<std::size_t>(graph.points));
  for (auto [x, y] : graph.edges) {
    if (x == y) {
      loop[static_cast<std::size_t>(x)] = true;
      continue;
    }
    adj[static_cast<std::size_t>(x)].push_back(y);
    adj[static_cast<std::size_t>(y)].push_back(x);
  }
  std::vector<int> colour(static_cast<std::size_t>(graph.points), -1);
  int bipartite = 0;
  for (Index s = 0; s < graph.points; ++s) {
    if (colour[static_cast<std::size_t>(s)] >= 0) continue;
    bool ok = true;
    std::deque<Index> queue{s};
    colour[static_cast<std::size_t>(s)] = 0;
    while (!queue.empty()) {
      Index x = queue.front();
      queue.pop_front();
      if (loop[static_cast<std::size_t>(x)]) ok = false;
      for (Index y : adj[static_cast<std::size_t>(x)]) {
        auto& cy = colour[static_cast<std::size_t>(y)];
        if (cy < 0) {
          cy = 1 - colour[static_cast<std::size_t>(x)];
          queue.push_back(y);
        } else if (cy == colour[static_cast<std::size_t>(x)]) {
          ok = false;
        }
      }
    }
    bipartite += ok;
  }
  return bipartite;
}

std::vector<RationalVector> enumerate_vertices(const FiniteMetricSpace& space, Index max_points) {
  check_bound(space, max_points, "enumerate_vertices");
  const Index n = space.size();
  using Mask = std::uint32_t;
  const Mask all = (Mask(1) << n) - 1;
  auto bit = [](Index x) { return Mask(1) << x; };

  // Whether every component of the tight graph restricted to `part` holds a loop
  // or an odd cycle.
  auto non_bipartite = [&](const std::vector<Mask>& adj, Mask loops, Mask part) {
    std::vector<int> colour(static_cast<std::size_t>(n), -1);
    for (Index s = 0; s < n; ++s) {
      if (!(part & bit(s)) || colour[static_cast<std::size_t>(s)] >= 0) continue;
      bool odd = false;
      std::deque<Index> queue{s};
      colour[static_cast<std::size_t>(s)] = 0;
      while (!queue.empty()) {
        Index x = queue.front();
        queue.pop_front();
        if (loops & bit(x)) odd = true;
        for (Index y = 0; y < n; ++y) {
          if (!(adj[static_cast<std::size_t>(x)] & part & bit(y))) continue;
          auto& cy = colour[static_cast<std::size_t>(y)];
          if (cy < 0) {
            cy = 1 - colour[static_cast<std::size_t>(x)];
            queue.push_back(y);
          } else if (cy == colour[static_cast<std::size_t>(x)]) {
            odd = true;
          }
        }
      }
      if (!odd) return false;
    }
    return true;
  };

  // Bounded edges of the complex leave a vertex f along e = +1 on P, -1 on M and
  // 0 elsewhere, where P and M are the two colour classes of the single bipartite
  // component of the tight pairs that stay tight. Walking these edges from d_0
  // reaches every vertex, since the bounded complex is connected.
  std::set<RationalVector, VectorLess> found;
  std::deque<RationalVector> queue;
  found.insert(space.distances().col(0));
  queue.push_back(space.distances().col(0));
  while (!queue.empty()) {
    RationalVector f = std::move(queue.front());
    queue.pop_front();
    std::vector<Mask> adj(static_cast<std::size_t>(n), 0);
    Mask loops = 0;
    for (Index x = 0; x < n; ++x) {
      if (2 * f(x) == 0) loops |= bit(x);
      for (Index y = x + 1; y < n; ++y)
        if (f(x) + f(y) == space(x, y)) {
          adj[static_cast<std::size_t>(x)] |= bit(y);
          adj[static_cast<std::size_t>(y)] |= bit(x);
        }
    }
    std::vector<signed char> outside_ok(std::size_t(1) << n, -1);
    for (Mask moving = 1; moving <= all; ++moving) {
      const Mask rest = all & ~moving;
      auto& ok = outside_ok[rest];
      if (ok < 0) ok = non_bipartite(adj, loops, rest);
      if (!ok) continue;
      for (Mask plus = (moving - 1) & moving; plus != 0; plus = (plus - 1) & moving) {
        const Mask minus = moving & ~plus;
        // A tight pair losing value would become infeasible.
        if (minus & loops) continue;
        bool feasible = true;
        for (Index x = 0; x < n && feasible; ++x)
          if ((minus & bit(x)) && (adj[static_cast<std::size_t>(x)] & ~plus)) feasible = false;
        if (!feasible) continue;
        // The pairs joining P and M must connect P and M.
        Mask reached = moving & (~moving + 1), frontier = reached;
        while (frontier) {
          Mask next = 0;
          for (Index x = 0; x < n; ++x)
            if (frontier & bit(x)) next |= adj[static_cast<std::size_t>(x)] & ((plus & bit(x)) ? minus : plus);
          frontier = next & ~reached;
          reached |= next;
        }
        if (reached != moving) continue;

        auto e = [&](Index x) { return (plus & bit(x)) ? 1 : (minus & bit(x)) ? -1 : 0; };
        std::optional<Rational> step;
        for (Index x = 0; x < n; ++x)
          for (Index y = x; y < n; ++y) {
            const int s = e(x) + e(y);
            if (s >= 0) continue;
            Rational t = (f(x) + f(y) - space(x, y)) / (-s);
            if (!step || t < *step) step = t;
          }
        RationalVector g = f;
        for (Index x = 0; x < n; ++x) g(x) += *step * e(x);
        if (!is_extremal(space, g) || cell_dimension(tight_pairs(space, g)) != 0)
          throw std::logic_error("enumerate_vertices: edge does not end at a vertex");
        if (found.insert(g).second) queue.push_back(std::move(g));
      }
    }
  }
  return {found.begin(), found.end()};
}

std::optional<RationalVector> certify_cell(const FiniteMetricSpace& space, const EqualityGraph& edges) {
  const Index n = space.size();
  // Variables f(0..n-1), t. Admissibility makes f >= 0, and only t > 0 matters,
  // so every variable is nonnegative.
  auto lp = LinearProgram<Rational>::with_variables(n + 1);
  lp.nonnegative.assign(static_cast<std::size_t>(n + 1), true);
  lp.objective(n) = 1;
  for (Index x = 0; x < n; ++x)
    for (Index y = x; y < n; ++y) {
      RationalVector row = RationalVector::Zero(n + 1);
      row(x) += 1;
      row(y) += 1;
      if (edges.has_edge(x, y)) {
        lp.add_eq(row, space(x, y));
      } else {
        row(n) = -1;
        lp.add_geq(row, space(x, y));
      }
    }
  RationalVector cap = RationalVector::Zero(n + 1);
  cap(n) = -1;
  lp.add_geq(cap, Rational(-1));
  auto sol = solve(lp);
  if (sol.status != LpStatus::Optimal || sol.optimum <= 0) return std::nullopt;
  return RationalVector(sol.point.head(n));
}

TightSpanComplex enumerate_cells(const FiniteMetricSpace& space, Index max_points) {
  check_bound(space, max_points, "enumerate_cells");
  const Index n = space.size();
  const PairIndex index(n);
  TightSpanComplex complex{space, enumerate_vertices(space, n), {}, {}};

  std::vector<PairMask> vertex_masks;
  for (const auto& v : complex.vertices) vertex_masks.push_back(mask_of(index, tight_pairs(space, v)));

  // Closure under intersection, restricted to covering sets: a subset of a
  // non-covering set never covers.
  std::set<PairMask> candidates;
  std::deque<PairMask> queue;
  for (PairMask m : vertex_masks)
    if (candidates.insert(m).second) queue.push_back(m);
  while (!queue.empty()) {
    PairMask m = queue.front();
    queue.pop_front();
    for (PairMask g : vertex_masks) {
      PairMask c = m & g;
      if (!covering_mask(index, n, c)) continue;
      if (candidates.insert(c).second) queue.push_back(c);
    }
  }

  for (PairMask m : candidates) {
    EqualityGraph graph = graph_of(index, n, m);
    auto interior = certify_cell(space, graph);
    if (!interior) continue;
    if (!is_extremal(space, *interior) || tight_pairs(space, *interior) != graph)
      throw std::logic_error("enumerate_cells: certified interior point is not extremal with the expected equality graph");
    Cell cell{graph, cell_dimension(graph), std::move(*interior), {}};
    for (std::size_t v = 0; v < vertex_masks.size(); ++v)
      if ((vertex_masks[v] & m) == m) cell.vertex_ids.push_back(static_cast<Index>(v));
    complex.cells.push_back(std::move(cell));
  }
  std::sort(complex.cells.begin(), complex.cells.end(), [](const Cell& a, const Cell& b) {
    return std::tie(a.dimension, a.vertex_ids) < std::tie(b.dimension, b.vertex_ids);
  });
  for (const auto& c : complex.cells) {
    if (static_cast<std::size_t>(c.dimension) >= complex.f_vector.size())
      complex.f_vector.resize(static_cast<std::size_t>(c.dimension) + 1, 0);
    ++complex.f_vector[static_cast<std::size_t>(c.dimension)];
  }
  return complex;
}

int tight_span_dimension(const FiniteMetricSpace& space, Index max_points) {
  return enumerate_cells(space, max_points).dimension();
}

std::pair<Index, Index> attain_xfgy(const FiniteMetricSpace& space, const RationalVector& f, const RationalVector& g) {
  if (!is_extremal(space, f) || !is_extremal(space, g)) throw NotExtremal("attain_xfgy: arguments must be extremal");
  const Rational dist = sup_distance(f, g);
  for (Index x = 0; x < space.size(); ++x)
    for (Index y = 0; y < space.size(); ++y)
      if (f(x) + dist + g(y) == space(x, y)) return {x, y};
  throw std::logic_error("attain_xfgy: no attaining pair for extremal functions");
}

FiniteMetricSpace vertex_space(const std::vector<RationalVector>& vertices) {
  const auto n = static_cast<Index>(vertices.size());
  RationalMatrix d(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      d(i, j) = sup_distance(vertices[static_cast<std::size_t>(i)], vertices[static_cast<std::size_t>(j)]);
  return make_space(d, "v");
}

}  // namespace injhull
