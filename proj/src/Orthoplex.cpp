#include "injhull/Orthoplex.hpp"

#include "injhull/ExactLP.hpp"
#include "injhull/MetricIO.hpp"
#include "injhull/TightSpan.hpp"

#include <algorithm>
#include <thread>

namespace injhull {

std::vector<std::pair<int, int>> Fiber::blue_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p < size(); ++p)
    for (int q = p + 1; q < size(); ++q)
      if (q != partner(p)) out.emplace_back(p, q);
  return out;
}

Fiber make_fiber(const FiniteMetricSpace& space, const PairedFamily& family) {
  if (!family.injective()) throw std::invalid_argument("make_fiber: the family repeats a point");
  for (Index x : family.entries())
    if (x < 0 || x >= space.size()) throw std::invalid_argument("make_fiber: point out of range");
  return Fiber{family, submetric(space, std::span<const Index>(family.entries()))};
}

namespace {

// The red equalities are eliminated: f(x_i) = u_i and f(x_-i) = d(x_i, x_-i) - u_i
// for the n+1 pair slots i. Variables u_0 .. u_n, t; all free. Maximize t.
LinearProgram<Rational> fiber_program(const Fiber& fiber) {
  const int slots = fiber.size() / 2;
  auto lp = LinearProgram<Rational>::with_variables(slots + 1);
  lp.objective(slots) = 1;
  for (auto [p, q] : fiber.blue_pairs()) {
    RationalVector row = RationalVector::Zero(slots + 1);
    Rational rhs = fiber.d(p, q);
    for (int x : {p, q}) {
      if (x % 2 == 0) {
        row(x / 2) += 1;
      } else {
        row(x / 2) -= 1;
        rhs -= fiber.d(x - 1, x);
      }
    }
    row(slots) = -1;
    lp.add_geq(row, rhs);
  }
  return lp;
}

RationalVector expand(const Fiber& fiber, const RationalVector& u) {
  RationalVector f(fiber.size());
  for (int p = 0; p < fiber.size(); p += 2) {
    f(p) = u(p / 2);
    f(p + 1) = fiber.d(p, p + 1) - u(p / 2);
  }
  return f;
}

}  // namespace

Rational max_M_value(const Fiber& fiber) {
  auto sol = solve(fiber_program(fiber));
  if (sol.status != LpStatus::Optimal) throw std::logic_error("max_M: fiber program has no optimum");
  return sol.optimum;
}

FiberMaximum max_M(const Fiber& fiber) {
  const auto lp = fiber_program(fiber);
  auto sol = solve(lp);
  if (sol.status != LpStatus::Optimal) throw std::logic_error("max_M: fiber program has no optimum");
  auto interior = relative_interior_point(lp, sol);
  FiberMaximum out;
  out.s = sol.optimum;
  out.f = expand(fiber, interior.point);
  const auto blue = fiber.blue_pairs();
  for (Index r : interior.tight_set) out.tight.push_back(blue[static_cast<std::size_t>(r)]);
  return out;
}

const char* type_name(AlternatingGraph::Type type) {
  return type == AlternatingGraph::Type::Cycle ? "cycle" : "loops_path";
}

AlternatingGraph build_alternating_graph(const Fiber& fiber, const FiberMaximum& maximum) {
  if (maximum.s <= 0) throw std::invalid_argument("build_alternating_graph: s must be positive");
  const int m = fiber.size();
  std::vector<std::vector<int>> blue(static_cast<std::size_t>(m));
  for (auto [p, q] : maximum.tight) {
    blue[static_cast<std::size_t>(p)].push_back(q);
    blue[static_cast<std::size_t>(q)].push_back(p);
  }
  for (auto& nb : blue) std::sort(nb.begin(), nb.end());
  auto covered = [&](int p) { return !blue[static_cast<std::size_t>(p)].empty(); };
  int start = -1;
  for (int p = 0; p < m; p += 2) {
    if (covered(p) != covered(p + 1)) throw std::logic_error("build_alternating_graph: red pair with one blue endpoint");
    if (start < 0 && covered(p)) start = p;
  }
  if (start < 0) throw std::logic_error("build_alternating_graph: no tight blue pair");

  // Alternating walk (red first from seq[0]) until a blue step revisits a vertex
  // for which in_construction holds. Returns the index hit in `where`.
  auto walk = [&](std::vector<int>& seq, const std::vector<int>& construction_mark, int& hit_mark) {
    std::vector<int> local(static_cast<std::size_t>(m), -1);
    local[static_cast<std::size_t>(seq[0])] = 0;
    bool red = true;
    while (true) {
      const int cur = seq.back();
      int next;
      if (red) {
        next = partner(cur);
        if (local[static_cast<std::size_t>(next)] >= 0 || construction_mark[static_cast<std::size_t>(next)] >= 0)
          throw std::logic_error("build_alternating_graph: red step revisits a vertex");
      } else {
        if (!covered(cur)) throw std::logic_error("build_alternating_graph: walk reached an uncovered vertex");
        next = blue[static_cast<std::size_t>(cur)].front();
        if (local[static_cast<std::size_t>(next)] >= 0) {
          hit_mark = -1;
          return local[static_cast<std::size_t>(next)];
        }
        if (construction_mark[static_cast<std::size_t>(next)] >= 0) {
          hit_mark = construction_mark[static_cast<std::size_t>(next)];
          return -1;
        }
      }
      local[static_cast<std::size_t>(next)] = static_cast<int>(seq.size());
      seq.push_back(next);
      red = !red;
    }
  };

  AlternatingGraph g;
  std::vector<int> none(static_cast<std::size_t>(m), -1);
  std::vector<int> seq{start};
  int ignored = -1;
  const int j = walk(seq, none, ignored);
  if (j % 2 == 0) {  // the edge leaving seq[j] is red: alternating cycle
    g.type = AlternatingGraph::Type::Cycle;
    g.cycle.assign(seq.begin() + j, seq.end());
    return g;
  }
  std::vector<int> loop1(seq.begin() + j, seq.end());
  std::vector<int> mark(static_cast<std::size_t>(m), -1);
  for (std::size_t t = 0; t < loop1.size(); ++t) mark[static_cast<std::size_t>(loop1[t])] = static_cast<int>(t);
  const int z = loop1.front();
  mark[static_cast<std::size_t>(z)] = -1;  // the second walk starts at z itself
  std::vector<int> seq2{z};
  int t = -1;
  int j2 = walk(seq2, mark, t);
  if (j2 == 0) {
    j2 = -1;
    t = 0;
  }
  if (j2 < 0) {
    // Back on loop 1 at loop1[t]: close through the loop in the direction that
    // keeps colours alternating.
    g.type = AlternatingGraph::Type::Cycle;
    g.cycle = seq2;
    if (t % 2 == 1) {
      for (std::size_t u = static_cast<std::size_t>(t); u < loop1.size(); ++u) g.cycle.push_back(loop1[u]);
    } else {
      for (int u = t; u >= 1; --u) g.cycle.push_back(loop1[static_cast<std::size_t>(u)]);
    }
    return g;
  }
  if (j2 % 2 == 0) {
    g.type = AlternatingGraph::Type::Cycle;
    g.cycle.assign(seq2.begin() + j2, seq2.end());
    return g;
  }
  g.type = AlternatingGraph::Type::LoopsPath;
  g.loop1 = std::move(loop1);
  g.loop2.assign(seq2.begin() + j2, seq2.end());
  g.path.assign(seq2.begin(), seq2.begin() + j2 + 1);
  return g;
}

PermutationWitness extract_permutation(const Fiber& fiber, const AlternatingGraph& graph, const FiberMaximum& maximum) {
  const int m = fiber.size();
  std::vector<int> map(static_cast<std::size_t>(m), -1);
  auto assign = [&](int from, int to) {
    if (map[static_cast<std::size_t>(from)] >= 0) throw std::logic_error("extract_permutation: vertex used twice");
    map[static_cast<std::size_t>(from)] = to;
  };
  auto advance = [&](const std::vector<int>& ring) {
    for (std::size_t u = 0; u < ring.size(); ++u) assign(ring[u], ring[(u + 1) % ring.size()]);
  };
  if (graph.type == AlternatingGraph::Type::Cycle) {
    advance(graph.cycle);
  } else {
    advance(graph.loop1);
    advance(graph.loop2);
    for (std::size_t u = 1; u + 2 < graph.path.size(); u += 2) {
      assign(graph.path[u], graph.path[u + 1]);
      assign(graph.path[u + 1], graph.path[u]);
    }
  }
  for (int p = 0; p < m; ++p)
    if (map[static_cast<std::size_t>(p)] < 0) map[static_cast<std::size_t>(p)] = partner(p);

  PermutationWitness out{IndexPermutation(map), 0};
  std::vector<std::pair<int, int>> tight = maximum.tight;
  std::sort(tight.begin(), tight.end());
  Rational lhs = 0, rhs = 0;
  for (int p = 0; p < m; ++p) {
    const int q = out.alpha.at(p);
    lhs += fiber.d(p, partner(p));
    rhs += fiber.d(p, q);
    if (q == partner(p)) continue;
    if (!std::binary_search(tight.begin(), tight.end(), std::pair{std::min(p, q), std::max(p, q)}))
      throw std::logic_error("extract_permutation: alpha uses a pair that is neither red nor tight blue");
    ++out.k;
  }
  if (out.alpha.is_minus_id()) throw std::logic_error("extract_permutation: alpha is -id");
  if (lhs != rhs + Rational(out.k) * maximum.s) throw std::logic_error("extract_permutation: permutation identity fails");
  return out;
}

std::vector<RationalVector> build_orthoplex(const Fiber& fiber, const RationalVector& f, const Rational& s) {
  if (s <= 0) throw std::invalid_argument("build_orthoplex: s must be positive");
  const int m = fiber.size();
  std::vector<RationalVector> out;
  for (int p = 0; p < m; ++p) {
    RationalVector g = f;
    g(p) += s;
    g(partner(p)) -= s;
    if (!is_extremal(fiber.points, g)) throw std::logic_error("build_orthoplex: f_i is not extremal");
    out.push_back(std::move(g));
  }
  for (int p = 0; p < m; ++p)
    for (int q = p + 1; q < m; ++q) {
      const Rational want = q == partner(p) ? Rational(2) * s : s;
      if (sup_distance(out[static_cast<std::size_t>(p)], out[static_cast<std::size_t>(q)]) != want)
        throw std::logic_error("build_orthoplex: distance pattern fails");
    }
  return out;
}

std::optional<OrthoplexWitness> orthoplex_witness(const Fiber& fiber) {
  auto maximum = max_M(fiber);
  if (maximum.s <= 0) return std::nullopt;
  auto graph = build_alternating_graph(fiber, maximum);
  auto permutation = extract_permutation(fiber, graph, maximum);
  if (permutation.k < 2 || permutation.k > 2 * fiber.n())
    throw std::logic_error("orthoplex_witness: k outside [2, 2n]");
  auto functions = build_orthoplex(fiber, maximum.f, maximum.s);
  return OrthoplexWitness{fiber, std::move(maximum), std::move(graph), std::move(permutation), std::move(functions)};
}

namespace {

void pairings(std::vector<Index>& rest, std::vector<std::pair<Index, Index>>& acc,
              std::vector<std::vector<std::pair<Index, Index>>>& out) {
  if (rest.empty()) {
    out.push_back(acc);
    return;
  }
  const Index a = rest.front();
  for (std::size_t u = 1; u < rest.size(); ++u) {
    std::vector<Index> next;
    for (std::size_t v = 1; v < rest.size(); ++v)
      if (v != u) next.push_back(rest[v]);
    acc.emplace_back(a, rest[u]);
    pairings(next, acc, out);
    acc.pop_back();
  }
}

}  // namespace

ScaleResult best_scale(const FiniteMetricSpace& space, int n, unsigned threads) {
  if (n < 0) throw std::invalid_argument("best_scale: n must be nonnegative");
  ScaleResult result;
  const Index size = 2 * (static_cast<Index>(n) + 1);
  if (space.size() < size) return result;

  std::vector<PairedFamily> fibers;
  std::vector<bool> chosen(static_cast<std::size_t>(space.size()), false);
  std::fill(chosen.begin(), chosen.begin() + size, true);
  do {
    std::vector<Index> subset;
    for (Index x = 0; x < space.size(); ++x)
      if (chosen[static_cast<std::size_t>(x)]) subset.push_back(x);
    std::vector<std::pair<Index, Index>> acc;
    std::vector<std::vector<std::pair<Index, Index>>> all;
    pairings(subset, acc, all);
    for (const auto& pairs : all) fibers.push_back(PairedFamily::from_pairs(pairs));
  } while (std::prev_permutation(chosen.begin(), chosen.end()));

  std::vector<Rational> values(fibers.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(fibers.size())));
  auto work = [&](unsigned t) {
    const std::size_t lo = fibers.size() * t / threads, hi = fibers.size() * (t + 1) / threads;
    for (std::size_t u = lo; u < hi; ++u) values[u] = max_M_value(make_fiber(space, fibers[u]));
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  std::size_t arg = 0;
  for (std::size_t u = 1; u < values.size(); ++u)
    if (values[u] > values[arg]) arg = u;
  result.fibers = fibers.size();
  result.s_hat = values[arg];
  result.family = fibers[arg];
  if (values[arg] > 0) result.witness = orthoplex_witness(make_fiber(space, fibers[arg]));
  return result;
}

nlohmann::json to_json(const OrthoplexWitness& w) {
  const auto& fam = w.fiber.family;
  const int m = fam.size();
  auto label = [&](int p) { return w.fiber.points.label(p); };
  nlohmann::json z = nlohmann::json::array(), pairing = nlohmann::json::array();
  for (int p = 0; p < m; ++p) z.push_back(label(p));
  for (int p = 0; p < m; p += 2) pairing.push_back({label(p), label(p + 1)});
  nlohmann::json alpha = nlohmann::json::object();
  for (int p = 0; p < m; ++p) alpha[std::to_string(signed_index_of(p))] = signed_index_of(w.permutation.alpha.at(p));
  nlohmann::json blue = nlohmann::json::array();
  for (auto [p, q] : w.maximum.tight) blue.push_back({label(p), label(q)});
  auto labels_of = [&](const std::vector<int>& ps) {
    nlohmann::json a = nlohmann::json::array();
    for (int p : ps) a.push_back(label(p));
    return a;
  };
  nlohmann::json graph{{"type", type_name(w.graph.type)}};
  if (w.graph.type == AlternatingGraph::Type::Cycle) {
    graph["cycle"] = labels_of(w.graph.cycle);
  } else {
    graph["loop1"] = labels_of(w.graph.loop1);
    graph["loop2"] = labels_of(w.graph.loop2);
    graph["path"] = labels_of(w.graph.path);
  }
  auto values = [&](const RationalVector& f) {
    nlohmann::json v = nlohmann::json::object();
    for (int p = 0; p < m; ++p) v[label(p)] = scalar_json(f(p));
    return v;
  };
  nlohmann::json functions = nlohmann::json::array();
  for (int p = 0; p < m; ++p)
    functions.push_back({{"index", signed_index_of(p)}, {"values", values(w.functions[static_cast<std::size_t>(p)])}});
  return {{"s", scalar_json(w.maximum.s)},
          {"Z", std::move(z)},
          {"pairing", std::move(pairing)},
          {"alpha", std::move(alpha)},
          {"k", w.permutation.k},
          {"type", type_name(w.graph.type)},
          {"f", values(w.maximum.f)},
          {"blue_edges", std::move(blue)},
          {"graph", std::move(graph)},
          {"functions", std::move(functions)},
          {"note", "orthoplex in E(Z), Z subset of X"}};
}

}  // namespace injhull
