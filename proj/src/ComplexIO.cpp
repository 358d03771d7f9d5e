#include "injhull/ComplexIO.hpp"

#include "injhull/MetricIO.hpp"

namespace injhull {

namespace {

std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

nlohmann::json function_json(const FiniteMetricSpace& space, const RationalVector& f) {
  nlohmann::json values = nlohmann::json::object();
  for (Index x = 0; x < space.size(); ++x) values[space.label(x)] = scalar_json(f(x));
  return values;
}

nlohmann::json to_json(const TightSpanComplex& complex) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const auto& v : complex.vertices) vertices.push_back({{"values", function_json(complex.space, v)}});
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : complex.cells) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [x, y] : c.graph.edges) edges.push_back({complex.space.label(x), complex.space.label(y)});
    cells.push_back({{"dim", c.dimension}, {"edges", std::move(edges)}, {"vertex_ids", c.vertex_ids}});
  }
  return {{"vertices", std::move(vertices)}, {"cells", std::move(cells)}, {"f_vector", complex.f_vector}};
}

std::string to_dot(const FiniteMetricSpace& space, const EqualityGraph& graph, const std::string& name) {
  std::string out = "graph " + dot_id(name) + " {\n";
  for (Index x = 0; x < space.size(); ++x) out += "  " + dot_id(space.label(x)) + ";\n";
  for (auto [x, y] : graph.edges) {
    out += "  " + dot_id(space.label(x)) + " -- " + dot_id(space.label(y));
    if (x == y) out += " [color=red]";
    out += ";\n";
  }
  return out + "}\n";
}

std::string to_dot(const TightSpanComplex& complex) {
  std::string out;
  for (std::size_t k = 0; k < complex.cells.size(); ++k) {
    const auto& c = complex.cells[k];
    out += to_dot(complex.space, c.graph, "cell" + std::to_string(k) + "_dim" + std::to_string(c.dimension));
  }
  return out;
}

}  // namespace injhull
