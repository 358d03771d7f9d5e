#include "injhull/MetricIO.hpp"

#include <fstream>
#include <sstream>

namespace injhull {

namespace {

Rational scalar_from_json(const nlohmann::json& value, const ParseOptions& options) {
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const ScalarParseError& e) {
      throw InputError(e.what());
    }
  }
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) return Rational(Integer(value.get<std::uint64_t>()));
    return Rational(Integer(value.get<std::int64_t>()));
  }
  if (value.is_number_float()) {
    double x = value.get<double>();
    if (auto exact = representable_from_double(x)) return *exact;
    if (options.rationalize) return rationalize(x, options.max_denominator);
    throw InputError("float " + value.dump() + " is not exactly representable; pass --rationalize to approximate it");
  }
  throw InputError("matrix entry " + value.dump() + " is not a scalar");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  cells.push_back(cell);
  for (auto& s : cells) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  }
  return cells;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

MetricDocument parse_metric_json(std::string_view text, const ParseOptions& options) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("points") || !doc.contains("matrix"))
    throw InputError("metric JSON needs \"points\" and \"matrix\"");
  const auto& points = doc["points"];
  const auto& rows = doc["matrix"];
  if (!points.is_array() || !rows.is_array()) throw InputError("\"points\" and \"matrix\" must be arrays");

  MetricDocument out;
  for (const auto& p : points) {
    if (!p.is_string()) throw InputError("point labels must be strings");
    out.labels.push_back(p.get<std::string>());
  }
  const auto n = static_cast<Index>(rows.size());
  if (n != static_cast<Index>(out.labels.size())) throw InputError("matrix has " + std::to_string(n) + " rows for " +
                                                                   std::to_string(out.labels.size()) + " points");
  out.matrix.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) throw InputError("matrix is not square");
    for (Index j = 0; j < n; ++j) out.matrix(i, j) = scalar_from_json(row[static_cast<std::size_t>(j)], options);
  }
  return out;
}

MetricDocument parse_metric_csv(std::string_view text, const ParseOptions&) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) throw InputError("empty CSV");
  MetricDocument out;
  out.labels = rows.front();
  if (!out.labels.empty() && out.labels.front().empty()) out.labels.erase(out.labels.begin());  // corner cell
  const auto n = static_cast<Index>(out.labels.size());
  if (static_cast<Index>(rows.size()) - 1 != n) throw InputError("CSV matrix is not square");
  out.matrix.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    auto cells = rows[static_cast<std::size_t>(i + 1)];
    if (static_cast<Index>(cells.size()) == n + 1 && cells.front() == out.labels[static_cast<std::size_t>(i)])
      cells.erase(cells.begin());
    if (static_cast<Index>(cells.size()) != n) throw InputError("CSV matrix is not square");
    for (Index j = 0; j < n; ++j) {
      try {
        out.matrix(i, j) = parse_rational(cells[static_cast<std::size_t>(j)]);
      } catch (const ScalarParseError& e) {
        throw InputError(e.what());
      }
    }
  }
  return out;
}

MetricDocument read_metric_document(const std::filesystem::path& path, const ParseOptions& options) {
  std::string text = read_file(path);
  if (path.extension() == ".csv") return parse_metric_csv(text, options);
  return parse_metric_json(text, options);
}

FiniteMetricSpace read_metric_space(const std::filesystem::path& path, const ParseOptions& options) {
  auto doc = read_metric_document(path, options);
  MetricValidation checked;
  try {
    checked = validate_metric(std::move(doc.labels), std::move(doc.matrix));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (!checked.ok()) throw InputError("'" + path.string() + "' is not a metric: " + checked.violations.front().message);
  return std::move(*checked.space);
}

nlohmann::json to_json(const FiniteMetricSpace& space) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < space.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < space.size(); ++j) row.push_back(scalar_json(space(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"points", space.labels()}, {"matrix", std::move(rows)}};
}

std::string to_csv(const FiniteMetricSpace& space) {
  auto quote = [](const std::string& s) {
    return s.find_first_of(",\"") == std::string::npos ? s : "\"" + s + "\"";
  };
  std::string out;
  for (Index i = 0; i < space.size(); ++i) out += (i ? "," : "") + quote(space.label(i));
  out += '\n';
  for (Index i = 0; i < space.size(); ++i) {
    for (Index j = 0; j < space.size(); ++j) out += (j ? "," : "") + to_string(space(i, j));
    out += '\n';
  }
  return out;
}

void write_metric_space(const FiniteMetricSpace& space, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  if (path.extension() == ".csv")
    out << to_csv(space);
  else
    out << to_json(space).dump(2) << '\n';
}

}  // namespace injhull
