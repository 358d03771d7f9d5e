#pragma once

#include "injhull/MetricSpace.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace injhull {

/// Unreadable file or malformed document.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseOptions {
  /// Accept binary floats that are not exact decimals by rationalizing them.
  bool rationalize = false;
  std::int64_t max_denominator = 1'000'000;
};

/// Labels and matrix as read, before the metric axioms are checked.
struct MetricDocument {
  std::vector<std::string> labels;
  RationalMatrix matrix;
};

/// {"points": [...], "matrix": [["0","1/2"], ...]}. Entries are "p/q" or
/// integer strings, exact decimal strings, or JSON numbers; a JSON float is
/// accepted only when exactly representable, unless options.rationalize.
MetricDocument parse_metric_json(std::string_view text, const ParseOptions& options = {});

/// Header row of labels followed by one row of scalars per point. A leading
/// label column matching the header order is tolerated.
MetricDocument parse_metric_csv(std::string_view text, const ParseOptions& options = {});

/// Reads by extension: .csv is CSV, anything else JSON.
MetricDocument read_metric_document(const std::filesystem::path& path, const ParseOptions& options = {});

/// Reads and validates; throws InputError if the document is not a metric.
FiniteMetricSpace read_metric_space(const std::filesystem::path& path, const ParseOptions& options = {});

nlohmann::json to_json(const FiniteMetricSpace& space);
std::string to_csv(const FiniteMetricSpace& space);
/// Writes JSON, or CSV when the extension is .csv.
void write_metric_space(const FiniteMetricSpace& space, const std::filesystem::path& path);

/// Scalars are always emitted as reduced "p/q" strings.
inline nlohmann::json scalar_json(const Rational& x) { return to_string(x); }

}  // namespace injhull
