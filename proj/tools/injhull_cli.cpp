#include "injhull/ComplexIO.hpp"
#include "injhull/Generators.hpp"
#include "injhull/Hyperbolicity.hpp"
#include "injhull/MetricIO.hpp"
#include "injhull/Orthoplex.hpp"
#include "injhull/TightSpan.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace injhull;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInputError = 1, kViolations = 2, kGuard = 3 };

struct GuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string format = "json";
  unsigned threads = 1;
  bool rationalize = false;
  std::int64_t max_denominator = 1'000'000;
  int max_points = 12;
  int max_n = 3;
};

int env_or(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  try {
    return std::stoi(v);
  } catch (const std::exception&) {
    throw InputError(std::string("bad value for ") + name + ": '" + v + "'");
  }
}

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

ParseOptions parse_options(const Settings& s) { return {s.rationalize, s.max_denominator}; }

class Report {
 public:
  Report(std::string command, const Settings& settings) : settings_(settings), start_(std::chrono::steady_clock::now()) {
    body_["command"] = std::move(command);
    body_["parameters"] = json::object();
    body_["results"] = json::object();
  }
  void input(const std::string& path, const std::string& bytes) {
    body_["input"] = path;
    body_["input_digest"] = fnv1a64(bytes);
  }
  json& parameters() { return body_["parameters"]; }
  json& results() { return body_["results"]; }

  void emit() {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    body_["timing_ms"] = std::round(ms * 1000) / 1000;
    body_["engine_versions"] = {{"injhull", INJHULL_VERSION},
                                {"lp", "dense two-phase simplex, Bland's rule, exact"},
                                {"assignment", "Hungarian with forbidden arcs, exact"},
                                {"rng", "mt19937_64 with rejection sampling"}};
    if (settings_.format == "table") {
      print_table(std::cout, "", body_);
    } else {
      std::cout << body_.dump(2) << "\n";
    }
  }

 private:
  static void print_table(std::ostream& out, const std::string& prefix, const json& j) {
    if (j.is_object()) {
      for (auto it = j.begin(); it != j.end(); ++it) print_table(out, prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
    } else {
      out << prefix << "\t" << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
  }

  Settings settings_;
  std::chrono::steady_clock::time_point start_;
  json body_;
};

struct Loaded {
  FiniteMetricSpace space;
  std::string bytes;
};

Loaded load(const std::string& path, const Settings& s) {
  std::string bytes = read_bytes(path);
  return {read_metric_space(path, parse_options(s)), std::move(bytes)};
}

void guard_points(const FiniteMetricSpace& space, int limit, const char* what,
                  const char* how = "--max-points or INJHULL_MAX_POINTS") {
  if (space.size() > limit)
    throw GuardExceeded(std::string(what) + ": " + std::to_string(space.size()) + " points exceed the limit of " +
                        std::to_string(limit) + " (raise with " + how + ")");
}

void guard_n(int n, const Settings& s) {
  if (n < 0) throw InputError("--n must be nonnegative");
  if (n > s.max_n)
    throw GuardExceeded("n = " + std::to_string(n) + " exceeds the limit of " + std::to_string(s.max_n) +
                        " (raise with --max-n or INJHULL_MAX_N)");
}

json defect_json(const FiniteMetricSpace& space, const DefectReport& r) {
  return {{"family", r.family.describe(space)},
          {"lhs", scalar_json(r.lhs)},
          {"best_alpha", r.best_alpha.describe()},
          {"best_score", scalar_json(r.best_score)},
          {"defect", scalar_json(r.defect)}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

int cmd_validate(const std::string& path, const Settings& s) {
  Report report("validate", s);
  const std::string bytes = read_bytes(path);
  report.input(path, bytes);
  const auto doc = read_metric_document(path, parse_options(s));
  const auto v = validate_metric(doc.labels, doc.matrix);
  json list = json::array();
  for (const auto& x : v.violations) {
    json item{{"kind", std::string(kind_name(x.kind))},
              {"i", doc.labels[static_cast<std::size_t>(x.i)]},
              {"j", doc.labels[static_cast<std::size_t>(x.j)]},
              {"message", x.message}};
    if (x.kind == MetricViolation::Kind::Triangle) item["k"] = doc.labels[static_cast<std::size_t>(x.k)];
    list.push_back(std::move(item));
  }
  report.results() = {{"valid", v.ok()}, {"points", doc.labels.size()}, {"violations", std::move(list)}};
  report.emit();
  return v.ok() ? kOk : kViolations;
}

int cmd_delta(const std::string& path, int n, const std::string& mode, const std::string& engine, const Settings& s) {
  Report report("delta", s);
  guard_n(n, s);
  const auto in = load(path, s);
  report.input(path, in.bytes);
  guard_points(in.space, s.max_points, "delta");
  DeltaOptions opts;
  opts.mode = mode == "distinct" ? FamilyMode::Distinct : FamilyMode::Full;
  opts.threads = s.threads;
  report.parameters() = {{"n", n}, {"mode", mode}, {"engine", engine}, {"threads", s.threads}};
  std::vector<ScoreEngine> engines;
  if (engine != "assignment") engines.push_back(ScoreEngine::Brute);
  if (engine != "brute") engines.push_back(ScoreEngine::Assignment);
  std::optional<DeltaResult> first;
  json per_engine = json::object();
  for (auto e : engines) {
    opts.engine = e;
    auto r = min_delta(in.space, n, opts);
    per_engine[e == ScoreEngine::Brute ? "brute" : "assignment"] = scalar_json(r.delta);
    if (first && (first->delta != r.delta || first->witness->family != r.witness->family))
      throw std::logic_error("engines disagree");
    if (!first) first = std::move(r);
  }
  auto& res = report.results();
  res["delta"] = scalar_json(first->delta);
  res["families"] = first->families;
  if (first->witness) res["witness"] = defect_json(in.space, *first->witness);
  if (engines.size() > 1) res["engines"] = per_engine;
  report.emit();
  return kOk;
}

int cmd_gromov(const std::string& path, const Settings& s) {
  Report report("gromov", s);
  const auto in = load(path, s);
  report.input(path, in.bytes);
  guard_points(in.space, std::max(s.max_points, 64), "gromov");
  const auto g = gromov_delta(in.space);
  json quad = json::array();
  for (Index x : g.quadruple) quad.push_back(in.space.label(x));
  report.results() = {{"delta", scalar_json(g.delta)}, {"quadruple", std::move(quad)}};
  report.emit();
  return kOk;
}

int cmd_tightspan(const std::string& path, bool cells, const std::string& export_path, const std::string& dot_path,
                  int bound, const Settings& s) {
  Report report("tightspan", s);
  const auto in = load(path, s);
  report.input(path, in.bytes);
  const bool want_cells = cells || !export_path.empty() || !dot_path.empty();
  report.parameters() = {{"cells", want_cells}, {"bound", bound}};
  if (bound > kMaxEnumerablePoints)
    throw GuardExceeded("--bound may not exceed " + std::to_string(kMaxEnumerablePoints));
  guard_points(in.space, bound, "tightspan", "--bound, at most 10");
  auto& res = report.results();
  if (want_cells) {
    const auto complex = enumerate_cells(in.space, bound);
    const json j = to_json(complex);
    res["vertices"] = j["vertices"];
    res["f_vector"] = complex.f_vector;
    res["dimension"] = complex.dimension();
    res["cells"] = j["cells"];
    if (!export_path.empty()) write_text(export_path, j.dump(2) + "\n");
    if (!dot_path.empty()) write_text(dot_path, to_dot(complex));
  } else {
    const auto vs = enumerate_vertices(in.space, bound);
    json list = json::array();
    for (const auto& v : vs) list.push_back({{"values", function_json(in.space, v)}});
    res["vertices"] = std::move(list);
    res["vertex_count"] = vs.size();
  }
  report.emit();
  return kOk;
}

int cmd_orthoplex(const std::string& path, int n, const Settings& s) {
  Report report("orthoplex", s);
  guard_n(n, s);
  const auto in = load(path, s);
  report.input(path, in.bytes);
  guard_points(in.space, s.max_points, "orthoplex");
  report.parameters() = {{"n", n}, {"threads", s.threads}};
  const auto r = best_scale(in.space, n, s.threads);
  auto& res = report.results();
  res["fibers"] = r.fibers;
  if (!r.s_hat) {
    res["s_hat"] = nullptr;
    res["note"] = "s_hat undefined: fewer than 2(n+1) = " + std::to_string(2 * (n + 1)) + " points";
  } else {
    res["s_hat"] = scalar_json(*r.s_hat);
    res["family"] = r.family->describe(in.space);
    if (r.witness) {
      res["witness"] = to_json(*r.witness);
    } else {
      res["note"] = "s_hat <= 0: no orthoplex witness, the space is (n,0)-hyperbolic";
    }
  }
  report.emit();
  return kOk;
}

void emit_space(const FiniteMetricSpace& space, const std::string& out) {
  if (out.empty()) {
    std::cout << to_json(space).dump(2) << "\n";
  } else {
    write_metric_space(space, out);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact hyperbolicity, tight spans and orthoplex witnesses for finite metric spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--format", s.format, "Report format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--threads", s.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_flag("--rationalize", s.rationalize, "Rationalize inexact JSON floats");
  app.add_option("--max-denominator", s.max_denominator, "Denominator bound for --rationalize")->check(CLI::PositiveNumber);
  int max_points = -1, max_n = -1;
  app.add_option("--max-points", max_points, "Largest accepted space (env INJHULL_MAX_POINTS)");
  app.add_option("--max-n", max_n, "Largest accepted n (env INJHULL_MAX_N)");

  std::string file, file_b, out, mode = "full", engine = "assignment", export_path, dot_path, kind, space_kind = "linf",
                                  scale = "1";
  int n = 1, bound = static_cast<int>(kDefaultCellBound), size = 0, dim = 2, side = 3, max_weight = 8, density = 40;
  std::uint64_t seed = 1;
  bool cells = false;

  auto* validate = app.add_subcommand("validate", "Check the metric axioms");
  validate->add_option("file", file)->required();
  auto* delta = app.add_subcommand("delta", "Least delta for (n, delta)-hyperbolicity");
  delta->add_option("file", file)->required();
  delta->add_option("--n", n)->required();
  delta->add_option("--mode", mode)->check(CLI::IsMember({"full", "distinct"}));
  delta->add_option("--engine", engine)->check(CLI::IsMember({"brute", "assignment", "both"}));
  auto* gromov = app.add_subcommand("gromov", "Four-point delta");
  gromov->add_option("file", file)->required();
  auto* tight = app.add_subcommand("tightspan", "Vertices and cells of the tight span");
  tight->add_option("file", file)->required();
  tight->add_flag("--cells", cells, "Enumerate cells as well");
  tight->add_option("--export", export_path, "Write the complex as JSON");
  tight->add_option("--dot", dot_path, "Write equality graphs as DOT");
  tight->add_option("--bound", bound, "Largest space to enumerate");
  auto* ortho = app.add_subcommand("orthoplex", "Largest orthoplex scale over 2(n+1)-subsets, with witness");
  ortho->add_option("file", file)->required();
  ortho->add_option("--n", n)->required();
  auto* gen = app.add_subcommand("gen", "Generate a metric space");
  gen->add_option("kind", kind, "tree, graph, grid or cycle")->required();
  gen->add_option("size", size, "Points (cycle, graph) or leaves (tree)");
  gen->add_option("--leaves", size);
  gen->add_option("--points", size);
  gen->add_option("--space", space_kind)->check(CLI::IsMember({"linf", "l2"}));
  gen->add_option("--dim", dim);
  gen->add_option("--side", side);
  gen->add_option("--scale", scale);
  gen->add_option("--max-weight", max_weight);
  gen->add_option("--density", density, "Extra edge probability in percent");
  gen->add_option("--seed", seed);
  gen->add_option("-o,--output", out);
  auto* product = app.add_subcommand("product", "l_inf product of two spaces");
  product->add_option("a", file)->required();
  product->add_option("b", file_b)->required();
  product->add_option("-o,--output", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    s.max_points = max_points >= 0 ? max_points : env_or("INJHULL_MAX_POINTS", s.max_points);
    s.max_n = max_n >= 0 ? max_n : env_or("INJHULL_MAX_N", s.max_n);
    if (*validate) return cmd_validate(file, s);
    if (*delta) return cmd_delta(file, n, mode, engine, s);
    if (*gromov) return cmd_gromov(file, s);
    if (*tight) return cmd_tightspan(file, cells, export_path, dot_path, bound, s);
    if (*ortho) return cmd_orthoplex(file, n, s);
    if (*gen) {
      GeneratorParams p;
      p.dim = dim;
      p.side = side;
      p.scale = parse_rational(scale);
      p.max_weight = max_weight;
      p.density_percent = density;
      p.max_denominator = s.max_denominator;
      GeneratorKind k;
      if (kind == "grid") {
        k = space_kind == "l2" ? GeneratorKind::L2Grid : GeneratorKind::LinfGrid;
      } else {
        k = parse_generator_kind(kind);
        if (k == GeneratorKind::RandomTree || k == GeneratorKind::RandomGraph || k == GeneratorKind::Cycle) {
          if (size <= 0) throw InputError("gen " + kind + ": give a size");
          p.size = size;
        }
      }
      emit_space(generate(k, p, seed), out);
      return kOk;
    }
    if (*product) {
      const auto a = load(file, s).space;
      const auto b = load(file_b, s).space;
      emit_space(linf_product(a, b), out);
      return kOk;
    }
  } catch (const GuardExceeded& e) {
    std::cerr << "injhull: " << e.what() << "\n";
    return kGuard;
  } catch (const SizeBoundExceeded& e) {
    std::cerr << "injhull: " << e.what() << "\n";
    return kGuard;
  } catch (const InputError& e) {
    std::cerr << "injhull: " << e.what() << "\n";
    return kInputError;
  } catch (const ScalarParseError& e) {
    std::cerr << "injhull: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "injhull: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "injhull: internal error: " << e.what() << "\n";
    return 4;
  }
  return kOk;
}
