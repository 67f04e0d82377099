// jproc: evaluate the registered maps, run residual suites, degeneracy
// sweeps and degree checks, and sample points on S⁶.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jproc/jproc.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  double fd_step = jproc::default_fd_step;
  std::map<std::string, double> tolerance_overrides;
  std::string format = "json";
  std::string out;
};

/// Destination of report output: --out path or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void validate(const RunConfig& cfg) {
  if (cfg.samples < 1) throw jproc::precondition_error("--samples must be at least 1");
  if (!(cfg.fd_step >= jproc::min_fd_step && cfg.fd_step <= jproc::max_fd_step))
    throw jproc::precondition_error("--fd-step must lie in [1e-7, 1e-3]");
}

std::map<std::string, double> parse_overrides(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw jproc::precondition_error("--tol expects suite=value: " + item);
    const std::string name = item.substr(0, eq);
    if (jproc::find_suite(name) == nullptr) throw jproc::unknown_name_error("unknown suite in --tol: " + name);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item.substr(eq + 1), &used);
    } catch (const std::exception&) {
      throw jproc::precondition_error("--tol value is not a number: " + item);
    }
    if (used != item.size() - eq - 1 || !(v > 0.0)) throw jproc::precondition_error("--tol value must be positive: " + item);
    out[name] = v;
  }
  return out;
}

int cmd_eval(const std::string& name, const std::optional<std::string>& point, const RunConfig& cfg) {
  const jproc::RegisteredMap map = jproc::lookup_map(name);
  const jproc::PointS6 x = point ? jproc::parse_point(*point) : jproc::Sampler(cfg.seed).point_s6();
  Output out(cfg.out);
  std::visit([&](const auto& m) { out.stream() << jproc::to_json(m(x)) << '\n'; }, map);
  return exit_ok;
}

int cmd_check(const std::string& suite, const RunConfig& cfg) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = jproc::suite_names();
  } else if (jproc::find_suite(suite) != nullptr) {
    names.push_back(suite);
  } else {
    throw jproc::unknown_name_error("unknown suite: " + suite);
  }
  Output out(cfg.out);
  bool all_pass = true;
  for (const auto& name : names) {
    std::optional<double> threshold;
    if (auto it = cfg.tolerance_overrides.find(name); it != cfg.tolerance_overrides.end()) threshold = it->second;
    const jproc::VerifyReport report = jproc::residual_suite(name, cfg.samples, cfg.seed, threshold);
    out.stream() << jproc::to_json(report) << std::endl;
    all_pass = all_pass && report.pass;
  }
  return all_pass ? exit_ok : exit_failed;
}

int cmd_sweep(const std::string& family_name, std::size_t grid, const RunConfig& cfg) {
  const jproc::MapFamily family = jproc::lookup_family(family_name);
  if (grid < 1) throw jproc::precondition_error("--grid must be at least 1");
  const bool exploratory = family.equivariance == jproc::Equivariance::none;
  if (exploratory)
    std::cerr << "note: " << family.label
              << " is a constructed non-equivariant family; the sweep is exploratory and always exits 0\n";
  const auto records = jproc::degeneracy_sweep(family, jproc::s_grid(grid), cfg.samples, cfg.seed, cfg.fd_step);
  Output out(cfg.out);
  if (cfg.format == "csv") out.stream() << jproc::sweep_csv_header << '\n';
  bool clean = true;
  for (const auto& rec : records) {
    out.stream() << (cfg.format == "csv" ? jproc::csv_row(rec) : jproc::to_json(rec)) << '\n';
    clean = clean && rec.sign_changes == 0;
  }
  return (exploratory || clean) ? exit_ok : exit_failed;
}

int cmd_sample(std::size_t n, const RunConfig& cfg) {
  if (n < 1) throw jproc::precondition_error("sample count must be at least 1");
  Output out(cfg.out);
  jproc::Sampler sampler(cfg.seed);
  if (cfg.format == "csv") out.stream() << jproc::point_csv_header << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    const jproc::PointS6 x = sampler.point_s6();
    out.stream() << (cfg.format == "csv" ? jproc::csv_row(x) : jproc::to_json(x)) << '\n';
  }
  return exit_ok;
}

int cmd_degree(const std::string& name, const RunConfig& cfg) {
  const jproc::RegisteredMap map = jproc::lookup_map(name);
  const auto* self = std::get_if<jproc::SelfMap>(&map);
  if (self == nullptr) throw jproc::precondition_error("degree needs a self map of S^6, not " + name);
  const jproc::DegreeSign d = jproc::degree_sign(*self, cfg.samples, cfg.seed, cfg.fd_step);
  Output out(cfg.out);
  out.stream() << R"({"map":")" << name << R"(","sign":)" << d.sign << R"(,"unanimous":)"
               << (d.unanimous ? "true" : "false") << R"(,"inconclusive":)" << (d.inconclusive ? "true" : "false")
               << R"(,"samples":)" << d.samples << R"(,"min_abs_det":)" << jproc::format_real(d.min_abs_det) << "}\n";
  return exit_ok;
}

void add_common(CLI::App* cmd, RunConfig& cfg, std::vector<std::string>& tol) {
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--samples", cfg.samples, "number of sample points");
  cmd->add_option("--fd-step", cfg.fd_step, "finite-difference step in [1e-7, 1e-3]");
  cmd->add_option("--tol", tol, "threshold override, suite=value (repeatable)");
  cmd->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", cfg.out, "write output to this path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for equivariant J-process maps on S^6"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> tol;

  std::string map_name;
  std::optional<std::string> point;
  auto* eval = app.add_subcommand("eval", "evaluate a registered map at a point");
  eval->add_option("map", map_name, "map name (bm, bm_pow:<n>, H:<s>, Q, sigma:<k>, R, inv_sigma, inv_R, inv_H:<s>)")
      ->required();
  eval->add_option("--point", point, "point literal \"(bi+cj+dk, a+bi+cj+dk)\" or JSON; sampled from --seed if absent");
  add_common(eval, cfg, tol);

  std::string suite;
  auto* check = app.add_subcommand("check", "run residual suites");
  check->add_option("suite", suite, "suite name or 'all'")->required();
  add_common(check, cfg, tol);

  std::string family;
  std::size_t grid = 21;
  auto* sweep = app.add_subcommand("sweep", "degeneracy sweep of J-processes along a family");
  sweep->add_option("family", family, "H, H_pow:<k>, demo_nonequiv, constant")->required();
  sweep->add_option("--grid", grid, "number of evenly spaced s values in [0, 1]");
  add_common(sweep, cfg, tol);

  std::size_t count = 0;
  auto* sample = app.add_subcommand("sample", "print uniform points on S^6");
  sample->add_option("n", count, "number of points")->required();
  add_common(sample, cfg, tol);

  std::string degree_map;
  auto* degree = app.add_subcommand("degree", "sign of the Jacobian determinant of a self map");
  degree->add_option("map", degree_map, "self-map name")->required();
  add_common(degree, cfg, tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  // sweep writes CSV unless asked otherwise
  if (sweep->parsed() && sweep->count("--format") == 0) cfg.format = "csv";

  try {
    cfg.tolerance_overrides = parse_overrides(tol);
    validate(cfg);
    if (eval->parsed()) return cmd_eval(map_name, point, cfg);
    if (check->parsed()) return cmd_check(suite, cfg);
    if (sweep->parsed()) return cmd_sweep(family, grid, cfg);
    if (sample->parsed()) return cmd_sample(count, cfg);
    if (degree->parsed()) return cmd_degree(degree_map, cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_failed;
  }
  return exit_usage;
}
