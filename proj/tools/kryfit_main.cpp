// Command-line front end: fits from CSV datasets, canned experiments and
// structure diagnostics.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "kryfit/harness.hpp"
#include "kryfit/poly.hpp"
#include "kryfit/rational.hpp"
#include "kryfit/sobolev_poly.hpp"
#include "kryfit/sobolev_rational.hpp"

namespace {

using namespace kryfit;

struct FitOptions {
  std::string nodes;
  std::string poles = "tapered";
  int n = 10;
  int reorth = 2;
  int samples = 1000;
  std::uint64_t seed = 0;
  std::string out;
  std::string interval = "symmetric";
};

void add_common(CLI::App* cmd, FitOptions& opt, bool with_poles) {
  cmd->add_option("--nodes", opt.nodes,
                  "node source: chebyshev|legendre|clustered|file:PATH (fits need file:PATH)")
      ->required();
  if (with_poles)
    cmd->add_option("--poles", opt.poles, "pole source: tapered|conjugate|file:PATH");
  cmd->add_option("--n", opt.n, "approximation degree");
  cmd->add_option("--reorth", opt.reorth, "orthogonalization passes (1 or 2)")
      ->check(CLI::Range(1, 2));
  cmd->add_option("--samples", opt.samples, "evaluation grid size");
  cmd->add_option("--seed", opt.seed, "rng seed (recorded in outputs)");
  cmd->add_option("--out", opt.out, "output CSV path (default stdout)");
  cmd->add_option("--interval", opt.interval, "evaluation interval: symmetric|unit-positive");
}

std::pair<NodeSet, Vector> fit_inputs(const FitOptions& opt) {
  if (opt.nodes.rfind("file:", 0) != 0)
    throw CLI::ValidationError("--nodes", "fit subcommands read data from file:PATH");
  return load_dataset(opt.nodes.substr(5));
}

PoleSchedule resolve_poles(const FitOptions& opt) {
  if (opt.poles.rfind("file:", 0) == 0) return load_poles(opt.poles.substr(5));
  if (opt.poles == "tapered") return tapered_real_poles(opt.n);
  if (opt.poles == "conjugate") return conjugate_poles_any(opt.n);
  throw CLI::ValidationError("--poles", "unknown pole source '" + opt.poles + "'");
}

Interval resolve_interval(const FitOptions& opt) {
  if (opt.interval == "symmetric") return Interval::symmetric;
  if (opt.interval == "unit-positive") return Interval::unit_positive;
  throw CLI::ValidationError("--interval", "unknown interval '" + opt.interval + "'");
}

void write_values(const FitOptions& opt, const std::vector<Complex>& xs,
                  const std::vector<int>& orders, const Vector& values) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!opt.out.empty()) {
    file.open(opt.out);
    if (!file) throw std::runtime_error("cannot open " + opt.out);
    os = &file;
  }
  const int smax = orders.empty() ? 0 : orders.front();
  *os << "# seed=" << opt.seed << "\nx";
  for (int i = 0; i <= smax; ++i) *os << ",v" << i;
  *os << "\n";
  char buf[40];
  std::size_t off = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", xs[j].real());
    *os << buf;
    const std::size_t block = static_cast<std::size_t>(orders[j]) + 1;
    for (std::size_t i = 0; i < block; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", values[off + block - 1 - i].real());
      *os << "," << buf;
    }
    off += block;
    *os << "\n";
  }
}

int run_fit(const FitOptions& opt, ProblemKind kind) {
  auto [nodes, f] = fit_inputs(opt);
  const std::vector<Complex> grid = sample_grid(resolve_interval(opt), opt.samples);
  int smax = 0;
  for (const Node& nd : nodes.nodes) smax = std::max(smax, nd.s);
  std::vector<int> orders(grid.size(), 0);
  Vector values;
  switch (kind) {
    case ProblemKind::poly: {
      auto [model, basis] = fit_poly(nodes, f, static_cast<std::size_t>(opt.n), opt.reorth);
      values = eval_poly(model, grid);
      break;
    }
    case ProblemKind::sobolev_poly: {
      orders.assign(grid.size(), smax);
      auto [model, basis] =
          fit_sobolev_poly(nodes, f, static_cast<std::size_t>(opt.n), opt.reorth);
      values = eval_sobolev_poly(model, grid, orders);
      break;
    }
    case ProblemKind::rational: {
      auto [model, basis] = fit_rational(nodes, f, resolve_poles(opt), opt.reorth);
      values = eval_rational(model, grid);
      break;
    }
    case ProblemKind::sobolev_rational: {
      orders.assign(grid.size(), smax);
      auto [model, basis] = fit_sobolev_rational(nodes, f, resolve_poles(opt), opt.reorth);
      values = eval_sobolev_rational(model, grid, orders);
      break;
    }
    default:
      return 1;
  }
  write_values(opt, grid, orders, values);
  return 0;
}

int run_baseline(const FitOptions& opt, const std::string& basis_name) {
  auto [nodes, f] = fit_inputs(opt);
  BasisKind kind = BasisKind::vandermonde;
  if (basis_name == "vandermonde")
    kind = BasisKind::vandermonde;
  else if (basis_name == "confluent-vandermonde")
    kind = BasisKind::confluent_vandermonde;
  else if (basis_name == "cauchy")
    kind = BasisKind::cauchy_with_ones;
  else if (basis_name == "confluent-cauchy")
    kind = BasisKind::confluent_cauchy;
  else if (basis_name == "scaled-cauchy")
    kind = BasisKind::scaled_cauchy;
  else
    throw CLI::ValidationError("--basis", "unknown basis '" + basis_name + "'");

  const bool cauchy = kind == BasisKind::cauchy_with_ones ||
                      kind == BasisKind::confluent_cauchy || kind == BasisKind::scaled_cauchy;
  PoleSchedule poles;
  if (cauchy) poles = resolve_poles(opt);
  const std::vector<Complex> grid = sample_grid(resolve_interval(opt), opt.samples);
  int smax = 0;
  for (const Node& nd : nodes.nodes) smax = std::max(smax, nd.s);
  std::vector<int> orders(grid.size(), smax);
  DirectFitResult res = direct_fit_eval(kind, nodes, cauchy ? &poles : nullptr, f,
                                        static_cast<std::size_t>(opt.n), grid, orders);
  if (res.rank_deficient) std::cerr << "warning: coefficient matrix is rank deficient\n";
  write_values(opt, grid, orders, res.values);
  return 0;
}

int run_displacement_check(const FitOptions& opt) {
  NodeSet nodes;
  if (opt.nodes.rfind("file:", 0) == 0)
    nodes = load_dataset(opt.nodes.substr(5)).first;
  else if (opt.nodes == "chebyshev")
    nodes = chebyshev_first_kind(std::max(opt.n + 2, 5));
  else if (opt.nodes == "legendre")
    nodes = legendre_gauss(std::max(opt.n + 2, 5));
  else if (opt.nodes == "clustered")
    nodes = clustered_nodes(std::max(opt.n + 2, 6), resolve_interval(opt));
  else
    throw CLI::ValidationError("--nodes", "unknown node source '" + opt.nodes + "'");

  const std::size_t m = nodes.count();
  Matrix Z(m, m);
  for (std::size_t j = 0; j < m; ++j) Z(j, j) = nodes.nodes[j].z;

  const Matrix V =
      build_basis_matrix(BasisKind::vandermonde, nodes, nullptr, static_cast<std::size_t>(opt.n))
          .matrix;
  auto [rv, rank_v] = displacement_residual_poly(Z, V);
  std::cout << "vandermonde displacement rank: " << rank_v << "\n";

  const PoleSchedule poles = resolve_poles(opt);
  const Matrix C = build_basis_matrix(BasisKind::cauchy_with_ones, nodes, &poles,
                                      static_cast<std::size_t>(opt.n))
                       .matrix;
  std::vector<Complex> xi;
  for (const Ratio& p : poles.poles) xi.push_back(p.value());
  auto [rc, rank_c] = displacement_residual_rational(Z, C, xi);
  std::cout << "cauchy displacement rank: " << rank_c << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arnoldi-based polynomial and rational least squares fitting"};
  app.require_subcommand(1);

  FitOptions opt;
  auto* fit_poly_cmd = app.add_subcommand("fit-poly", "weighted polynomial fit");
  add_common(fit_poly_cmd, opt, false);
  auto* fit_spoly_cmd = app.add_subcommand("fit-sobolev-poly", "Sobolev polynomial fit");
  add_common(fit_spoly_cmd, opt, false);
  auto* fit_rat_cmd = app.add_subcommand("fit-rational", "rational fit");
  add_common(fit_rat_cmd, opt, true);
  auto* fit_srat_cmd = app.add_subcommand("fit-sobolev-rational", "Sobolev rational fit");
  add_common(fit_srat_cmd, opt, true);

  std::string basis_name = "vandermonde";
  auto* baseline_cmd = app.add_subcommand("baseline", "direct explicit-basis fit");
  add_common(baseline_cmd, opt, true);
  baseline_cmd->add_option("--basis", basis_name,
                           "vandermonde|confluent-vandermonde|cauchy|confluent-cauchy|scaled-cauchy");

  std::string experiment;
  std::string exp_out;
  std::string exp_format = "csv";
  auto* exp_cmd = app.add_subcommand("experiment", "run a canned or JSON-configured experiment");
  exp_cmd->add_option("name", experiment, "experiment name or config.json path")->required();
  exp_cmd->add_option("--out", exp_out, "report path (default stdout)");
  exp_cmd->add_option("--format", exp_format, "csv|tsv|markdown");

  auto* disp_cmd = app.add_subcommand("displacement-check", "displacement-rank diagnostics");
  add_common(disp_cmd, opt, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit_poly_cmd->parsed()) return run_fit(opt, ProblemKind::poly);
    if (fit_spoly_cmd->parsed()) return run_fit(opt, ProblemKind::sobolev_poly);
    if (fit_rat_cmd->parsed()) return run_fit(opt, ProblemKind::rational);
    if (fit_srat_cmd->parsed()) return run_fit(opt, ProblemKind::sobolev_rational);
    if (baseline_cmd->parsed()) return run_baseline(opt, basis_name);
    if (disp_cmd->parsed()) return run_displacement_check(opt);
    if (exp_cmd->parsed()) {
      ExperimentConfig cfg;
      if (experiment.size() > 5 && experiment.rfind(".json") == experiment.size() - 5)
        cfg = config_from_json_file(experiment);
      else
        cfg = example_config(experiment);
      const ErrorReport report = run_experiment(cfg);
      ReportFormat fmt = ReportFormat::csv;
      if (exp_format == "tsv")
        fmt = ReportFormat::tsv;
      else if (exp_format == "markdown")
        fmt = ReportFormat::markdown;
      else if (exp_format != "csv")
        throw std::invalid_argument("unknown format '" + exp_format + "'");
      if (exp_out.empty())
        emit_report(report, fmt, std::cout);
      else
        emit_report_file(report, fmt, exp_out);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
