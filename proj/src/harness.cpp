#include "kryfit/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "kryfit/poly.hpp"
#include "kryfit/rational.hpp"
#include "kryfit/sobolev_poly.hpp"
#include "kryfit/sobolev_rational.hpp"

namespace kryfit {

void ExperimentConfig::validate() const {
  if (degrees.empty()) throw std::invalid_argument("ExperimentConfig: empty degree list");
  if (samples < 1) throw std::invalid_argument("ExperimentConfig: samples >= 1 required");
  if (max_order < 0 || max_order > 2)
    throw std::invalid_argument("ExperimentConfig: max_order must be 0..2");
  const bool rational_kind = kind == ProblemKind::rational ||
                             kind == ProblemKind::sobolev_rational ||
                             (kind == ProblemKind::direct_baseline &&
                              baseline_basis != BasisKind::vandermonde &&
                              baseline_basis != BasisKind::confluent_vandermonde);
  if (rational_kind && pole_source == PoleGenerator::none)
    throw std::invalid_argument("ExperimentConfig: rational kinds need a pole source");
}

double target_value(TargetFn fn, double x, int order) {
  switch (fn) {
    case TargetFn::one:
      return order == 0 ? 1.0 : 0.0;
    case TargetFn::runge: {
      const double d = 1.0 + 25.0 * x * x;
      if (order == 0) return 1.0 / d;
      if (order == 1) return -50.0 * x / (d * d);
      if (order == 2) return (3750.0 * x * x - 50.0) / (d * d * d);
      break;
    }
    case TargetFn::absval:
      if (order == 0) return std::abs(x);
      break;
    case TargetFn::sqrt_t:
      if (order == 0) return std::sqrt(x);
      break;
    case TargetFn::tsqrt:
      if (order == 0) return x * std::sqrt(x);
      if (order == 1) return 1.5 * std::sqrt(x);
      break;
    default:
      break;
  }
  throw std::invalid_argument("target_value: unsupported target/order");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_num(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (...) {
    throw std::runtime_error(std::string("dataset: bad ") + what + " value '" + s + "'");
  }
}

void format_full(char* buf, std::size_t len, double v) { std::snprintf(buf, len, "%.17g", v); }

}  // namespace

std::pair<NodeSet, Vector> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_dataset: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("load_dataset: empty file");

  NodeSet nodes;
  Vector f;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() < 5) throw std::runtime_error("load_dataset: short row");
    Node nd;
    nd.z = Complex(parse_num(cells[0], "z_re"), parse_num(cells[1], "z_im"));
    nd.w = parse_num(cells[2], "w");
    const double sval = parse_num(cells[3], "s");
    nd.s = static_cast<int>(sval);
    if (nd.s < 0 || sval != nd.s) throw std::runtime_error("load_dataset: bad s value");
    nd.alpha.assign(static_cast<std::size_t>(nd.s), Complex(1.0));

    std::vector<double> fv;
    for (int i = 0; i <= nd.s; ++i) {
      const std::size_t col = 4 + static_cast<std::size_t>(i);
      if (col >= cells.size() || cells[col].empty())
        throw std::runtime_error("load_dataset: missing derivative column f" + std::to_string(i));
      fv.push_back(parse_num(cells[col], "f"));
    }
    for (std::size_t col = 5 + static_cast<std::size_t>(nd.s); col < cells.size(); ++col)
      if (!cells[col].empty())
        throw std::runtime_error("load_dataset: derivative column beyond s is not empty");
    if (!std::isfinite(fv.back())) throw std::runtime_error("load_dataset: non-finite data");
    // Highest derivative first within the block.
    for (int i = nd.s; i >= 0; --i) f.push_back(fv[static_cast<std::size_t>(i)]);
    nodes.nodes.push_back(std::move(nd));
  }
  nodes.validate();
  if (!finite(f)) throw std::runtime_error("load_dataset: non-finite data");
  return {std::move(nodes), std::move(f)};
}

void save_dataset(const NodeSet& nodes, const Vector& f, const std::string& path) {
  if (f.size() != nodes.dimension())
    throw std::invalid_argument("save_dataset: data length mismatch");
  int smax = 0;
  for (const Node& nd : nodes.nodes) smax = std::max(smax, nd.s);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_dataset: cannot open " + path);
  out << "z_re,z_im,w,s";
  for (int i = 0; i <= smax; ++i) out << ",f" << i;
  out << "\n";
  char buf[40];
  std::size_t off = 0;
  for (const Node& nd : nodes.nodes) {
    format_full(buf, sizeof buf, nd.z.real());
    out << buf << ",";
    format_full(buf, sizeof buf, nd.z.imag());
    out << buf << ",";
    format_full(buf, sizeof buf, nd.w.real());
    out << buf << "," << nd.s;
    const std::size_t s = static_cast<std::size_t>(nd.s);
    for (std::size_t i = 0; i <= s; ++i) {
      // Stored block is highest-first; f_i sits at depth s - i.
      format_full(buf, sizeof buf, f[off + s - i].real());
      out << "," << buf;
    }
    for (int i = nd.s + 1; i <= smax; ++i) out << ",";
    out << "\n";
    off += s + 1;
  }
}

PoleSchedule load_poles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_poles: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("load_poles: empty file");
  PoleSchedule ps;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() < 2) throw std::runtime_error("load_poles: short row");
    ps.poles.push_back(
        Ratio{Complex(parse_num(cells[0], "xi_re"), parse_num(cells[1], "xi_im")), 1.0});
  }
  if (ps.poles.empty()) throw std::runtime_error("load_poles: no poles");
  ps.shifts.push_back(Ratio{1.0, 0.0});
  for (std::size_t k = 1; k < ps.poles.size(); ++k) ps.shifts.push_back(ps.poles[k - 1]);
  ps.validate();
  return ps;
}

std::vector<Complex> sample_grid(Interval interval, int count) {
  std::vector<Complex> xs;
  xs.reserve(static_cast<std::size_t>(count));
  if (interval == Interval::symmetric) {
    if (count == 1) {
      xs.push_back(0.0);
    } else {
      for (int i = 0; i < count; ++i)
        xs.push_back(-1.0 + 2.0 * i / (count - 1));
    }
  } else {
    for (int i = 1; i <= count; ++i) xs.push_back(double(i) / count);
  }
  return xs;
}

PoleSchedule conjugate_poles_any(int n) {
  // Row index n counts conjugate pole pairs, so the schedule holds 2n poles
  // with the taper formula driven by the pair count n.
  return conjugate_pair_poles(2 * n);
}

namespace {

NodeSet nodes_for_degree(const ExperimentConfig& cfg, int n) {
  switch (cfg.node_source) {
    case NodeGenerator::chebyshev:
      return chebyshev_first_kind(cfg.sigma > 0 ? cfg.sigma : 2 * n + 1);
    case NodeGenerator::legendre:
      return legendre_gauss(cfg.sigma > 0 ? cfg.sigma : 2 * n + 1);
    case NodeGenerator::clustered:
      return clustered_nodes(cfg.sigma > 0 ? cfg.sigma : 2000, cfg.interval);
    case NodeGenerator::file:
      return load_dataset(cfg.node_file).first;
  }
  throw std::logic_error("nodes_for_degree: bad generator");
}

PoleSchedule poles_for_degree(const ExperimentConfig& cfg, int n) {
  switch (cfg.pole_source) {
    case PoleGenerator::tapered:
      return tapered_real_poles(n);
    case PoleGenerator::conjugate:
      return conjugate_poles_any(n);
    case PoleGenerator::file:
      return load_poles(cfg.pole_file);
    case PoleGenerator::none:
      break;
  }
  throw std::logic_error("poles_for_degree: no pole source");
}

// Seeded per-degree so rows are reproducible regardless of evaluation order.
void assign_random_orders(NodeSet& nodes, int max_order, std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(n) + 1)));
  std::uniform_int_distribution<int> dist(0, max_order);
  for (Node& nd : nodes.nodes) {
    nd.s = dist(rng);
    nd.alpha.assign(static_cast<std::size_t>(nd.s), Complex(1.0));
  }
}

Vector target_data(const NodeSet& nodes, TargetFn fn) {
  Vector f;
  f.reserve(nodes.dimension());
  for (const Node& nd : nodes.nodes)
    for (int i = nd.s; i >= 0; --i) f.push_back(target_value(fn, nd.z.real(), i));
  return f;
}

bool needs_random_orders(ProblemKind kind, BasisKind basis) {
  if (kind == ProblemKind::sobolev_poly || kind == ProblemKind::sobolev_rational) return true;
  return kind == ProblemKind::direct_baseline &&
         (basis == BasisKind::confluent_vandermonde || basis == BasisKind::confluent_cauchy);
}

ErrorRow run_row(const ExperimentConfig& cfg, int n) {
  ErrorRow row;
  row.n = n;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    NodeSet nodes = nodes_for_degree(cfg, n);
    Vector f;
    if (cfg.node_source == NodeGenerator::file) {
      f = load_dataset(cfg.node_file).second;
    } else {
      if (needs_random_orders(cfg.kind, cfg.baseline_basis) && cfg.max_order > 0)
        assign_random_orders(nodes, cfg.max_order, cfg.seed, n);
      f = target_data(nodes, cfg.target);
    }

    const std::vector<Complex> grid = sample_grid(cfg.interval, cfg.samples);
    const int eval_order = cfg.max_order;
    const std::vector<int> orders(grid.size(), eval_order);

    Vector approx;
    switch (cfg.kind) {
      case ProblemKind::poly: {
        auto [model, basis] = fit_poly(nodes, f, static_cast<std::size_t>(n), cfg.reorth_passes);
        approx = eval_poly(model, grid);
        break;
      }
      case ProblemKind::sobolev_poly: {
        auto [model, basis] =
            fit_sobolev_poly(nodes, f, static_cast<std::size_t>(n), cfg.reorth_passes);
        approx = eval_sobolev_poly(model, grid, orders);
        break;
      }
      case ProblemKind::rational: {
        const PoleSchedule poles = poles_for_degree(cfg, n);
        auto [model, basis] = fit_rational(nodes, f, poles, cfg.reorth_passes);
        approx = eval_rational(model, grid);
        break;
      }
      case ProblemKind::sobolev_rational: {
        const PoleSchedule poles = poles_for_degree(cfg, n);
        auto [model, basis] = fit_sobolev_rational(nodes, f, poles, cfg.reorth_passes);
        approx = eval_sobolev_rational(model, grid, orders);
        break;
      }
      case ProblemKind::direct_baseline: {
        PoleSchedule poles;
        const bool cauchy = cfg.baseline_basis != BasisKind::vandermonde &&
                            cfg.baseline_basis != BasisKind::confluent_vandermonde;
        if (cauchy) poles = poles_for_degree(cfg, n);
        DirectFitResult res =
            direct_fit_eval(cfg.baseline_basis, nodes, cauchy ? &poles : nullptr, f,
                            static_cast<std::size_t>(n), grid, orders);
        approx = std::move(res.values);
        row.flagged = res.rank_deficient;
        if (res.rank_deficient) row.message = "rank-deficient";
        break;
      }
    }

    // sup errors per derivative order; approx blocks are highest order first.
    const bool stacked =
        cfg.kind == ProblemKind::sobolev_poly || cfg.kind == ProblemKind::sobolev_rational ||
        cfg.kind == ProblemKind::direct_baseline;
    for (int i = 0; i <= eval_order; ++i) row.err[static_cast<std::size_t>(i)] = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double x = grid[j].real();
      if (!stacked) {
        row.err[0] = std::max(row.err[0],
                              std::abs(approx[j] - target_value(cfg.target, x, 0)));
        continue;
      }
      const std::size_t block = static_cast<std::size_t>(eval_order) + 1;
      for (int i = 0; i <= eval_order; ++i) {
        const Complex got = approx[j * block + block - 1 - static_cast<std::size_t>(i)];
        row.err[static_cast<std::size_t>(i)] =
            std::max(row.err[static_cast<std::size_t>(i)],
                     std::abs(got - target_value(cfg.target, x, i)));
      }
    }
  } catch (const std::exception& e) {
    row.flagged = true;
    row.message = e.what();
  }
  const auto t1 = std::chrono::steady_clock::now();
  row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return row;
}

}  // namespace

ErrorReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  ErrorReport report;
  report.seed = config.seed;
  for (int n : config.degrees) report.rows.push_back(run_row(config, n));
  if (!config.out.empty()) emit_report_file(report, ReportFormat::csv, config.out);
  return report;
}

namespace {

std::string err_cell(double v, ReportFormat format) {
  if (std::isnan(v)) return format == ReportFormat::markdown ? "-" : "";
  char buf[40];
  if (format == ReportFormat::markdown)
    std::snprintf(buf, sizeof buf, "%.3g", v);
  else
    std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void emit_report(const ErrorReport& report, ReportFormat format, std::ostream& os) {
  const char sep = format == ReportFormat::tsv ? '\t' : ',';
  if (format == ReportFormat::markdown) {
    os << "| n | err0 | err1 | err2 | runtime_ms | flag |\n";
    os << "|---|------|------|------|------------|------|\n";
    for (const ErrorRow& r : report.rows) {
      os << "| " << r.n;
      for (double e : r.err) os << " | " << err_cell(e, format);
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.3g", r.runtime_ms);
      os << " | " << buf << " | " << (r.flagged ? 1 : 0) << " |\n";
    }
    return;
  }
  os << "n" << sep << "err0" << sep << "err1" << sep << "err2" << sep << "runtime_ms" << sep
     << "flag\n";
  for (const ErrorRow& r : report.rows) {
    os << r.n;
    for (double e : r.err) os << sep << err_cell(e, format);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", r.runtime_ms);
    os << sep << buf << sep << (r.flagged ? 1 : 0) << "\n";
  }
}

void emit_report_file(const ErrorReport& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_report_file: cannot open " + path);
  emit_report(report, format, out);
}

ExperimentConfig example_config(const std::string& name) {
  ExperimentConfig cfg;
  cfg.seed = 17;
  if (name == "runge-chebyshev" || name == "runge-legendre") {
    cfg.kind = ProblemKind::sobolev_poly;
    cfg.node_source =
        name == "runge-legendre" ? NodeGenerator::legendre : NodeGenerator::chebyshev;
    cfg.degrees = {30, 60, 120, 240};
    cfg.interval = Interval::symmetric;
    cfg.max_order = 2;
    cfg.target = TargetFn::runge;
  } else if (name == "runge-baseline") {
    cfg.kind = ProblemKind::direct_baseline;
    cfg.baseline_basis = BasisKind::confluent_vandermonde;
    cfg.node_source = NodeGenerator::chebyshev;
    cfg.degrees = {30, 60, 120};
    cfg.interval = Interval::symmetric;
    cfg.max_order = 2;
    cfg.target = TargetFn::runge;
  } else if (name == "abs") {
    cfg.kind = ProblemKind::rational;
    cfg.node_source = NodeGenerator::clustered;
    cfg.sigma = 2000;
    cfg.pole_source = PoleGenerator::conjugate;
    cfg.degrees = {15, 30, 60, 120};
    cfg.interval = Interval::symmetric;
    cfg.target = TargetFn::absval;
    cfg.reorth_passes = 2;
  } else if (name == "sqrt") {
    cfg.kind = ProblemKind::rational;
    cfg.node_source = NodeGenerator::clustered;
    cfg.sigma = 2000;
    cfg.pole_source = PoleGenerator::tapered;
    cfg.degrees = {15, 30, 60, 120};
    cfg.interval = Interval::unit_positive;
    cfg.target = TargetFn::sqrt_t;
    cfg.reorth_passes = 1;
  } else if (name == "tsqrt") {
    cfg.kind = ProblemKind::sobolev_rational;
    cfg.node_source = NodeGenerator::clustered;
    cfg.sigma = 2000;
    cfg.pole_source = PoleGenerator::tapered;
    cfg.degrees = {10, 20, 40, 80};
    cfg.interval = Interval::unit_positive;
    cfg.max_order = 1;
    cfg.target = TargetFn::tsqrt;
    cfg.reorth_passes = 2;
  } else {
    throw std::invalid_argument("example_config: unknown experiment '" + name + "'");
  }
  return cfg;
}

namespace {

ProblemKind parse_kind(const std::string& s) {
  if (s == "poly") return ProblemKind::poly;
  if (s == "sobolev-poly") return ProblemKind::sobolev_poly;
  if (s == "rational") return ProblemKind::rational;
  if (s == "sobolev-rational") return ProblemKind::sobolev_rational;
  if (s == "direct-baseline") return ProblemKind::direct_baseline;
  throw std::invalid_argument("config: unknown kind '" + s + "'");
}

TargetFn parse_target(const std::string& s) {
  if (s == "one") return TargetFn::one;
  if (s == "runge") return TargetFn::runge;
  if (s == "abs") return TargetFn::absval;
  if (s == "sqrt") return TargetFn::sqrt_t;
  if (s == "tsqrt") return TargetFn::tsqrt;
  if (s == "none") return TargetFn::none;
  throw std::invalid_argument("config: unknown target '" + s + "'");
}

BasisKind parse_basis(const std::string& s) {
  if (s == "vandermonde") return BasisKind::vandermonde;
  if (s == "confluent-vandermonde") return BasisKind::confluent_vandermonde;
  if (s == "cauchy") return BasisKind::cauchy_with_ones;
  if (s == "confluent-cauchy") return BasisKind::confluent_cauchy;
  if (s == "scaled-cauchy") return BasisKind::scaled_cauchy;
  throw std::invalid_argument("config: unknown basis '" + s + "'");
}

}  // namespace

ExperimentConfig config_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  nlohmann::json j;
  in >> j;

  ExperimentConfig cfg;
  cfg.kind = parse_kind(j.at("kind").get<std::string>());
  const std::string nodes = j.value("nodes", std::string("chebyshev"));
  if (nodes.rfind("file:", 0) == 0) {
    cfg.node_source = NodeGenerator::file;
    cfg.node_file = nodes.substr(5);
  } else if (nodes == "chebyshev") {
    cfg.node_source = NodeGenerator::chebyshev;
  } else if (nodes == "legendre") {
    cfg.node_source = NodeGenerator::legendre;
  } else if (nodes == "clustered") {
    cfg.node_source = NodeGenerator::clustered;
  } else {
    throw std::invalid_argument("config: unknown node source '" + nodes + "'");
  }
  cfg.sigma = j.value("sigma", 0);
  const std::string poles = j.value("poles", std::string(""));
  if (poles.rfind("file:", 0) == 0) {
    cfg.pole_source = PoleGenerator::file;
    cfg.pole_file = poles.substr(5);
  } else if (poles == "tapered") {
    cfg.pole_source = PoleGenerator::tapered;
  } else if (poles == "conjugate") {
    cfg.pole_source = PoleGenerator::conjugate;
  } else if (!poles.empty()) {
    throw std::invalid_argument("config: unknown pole source '" + poles + "'");
  }
  cfg.degrees = j.at("degrees").get<std::vector<int>>();
  cfg.samples = j.value("samples", 1000);
  const std::string interval = j.value("interval", std::string("symmetric"));
  if (interval == "symmetric") {
    cfg.interval = Interval::symmetric;
  } else if (interval == "unit-positive") {
    cfg.interval = Interval::unit_positive;
  } else {
    throw std::invalid_argument("config: unknown interval '" + interval + "'");
  }
  cfg.max_order = j.value("max_order", 0);
  cfg.reorth_passes = j.value("reorth", 2);
  cfg.seed = j.value("seed", std::uint64_t(0));
  cfg.target = parse_target(j.value("target", std::string("none")));
  if (j.contains("basis")) cfg.baseline_basis = parse_basis(j.at("basis").get<std::string>());
  cfg.out = j.value("out", std::string(""));
  return cfg;
}

}  // namespace kryfit
