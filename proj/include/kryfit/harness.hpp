#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>

#include "kryfit/baselines.hpp"
#include "kryfit/nodes.hpp"

namespace kryfit {

enum class ProblemKind { poly, sobolev_poly, rational, sobolev_rational, direct_baseline };
enum class NodeGenerator { chebyshev, legendre, clustered, file };
enum class PoleGenerator { none, tapered, conjugate, file };
enum class TargetFn { none, one, runge, absval, sqrt_t, tsqrt };
enum class ReportFormat { csv, tsv, markdown };

struct ExperimentConfig {
  ProblemKind kind = ProblemKind::poly;
  NodeGenerator node_source = NodeGenerator::chebyshev;
  std::string node_file;
  int sigma = 0;  ///< node count; 0 picks the per-kind default (2n+1 or 2000)
  PoleGenerator pole_source = PoleGenerator::none;
  std::string pole_file;
  std::vector<int> degrees;
  int samples = 1000;
  Interval interval = Interval::symmetric;
  int max_order = 0;  ///< cap for the random per-node derivative orders
  int reorth_passes = 2;
  std::uint64_t seed = 0;
  TargetFn target = TargetFn::none;
  BasisKind baseline_basis = BasisKind::vandermonde;
  std::string out;

  void validate() const;
};

struct ErrorRow {
  int n = 0;
  /// sup error per derivative order over the sample grid; NaN when unused.
  std::array<double, 3> err{std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN()};
  double runtime_ms = 0.0;
  bool flagged = false;
  std::string message;
};

struct ErrorReport {
  std::uint64_t seed = 0;
  std::vector<ErrorRow> rows;
};

/// Analytic target value f^(order)(x).
double target_value(TargetFn fn, double x, int order);

/// Reads the dataset CSV (header z_re,z_im,w,s,f0,f1,...); f comes back in
/// block layout, highest derivative first within each node.
std::pair<NodeSet, Vector> load_dataset(const std::string& path);
void save_dataset(const NodeSet& nodes, const Vector& f, const std::string& path);

/// Pole CSV with header xi_re,xi_im; shifts are {-inf, xi_1, ...}.
PoleSchedule load_poles(const std::string& path);

/// Uniform evaluation grid: endpoints included on [-1,1], {i/M} on (0,1].
std::vector<Complex> sample_grid(Interval interval, int count);

/// Conjugate tapered poles for any n; odd n drops the trailing conjugate.
PoleSchedule conjugate_poles_any(int n);

ErrorReport run_experiment(const ExperimentConfig& config);

void emit_report(const ErrorReport& report, ReportFormat format, std::ostream& os);
void emit_report_file(const ErrorReport& report, ReportFormat format, const std::string& path);

/// Canned configurations for the bundled experiments: runge-chebyshev,
/// runge-legendre, runge-baseline, abs, sqrt, tsqrt.
ExperimentConfig example_config(const std::string& name);
ExperimentConfig config_from_json_file(const std::string& path);

}  // namespace kryfit
