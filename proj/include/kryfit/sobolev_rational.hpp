#pragma once

#include <utility>

#include "kryfit/nodes.hpp"
#include "kryfit/rational.hpp"
#include "kryfit/sobolev_poly.hpp"

namespace kryfit {

struct SobolevRationalFitModel {
  Hessenberg hess_h;
  Hessenberg hess_k;
  Vector y;
  double r0 = 0.0;
  PoleSchedule poles;
};

/// Rational Arnoldi on the Jordan-like operator; f in block layout
/// (f^(s_j), ..., f', f) per node. Shifted Jordan solves run block-by-block.
std::pair<SobolevRationalFitModel, OrthoBasis> fit_sobolev_rational(
    const NodeSet& nodes, const Vector& f, const PoleSchedule& poles, int reorth_passes = 2);

/// Scaled rational basis values at the sample nodes (rows of order i hold
/// r_k^{(i)}(x_j) / i!, sampling alpha = 1), one block per node, highest
/// order first.
Matrix sobolev_rational_basis(const SobolevRationalFitModel& model,
                              const std::vector<Complex>& sample_nodes,
                              const std::vector<int>& sample_orders);

/// Stacked (r^(s~_j)(x_j), ..., r'(x_j), r(x_j)) per sample node, plain
/// derivatives. Samples must avoid the poles.
Vector eval_sobolev_rational(const SobolevRationalFitModel& model,
                             const std::vector<Complex>& sample_nodes,
                             const std::vector<int>& sample_orders);

}  // namespace kryfit
