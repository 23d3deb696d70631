#pragma once

#include <utility>

#include "kryfit/nodes.hpp"

namespace kryfit {

/// Result of a weighted polynomial fit: the Hessenberg recurrence, the
/// coefficients in the induced orthonormal-polynomial basis and the
/// degree-zero basis value.
struct PolyFitModel {
  Hessenberg hessenberg;
  Vector y;
  double p0 = 0.0;
  std::size_t degree = 0;
};

/// Vandermonde-with-Arnoldi fit of the weighted least squares problem
/// sum |w_j|^2 |p(z_j) - f_j|^2 over polynomials of degree <= n.
std::pair<PolyFitModel, OrthoBasis> fit_poly(const NodeSet& nodes, const Vector& f,
                                             std::size_t n, int reorth_passes = 2);

/// Values of the orthonormal polynomials p_0..p_n at the given points,
/// generated by running the Hessenberg recurrence forward.
Matrix poly_basis(const PolyFitModel& model, const std::vector<Complex>& points);

/// p(x_j) = sum_k y_k p_k(x_j).
Vector eval_poly(const PolyFitModel& model, const std::vector<Complex>& points);

}  // namespace kryfit
