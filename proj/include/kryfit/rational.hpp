#pragma once

#include <utility>

#include "kryfit/nodes.hpp"

namespace kryfit {

/// Rational fit: Hessenberg pencil (H, K), coefficients in the orthonormal
/// rational basis, degree-zero value and the pole schedule.
struct RationalFitModel {
  Hessenberg hess_h;
  Hessenberg hess_k;
  Vector y;
  double r0 = 0.0;
  PoleSchedule poles;
};

/// Rational Arnoldi fit of sum |w_j|^2 |r(z_j) - f_j|^2 over R_n^Xi.
std::pair<RationalFitModel, OrthoBasis> fit_rational(const NodeSet& nodes, const Vector& f,
                                                     const PoleSchedule& poles,
                                                     int reorth_passes = 2);

/// Values of the orthonormal rational functions r_0..r_n at the points,
/// generated through the pencil recurrence. `flip_sign` negates both sides
/// of the accumulation and the final solve; the result is identical.
Matrix rational_basis(const Hessenberg& H, const Hessenberg& K, double r0,
                      const std::vector<Complex>& points, bool flip_sign = false);

/// r(x_j) = sum_k y_k r_k(x_j). Points must avoid the poles.
Vector eval_rational(const RationalFitModel& model, const std::vector<Complex>& points);

/// Turns the raw Arnoldi coefficient matrix into the pencil of the rational
/// recurrence: K = H_raw diag(nu) - I diag(eta), H = H_raw diag(mu) - I diag(rho).
std::pair<Hessenberg, Hessenberg> assemble_pencil(const Hessenberg& raw,
                                                  const PoleSchedule& poles);

}  // namespace kryfit
