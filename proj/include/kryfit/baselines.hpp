#pragma once

#include <optional>
#include <utility>

#include "kryfit/nodes.hpp"

namespace kryfit {

enum class BasisKind {
  vandermonde,
  confluent_vandermonde,
  cauchy_with_ones,
  confluent_cauchy,
  scaled_cauchy,
};

struct ExplicitBasisMatrix {
  BasisKind kind;
  Matrix matrix;  ///< m x (n+1)
};

/// Explicit coefficient matrix of the chosen basis at the fitting nodes,
/// with derivative rows (highest order first) for confluent kinds. Cauchy
/// kinds require a pole schedule with n finite poles.
ExplicitBasisMatrix build_basis_matrix(BasisKind kind, const NodeSet& nodes,
                                       const PoleSchedule* poles, std::size_t n);

/// Basis (and derivative) values at arbitrary sample nodes/orders, stacked
/// like the confluent layout. Used for direct evaluation of a coefficient fit.
Matrix explicit_basis_values(BasisKind kind, const std::vector<Complex>& xs,
                             const std::vector<int>& orders, const PoleSchedule* poles,
                             std::size_t n);

struct DirectFitResult {
  Vector values;  ///< stacked sample values, highest derivative first per node
  Vector coeffs;
  bool rank_deficient = false;
};

/// Solves W B c ~= W f by Householder QR and evaluates the fit analytically
/// in the explicit basis. Rank deficiency is flagged, not fatal.
DirectFitResult direct_fit_eval(BasisKind kind, const NodeSet& nodes,
                                const PoleSchedule* poles, const Vector& f, std::size_t n,
                                const std::vector<Complex>& sample_nodes,
                                const std::vector<int>& sample_orders);

/// A B - B S with the left-shift matrix S, plus the numerical rank of the
/// residual at tolerance 1e-10.
std::pair<Matrix, std::size_t> displacement_residual_poly(const Matrix& A, const Matrix& B);

/// A B - B Psi with Psi = diag(1, xi_1, ..., xi_n), plus the residual rank.
std::pair<Matrix, std::size_t> displacement_residual_rational(const Matrix& A, const Matrix& B,
                                                              const std::vector<Complex>& poles);

}  // namespace kryfit
