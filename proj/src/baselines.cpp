#include "kryfit/baselines.hpp"

#include <cmath>

#include "kryfit/sobolev_poly.hpp"

namespace kryfit {

namespace {

bool is_cauchy(BasisKind kind) {
  return kind == BasisKind::cauchy_with_ones || kind == BasisKind::confluent_cauchy ||
         kind == BasisKind::scaled_cauchy;
}

std::vector<Complex> finite_poles(const PoleSchedule* poles, std::size_t n) {
  if (!poles || poles->count() != n)
    throw std::invalid_argument("explicit basis: need a pole schedule with n poles");
  std::vector<Complex> xs(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (poles->poles[k].infinite())
      throw std::invalid_argument("explicit basis: poles must be finite");
    xs[k] = poles->poles[k].value();
  }
  return xs;
}

Complex ipow(Complex z, int e) {
  Complex p = 1.0;
  for (int r = 0; r < e; ++r) p *= z;
  return p;
}

// Row of derivative order i of the basis at point z, written into row `row`.
void basis_row(BasisKind kind, Matrix& B, std::size_t row, Complex z, int order,
               const std::vector<Complex>& xi, std::size_t n) {
  const int i = order;
  double fact = 1.0;
  for (int r = 2; r <= i; ++r) fact *= r;
  if (kind == BasisKind::vandermonde || kind == BasisKind::confluent_vandermonde) {
    for (std::size_t k = 0; k <= n; ++k) {
      if (static_cast<int>(k) < i) {
        B(row, k) = 0.0;
        continue;
      }
      double coef = 1.0;
      for (int r = 0; r < i; ++r) coef *= static_cast<double>(k - r);
      B(row, k) = coef * ipow(z, static_cast<int>(k) - i);
    }
  } else {
    B(row, 0) = (i == 0) ? 1.0 : 0.0;
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t k = 1; k <= n; ++k) {
      const Complex d = z - xi[k - 1];
      if (d == 0.0) throw std::invalid_argument("explicit basis: pole equals a node");
      Complex val = sign * fact / ipow(d, i + 1);
      if (kind == BasisKind::scaled_cauchy) val *= xi[k - 1];
      B(row, k) = val;
    }
  }
}

}  // namespace

ExplicitBasisMatrix build_basis_matrix(BasisKind kind, const NodeSet& nodes,
                                       const PoleSchedule* poles, std::size_t n) {
  nodes.validate();
  std::vector<Complex> xi;
  if (is_cauchy(kind)) xi = finite_poles(poles, n);

  const std::size_t m = nodes.dimension();
  Matrix B(m, n + 1);
  std::size_t row = 0;
  for (const Node& nd : nodes.nodes) {
    for (int i = nd.s; i >= 0; --i) basis_row(kind, B, row++, nd.z, i, xi, n);
  }
  return {kind, std::move(B)};
}

Matrix explicit_basis_values(BasisKind kind, const std::vector<Complex>& xs,
                             const std::vector<int>& orders, const PoleSchedule* poles,
                             std::size_t n) {
  if (xs.size() != orders.size())
    throw std::invalid_argument("explicit_basis_values: length mismatch");
  std::vector<Complex> xi;
  if (is_cauchy(kind)) xi = finite_poles(poles, n);

  std::size_t M = 0;
  for (int s : orders) M += static_cast<std::size_t>(s) + 1;
  Matrix B(M, n + 1);
  std::size_t row = 0;
  for (std::size_t j = 0; j < xs.size(); ++j)
    for (int i = orders[j]; i >= 0; --i) basis_row(kind, B, row++, xs[j], i, xi, n);
  return B;
}

DirectFitResult direct_fit_eval(BasisKind kind, const NodeSet& nodes,
                                const PoleSchedule* poles, const Vector& f, std::size_t n,
                                const std::vector<Complex>& sample_nodes,
                                const std::vector<int>& sample_orders) {
  ExplicitBasisMatrix basis = build_basis_matrix(kind, nodes, poles, n);
  const std::size_t m = basis.matrix.rows();
  if (f.size() != m) throw std::invalid_argument("direct_fit_eval: data length mismatch");

  auto [J, v, w] = build_jordan(nodes);
  (void)J;
  (void)v;
  Matrix WB = basis.matrix;
  Vector wf(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k <= n; ++k) WB(i, k) *= w[i];
    wf[i] = w[i] * f[i];
  }

  DirectFitResult out;
  out.coeffs = solve_dense_ls(WB, wf, &out.rank_deficient);
  const Matrix S = explicit_basis_values(kind, sample_nodes, sample_orders, poles, n);
  out.values = matvec(S, out.coeffs);
  return out;
}

std::pair<Matrix, std::size_t> displacement_residual_poly(const Matrix& A, const Matrix& B) {
  if (A.cols() != B.rows()) throw std::invalid_argument("displacement: dimension mismatch");
  Matrix R = matmul(A, B);
  // Subtract B S, i.e. shift columns of B right by one.
  for (std::size_t i = 0; i < R.rows(); ++i)
    for (std::size_t j = 0; j + 1 < R.cols(); ++j) R(i, j) -= B(i, j + 1);
  const std::size_t rank = numerical_rank(R, 1e-10);
  return {std::move(R), rank};
}

std::pair<Matrix, std::size_t> displacement_residual_rational(
    const Matrix& A, const Matrix& B, const std::vector<Complex>& poles) {
  if (A.cols() != B.rows()) throw std::invalid_argument("displacement: dimension mismatch");
  if (poles.size() + 1 != B.cols())
    throw std::invalid_argument("displacement: need n poles for n+1 columns");
  Matrix R = matmul(A, B);
  for (std::size_t i = 0; i < R.rows(); ++i) {
    R(i, 0) -= B(i, 0);  // Psi_11 = 1
    for (std::size_t j = 1; j < R.cols(); ++j) R(i, j) -= B(i, j) * poles[j - 1];
  }
  const std::size_t rank = numerical_rank(R, 1e-10);
  return {std::move(R), rank};
}

}  // namespace kryfit
