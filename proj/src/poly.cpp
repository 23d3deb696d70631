#include "kryfit/poly.hpp"

#include <cmath>

namespace kryfit {

std::pair<PolyFitModel, OrthoBasis> fit_poly(const NodeSet& nodes, const Vector& f,
                                             std::size_t n, int reorth_passes) {
  nodes.validate();
  if (!nodes.plain())
    throw std::invalid_argument("fit_poly: nodes with s_j > 0 need fit_sobolev_poly");
  const std::size_t m = nodes.count();
  if (f.size() != m) throw std::invalid_argument("fit_poly: data length mismatch");
  if (!finite(f)) throw std::invalid_argument("fit_poly: non-finite data");
  if (n + 1 > m) throw std::invalid_argument("fit_poly: need n <= m-1");

  Vector v(m), weights(m);
  for (std::size_t j = 0; j < m; ++j) v[j] = weights[j] = nodes.nodes[j].w;
  const double vnorm = norm(v);
  if (vnorm == 0.0) throw std::invalid_argument("fit_poly: all weights zero");

  OrthoBasis Q(m);
  {
    Vector q0 = v;
    for (Complex& z : q0) z /= vnorm;
    Q.push(std::move(q0));
  }

  Hessenberg H(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Vector cand(m);
    for (std::size_t j = 0; j < m; ++j) cand[j] = nodes.nodes[j].z * Q.col(k - 1)[j];
    OrthogonalizeResult res = orthogonalize_next(cand, Q, reorth_passes);
    for (std::size_t j = 0; j < k; ++j) H(j, k - 1) = res.coeffs[j];
    H(k, k - 1) = res.tail_norm;
    Q.push(std::move(res.unit));
  }

  PolyFitModel model;
  model.hessenberg = std::move(H);
  model.y = project_rhs(Q, weights, f);
  model.p0 = 1.0 / vnorm;
  model.degree = n;
  return {std::move(model), std::move(Q)};
}

Matrix poly_basis(const PolyFitModel& model, const std::vector<Complex>& points) {
  const std::size_t M = points.size();
  const std::size_t n = model.degree;
  const Hessenberg& H = model.hessenberg;

  std::vector<Vector> u(n + 1);
  u[0].assign(M, Complex(model.p0));
  for (std::size_t k = 1; k <= n; ++k) {
    Vector uk(M);
    for (std::size_t i = 0; i < M; ++i) uk[i] = points[i] * u[k - 1][i];
    for (std::size_t j = 0; j < k; ++j) {
      const Complex h = H(j, k - 1);
      for (std::size_t i = 0; i < M; ++i) uk[i] -= h * u[j][i];
    }
    const Complex d = H(k, k - 1);
    for (Complex& z : uk) z /= d;
    u[k] = std::move(uk);
  }

  Matrix U(M, n + 1);
  for (std::size_t k = 0; k <= n; ++k) U.set_column(k, u[k]);
  return U;
}

Vector eval_poly(const PolyFitModel& model, const std::vector<Complex>& points) {
  return matvec(poly_basis(model, points), model.y);
}

}  // namespace kryfit
