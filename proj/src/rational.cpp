#include "kryfit/rational.hpp"

#include <cmath>

namespace kryfit {

std::pair<Hessenberg, Hessenberg> assemble_pencil(const Hessenberg& raw,
                                                  const PoleSchedule& poles) {
  const std::size_t n = raw.cols();
  if (poles.count() != n) throw std::invalid_argument("assemble_pencil: pole count mismatch");
  // Both updates read the raw Arnoldi coefficients; K first, then H.
  Hessenberg K(n), H(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Ratio& xi = poles.poles[k];
    const Ratio& phi = poles.shifts[k];
    for (std::size_t i = 0; i <= k + 1; ++i) {
      const Complex h = raw(i, k);
      const Complex eye = (i == k) ? 1.0 : 0.0;
      K(i, k) = h * xi.den - eye * phi.den;
      H(i, k) = h * xi.num - eye * phi.num;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (H(k + 1, k) == 0.0 && K(k + 1, k) == 0.0)
      throw std::runtime_error("assemble_pencil: degenerate pencil subdiagonal");
  }
  return {std::move(H), std::move(K)};
}

std::pair<RationalFitModel, OrthoBasis> fit_rational(const NodeSet& nodes, const Vector& f,
                                                     const PoleSchedule& poles,
                                                     int reorth_passes) {
  nodes.validate();
  poles.validate();
  if (!nodes.plain())
    throw std::invalid_argument("fit_rational: nodes with s_j > 0 need fit_sobolev_rational");
  const std::size_t m = nodes.count();
  const std::size_t n = poles.count();
  if (f.size() != m) throw std::invalid_argument("fit_rational: data length mismatch");
  if (!finite(f)) throw std::invalid_argument("fit_rational: non-finite data");
  if (n + 1 > m) throw std::invalid_argument("fit_rational: need n <= m-1");

  Vector v(m), weights(m);
  for (std::size_t j = 0; j < m; ++j) v[j] = weights[j] = nodes.nodes[j].w;
  const double vnorm = norm(v);
  if (vnorm == 0.0) throw std::invalid_argument("fit_rational: all weights zero");

  OrthoBasis Q(m);
  {
    Vector q0 = v;
    for (Complex& z : q0) z /= vnorm;
    Q.push(std::move(q0));
  }

  // Continuation strategy: the candidate for step k is the resolvent applied
  // to q_0, which keeps successive candidates well separated and matches the
  // accuracy of a dense QR on the explicit basis. When that candidate is
  // numerically dependent on the basis (deep pole schedules at large n), fall
  // back to chaining from q_{k-1} through the schedule's shift, which keeps
  // the iteration going at reduced accuracy. Both variants admit the same
  // pencil relation Z Q K = Q H with subdiagonal ratio xi_k.
  Hessenberg H(n), K(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const Ratio& xi = poles.poles[k - 1];
    const Ratio& phi = poles.shifts[k - 1];
    Vector cand(m);
    for (std::size_t j = 0; j < m; ++j) {
      const Complex z = nodes.nodes[j].z;
      const Complex den = xi.den * z - xi.num;
      if (den == 0.0) throw std::invalid_argument("fit_rational: pole equals a node");
      cand[j] = Q.col(0)[j] / den;
    }
    bool fresh = true;
    OrthogonalizeResult res;
    try {
      res = orthogonalize_next(cand, Q, reorth_passes);
    } catch (const BreakdownError&) {
      fresh = false;
      for (std::size_t j = 0; j < m; ++j) {
        const Complex z = nodes.nodes[j].z;
        cand[j] = (phi.den * z - phi.num) * Q.col(k - 1)[j] / (xi.den * z - xi.num);
      }
      res = orthogonalize_next(cand, Q, reorth_passes);
    }
    for (std::size_t j = 0; j <= k; ++j) {
      const Complex c = (j < k) ? res.coeffs[j] : Complex(res.tail_norm);
      if (fresh) {
        // (nu Z - mu) cand = q_0, cand = sum_j c_j q_j.
        K(j, k - 1) = xi.den * c;
        H(j, k - 1) = xi.num * c + ((j == 0) ? Complex(1.0) : Complex(0.0));
      } else {
        // (nu Z - mu) cand = (eta Z - rho) q_{k-1}.
        K(j, k - 1) = xi.den * c - ((j == k - 1) ? phi.den : Complex(0.0));
        H(j, k - 1) = xi.num * c - ((j == k - 1) ? phi.num : Complex(0.0));
      }
    }
    if (H(k, k - 1) == 0.0 && K(k, k - 1) == 0.0)
      throw std::runtime_error("fit_rational: degenerate pencil subdiagonal");
    Q.push(std::move(res.unit));
  }

  RationalFitModel model;
  model.hess_h = std::move(H);
  model.hess_k = std::move(K);
  model.y = project_rhs(Q, weights, f);
  model.r0 = 1.0 / vnorm;
  model.poles = poles;
  return {std::move(model), std::move(Q)};
}

Matrix rational_basis(const Hessenberg& H, const Hessenberg& K, double r0,
                      const std::vector<Complex>& points, bool flip_sign) {
  const std::size_t M = points.size();
  const std::size_t n = H.cols();
  const double sgn = flip_sign ? -1.0 : 1.0;

  std::vector<Vector> u(n + 1);
  u[0].assign(M, Complex(r0));
  for (std::size_t k = 1; k <= n; ++k) {
    Vector uk(M, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      const Complex h = sgn * H(j, k - 1);
      const Complex kk = sgn * K(j, k - 1);
      for (std::size_t i = 0; i < M; ++i) uk[i] += h * u[j][i] - kk * points[i] * u[j][i];
    }
    const Complex hs = sgn * H(k, k - 1);
    const Complex ks = sgn * K(k, k - 1);
    for (std::size_t i = 0; i < M; ++i) {
      const Complex den = ks * points[i] - hs;
      if (den == 0.0)
        throw std::invalid_argument("rational_basis: evaluation point hits a pole");
      uk[i] /= den;
    }
    u[k] = std::move(uk);
  }

  Matrix U(M, n + 1);
  for (std::size_t k = 0; k <= n; ++k) U.set_column(k, u[k]);
  return U;
}

Vector eval_rational(const RationalFitModel& model, const std::vector<Complex>& points) {
  const Matrix U = rational_basis(model.hess_h, model.hess_k, model.r0, points);
  return matvec(U, model.y);
}

}  // namespace kryfit
