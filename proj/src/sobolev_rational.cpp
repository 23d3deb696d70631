#include "kryfit/sobolev_rational.hpp"

#include <cmath>

namespace kryfit {

std::pair<SobolevRationalFitModel, OrthoBasis> fit_sobolev_rational(
    const NodeSet& nodes, const Vector& f, const PoleSchedule& poles, int reorth_passes) {
  poles.validate();
  auto [J, v, w] = build_jordan(nodes);
  const std::size_t m = J.dimension();
  const std::size_t n = poles.count();
  if (f.size() != m) throw std::invalid_argument("fit_sobolev_rational: data length mismatch");
  if (!finite(f)) throw std::invalid_argument("fit_sobolev_rational: non-finite data");
  if (n + 1 > m) throw std::invalid_argument("fit_sobolev_rational: need n <= m-1");

  const double vnorm = norm(v);
  if (vnorm == 0.0) throw std::invalid_argument("fit_sobolev_rational: all weights zero");

  OrthoBasis Q(m);
  {
    Vector q0 = v;
    for (Complex& z : q0) z /= vnorm;
    Q.push(std::move(q0));
  }

  // Same continuation strategy as fit_rational: resolvent of q_0 first, with
  // a chained fallback through the schedule's shift when the fresh candidate
  // is numerically dependent on the basis.
  Hessenberg H(n), K(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const Ratio& xi = poles.poles[k - 1];
    const Ratio& phi = poles.shifts[k - 1];
    Vector cand = J.shifted_solve(xi.den, xi.num, Q.col(0));
    bool fresh = true;
    OrthogonalizeResult res;
    try {
      res = orthogonalize_next(cand, Q, reorth_passes);
    } catch (const BreakdownError&) {
      fresh = false;
      cand = J.shifted_solve(xi.den, xi.num, J.shifted_apply(phi.den, phi.num, Q.col(k - 1)));
      res = orthogonalize_next(cand, Q, reorth_passes);
    }
    for (std::size_t j = 0; j <= k; ++j) {
      const Complex c = (j < k) ? res.coeffs[j] : Complex(res.tail_norm);
      if (fresh) {
        K(j, k - 1) = xi.den * c;
        H(j, k - 1) = xi.num * c + ((j == 0) ? Complex(1.0) : Complex(0.0));
      } else {
        K(j, k - 1) = xi.den * c - ((j == k - 1) ? phi.den : Complex(0.0));
        H(j, k - 1) = xi.num * c - ((j == k - 1) ? phi.num : Complex(0.0));
      }
    }
    if (H(k, k - 1) == 0.0 && K(k, k - 1) == 0.0)
      throw std::runtime_error("fit_sobolev_rational: degenerate pencil subdiagonal");
    Q.push(std::move(res.unit));
  }

  SobolevRationalFitModel model;
  model.hess_h = std::move(H);
  model.hess_k = std::move(K);
  model.y = project_rhs(Q, w, f);
  model.r0 = 1.0 / vnorm;
  model.poles = poles;
  return {std::move(model), std::move(Q)};
}

Matrix sobolev_rational_basis(const SobolevRationalFitModel& model,
                              const std::vector<Complex>& sample_nodes,
                              const std::vector<int>& sample_orders) {
  if (sample_nodes.size() != sample_orders.size())
    throw std::invalid_argument("sample nodes and orders must have equal length");
  std::vector<JordanOperator::Block> blocks;
  blocks.reserve(sample_nodes.size());
  for (std::size_t j = 0; j < sample_nodes.size(); ++j) {
    if (sample_orders[j] < 0) throw std::invalid_argument("negative sample order");
    blocks.push_back(
        {sample_nodes[j], Vector(static_cast<std::size_t>(sample_orders[j]), Complex(1.0))});
  }
  const JordanOperator X(std::move(blocks));
  const std::size_t M = X.dimension();
  const std::size_t n = model.hess_h.cols();
  const Hessenberg& H = model.hess_h;
  const Hessenberg& K = model.hess_k;

  std::vector<Vector> u(n + 1);
  u[0].assign(M, 0.0);
  {
    std::size_t off = 0;
    for (const auto& b : X.blocks()) {
      u[0][off + b.size() - 1] = model.r0;
      off += b.size();
    }
  }
  for (std::size_t k = 1; k <= n; ++k) {
    Vector acc(M, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      const Vector xu = X.apply(u[j]);
      const Complex h = H(j, k - 1);
      const Complex kk = K(j, k - 1);
      for (std::size_t i = 0; i < M; ++i) acc[i] += kk * xu[i] - h * u[j][i];
    }
    // (h_{k+1,k} I - k_{k+1,k} X)^{-1} acc, block-bidiagonal back-substitution.
    u[k] = X.shifted_solve(-K(k, k - 1), -H(k, k - 1), acc);
  }

  Matrix U(M, n + 1);
  for (std::size_t k = 0; k <= n; ++k) U.set_column(k, u[k]);
  return U;
}

Vector eval_sobolev_rational(const SobolevRationalFitModel& model,
                             const std::vector<Complex>& sample_nodes,
                             const std::vector<int>& sample_orders) {
  const Matrix U = sobolev_rational_basis(model, sample_nodes, sample_orders);
  Vector r = matvec(U, model.y);
  std::size_t off = 0;
  for (int sj : sample_orders) {
    const std::size_t s = static_cast<std::size_t>(sj);
    double fact = 1.0;
    for (std::size_t i = 1; i <= s; ++i) {
      fact *= static_cast<double>(i);
      r[off + s - i] *= fact;
    }
    off += s + 1;
  }
  return r;
}

}  // namespace kryfit
