#include "kryfit/sobolev_poly.hpp"

#include <cmath>

namespace kryfit {

JordanOperator::JordanOperator(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  for (const Block& b : blocks_) {
    for (const Complex& a : b.alpha)
      if (a == 0.0) throw std::invalid_argument("JordanOperator: zero alpha");
    dim_ += b.size();
  }
}

Vector JordanOperator::apply(const Vector& x) const {
  return shifted_apply(1.0, 0.0, x);
}

Vector JordanOperator::shifted_apply(Complex eta, Complex rho, const Vector& x) const {
  if (x.size() != dim_) throw std::invalid_argument("JordanOperator: dimension mismatch");
  Vector y(dim_);
  std::size_t off = 0;
  for (const Block& b : blocks_) {
    const std::size_t s = b.alpha.size();
    const Complex d = eta * b.z - rho;
    for (std::size_t i = 0; i <= s; ++i) {
      Complex v = d * x[off + i];
      if (i < s) v += eta * b.alpha[s - 1 - i] * x[off + i + 1];  // row i holds alpha_{s-i}
      y[off + i] = v;
    }
    off += s + 1;
  }
  return y;
}

Vector JordanOperator::shifted_solve(Complex nu, Complex mu, const Vector& b) const {
  if (b.size() != dim_) throw std::invalid_argument("JordanOperator: dimension mismatch");
  Vector x(dim_);
  std::size_t off = 0;
  for (const Block& blk : blocks_) {
    const std::size_t s = blk.alpha.size();
    const Complex d = nu * blk.z - mu;
    if (d == 0.0)
      throw std::invalid_argument("JordanOperator: shifted solve is singular (pole equals node)");
    x[off + s] = b[off + s] / d;
    for (std::size_t i = s; i-- > 0;)
      x[off + i] = (b[off + i] - nu * blk.alpha[s - 1 - i] * x[off + i + 1]) / d;
    off += s + 1;
  }
  return x;
}

Matrix JordanOperator::dense() const {
  Matrix J(dim_, dim_);
  std::size_t off = 0;
  for (const Block& b : blocks_) {
    const std::size_t s = b.alpha.size();
    for (std::size_t i = 0; i <= s; ++i) {
      J(off + i, off + i) = b.z;
      if (i < s) J(off + i, off + i + 1) = b.alpha[s - 1 - i];
    }
    off += s + 1;
  }
  return J;
}

double JordanOperator::max_abs() const {
  double m = 0.0;
  for (const Block& b : blocks_) {
    m = std::max(m, std::abs(b.z));
    for (const Complex& a : b.alpha) m = std::max(m, std::abs(a));
  }
  return m;
}

std::tuple<JordanOperator, Vector, Vector> build_jordan(const NodeSet& nodes) {
  nodes.validate();
  std::vector<JordanOperator::Block> blocks;
  blocks.reserve(nodes.count());
  for (const Node& nd : nodes.nodes) blocks.push_back({nd.z, nd.alpha});
  JordanOperator J(std::move(blocks));

  Vector v(J.dimension(), 0.0), w(J.dimension(), 0.0);
  std::size_t off = 0;
  for (const Node& nd : nodes.nodes) {
    const std::size_t s = static_cast<std::size_t>(nd.s);
    v[off + s] = nd.w;
    // Entry of derivative order i sits at depth s - i in the block.
    Complex prod = 1.0;
    double fact = 1.0;
    w[off + s] = nd.w;
    for (std::size_t i = 1; i <= s; ++i) {
      prod *= nd.alpha[i - 1];
      fact *= static_cast<double>(i);
      w[off + s - i] = prod / fact * nd.w;
    }
    off += s + 1;
  }
  return {std::move(J), std::move(v), std::move(w)};
}

std::pair<SobolevPolyFitModel, OrthoBasis> fit_sobolev_poly(const NodeSet& nodes,
                                                            const Vector& f, std::size_t n,
                                                            int reorth_passes) {
  auto [J, v, w] = build_jordan(nodes);
  const std::size_t m = J.dimension();
  if (f.size() != m) throw std::invalid_argument("fit_sobolev_poly: data length mismatch");
  if (!finite(f)) throw std::invalid_argument("fit_sobolev_poly: non-finite data");
  if (n + 1 > m) throw std::invalid_argument("fit_sobolev_poly: need n <= m-1");

  const double vnorm = norm(v);
  if (vnorm == 0.0) throw std::invalid_argument("fit_sobolev_poly: all weights zero");

  OrthoBasis Q(m);
  {
    Vector q0 = v;
    for (Complex& z : q0) z /= vnorm;
    Q.push(std::move(q0));
  }

  Hessenberg H(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Vector cand = J.apply(Q.col(k - 1));
    OrthogonalizeResult res = orthogonalize_next(cand, Q, reorth_passes);
    for (std::size_t j = 0; j < k; ++j) H(j, k - 1) = res.coeffs[j];
    H(k, k - 1) = res.tail_norm;
    Q.push(std::move(res.unit));
  }

  SobolevPolyFitModel model;
  model.hessenberg = std::move(H);
  model.y = project_rhs(Q, w, f);
  model.p0 = 1.0 / vnorm;
  model.degree = n;
  return {std::move(model), std::move(Q)};
}

namespace {

JordanOperator sample_jordan(const std::vector<Complex>& xs, const std::vector<int>& orders) {
  if (xs.size() != orders.size())
    throw std::invalid_argument("sample nodes and orders must have equal length");
  std::vector<JordanOperator::Block> blocks;
  blocks.reserve(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (orders[j] < 0) throw std::invalid_argument("negative sample order");
    blocks.push_back({xs[j], Vector(static_cast<std::size_t>(orders[j]), Complex(1.0))});
  }
  return JordanOperator(std::move(blocks));
}

}  // namespace

Matrix sobolev_poly_basis(const SobolevPolyFitModel& model,
                          const std::vector<Complex>& sample_nodes,
                          const std::vector<int>& sample_orders) {
  const JordanOperator X = sample_jordan(sample_nodes, sample_orders);
  const std::size_t M = X.dimension();
  const std::size_t n = model.degree;
  const Hessenberg& H = model.hessenberg;

  std::vector<Vector> u(n + 1);
  u[0].assign(M, 0.0);
  {
    std::size_t off = 0;
    for (const auto& b : X.blocks()) {
      u[0][off + b.size() - 1] = model.p0;
      off += b.size();
    }
  }
  for (std::size_t k = 1; k <= n; ++k) {
    Vector uk = X.apply(u[k - 1]);
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

Vector eval_sobolev_poly(const SobolevPolyFitModel& model,
                         const std::vector<Complex>& sample_nodes,
                         const std::vector<int>& sample_orders) {
  const Matrix U = sobolev_poly_basis(model, sample_nodes, sample_orders);
  Vector p = matvec(U, model.y);
  // The Jordan evaluation yields p^(i)/i!; restore plain derivatives.
  std::size_t off = 0;
  for (int sj : sample_orders) {
    const std::size_t s = static_cast<std::size_t>(sj);
    double fact = 1.0;
    for (std::size_t i = 1; i <= s; ++i) {
      fact *= static_cast<double>(i);
      p[off + s - i] *= fact;
    }
    off += s + 1;
  }
  return p;
}

}  // namespace kryfit
