#include <doctest.h>

#include <random>

#include "kryfit/baselines.hpp"
#include "kryfit/harness.hpp"
#include "kryfit/poly.hpp"
#include "oracles.hpp"

using namespace kryfit;

namespace {

double weighted_residual(const NodeSet& nodes, const Vector& f, const Vector& fitted) {
  double s = 0.0;
  for (std::size_t j = 0; j < nodes.count(); ++j)
    s += std::norm(nodes.nodes[j].w) * std::norm(fitted[j] - f[j]);
  return s;
}

std::vector<Complex> node_points(const NodeSet& ns) {
  std::vector<Complex> xs;
  for (const Node& nd : ns.nodes) xs.push_back(nd.z);
  return xs;
}

}  // namespace

TEST_CASE("fit_poly: constant data at degree zero") {
  const NodeSet nodes = chebyshev_first_kind(5);
  const Complex c(2.5, -0.5);
  const auto [model, basis] = fit_poly(nodes, Vector(5, c), 0);
  CHECK(std::abs(std::abs(model.y[0]) - std::abs(c) / model.p0) < 1e-12);
  const Vector vals = eval_poly(model, {0.1, -0.7, 0.9});
  for (const Complex& v : vals) CHECK(std::abs(v - c) < 1e-13);
}

TEST_CASE("fit_poly: full-degree fit interpolates") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  NodeSet nodes;
  for (int j = 0; j < 6; ++j) nodes.nodes.push_back(Node{u(rng) + 0.3 * j, 1.0, 0, {}});
  const Vector f = testutil::random_vector(rng, 6);
  const auto [model, basis] = fit_poly(nodes, f, 5);
  const Vector vals = eval_poly(model, node_points(nodes));
  for (std::size_t j = 0; j < 6; ++j) CHECK(std::abs(vals[j] - f[j]) < 1e-10);
}

TEST_CASE("fit_poly: matches the dense monomial least squares solve") {
  std::mt19937_64 rng(9);
  const NodeSet nodes = testutil::random_nodes(rng, 12, 0.05);
  const Vector f = testutil::random_vector(rng, 12);
  const std::size_t n = 5;
  const auto [model, basis] = fit_poly(nodes, f, n);
  const Vector arnoldi_vals = eval_poly(model, node_points(nodes));

  Matrix WB = build_basis_matrix(BasisKind::vandermonde, nodes, nullptr, n).matrix;
  Vector wf(12);
  for (std::size_t j = 0; j < 12; ++j) {
    for (std::size_t k = 0; k <= n; ++k) WB(j, k) *= nodes.nodes[j].w;
    wf[j] = nodes.nodes[j].w * f[j];
  }
  const Vector c = solve_dense_ls(WB, wf);
  for (std::size_t j = 0; j < 12; ++j) {
    Complex direct = 0.0;
    Complex p = 1.0;
    for (std::size_t k = 0; k <= n; ++k) {
      direct += c[k] * p;
      p *= nodes.nodes[j].z;
    }
    CHECK(std::abs(arnoldi_vals[j] - direct) < 1e-8);
  }
}

TEST_CASE("eval_poly: fitting-node values equal diag(w)^-1 Q y") {
  std::mt19937_64 rng(13);
  const NodeSet nodes = chebyshev_first_kind(15);
  Vector f(15);
  for (std::size_t j = 0; j < 15; ++j) f[j] = target_value(TargetFn::runge, nodes.nodes[j].z.real(), 0);
  const auto [model, basis] = fit_poly(nodes, f, 7);
  const Vector vals = eval_poly(model, node_points(nodes));
  const Vector qy = matvec(basis.matrix(), model.y);
  for (std::size_t j = 0; j < 15; ++j)
    CHECK(std::abs(vals[j] - qy[j] / nodes.nodes[j].w) < 1e-11);
}

TEST_CASE("eval_poly: Runge fit lands in the expected error band") {
  const NodeSet nodes = chebyshev_first_kind(61);
  Vector f(61);
  for (std::size_t j = 0; j < 61; ++j)
    f[j] = target_value(TargetFn::runge, nodes.nodes[j].z.real(), 0);
  const auto [model, basis] = fit_poly(nodes, f, 30);
  const std::vector<Complex> grid = sample_grid(Interval::symmetric, 1000);
  const Vector vals = eval_poly(model, grid);
  double err = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j)
    err = std::max(err, std::abs(vals[j] - target_value(TargetFn::runge, grid[j].real(), 0)));
  CHECK(err < 1e-1 * 5.0);
  CHECK(err > 1e-3 / 5.0);
}

TEST_CASE("invariant: Arnoldi relation Z Q_n = Q_{n+1} H") {
  std::mt19937_64 rng(21);
  const NodeSet nodes = testutil::random_nodes(rng, 40, 0.01);
  const Vector f = testutil::random_vector(rng, 40);
  const std::size_t n = 20;
  const auto [model, basis] = fit_poly(nodes, f, n);

  double zmax = 0.0;
  for (const Node& nd : nodes.nodes) zmax = std::max(zmax, std::abs(nd.z));
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < 40; ++i) {
      Complex lhs = nodes.nodes[i].z * basis.col(k)[i];
      for (std::size_t j = 0; j <= k + 1; ++j) lhs -= basis.col(j)[i] * model.hessenberg(j, k);
      worst = std::max(worst, std::abs(lhs));
    }
  }
  CHECK(worst <= 1e-12 * zmax);
}

TEST_CASE("invariant: discrete orthonormal-polynomial Gram identity") {
  const NodeSet nodes = chebyshev_first_kind(120);
  Vector f(120);
  for (std::size_t j = 0; j < 120; ++j)
    f[j] = target_value(TargetFn::runge, nodes.nodes[j].z.real(), 0);
  const std::size_t n = 50;
  const auto [model, basis] = fit_poly(nodes, f, n);
  const Matrix P = poly_basis(model, node_points(nodes));

  Matrix G(n + 1, n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t h = 0; h <= n; ++h) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < 120; ++j)
        s += std::norm(nodes.nodes[j].w) * P(j, k) * std::conj(P(j, h));
      G(k, h) = s;
    }
  CHECK(testutil::gram_error(G) <= 1e-10);
}

TEST_CASE("invariant: common weight scaling leaves the minimizer unchanged") {
  std::mt19937_64 rng(33);
  NodeSet nodes = testutil::random_nodes(rng, 14, 0.05);
  const Vector f = testutil::random_vector(rng, 14);
  const auto [m1, b1] = fit_poly(nodes, f, 6);
  for (Node& nd : nodes.nodes) nd.w *= 3.7;
  const auto [m2, b2] = fit_poly(nodes, f, 6);
  const std::vector<Complex> xs = {0.2, -0.4, Complex(0.1, 0.3)};
  const Vector v1 = eval_poly(m1, xs);
  const Vector v2 = eval_poly(m2, xs);
  for (std::size_t j = 0; j < xs.size(); ++j) CHECK(std::abs(v1[j] - v2[j]) < 1e-12);
}

TEST_CASE("invariant: weighted residual is non-increasing in the degree") {
  const NodeSet nodes = legendre_gauss(25);
  Vector f(25);
  for (std::size_t j = 0; j < 25; ++j)
    f[j] = target_value(TargetFn::runge, nodes.nodes[j].z.real(), 0);
  double prev = 1e300;
  for (std::size_t n : {2, 5, 9, 14, 20}) {
    const auto [model, basis] = fit_poly(nodes, f, n);
    const double res = weighted_residual(nodes, f, eval_poly(model, node_points(nodes)));
    CHECK(res <= prev + 1e-12);
    prev = res;
  }
}

TEST_CASE("fit_poly: input validation") {
  const NodeSet nodes = chebyshev_first_kind(4);
  CHECK_THROWS(fit_poly(nodes, Vector(4, 1.0), 4));  // n >= m
  CHECK_THROWS(fit_poly(nodes, Vector(3, 1.0), 2));  // length mismatch

  NodeSet sob = nodes;
  sob.nodes[0].s = 1;
  sob.nodes[0].alpha = {1.0};
  CHECK_THROWS(fit_poly(sob, Vector(4, 1.0), 2));
}
