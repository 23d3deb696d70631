#include <doctest.h>

#include <random>

#include "kryfit/baselines.hpp"
#include "kryfit/poly.hpp"
#include "kryfit/sobolev_poly.hpp"
#include "oracles.hpp"

using namespace kryfit;

namespace {

NodeSet plain_nodes(std::initializer_list<double> zs) {
  NodeSet ns;
  for (double z : zs) ns.nodes.push_back(Node{z, 1.0, 0, {}});
  return ns;
}

PoleSchedule finite_poles(std::initializer_list<Complex> xs) {
  PoleSchedule ps;
  for (Complex x : xs) ps.poles.push_back(Ratio{x, 1.0});
  ps.shifts.push_back(Ratio{1.0, 0.0});
  for (std::size_t k = 1; k < ps.poles.size(); ++k) ps.shifts.push_back(ps.poles[k - 1]);
  return ps;
}

Matrix diag_z(const NodeSet& ns) {
  Matrix Z(ns.count(), ns.count());
  for (std::size_t j = 0; j < ns.count(); ++j) Z(j, j) = ns.nodes[j].z;
  return Z;
}

}  // namespace

TEST_CASE("build_basis_matrix: Vandermonde rows") {
  const NodeSet ns = plain_nodes({0.0, 1.0, 2.0});
  const Matrix V = build_basis_matrix(BasisKind::vandermonde, ns, nullptr, 2).matrix;
  const double expect[3][3] = {{1, 0, 0}, {1, 1, 1}, {1, 2, 4}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(V(i, j) - expect[i][j]) < 1e-15);
}

TEST_CASE("build_basis_matrix: Cauchy row with leading one") {
  const NodeSet ns = plain_nodes({0.0});
  const PoleSchedule ps = finite_poles({Complex(1.0)});
  const Matrix C = build_basis_matrix(BasisKind::cauchy_with_ones, ns, &ps, 1).matrix;
  CHECK(std::abs(C(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(C(0, 1) + 1.0) < 1e-15);
}

TEST_CASE("build_basis_matrix: confluent Vandermonde derivative rows") {
  NodeSet ns;
  ns.nodes.push_back(Node{2.0, 1.0, 1, {1.0}});
  const Matrix V = build_basis_matrix(BasisKind::confluent_vandermonde, ns, nullptr, 2).matrix;
  // Derivative row first: (0, 1, 2z) = (0, 1, 4); then (1, z, z^2) = (1, 2, 4).
  const double expect[2][3] = {{0, 1, 4}, {1, 2, 4}};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(V(i, j) - expect[i][j]) < 1e-15);
}

TEST_CASE("build_basis_matrix: scaled Cauchy multiplies by the pole") {
  const NodeSet ns = plain_nodes({0.5});
  const PoleSchedule ps = finite_poles({Complex(-2.0)});
  const Matrix C = build_basis_matrix(BasisKind::scaled_cauchy, ns, &ps, 1).matrix;
  CHECK(std::abs(C(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(C(0, 1) - (-2.0 / 2.5)) < 1e-14);
}

TEST_CASE("direct_fit_eval: agrees with the Arnoldi path on exact polynomial data") {
  const NodeSet ns = plain_nodes({-0.9, -0.5, -0.1, 0.2, 0.6, 0.95});
  Vector f(6);
  for (std::size_t j = 0; j < 6; ++j) {
    const double t = ns.nodes[j].z.real();
    f[j] = 1.0 - t + 2.0 * t * t;
  }
  const std::vector<Complex> xs = {0.33, -0.72};
  const std::vector<int> orders = {0, 0};
  const DirectFitResult direct =
      direct_fit_eval(BasisKind::vandermonde, ns, nullptr, f, 3, xs, orders);
  const auto [model, basis] = fit_poly(ns, f, 3);
  const Vector arn = eval_poly(model, xs);
  CHECK_FALSE(direct.rank_deficient);
  for (std::size_t j = 0; j < xs.size(); ++j)
    CHECK(std::abs(direct.values[j] - arn[j]) < 1e-9);
}

TEST_CASE("direct_fit_eval: constant data is exact for every kind") {
  NodeSet ns;
  for (int j = 0; j < 6; ++j) ns.nodes.push_back(Node{0.1 + 0.15 * j, 1.0, (j % 2), Vector(j % 2, Complex(1.0))});
  const PoleSchedule ps = finite_poles({Complex(-1.0), Complex(-2.0), Complex(-4.0)});
  const Complex c(2.0);
  Vector f;
  for (const Node& nd : ns.nodes)
    for (int i = nd.s; i >= 0; --i) f.push_back(i == 0 ? c : Complex(0.0));

  const std::vector<Complex> xs = {0.42, 0.77};
  const std::vector<int> orders = {1, 0};
  for (BasisKind kind : {BasisKind::vandermonde, BasisKind::confluent_vandermonde,
                         BasisKind::cauchy_with_ones, BasisKind::confluent_cauchy,
                         BasisKind::scaled_cauchy}) {
    NodeSet used = ns;
    if (kind == BasisKind::vandermonde || kind == BasisKind::cauchy_with_ones ||
        kind == BasisKind::scaled_cauchy) {
      for (Node& nd : used.nodes) {
        nd.s = 0;
        nd.alpha.clear();
      }
      Vector fp(used.count(), c);
      const DirectFitResult res = direct_fit_eval(kind, used, &ps, fp, 3, xs, {0, 0});
      CHECK(std::abs(res.values[0] - c) < 1e-10);
      CHECK(std::abs(res.values[1] - c) < 1e-10);
    } else {
      const DirectFitResult res = direct_fit_eval(kind, used, &ps, f, 3, xs, orders);
      CHECK(std::abs(res.values[0]) < 1e-9);          // derivative of a constant
      CHECK(std::abs(res.values[1] - c) < 1e-9);
      CHECK(std::abs(res.values[2] - c) < 1e-9);
    }
  }
}

TEST_CASE("displacement_residual_poly: Vandermonde rank one") {
  std::mt19937_64 rng(91);
  const NodeSet ns = testutil::random_nodes(rng, 5, 0.1);
  const Matrix V = build_basis_matrix(BasisKind::vandermonde, ns, nullptr, 3).matrix;
  const auto [R, rank] = displacement_residual_poly(diag_z(ns), V);
  CHECK(rank == 1);

  const auto [R0, rank0] = displacement_residual_poly(diag_z(ns), Matrix(5, 4));
  CHECK(rank0 == 0);
}

TEST_CASE("displacement_residual_rational: Cauchy rank two") {
  std::mt19937_64 rng(93);
  const NodeSet ns = testutil::random_nodes(rng, 5, 0.1);
  const PoleSchedule ps = finite_poles({Complex(2.0, 1.0), Complex(-3.0), Complex(0.0, 2.5)});
  const Matrix C = build_basis_matrix(BasisKind::cauchy_with_ones, ns, &ps, 3).matrix;
  std::vector<Complex> xi;
  for (const Ratio& p : ps.poles) xi.push_back(p.value());
  const auto [R, rank] = displacement_residual_rational(diag_z(ns), C, xi);
  CHECK(rank == 2);
}

TEST_CASE("invariant: weighted Vandermonde equals the polynomial Krylov matrix") {
  std::mt19937_64 rng(95);
  const NodeSet ns = testutil::random_nodes(rng, 8, 0.05);
  const std::size_t n = 5;
  const Matrix V = build_basis_matrix(BasisKind::vandermonde, ns, nullptr, n).matrix;
  Vector b(8);
  for (std::size_t j = 0; j < 8; ++j) b[j] = ns.nodes[j].w;
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t j = 0; j < 8; ++j)
      CHECK(std::abs(ns.nodes[j].w * V(j, k) - b[j]) < 1e-14);
    for (std::size_t j = 0; j < 8; ++j) b[j] *= ns.nodes[j].z;  // next Krylov column
  }
}

TEST_CASE("invariant: weighted confluent Vandermonde equals the Jordan Krylov matrix") {
  NodeSet ns;
  ns.nodes.push_back(Node{0.3, 1.5, 2, Vector(2, Complex(1.0))});
  ns.nodes.push_back(Node{-0.4, 0.7, 1, {1.0}});
  ns.nodes.push_back(Node{0.8, 1.0, 0, {}});
  const std::size_t n = 4;
  const Matrix V = build_basis_matrix(BasisKind::confluent_vandermonde, ns, nullptr, n).matrix;
  const auto [J, v, w] = build_jordan(ns);
  Vector b = v;
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t r = 0; r < b.size(); ++r)
      CHECK(std::abs(w[r] * V(r, k) - b[r]) < 1e-13);
    b = J.apply(b);
  }
}

TEST_CASE("invariant: weighted Cauchy equals the rational Krylov matrix") {
  std::mt19937_64 rng(97);
  const NodeSet ns = testutil::random_nodes(rng, 7, 0.05);
  const PoleSchedule ps = finite_poles({Complex(3.0), Complex(-2.5, 1.0), Complex(0.0, -3.0)});
  const std::size_t n = 3;
  const Matrix C = build_basis_matrix(BasisKind::cauchy_with_ones, ns, &ps, n).matrix;

  // Resolvent-product columns b_k = (Z - phi_k)(Z - xi_k)^{-1} b_{k-1}.
  Vector b(7);
  for (std::size_t j = 0; j < 7; ++j) b[j] = ns.nodes[j].w;
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t j = 0; j < 7; ++j)
      CHECK(std::abs(ns.nodes[j].w * C(j, k) - b[j]) < 1e-12);
    if (k == n) break;
    const Complex xi = ps.poles[k].value();
    for (std::size_t j = 0; j < 7; ++j) {
      const Complex z = ns.nodes[j].z;
      const Complex num = (k == 0) ? Complex(1.0) : (z - ps.shifts[k].value());
      b[j] *= num / (z - xi);
    }
  }
}

TEST_CASE("invariant: Krylov matrices have the expected displacement ranks") {
  std::mt19937_64 rng(101);
  const NodeSet ns = testutil::random_nodes(rng, 6, 0.1);
  const Matrix Z = diag_z(ns);

  Matrix B(6, 4);
  Vector b(6);
  for (std::size_t j = 0; j < 6; ++j) b[j] = ns.nodes[j].w;
  for (std::size_t k = 0; k < 4; ++k) {
    B.set_column(k, b);
    for (std::size_t j = 0; j < 6; ++j) b[j] *= ns.nodes[j].z;
  }
  CHECK(displacement_residual_poly(Z, B).second == 1);

  const PoleSchedule ps = finite_poles({Complex(2.0), Complex(-2.0, 1.5), Complex(4.0)});
  Matrix BR(6, 4);
  for (std::size_t j = 0; j < 6; ++j) BR(j, 0) = ns.nodes[j].w;
  for (std::size_t k = 1; k <= 3; ++k)
    for (std::size_t j = 0; j < 6; ++j)
      BR(j, k) = ns.nodes[j].w / (ns.nodes[j].z - ps.poles[k - 1].value());
  std::vector<Complex> xi;
  for (const Ratio& p : ps.poles) xi.push_back(p.value());
  CHECK(displacement_residual_rational(Z, BR, xi).second == 2);
}
