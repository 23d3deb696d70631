#pragma once

#include <tuple>
#include <utility>

#include "kryfit/nodes.hpp"

namespace kryfit {

/// Block-diagonal operator with one upper-bidiagonal block per node:
/// diagonal z_j, superdiagonal (alpha_{s_j}, ..., alpha_1) top to bottom.
class JordanOperator {
 public:
  struct Block {
    Complex z;
    std::vector<Complex> alpha;  ///< (alpha_1, ..., alpha_s); block order s+1
    std::size_t size() const { return alpha.size() + 1; }
  };

  explicit JordanOperator(std::vector<Block> blocks);

  std::size_t dimension() const { return dim_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  Vector apply(const Vector& x) const;  ///< J x
  /// (eta J - rho I) x.
  Vector shifted_apply(Complex eta, Complex rho, const Vector& x) const;
  /// (nu J - mu I)^{-1} b by per-block bidiagonal back-substitution.
  Vector shifted_solve(Complex nu, Complex mu, const Vector& b) const;

  Matrix dense() const;
  double max_abs() const;

 private:
  std::vector<Block> blocks_;
  std::size_t dim_ = 0;
};

/// Jordan operator, starting vector (w_j in each block's last slot) and the
/// Sobolev weight vector ((prod alpha_r / i!) w_j, i = s_j..0 per block).
std::tuple<JordanOperator, Vector, Vector> build_jordan(const NodeSet& nodes);

struct SobolevPolyFitModel {
  Hessenberg hessenberg;
  Vector y;
  double p0 = 0.0;
  std::size_t degree = 0;
};

/// Confluent-Vandermonde-with-Arnoldi fit; f is in block layout
/// (f^(s_j), ..., f', f) per node.
std::pair<SobolevPolyFitModel, OrthoBasis> fit_sobolev_poly(const NodeSet& nodes,
                                                            const Vector& f, std::size_t n,
                                                            int reorth_passes = 2);

/// Scaled basis values at sample nodes: the row of derivative order i holds
/// p_k^{(i)}(x_j) / i! (sampling Jordan blocks use alpha = 1). Row layout is
/// one block per sample node, highest order first.
Matrix sobolev_poly_basis(const SobolevPolyFitModel& model,
                          const std::vector<Complex>& sample_nodes,
                          const std::vector<int>& sample_orders);

/// Stacked (p^(s~_j)(x_j), ..., p'(x_j), p(x_j)) per sample node, with the
/// Jordan scaling divided out so entries are true derivatives.
Vector eval_sobolev_poly(const SobolevPolyFitModel& model,
                         const std::vector<Complex>& sample_nodes,
                         const std::vector<int>& sample_orders);

}  // namespace kryfit
