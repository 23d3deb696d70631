#pragma once

#include "kryfit/linalg.hpp"

namespace kryfit {

/// One fitting node: location, weight, derivative order and the free
/// superdiagonal scalings for its Jordan block (alpha[r-1] = alpha_r,
/// r = 1..s, all non-zero).
struct Node {
  Complex z;
  Complex w = 1.0;
  int s = 0;
  std::vector<Complex> alpha;
};

struct NodeSet {
  std::vector<Node> nodes;

  std::size_t count() const { return nodes.size(); }
  /// sigma + sum of derivative orders.
  std::size_t dimension() const;
  bool plain() const;  ///< true when every s_j = 0

  /// Checks pairwise-distinct nodes, non-zero alphas, finite data.
  void validate() const;
};

/// Extended complex number mu/nu; infinite when den == 0.
struct Ratio {
  Complex num;
  Complex den = 1.0;

  bool infinite() const { return den == 0.0; }
  Complex value() const { return num / den; }
};

/// Ordered poles xi_k and shifts phi_k of a rational Krylov subspace.
struct PoleSchedule {
  std::vector<Ratio> poles;
  std::vector<Ratio> shifts;

  std::size_t count() const { return poles.size(); }
  void validate() const;  ///< xi_k != phi_k, sizes agree
};

enum class Interval {
  unit_positive,  ///< (0,1]
  symmetric,      ///< [-1,1]
};

/// First-kind Chebyshev-Gauss nodes cos((2j-1)pi/(2 sigma)) with node
/// weights sqrt(pi/sigma).
NodeSet chebyshev_first_kind(int sigma);

/// Legendre-Gauss nodes/weights by Newton iteration on P_sigma; node
/// weights are square roots of the quadrature weights.
NodeSet legendre_gauss(int sigma);

/// Exponentially clustered nodes: exp(-sqrt(2) pi (sqrt(count) - sqrt(j)))
/// on (0,1], or that law on half the count mirrored onto [-1,1]. Unit weights.
NodeSet clustered_nodes(int count, Interval interval);

/// Tapered real poles xi_j = -2 exp(-sqrt(2) pi (sqrt(n) - sqrt(j))) with
/// shifts {-inf, xi_1, ..., xi_{n-1}}.
PoleSchedule tapered_real_poles(int n);

/// Conjugate pole pairs +-i sqrt(|delta_j|), interleaved, with delta over
/// j = 1..n/2 pairs; n must be even.
PoleSchedule conjugate_pair_poles(int n);

}  // namespace kryfit
