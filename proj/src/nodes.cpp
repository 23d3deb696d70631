#include "kryfit/nodes.hpp"

#include <cmath>
#include <numbers>

namespace kryfit {

namespace {
constexpr double kPi = std::numbers::pi;
const double kTaper = std::sqrt(2.0) * std::numbers::pi;
}  // namespace

std::size_t NodeSet::dimension() const {
  std::size_t m = 0;
  for (const Node& nd : nodes) m += static_cast<std::size_t>(nd.s) + 1;
  return m;
}

bool NodeSet::plain() const {
  for (const Node& nd : nodes)
    if (nd.s != 0) return false;
  return true;
}

void NodeSet::validate() const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& nd = nodes[i];
    if (!std::isfinite(nd.z.real()) || !std::isfinite(nd.z.imag()) ||
        !std::isfinite(nd.w.real()) || !std::isfinite(nd.w.imag()))
      throw std::invalid_argument("NodeSet: non-finite node data");
    if (nd.s < 0) throw std::invalid_argument("NodeSet: negative derivative order");
    if (nd.alpha.size() != static_cast<std::size_t>(nd.s))
      throw std::invalid_argument("NodeSet: alpha count must equal s");
    for (const Complex& a : nd.alpha)
      if (a == 0.0) throw std::invalid_argument("NodeSet: zero alpha");
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (nd.z == nodes[j].z) throw std::invalid_argument("NodeSet: duplicate nodes");
  }
}

void PoleSchedule::validate() const {
  if (shifts.size() != poles.size())
    throw std::invalid_argument("PoleSchedule: pole/shift count mismatch");
  for (std::size_t k = 0; k < poles.size(); ++k) {
    const Ratio& xi = poles[k];
    const Ratio& phi = shifts[k];
    if (xi.infinite() && phi.infinite())
      throw std::invalid_argument("PoleSchedule: pole equals shift (both infinite)");
    if (!xi.infinite() && !phi.infinite() && xi.value() == phi.value())
      throw std::invalid_argument("PoleSchedule: pole equals shift");
  }
}

NodeSet chebyshev_first_kind(int sigma) {
  if (sigma < 1) throw std::invalid_argument("chebyshev_first_kind: sigma >= 1 required");
  NodeSet ns;
  ns.nodes.reserve(sigma);
  const double w = std::sqrt(kPi / sigma);
  for (int j = 1; j <= sigma; ++j) {
    Node nd;
    nd.z = std::cos((2.0 * j - 1.0) * kPi / (2.0 * sigma));
    nd.w = w;
    ns.nodes.push_back(nd);
  }
  return ns;
}

NodeSet legendre_gauss(int sigma) {
  if (sigma < 1) throw std::invalid_argument("legendre_gauss: sigma >= 1 required");
  NodeSet ns;
  ns.nodes.reserve(sigma);
  for (int j = 1; j <= sigma; ++j) {
    double x = std::cos(kPi * (j - 0.25) / (sigma + 0.5));
    double dp = 0.0;
    int it = 0;
    for (; it < 100; ++it) {
      // Three-term recurrence for P_sigma and its derivative.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= sigma; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double p = (sigma == 1) ? x : p1;
      const double pm1 = (sigma == 1) ? 1.0 : p0;
      dp = sigma * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    if (it == 100) throw std::runtime_error("legendre_gauss: Newton did not converge");
    Node nd;
    nd.z = x;
    nd.w = std::sqrt(2.0 / ((1.0 - x * x) * dp * dp));
    ns.nodes.push_back(nd);
  }
  return ns;
}

NodeSet clustered_nodes(int count, Interval interval) {
  if (count < 2) throw std::invalid_argument("clustered_nodes: count >= 2 required");
  NodeSet ns;
  if (interval == Interval::unit_positive) {
    ns.nodes.reserve(count);
    for (int j = 1; j <= count; ++j) {
      Node nd;
      nd.z = std::exp(-kTaper * (std::sqrt(double(count)) - std::sqrt(double(j))));
      ns.nodes.push_back(nd);
    }
  } else {
    const int half = count / 2;
    if (2 * half != count)
      throw std::invalid_argument("clustered_nodes: symmetric interval needs even count");
    ns.nodes.reserve(count);
    for (int j = 1; j <= half; ++j) {
      const double z = std::exp(-kTaper * (std::sqrt(double(half)) - std::sqrt(double(j))));
      Node pos, neg;
      pos.z = z;
      neg.z = -z;
      ns.nodes.push_back(pos);
      ns.nodes.push_back(neg);
    }
  }
  return ns;
}

namespace {

// Shifts {-inf, xi_1, ..., xi_{n-1}}; -inf encoded as (1, 0).
void attach_resolvent_shifts(PoleSchedule& ps) {
  ps.shifts.clear();
  ps.shifts.push_back(Ratio{1.0, 0.0});
  for (std::size_t k = 1; k < ps.poles.size(); ++k) ps.shifts.push_back(ps.poles[k - 1]);
}

}  // namespace

PoleSchedule tapered_real_poles(int n) {
  if (n < 1) throw std::invalid_argument("tapered_real_poles: n >= 1 required");
  PoleSchedule ps;
  for (int j = 1; j <= n; ++j) {
    const double xi = -2.0 * std::exp(-kTaper * (std::sqrt(double(n)) - std::sqrt(double(j))));
    ps.poles.push_back(Ratio{xi, 1.0});
  }
  attach_resolvent_shifts(ps);
  return ps;
}

PoleSchedule conjugate_pair_poles(int n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("conjugate_pair_poles: n must be even and >= 2");
  const int pairs = n / 2;
  PoleSchedule ps;
  for (int j = 1; j <= pairs; ++j) {
    const double delta =
        -2.0 * std::exp(-kTaper * (std::sqrt(double(pairs)) - std::sqrt(double(j))));
    const double r = std::sqrt(std::abs(delta));
    ps.poles.push_back(Ratio{Complex(0.0, r), 1.0});
    ps.poles.push_back(Ratio{Complex(0.0, -r), 1.0});
  }
  attach_resolvent_shifts(ps);
  return ps;
}

}  // namespace kryfit
