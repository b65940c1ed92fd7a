#pragma once

#include <vector>

#include "cyforge/errors.hpp"
#include "cyforge/pfops.hpp"
#include "cyforge/series.hpp"

namespace cyforge {

struct MirrorMap {
  RationalSeries q_of_z;  // q = z exp(sigma1/sigma0), starts z + O(z^2)
  RationalSeries z_of_q;  // compositional inverse
};

inline MirrorMap mirror_map(const FrobeniusBasis& fb) {
  int n = fb.order;
  RationalSeries ratio = div(fb.sigma[1], fb.sigma[0]);
  RationalSeries z(n);
  if (n >= 1) z[1] = 1;
  MirrorMap mm;
  mm.q_of_z = mul(z, exp_series(ratio));
  mm.z_of_q = revert(mm.q_of_z);
  return mm;
}

// Normalized Yukawa coupling K(q) with K(0) = H^3:
//   theta log W = -(1/2) C3(z)/C4(z),  W(0) = H^3
//   K(q) = W(z(q)) / (sigma0(z(q))^2 (theta t)^3(z(q)))
inline RationalSeries yukawa(const DiffOperator& op, const Int& h_cubed,
                             const FrobeniusBasis& fb, const MirrorMap& mm,
                             int order) {
  int n = std::min(order, fb.order);
  RationalSeries c4 = op.coefficient_poly(4, n);
  RationalSeries c3 = op.coefficient_poly(3, n);
  if (c4[0] != 1)
    throw SingularNormalization("C4(0) != 1: operator not in canonical form");
  RationalSeries u = div(c3, c4);
  RationalSeries w = scale(exp_series(scale(integrate_theta(u), Rat(-1, 2))),
                           Rat(h_cubed));
  RationalSeries ratio = div(fb.sigma[1], fb.sigma[0]);
  RationalSeries theta_t(n);
  theta_t[0] = 1;
  {
    RationalSeries tr = theta(ratio);
    for (int k = 1; k <= n; ++k) theta_t[k] = tr[k];
  }
  RationalSeries s0 = fb.sigma[0].truncated(n);
  RationalSeries denom =
      mul(mul(s0, s0), mul(mul(theta_t, theta_t), theta_t));
  RationalSeries k_of_z = div(w.truncated(n), denom);
  return compose(k_of_z, mm.z_of_q.truncated(n));
}

// Genus-0 instanton numbers by inverting
//   K(q) = H^3 + sum_{d>=1} n_d d^3 q^d / (1 - q^d)
// via the divisor recursion n_m = (kappa_m - sum_{d|m, d<m} d^3 n_d)/m^3.
inline std::vector<Int> instanton_numbers(const RationalSeries& k,
                                          const Int& h_cubed, int n_max) {
  if (k[0] != Rat(h_cubed))
    throw std::invalid_argument("instanton_numbers: K(0) != H^3");
  if (n_max > k.order())
    throw std::invalid_argument("instanton_numbers: series too short");
  std::vector<Int> n(n_max + 1);
  for (int m = 1; m <= n_max; ++m) {
    Rat v = k[m];
    for (int d = 1; d < m; ++d)
      if (m % d == 0) v -= Rat(Int(d) * d * d * n[d]);
    if (v.get_den() != 1)
      throw NonIntegralInstanton("kappa_" + std::to_string(m) + " is not integral");
    Int m3 = Int(m) * m * m;
    if (!divides(m3, v.get_num()))
      throw NonIntegralInstanton("n_" + std::to_string(m) +
                                 " fails d^3 divisibility: upstream error");
    n[m] = exact_div(v.get_num(), m3);
  }
  return {n.begin() + 1, n.end()};
}

}  // namespace cyforge
