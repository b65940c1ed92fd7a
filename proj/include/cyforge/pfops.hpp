#pragma once

#include <array>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

#include "cyforge/errors.hpp"
#include "cyforge/matrix.hpp"
#include "cyforge/series.hpp"

namespace cyforge {

// Order-4 operator in theta = z d/dz with polynomial-in-z coefficients:
//   theta^4 + sum_{n=1..d} z^n sum_{i=0..4} c_{ni} theta^i.
// Canonical form: monic theta^4 at z^0 (c_{00..03} = 0, c_{04} = 1).
class DiffOperator {
 public:
  DiffOperator() : c_(1) { c_[0][4] = 1; }

  // rows n = 1..d of the c_{ni} table
  explicit DiffOperator(std::vector<std::array<Rat, 5>> tail) : c_(1) {
    c_[0][4] = 1;
    for (auto& row : tail) c_.push_back(std::move(row));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rat& coeff(int n, int i) const { return c_[n][i]; }

  // C_i(z): the theta^i coefficient polynomial, padded to `order`
  RationalSeries coefficient_poly(int i, int order) const {
    RationalSeries p(order);
    for (int n = 0; n <= std::min(order, degree()); ++n) p[n] = c_[n][i];
    return p;
  }

  // degree-k output coefficient: sum_{n,i} c_{ni} (k-n)^i s_{k-n}
  RationalSeries apply(const RationalSeries& s) const {
    RationalSeries out(s.order());
    for (int k = 0; k <= s.order(); ++k) {
      Rat v(0);
      for (int n = 0; n <= std::min(k, degree()); ++n) {
        Rat pw(1), term(0);
        for (int i = 0; i <= 4; ++i) {
          term += c_[n][i] * pw;
          pw *= (k - n);
        }
        v += term * s[k - n];
      }
      out[k] = v;
    }
    return out;
  }

  bool annihilates(const RationalSeries& s) const { return apply(s).is_zero(); }

  // the theta-form self-duality satisfied by the operators that are already
  // in the natural mirror coordinate; fails after Moebius changes of variables
  bool cy_self_dual() const {
    for (int n = 1; n <= degree(); ++n)
      if (c_[n][3] != Rat(2 * n) * c_[n][4]) return false;
    return true;
  }

  bool operator==(const DiffOperator& o) const { return c_ == o.c_; }

  // flat canonical rendering: T^4 + sum of c * z^n * T^i terms
  std::string to_text() const {
    std::ostringstream os;
    os << "T^4";
    for (int n = 1; n <= degree(); ++n)
      for (int i = 0; i <= 4; ++i) {
        const Rat& c = c_[n][i];
        if (c == 0) continue;
        Rat a = c < 0 ? Rat(-c) : c;
        os << (c < 0 ? " - " : " + ");
        if (a != 1) os << to_string(a) << "*";
        os << "z";
        if (n > 1) os << "^" << n;
        if (i >= 1) {
          os << "*T";
          if (i > 1) os << "^" << i;
        }
      }
    return os.str();
  }

 private:
  std::vector<std::array<Rat, 5>> c_;  // c_[n][i], n = 0..d
};

struct FitResult {
  DiffOperator op;
  int gap = 1;  // operator lives in u = z^gap
};

namespace detail {

// smallest-degree solve of the theta-order-r monic ansatz against the series;
// returns the tail rows, or nothing if no degree d in [1, dmax] works
inline std::optional<std::pair<int, std::vector<std::vector<Rat>>>> fit_tail(
    const std::vector<Rat>& s, int dmax, int guard, int r) {
  const int K = static_cast<int>(s.size()) - 1;
  for (int d = 1; d <= dmax; ++d) {
    if (5 * d + guard > K) break;
    const int cols = (r + 1) * d;
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    for (int k = 1; k <= K; ++k) {
      std::vector<Rat> row(cols, Rat(0));
      for (int n = 1; n <= std::min(d, k); ++n) {
        Rat pw(1);
        for (int i = 0; i <= r; ++i) {
          row[(n - 1) * (r + 1) + i] = s[k - n] * pw;
          pw *= (k - n);
        }
      }
      A.push_back(std::move(row));
      b.push_back(-s[k] * rat_pow(Rat(k), r));
    }
    SolveResult res = solve_rational(std::move(A), std::move(b));
    if (!res.consistent) continue;
    if (!res.unique)
      throw AmbiguousFit("solution space has dimension > 1: series too short");
    std::vector<std::vector<Rat>> tail(d, std::vector<Rat>(r + 1));
    for (int n = 1; n <= d; ++n)
      for (int i = 0; i <= r; ++i) tail[n - 1][i] = res.x[(n - 1) * (r + 1) + i];
    return std::make_pair(d, std::move(tail));
  }
  return std::nullopt;
}

}  // namespace detail

// Fit the Picard-Fuchs ansatz to a period series. The series often lives on
// an arithmetic progression (c_k = 0 unless gap | k); the operator is fitted
// in the compressed variable u = z^gap and the gap is reported.
inline FitResult fit_operator(const RationalSeries& s, int dmax, int guard = 5) {
  if (dmax < 1) throw std::invalid_argument("fit_operator: dmax must be >= 1");
  long gap = 0;
  for (int k = 1; k <= s.order(); ++k)
    if (s[k] != 0) gap = std::gcd(gap, static_cast<long>(k));
  if (gap == 0) {
    // constant series: annihilated by theta^4 alone
    if (s[0] == 0) throw NoOperatorFound("zero series has no canonical operator");
    return FitResult{DiffOperator(), 1};
  }
  std::vector<Rat> comp;
  for (int k = 0; gap * k <= s.order(); ++k) comp.push_back(s[gap * k]);
  for (int k = 1; k <= s.order(); ++k)
    if (k % gap != 0 && s[k] != 0) throw Error("internal: gap detection failed");
  auto fit = detail::fit_tail(comp, dmax, guard, 4);
  if (!fit)
    throw NoOperatorFound("no operator of degree <= " + std::to_string(dmax) +
                          " annihilates the series (order " +
                          std::to_string(comp.size() - 1) + " after gap " +
                          std::to_string(gap) + ")");
  auto [d, tail] = *fit;
  // sanity: theta-order 4 is genuinely minimal
  for (int r = 1; r <= 3; ++r)
    if (detail::fit_tail(comp, dmax, guard, r))
      throw Error("series satisfies an operator of theta-order " + std::to_string(r));
  std::vector<std::array<Rat, 5>> rows;
  for (auto& t : tail) {
    std::array<Rat, 5> row;
    for (int i = 0; i <= 4; ++i) row[i] = t[i];
    rows.push_back(std::move(row));
  }
  return FitResult{DiffOperator(std::move(rows)), static_cast<int>(gap)};
}

// Frobenius data at the maximal-unipotent point z = 0: sigma_0..sigma_3 with
// pi_j = sum_{i<=j} sigma_i (log z)^{j-i}/(j-i)!, sigma_0(0)=1, sigma_j(0)=0.
struct FrobeniusBasis {
  std::array<RationalSeries, 4> sigma;
  int order = 0;
};

namespace detail {

using Jet = std::array<Rat, 4>;  // truncated Taylor in rho at 0, mod rho^4

inline Jet jet_mul(const Jet& a, const Jet& b) {
  Jet r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; i + j < 4; ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline Jet jet_inv(const Jet& a) {
  Jet r{};
  r[0] = Rat(1) / a[0];
  for (int k = 1; k < 4; ++k) {
    Rat s(0);
    for (int i = 1; i <= k; ++i) s += a[i] * r[k - i];
    r[k] = -s / a[0];
  }
  return r;
}

}  // namespace detail

// sigma-series by the rho-derivative recursion: substitute z^rho sum a_k(rho) z^k,
// solve a_k(rho) as jets at rho = 0, read off Taylor coefficients.
inline FrobeniusBasis frobenius(const DiffOperator& op, int order) {
  // canonical normalization forces the indicial polynomial rho^4; a
  // different indicial behavior cannot be represented here
  std::vector<detail::Jet> a(order + 1);
  a[0] = {Rat(1), Rat(0), Rat(0), Rat(0)};
  for (int k = 1; k <= order; ++k) {
    detail::Jet acc{};
    for (int n = 1; n <= std::min(k, op.degree()); ++n) {
      // P_n(rho + k - n) as a jet
      detail::Jet x{Rat(k - n), Rat(1), Rat(0), Rat(0)};
      detail::Jet pj{op.coeff(n, 0), Rat(0), Rat(0), Rat(0)};
      detail::Jet xp{Rat(1), Rat(0), Rat(0), Rat(0)};
      for (int i = 1; i <= 4; ++i) {
        xp = detail::jet_mul(xp, x);
        for (int t = 0; t < 4; ++t) pj[t] += op.coeff(n, i) * xp[t];
      }
      detail::Jet prod = detail::jet_mul(a[k - n], pj);
      for (int t = 0; t < 4; ++t) acc[t] += prod[t];
    }
    detail::Jet x{Rat(k), Rat(1), Rat(0), Rat(0)};
    detail::Jet x4 = detail::jet_mul(detail::jet_mul(x, x), detail::jet_mul(x, x));
    detail::Jet inv = detail::jet_inv(x4);
    for (int t = 0; t < 4; ++t) acc[t] = -acc[t];
    a[k] = detail::jet_mul(acc, inv);
  }
  FrobeniusBasis fb;
  fb.order = order;
  for (int i = 0; i < 4; ++i) {
    RationalSeries s(order);
    for (int k = 0; k <= order; ++k) s[k] = a[k][i];
    fb.sigma[i] = std::move(s);
  }
  return fb;
}

// Search for an exponent e such that (1+c x)^e * Pi_a(x/(1+c x)) lies in the
// kernel of b. Exponents are tried in half-integer steps ordered by |e|
// (the transformed paper operators need e = -1/2). Returns the first hit.
inline std::optional<Rat> mobius_equivalent(const DiffOperator& a,
                                            const DiffOperator& b, const Rat& c,
                                            int e_lo = -2, int e_hi = 2,
                                            int order = 24) {
  RationalSeries s0 = frobenius(a, order).sigma[0];
  RationalSeries zx(order);  // x/(1+c x) = sum (-c)^(j-1) x^j
  {
    Rat pw(1);
    for (int j = 1; j <= order; ++j) {
      zx[j] = pw;
      pw *= -c;
    }
  }
  RationalSeries comp = compose(s0, zx);
  RationalSeries base(order);  // 1 + c x
  base[0] = 1;
  if (order >= 1) base[1] = c;
  std::vector<Rat> candidates;
  for (int twice = 0; twice <= 2 * std::max(std::abs(e_lo), std::abs(e_hi)); ++twice)
    for (int sgn : {1, -1}) {
      if (twice == 0 && sgn < 0) continue;
      Rat e = make_rat(Int(sgn * twice), Int(2));
      if (e < e_lo || e > e_hi) continue;
      candidates.push_back(e);
    }
  for (const Rat& e : candidates) {
    RationalSeries cand = mul(pow_series(base, e), comp);
    if (b.annihilates(cand)) return e;
  }
  return std::nullopt;
}

}  // namespace cyforge
