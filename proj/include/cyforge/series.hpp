#pragma once

#include <vector>

#include "cyforge/errors.hpp"
#include "cyforge/numeric.hpp"

namespace cyforge {

// Truncated power series with exact rational coefficients, degrees 0..order.
class RationalSeries {
 public:
  RationalSeries() : c_(1) {}
  explicit RationalSeries(int order) : c_(order + 1) {}
  explicit RationalSeries(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.resize(1);
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Rat& operator[](int k) const { return c_[k]; }
  Rat& operator[](int k) { return c_[k]; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != 0) return false;
    return true;
  }
  bool operator==(const RationalSeries& o) const { return c_ == o.c_; }

  RationalSeries truncated(int order) const {
    std::vector<Rat> c(c_.begin(), c_.begin() + std::min<std::size_t>(order + 1, c_.size()));
    c.resize(order + 1);
    return RationalSeries(std::move(c));
  }

 private:
  std::vector<Rat> c_;
};

inline int min_order(const RationalSeries& a, const RationalSeries& b) {
  return std::min(a.order(), b.order());
}

inline RationalSeries add(const RationalSeries& a, const RationalSeries& b) {
  int n = min_order(a, b);
  RationalSeries r(n);
  for (int k = 0; k <= n; ++k) r[k] = a[k] + b[k];
  return r;
}

inline RationalSeries sub(const RationalSeries& a, const RationalSeries& b) {
  int n = min_order(a, b);
  RationalSeries r(n);
  for (int k = 0; k <= n; ++k) r[k] = a[k] - b[k];
  return r;
}

inline RationalSeries mul(const RationalSeries& a, const RationalSeries& b) {
  int n = min_order(a, b);
  RationalSeries r(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (b[j] == 0) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

inline RationalSeries scale(const RationalSeries& a, const Rat& c) {
  RationalSeries r(a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = a[k] * c;
  return r;
}

// a/b with invertible b (nonzero constant term)
inline RationalSeries div(const RationalSeries& a, const RationalSeries& b) {
  if (b[0] == 0) throw Error("series division by a non-unit");
  int n = min_order(a, b);
  RationalSeries q(n);
  for (int k = 0; k <= n; ++k) {
    Rat v = a[k];
    for (int i = 1; i <= k; ++i) v -= b[i] * q[k - i];
    q[k] = v / b[0];
  }
  return q;
}

// theta = z d/dz
inline RationalSeries theta(const RationalSeries& a) {
  RationalSeries r(a.order());
  for (int k = 1; k <= a.order(); ++k) r[k] = k * a[k];
  return r;
}

// inverse of theta on series with zero constant term
inline RationalSeries integrate_theta(const RationalSeries& a) {
  if (a[0] != 0) throw Error("integrate_theta: nonzero constant term");
  RationalSeries r(a.order());
  for (int k = 1; k <= a.order(); ++k) r[k] = a[k] / k;
  return r;
}

inline RationalSeries exp_series(const RationalSeries& a) {
  if (a[0] != 0) throw Error("exp of series with nonzero constant term");
  int n = a.order();
  RationalSeries e(n);
  e[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Rat v(0);
    for (int j = 1; j <= k; ++j) v += Rat(j) * a[j] * e[k - j];
    e[k] = v / k;
  }
  return e;
}

inline RationalSeries log_series(const RationalSeries& a) {
  if (a[0] != 1) throw Error("log of series with constant term != 1");
  return integrate_theta(div(theta(a), a));
}

// (series)^e for rational e, constant term must be 1
inline RationalSeries pow_series(const RationalSeries& a, const Rat& e) {
  return exp_series(scale(log_series(a), e));
}

// a(b(z)) with b(0) = 0
inline RationalSeries compose(const RationalSeries& a, const RationalSeries& b) {
  if (b[0] != 0) throw Error("compose: inner series has a constant term");
  int n = min_order(a, b);
  RationalSeries out(n), bpow(n);
  bpow[0] = 1;
  out[0] = a[0];
  for (int j = 1; j <= n; ++j) {
    bpow = mul(bpow.truncated(n), b.truncated(n));
    if (a[j] == 0) continue;
    for (int k = j; k <= n; ++k) out[k] += a[j] * bpow[k];
  }
  return out;
}

// compositional inverse of q = z + O(z^2)
inline RationalSeries revert(const RationalSeries& q) {
  if (q[0] != 0 || q[1] != 1) throw Error("revert needs q = z + O(z^2)");
  int n = q.order();
  RationalSeries z(n);
  z[1] = 1;
  for (int k = 2; k <= n; ++k) {
    // choose z_k so that [x^k] q(z(x)) = 0
    RationalSeries comp = compose(q.truncated(k), z.truncated(k));
    z[k] = -comp[k];
  }
  return z;
}

}  // namespace cyforge
