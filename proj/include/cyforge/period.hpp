#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "cyforge/errors.hpp"
#include "cyforge/numeric.hpp"
#include "cyforge/polytope.hpp"
#include "cyforge/series.hpp"

namespace cyforge {

// Laurent-monomial support: distinct nonzero exponent vectors in Z^4.
// The constant monomial is excluded by construction (it carries b0 = 1).
struct Support {
  std::vector<std::array<long, 4>> monomials;

  explicit Support(std::vector<std::array<long, 4>> m) : monomials(std::move(m)) {
    if (monomials.empty()) throw InvalidSupport("support must be nonempty");
    for (const auto& e : monomials)
      if (e == std::array<long, 4>{0, 0, 0, 0})
        throw InvalidSupport("support contains the constant monomial");
    auto sorted = monomials;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw DuplicateMonomial("support contains a repeated monomial");
  }

  std::size_t size() const { return monomials.size(); }
};

inline Support support_from_polytope(const LatticePolytope& p) {
  if (!is_reflexive(p)) throw NotReflexive("support_from_polytope needs reflexive input");
  std::vector<std::array<long, 4>> mono;
  for (const auto& v : p.vertices()) {
    std::array<long, 4> e;
    for (int i = 0; i < 4; ++i) {
      if (!v[i].fits_slong_p()) throw Error("vertex coordinate out of range");
      e[i] = v[i].get_si();
    }
    mono.push_back(e);
  }
  return Support(std::move(mono));
}

namespace detail {

// exponents packed as four signed 16-bit fields
inline std::uint64_t pack_exp(const std::array<int, 4>& e) {
  std::uint64_t k = 0;
  for (int i = 0; i < 4; ++i)
    k |= (std::uint64_t(static_cast<std::uint16_t>(e[i] + 0x4000))) << (16 * i);
  return k;
}

}  // namespace detail

// Constant terms of (sum_m t^m)^k for k = 0..order, one shared sweep.
// Maintains the exponent->count map of S^j with reachability pruning: a term
// is kept only if every coordinate can still return to zero within the
// remaining order-j factors.
inline std::vector<Int> period_counts(const Support& s, int order) {
  std::array<long, 4> lo{0, 0, 0, 0}, hi{0, 0, 0, 0};
  for (const auto& m : s.monomials)
    for (int i = 0; i < 4; ++i) {
      lo[i] = std::min(lo[i], m[i]);
      hi[i] = std::max(hi[i], m[i]);
    }
  for (int i = 0; i < 4; ++i)
    if (std::max(std::abs(lo[i]), std::abs(hi[i])) * static_cast<long>(order) >= 0x4000)
      throw Error("period order too large for packed exponents");
  std::vector<Int> out;
  out.reserve(order + 1);
  out.emplace_back(1);
  std::unordered_map<std::uint64_t, Int> cur;
  cur.emplace(detail::pack_exp({0, 0, 0, 0}), Int(1));
  std::vector<std::int64_t> deltas;
  for (const auto& m : s.monomials) {
    std::int64_t d = 0;
    for (int i = 0; i < 4; ++i) d += static_cast<std::int64_t>(m[i]) << (16 * i);
    deltas.push_back(d);
  }
  const std::uint64_t zero_key = detail::pack_exp({0, 0, 0, 0});
  for (int j = 1; j <= order; ++j) {
    const long rem = order - j;
    std::unordered_map<std::uint64_t, Int> next;
    next.reserve(cur.size() * 2);
    for (const auto& [key, cnt] : cur) {
      for (std::size_t mi = 0; mi < deltas.size(); ++mi) {
        std::uint64_t nk = static_cast<std::uint64_t>(
            static_cast<std::int64_t>(key) + deltas[mi]);
        bool keep = true;
        for (int i = 0; i < 4; ++i) {
          int e = static_cast<int>((nk >> (16 * i)) & 0xffff) - 0x4000;
          if (e + rem * lo[i] > 0 || e + rem * hi[i] < 0) {
            keep = false;
            break;
          }
        }
        if (keep) next[nk] += cnt;
      }
    }
    cur = std::move(next);
    auto it = cur.find(zero_key);
    out.push_back(it == cur.end() ? Int(0) : it->second);
  }
  return out;
}

inline Int constant_term_power(const Support& s, int k) {
  if (k < 0) throw std::invalid_argument("constant_term_power: negative power");
  return period_counts(s, k).back();
}

// Principal period: Pi0(z) = sum_k c_k z^k with c_k = constant_term_power(s,k).
inline RationalSeries principal_period(const Support& s, int order) {
  auto counts = period_counts(s, order);
  RationalSeries out(order);
  for (int k = 0; k <= order; ++k) out[k] = Rat(counts[k]);
  return out;
}

}  // namespace cyforge
