#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cyforge {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(Int num, Int den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat q(std::move(num), std::move(den));
  q.canonicalize();
  return q;
}

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  Rat r;
  unsigned long ae = e < 0 ? -static_cast<unsigned long>(e) : e;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), ae);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), ae);
  if (e < 0) {
    if (base == 0) throw std::invalid_argument("rat_pow: 0^negative");
    mpq_inv(r.get_mpq_t(), r.get_mpq_t());
  }
  r.canonicalize();
  return r;
}

inline bool divides(const Int& d, const Int& n) {
  if (d == 0) return n == 0;
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int exact_div(const Int& n, const Int& d) {
  if (!divides(d, n)) throw std::domain_error("exact_div: not divisible");
  Int q;
  mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

inline Int igcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// canonical decimal rendering; rationals as "p" or "p/q"
inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat parse_rat(const std::string& s) {
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace cyforge
