#pragma once

#include <gmpxx.h>

#include <string>

#include "chevalley/error.hpp"

namespace chevalley {

// Exact arbitrary-precision rationals. mpq_class keeps values canonical
// (reduced, positive denominator) once canonicalize() has run; every
// constructor below runs it.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p", "-p" and "p/q" with q > 0 after reduction.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw parse_error("empty rational literal");
  std::size_t i = 0;
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
    return j;
  };
  if (s[i] == '-' || s[i] == '+') ++i;
  std::size_t j = digits(i);
  if (j == i) throw parse_error("bad rational literal: " + s);
  if (j < s.size()) {
    if (s[j] != '/') throw parse_error("bad rational literal: " + s);
    std::size_t k = j + 1;
    std::size_t m = digits(k);
    if (m == k || m != s.size()) throw parse_error("bad rational literal: " + s);
    if (std::string(s, k, m - k).find_first_not_of('0') == std::string::npos)
      throw parse_error("zero denominator: " + s);
  }
  Rat r(s);
  r.canonicalize();
  return r;
}

inline std::string format_rat(const Rat& q) { return q.get_str(); }

inline bool is_integer_rat(const Rat& q) { return q.get_den() == 1; }

inline Rat pow_rat(const Rat& base, long e) {
  if (e == 0) return rat(1);
  if (base == 0) {
    if (e < 0) throw not_a_unit("0 has no negative powers");
    return rat(0);
  }
  Rat b = base;
  bool neg = e < 0;
  unsigned long n = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rat num, den;
  mpz_pow_ui(num.get_num_mpz_t(), b.get_num_mpz_t(), n);
  mpz_set_ui(num.get_den_mpz_t(), 1);
  mpz_pow_ui(den.get_num_mpz_t(), b.get_den_mpz_t(), n);
  mpz_set_ui(den.get_den_mpz_t(), 1);
  Rat r = num / den;
  r.canonicalize();
  if (neg) r = 1 / r;
  return r;
}

}  // namespace chevalley
