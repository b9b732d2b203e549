#pragma once

// Arbitrary-precision integers and rationals (GMP-backed). Rationals are kept
// in lowest terms with positive denominator by the backend.

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace maprec {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline bool is_zero(const Rat& q) { return q.is_zero(); }

inline Rat ring_inv(const Rat& q) {
  if (q.is_zero()) throw std::domain_error("division by zero rational");
  return 1 / q;
}

inline Int factorial(long n) {
  Int r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

// Combinatorial convention: zero when n < 0, k < 0 or k > n.
inline Int binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

inline Int int_pow(Int b, long e) {
  Int r = 1;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Rat rat_pow(const Rat& b, long e) {
  if (e < 0) return ring_inv(rat_pow(b, -e));
  Rat r = 1, x = b;
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

// Exact square root of a rational; nullopt when not a perfect square.
inline std::optional<Rat> rat_sqrt(const Rat& q) {
  if (q < 0) return std::nullopt;
  Int n = numerator(q), d = denominator(q);
  Int rn = sqrt(n), rd = sqrt(d);
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  return Rat(rn, rd);
}

// "num/den" (or bare integer) formatting used across the CLI and caches.
inline std::string rat_to_string(const Rat& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

}  // namespace maprec
