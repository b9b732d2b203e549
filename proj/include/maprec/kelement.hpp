#pragma once

// The coefficient field K = Q(c)[s] / (s^2 - (c^2 - 1)).
//
// c is the critical-constant variable kept symbolic; the quadrangle weight is
// recovered as t = (c^2 - 1)/(3 c^4), so the branch-point coordinate of the
// exchanged curve s = sqrt(3 t c^4) lives in K exactly. Elements are stored as
// even + odd * s with even, odd in Q(c); the relation s^2 -> c^2 - 1 is
// applied on every product, so normal forms are unique and equality is
// structural.

#include <stdexcept>

#include "maprec/ratfunc.hpp"

namespace maprec {

class KElement {
 public:
  KElement() = default;
  KElement(const Rat& c) : even_(c) {}
  KElement(int n) : even_(Rat(n)) {}
  explicit KElement(RatFunc even) : even_(std::move(even)) {}
  KElement(RatFunc even, RatFunc odd) : even_(std::move(even)), odd_(std::move(odd)) {}

  // Generators of the field.
  static KElement c() { return KElement(RatFunc::variable()); }
  static KElement s() { return KElement(RatFunc(), RatFunc(Rat(1))); }
  // s^2 as an element of Q(c).
  static RatFunc s_squared() {
    RatFunc c = RatFunc::variable();
    return c * c - RatFunc(Rat(1));
  }
  // t = (c^2 - 1) / (3 c^4).
  static KElement t() {
    RatFunc c = RatFunc::variable();
    return KElement(s_squared() / (RatFunc(Rat(3)) * c * c * c * c));
  }

  const RatFunc& even() const { return even_; }
  const RatFunc& odd() const { return odd_; }
  bool zero() const { return even_.zero() && odd_.zero(); }
  bool pure_even() const { return odd_.zero(); }

  KElement operator-() const { return KElement(-even_, -odd_); }
  friend KElement operator+(const KElement& a, const KElement& b) {
    return KElement(a.even_ + b.even_, a.odd_ + b.odd_);
  }
  friend KElement operator-(const KElement& a, const KElement& b) { return a + (-b); }
  friend KElement operator*(const KElement& a, const KElement& b) {
    return KElement(a.even_ * b.even_ + a.odd_ * b.odd_ * s_squared(),
                    a.even_ * b.odd_ + a.odd_ * b.even_);
  }
  friend bool operator==(const KElement& a, const KElement& b) {
    return a.even_ == b.even_ && a.odd_ == b.odd_;
  }

  KElement conj() const { return KElement(even_, -odd_); }
  // Norm a^2 - b^2 (c^2 - 1), an element of Q(c).
  RatFunc norm() const { return even_ * even_ - odd_ * odd_ * s_squared(); }

  KElement inv() const {
    RatFunc n = norm();
    if (n.zero()) throw std::domain_error("inverse of zero K element");
    RatFunc ninv = ring_inv(n);
    return KElement(even_ * ninv, -(odd_ * ninv));
  }
  friend KElement operator/(const KElement& a, const KElement& b) { return a * b.inv(); }

 private:
  RatFunc even_, odd_;
};

inline bool is_zero(const KElement& k) { return k.zero(); }
inline KElement ring_inv(const KElement& k) { return k.inv(); }

// Canonical form; reduction is maintained eagerly, so this is the identity.
// Kept as the named entry point for the normal-form contract.
inline KElement k_normalize(const KElement& k) { return k; }

}  // namespace maprec
