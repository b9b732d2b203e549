#pragma once

// Rational functions in one variable over Q, in normal form:
// gcd(num, den) = 1 and den monic. Equality is structural equality of the
// normal form.

#include <stdexcept>
#include <string>
#include <utility>

#include "maprec/poly.hpp"

namespace maprec {

class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(const Rat& c) : num_(c) {}
  RatFunc(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
  explicit RatFunc(QPoly num) : num_(std::move(num)) {}

  static RatFunc variable() { return RatFunc(QPoly::monomial(1, 1)); }

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool zero() const { return num_.zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.zero()) throw std::domain_error("rational function division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFunc derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  Rat eval_at(const Rat& x) const {
    Rat d = den_.eval_at(x);
    if (is_zero(d)) throw std::domain_error("rational function pole at evaluation point");
    return num_.eval_at(x) / d;
  }

 private:
  void normalize() {
    if (den_.zero()) throw std::domain_error("rational function with zero denominator");
    if (num_.zero()) {
      den_ = QPoly(Rat(1));
      return;
    }
    QPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divrem(num_, g).first;
      den_ = divrem(den_, g).first;
    }
    Rat lead = den_.lead();
    if (lead != 1) {
      Rat inv = 1 / lead;
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
  }

  QPoly num_;
  QPoly den_ = QPoly(Rat(1));
};

inline bool is_zero(const RatFunc& f) { return f.zero(); }

inline RatFunc ring_inv(const RatFunc& f) {
  if (f.zero()) throw std::domain_error("inverse of zero rational function");
  return RatFunc(Rat(1)) / f;
}

}  // namespace maprec
