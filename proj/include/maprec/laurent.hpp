#pragma once

// Sparse Laurent polynomials over a ring T. Used for the curve maps x(z),
// w(z) (T = KElement), for symbolic matrix-size polynomials in N (T = Rat),
// and for the sqrt(u)-graded coefficients of the general-potential curve.

#include <map>
#include <stdexcept>

#include "maprec/series.hpp"

namespace maprec {

template <class T>
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const T& c) {
    if (!is_zero(c)) c_[0] = c;
  }
  LaurentPoly(int n) : LaurentPoly(T(n)) {}

  static LaurentPoly monomial(const T& coef, int exp) {
    LaurentPoly p;
    if (!is_zero(coef)) p.c_[exp] = coef;
    return p;
  }

  const std::map<int, T>& terms() const { return c_; }
  bool zero() const { return c_.empty(); }
  T coeff(int e) const {
    auto it = c_.find(e);
    return it == c_.end() ? T{} : it->second;
  }
  int min_exp() const {
    if (c_.empty()) throw std::domain_error("min_exp of zero Laurent polynomial");
    return c_.begin()->first;
  }
  int max_exp() const {
    if (c_.empty()) throw std::domain_error("max_exp of zero Laurent polynomial");
    return c_.rbegin()->first;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, v] : r.c_) v = -v;
    return r;
  }
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (const auto& [e, v] : b.c_) r.add_term(e, v);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, va] : a.c_)
      for (const auto& [eb, vb] : b.c_) r.add_term(ea + eb, va * vb);
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const T& s) {
    LaurentPoly r;
    for (const auto& [e, v] : a.c_) r.add_term(e, v * s);
    return r;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }

  void add_term(int e, const T& v) {
    auto it = c_.find(e);
    if (it == c_.end()) {
      if (!is_zero(v)) c_[e] = v;
    } else {
      it->second = it->second + v;
      if (is_zero(it->second)) c_.erase(it);
    }
  }

  // d/dz
  LaurentPoly derivative() const {
    LaurentPoly r;
    for (const auto& [e, v] : c_)
      if (e != 0) r.add_term(e - 1, v * T(e));
    return r;
  }

  // Evaluate at a series argument (negative exponents need an invertible arg).
  TruncatedSeries<T> eval_series(const TruncatedSeries<T>& z) const {
    TruncatedSeries<T> out(z.order());
    if (c_.empty()) return out;
    TruncatedSeries<T> zi(0);
    bool have_inv = false;
    for (const auto& [e, v] : c_) {
      if (e >= 0) {
        out = out + z.pow(e) * v;
      } else {
        if (!have_inv) {
          zi = z.inverse();
          have_inv = true;
        }
        out = out + zi.pow(-e) * v;
      }
    }
    return out;
  }

  T eval_at(const T& x) const {
    T out{};
    for (const auto& [e, v] : c_) {
      if (e >= 0) {
        T p(1);
        for (int i = 0; i < e; ++i) p = p * x;
        out = out + v * p;
      } else {
        T p(1), xi = ring_inv(x);
        for (int i = 0; i < -e; ++i) p = p * xi;
        out = out + v * p;
      }
    }
    return out;
  }

 private:
  std::map<int, T> c_;
};

template <class T>
bool is_zero(const LaurentPoly<T>& p) {
  return p.zero();
}

// Inverse exists within the Laurent ring only for unit monomials.
template <class T>
LaurentPoly<T> ring_inv(const LaurentPoly<T>& p) {
  if (p.terms().size() != 1)
    throw std::domain_error("LaurentPoly inverse: only monomials are invertible");
  const auto& [e, v] = *p.terms().begin();
  return LaurentPoly<T>::monomial(ring_inv(v), -e);
}

using NPoly = LaurentPoly<Rat>;

}  // namespace maprec
