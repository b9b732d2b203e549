#pragma once

// Dense univariate polynomials over an arbitrary commutative ring T.
// Division and gcd require T to be a field (ring_inv must be defined).

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "maprec/rational.hpp"

namespace maprec {

template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const T& c) {
    if (!is_zero(c)) c_.push_back(c);
  }
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(const T& coef, int deg) {
    if (is_zero(coef)) return {};
    Polynomial p;
    p.c_.assign(deg + 1, T{});
    p.c_[deg] = coef;
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool zero() const { return c_.empty(); }

  const T& coeff(int i) const {
    static const T kZero{};
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
    return c_[i];
  }
  const std::vector<T>& coeffs() const { return c_; }
  const T& lead() const {
    if (c_.empty()) throw std::domain_error("lead of zero polynomial");
    return c_.back();
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), T{});
    for (size_t i = 0; i < r.c_.size(); ++i) {
      if (i < a.c_.size()) r.c_[i] = r.c_[i] + a.c_[i];
      if (i < b.c_.size()) r.c_[i] = r.c_[i] + b.c_[i];
    }
    r.trim();
    return r;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.zero() || b.zero()) return {};
    Polynomial r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, T{});
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const T& s) {
    Polynomial r = a;
    for (auto& x : r.c_) x = x * s;
    r.trim();
    return r;
  }
  friend Polynomial operator*(const T& s, const Polynomial& a) { return a * s; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  Polynomial derivative() const {
    Polynomial r;
    for (int i = 1; i <= degree(); ++i) r.c_.push_back(c_[i] * T(i));
    r.trim();
    return r;
  }

  T eval_at(const T& x) const {
    T acc{};
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
  }

  // Quotient and remainder; requires field coefficients.
  friend std::pair<Polynomial, Polynomial> divrem(const Polynomial& a, const Polynomial& b) {
    if (b.zero()) throw std::domain_error("polynomial division by zero");
    Polynomial rem = a, quot;
    quot.c_.assign(std::max(0, a.degree() - b.degree() + 1), T{});
    T inv_lead = ring_inv(b.lead());
    while (!rem.zero() && rem.degree() >= b.degree()) {
      int d = rem.degree() - b.degree();
      T f = rem.lead() * inv_lead;
      quot.c_[d] = quot.c_[d] + f;
      rem = rem - Polynomial::monomial(f, d) * b;
    }
    quot.trim();
    return {quot, rem};
  }

  friend Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.zero()) {
      auto [q, r] = divrem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    if (a.zero()) return a;
    return a * ring_inv(a.lead());  // monic
  }

 private:
  void trim() {
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

template <class T>
bool is_zero(const Polynomial<T>& p) {
  return p.zero();
}

using QPoly = Polynomial<Rat>;

}  // namespace maprec
