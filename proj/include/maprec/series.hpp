#pragma once

// Truncated formal power/Laurent series over a coefficient ring C.
//
// A series stores coefficients of x^e for e in [min_exp, ...] and an order N
// with the meaning "exact modulo O(x^{N+1})". Every operation propagates the
// weakest valid order, so arithmetic never claims precision beyond what the
// operands support.

#include <stdexcept>
#include <vector>

#include "maprec/kelement.hpp"
#include "maprec/rational.hpp"

namespace maprec {

template <class C>
class TruncatedSeries {
 public:
  // Zero series, exact modulo x^{order+1}.
  explicit TruncatedSeries(int order = 0) : order_(order) {}

  TruncatedSeries(const C& constant, int order) : order_(order) {
    if (!is_zero(constant) && order >= 0) {
      min_exp_ = 0;
      c_.push_back(constant);
    }
  }

  static TruncatedSeries monomial(const C& coef, int exp, int order) {
    TruncatedSeries r(order);
    if (!is_zero(coef) && exp <= order) {
      r.min_exp_ = exp;
      r.c_.push_back(coef);
    }
    return r;
  }
  static TruncatedSeries variable(int order) { return monomial(C(1), 1, order); }

  int order() const { return order_; }
  bool known_zero() const {
    for (const auto& x : c_)
      if (!is_zero(x)) return false;
    return true;
  }
  // Smallest exponent with a nonzero stored coefficient; order+1 when none.
  int valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
      if (!is_zero(c_[i])) return min_exp_ + static_cast<int>(i);
    return order_ + 1;
  }

  C coeff(int e) const {
    int i = e - min_exp_;
    if (i < 0 || i >= static_cast<int>(c_.size())) return C{};
    return c_[i];
  }
  void set_coeff(int e, const C& v) {
    if (e > order_) return;
    if (c_.empty()) {
      min_exp_ = e;
      c_.push_back(v);
      return;
    }
    if (e < min_exp_) {
      c_.insert(c_.begin(), min_exp_ - e, C{});
      min_exp_ = e;
    }
    if (e - min_exp_ >= static_cast<int>(c_.size())) c_.resize(e - min_exp_ + 1, C{});
    c_[e - min_exp_] = v;
  }

  TruncatedSeries truncated(int new_order) const {
    TruncatedSeries r(std::min(order_, new_order));
    for (size_t i = 0; i < c_.size(); ++i) {
      int e = min_exp_ + static_cast<int>(i);
      if (e <= r.order_ && !is_zero(c_[i])) r.set_coeff(e, c_[i]);
    }
    return r;
  }

  TruncatedSeries operator-() const {
    TruncatedSeries r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries r(std::min(a.order_, b.order_));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      int e = a.min_exp_ + static_cast<int>(i);
      if (e <= r.order_) r.set_coeff(e, r.coeff(e) + a.c_[i]);
    }
    for (size_t i = 0; i < b.c_.size(); ++i) {
      int e = b.min_exp_ + static_cast<int>(i);
      if (e <= r.order_) r.set_coeff(e, r.coeff(e) + b.c_[i]);
    }
    return r;
  }
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a + (-b);
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    int ord = std::min(a.order_ + b.valuation(), b.order_ + a.valuation());
    TruncatedSeries r(ord);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      int ea = a.min_exp_ + static_cast<int>(i);
      for (size_t j = 0; j < b.c_.size(); ++j) {
        if (is_zero(b.c_[j])) continue;
        int e = ea + b.min_exp_ + static_cast<int>(j);
        if (e <= ord) r.set_coeff(e, r.coeff(e) + a.c_[i] * b.c_[j]);
      }
    }
    return r;
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const C& s) {
    TruncatedSeries r = a;
    for (auto& x : r.c_) x = x * s;
    return r;
  }
  friend TruncatedSeries operator*(const C& s, const TruncatedSeries& a) { return a * s; }

  // Multiplicative inverse: leading coefficient must be invertible in C.
  TruncatedSeries inverse() const {
    int v = valuation();
    if (v > order_) throw std::domain_error("inverse of (known-)zero series");
    C lead_inv = ring_inv(coeff(v));
    int n = order_ - v;  // relative order of the unit part
    // self = lead x^v (1 + r) with val(r) >= 1
    TruncatedSeries r(n);
    for (size_t i = 0; i < c_.size(); ++i) {
      int e = min_exp_ + static_cast<int>(i) - v;
      if (e >= 1 && e <= n && !is_zero(c_[i])) r.set_coeff(e, c_[i] * lead_inv);
    }
    TruncatedSeries acc(C(1), n), term(C(1), n);
    for (int k = 0; k < n; ++k) {
      term = term * r;
      if (term.known_zero()) break;
      term = -term;
      acc = acc + term;
    }
    TruncatedSeries out(order_ - 2 * v);
    for (size_t i = 0; i < acc.c_.size(); ++i) {
      int e = acc.min_exp_ + static_cast<int>(i);
      if (!is_zero(acc.c_[i]) && e - v <= out.order_) out.set_coeff(e - v, acc.c_[i] * lead_inv);
    }
    return out;
  }

  TruncatedSeries pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    if (k == 0) return TruncatedSeries(C(1), order_);
    TruncatedSeries base = *this, out(order_);
    bool have = false;
    while (k) {
      if (k & 1) {
        out = have ? out * base : base;
        have = true;
      }
      k >>= 1;
      if (k) base = base * base;
    }
    return out;
  }

  TruncatedSeries derivative() const {
    TruncatedSeries r(order_ - 1);
    for (size_t i = 0; i < c_.size(); ++i) {
      int e = min_exp_ + static_cast<int>(i);
      if (e != 0 && e - 1 <= r.order_ && !is_zero(c_[i])) r.set_coeff(e - 1, c_[i] * C(e));
    }
    return r;
  }

  // Termwise antiderivative; a nonzero x^{-1} coefficient has no primitive here.
  TruncatedSeries antiderivative() const {
    TruncatedSeries r(order_ + 1);
    for (size_t i = 0; i < c_.size(); ++i) {
      int e = min_exp_ + static_cast<int>(i);
      if (is_zero(c_[i])) continue;
      if (e == -1) throw std::domain_error("antiderivative of x^-1 term");
      r.set_coeff(e + 1, c_[i] * ring_inv(C(e + 1)));
    }
    return r;
  }

  C residue() const { return coeff(-1); }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order_ != b.order_) return false;
    int lo = std::min(a.min_exp_, b.min_exp_);
    for (int e = lo; e <= a.order_; ++e)
      if (!is_zero(a.coeff(e) - b.coeff(e))) return false;
    return true;
  }

  // Coefficientwise equality on the common known range.
  friend bool agree_to_common_order(const TruncatedSeries& a, const TruncatedSeries& b) {
    int hi = std::min(a.order_, b.order_);
    int lo = std::min(a.min_exp_, b.min_exp_);
    for (int e = lo; e <= hi; ++e)
      if (!is_zero(a.coeff(e) - b.coeff(e))) return false;
    return true;
  }

 private:
  int min_exp_ = 0;
  int order_;
  std::vector<C> c_;
};

// f(g) for g with positive valuation (or any unit power when f is Laurent).
// Horner on the nonnegative part; explicit inverse powers for the principal
// part. Order bookkeeping is inherited from the ring operations.
template <class C>
TruncatedSeries<C> ps_compose(const TruncatedSeries<C>& f, const TruncatedSeries<C>& g) {
  if (g.valuation() < 1)
    throw std::invalid_argument("ps_compose: inner series must have zero constant term");
  int fv = f.valuation();
  TruncatedSeries<C> out(g.order());
  if (fv > f.order()) {
    // f known zero: result known zero to the composed order
    return TruncatedSeries<C>(std::min(g.order(), (f.order() + 1) * g.valuation() - 1));
  }
  // principal part
  if (fv < 0) {
    TruncatedSeries<C> gi = g.inverse();
    for (int e = fv; e < 0; ++e) {
      C a = f.coeff(e);
      if (!is_zero(a)) out = out + gi.pow(-e) * a;
    }
  }
  // polynomial part, Horner
  TruncatedSeries<C> acc(g.order());
  for (int e = f.order(); e >= 0; --e) {
    acc = acc * g;
    C a = f.coeff(e);
    if (!is_zero(a)) acc = acc + TruncatedSeries<C>(a, acc.order());
  }
  out = out + acc;
  // f's own truncation limits the certified order
  int lim = (f.order() + 1) * g.valuation() - 1;
  return out.truncated(lim);
}

// Compositional inverse of f = a1 x + O(x^2), a1 invertible:
// ps_compose(f, result) = x up to the truncation order.
template <class C>
TruncatedSeries<C> ps_reversion(const TruncatedSeries<C>& f) {
  if (f.valuation() != 1) throw std::invalid_argument("ps_reversion: need valuation exactly 1");
  int N = f.order();
  C a1_inv = ring_inv(f.coeff(1));
  TruncatedSeries<C> g = TruncatedSeries<C>::monomial(a1_inv, 1, N);
  for (int m = 2; m <= N; ++m) {
    TruncatedSeries<C> err = ps_compose(f, g);
    C cm = err.coeff(m);
    if (!is_zero(cm)) g.set_coeff(m, g.coeff(m) - cm * a1_inv);
  }
  return g;
}

namespace detail {
inline Rat coeff_sqrt(const Rat& q) {
  auto r = rat_sqrt(q);
  if (!r) throw std::invalid_argument("ps_sqrt: constant term is not a perfect square");
  return *r;
}
inline KElement coeff_sqrt(const KElement& k) {
  if (k == KElement(1)) return KElement(1);
  throw std::invalid_argument("ps_sqrt over K: leading coefficient must be 1");
}
}  // namespace detail

// Square root of a series with even valuation and square leading coefficient.
template <class C>
TruncatedSeries<C> ps_sqrt(const TruncatedSeries<C>& f) {
  int v = f.valuation();
  if (v > f.order()) throw std::invalid_argument("ps_sqrt of (known-)zero series");
  if (v % 2 != 0) throw std::invalid_argument("ps_sqrt: odd valuation");
  C lead = detail::coeff_sqrt(f.coeff(v));
  int N = f.order() - v / 2;
  TruncatedSeries<C> g = TruncatedSeries<C>::monomial(lead, v / 2, N);
  C scale = ring_inv(lead + lead);
  for (int m = v / 2 + 1; m <= N; ++m) {
    TruncatedSeries<C> err = f - g * g;
    C cm = err.coeff(m + v / 2);
    if (!is_zero(cm)) g.set_coeff(m, cm * scale);
  }
  return g;
}

using QSeries = TruncatedSeries<Rat>;
using KSeries = TruncatedSeries<KElement>;

// c(t) with c = sqrt((1 - sqrt(1 - 12 t)) / (6 t)), as a power series in t:
// 1 + 3t/2 + 63t^2/8 + 891t^3/16 + ...
inline QSeries c_series(int order) {
  QSeries one(Rat(1), order + 1);
  QSeries twelve_t = QSeries::monomial(Rat(12), 1, order + 1);
  QSeries inner = ps_sqrt(one - twelve_t);  // sqrt(1-12t)
  QSeries num = one - inner;                // 6t + 18t^2 + ...
  QSeries shifted(order);
  for (int e = 1; e <= order + 1; ++e) shifted.set_coeff(e - 1, num.coeff(e) / 6);
  return ps_sqrt(shifted);
}

// Horner evaluation of a polynomial at a series argument.
template <class C>
TruncatedSeries<C> eval_poly(const Polynomial<C>& p, const TruncatedSeries<C>& x) {
  TruncatedSeries<C> acc(x.order());
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * x;
    if (!is_zero(p.coeff(i))) acc = acc + TruncatedSeries<C>(p.coeff(i), x.order());
  }
  return acc;
}

// Substitute c = c(t) into an element of Q(c) c K (odd part must vanish).
// Exact to O(t^{Q+1}).
inline QSeries expand_t(const KElement& x, int Q) {
  if (!x.pure_even())
    throw std::invalid_argument("expand_t: element has an s-component, requires s-cancellation");
  QSeries c = c_series(Q);
  QSeries num = eval_poly(x.even().num(), c);
  QSeries den = eval_poly(x.even().den(), c);
  if (den.valuation() != 0) throw std::domain_error("expand_t: denominator vanishes at c = 1");
  return num * den.inverse();
}

}  // namespace maprec
