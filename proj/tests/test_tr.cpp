#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "maprec/tr.hpp"

using namespace maprec;

namespace {

// Evaluate a K element at the rational curve point c = 5/4 (so s = 3/4,
// t = 48/625); the reference tensors below were computed with an independent
// jet implementation at this point.
Rat at_point(const KElement& k) {
  const Rat c(5, 4), s(3, 4);
  return k.even().eval_at(c) + k.odd().eval_at(c) * s;
}

MultiIndex mi(std::initializer_list<std::pair<int, int>> l) {
  MultiIndex v(l.begin(), l.end());
  std::sort(v.begin(), v.end());
  return v;
}

void check_tensor(const Amplitude& amp,
                  const std::map<MultiIndex, Rat>& expected) {
  std::map<MultiIndex, Rat> got;
  for (const auto& [k, v] : amp.coeff) {
    Rat r = at_point(v);
    if (!is_zero(r)) got[k] = r;
  }
  CHECK(got == expected);
}

}  // namespace

TEST_CASE("deck jet on the ordinary curve is the global involution 1/z") {
  TrEngine eng(build_quadrangulation_curve());
  KSeries sig = eng.deck_jet(0, 8);  // at a = 1: 1/(1+zeta) - 1
  for (int e = 1; e <= 8; ++e) CHECK(sig.coeff(e) == KElement((e % 2) ? -1 : 1));
  // involution law sigma(sigma) = id
  KSeries back = ps_compose(sig, sig);
  CHECK(back.coeff(1) == KElement(1));
  for (int e = 2; e <= back.order(); ++e) CHECK(back.coeff(e).zero());
}

TEST_CASE("deck jet on the exchanged curve: quadratic term and closed form") {
  auto exc = exchange_curve(build_quadrangulation_curve());
  TrEngine eng(exc);
  int N = 8;
  KSeries sig = eng.deck_jet(0, N);  // at a = s
  CHECK(sig.coeff(1) == KElement(-1));
  // sigma_2 = -(2/3) w3/w2 where w(a+zeta) = w(a) + w2 zeta^2 + w3 zeta^3 + ...
  KSeries w = map_jet(exc.xmap, exc.branch_points[0], 4);
  KElement expect = -(KElement(2) * w.coeff(3)) * (KElement(3) * w.coeff(2)).inv();
  CHECK(sig.coeff(2) == expect);
  // involution
  KSeries back = ps_compose(sig, sig);
  CHECK(back.coeff(1) == KElement(1));
  for (int e = 2; e <= back.order(); ++e) CHECK(back.coeff(e).zero());

  // closed form: the second sheet over w is
  //   c^2 z (c^2 t + sqrt(4 t z^2 - 3 c^4 t^2)) / (2 (z^2 - t c^4));
  // expand it at z = s + zeta and compare.
  KElement c = KElement::c(), t = KElement::t(), s = KElement::s();
  KSeries z(N);
  z.set_coeff(0, s);
  z.set_coeff(1, KElement(1));
  KSeries rad = z * z * (KElement(4) * t) - KSeries(KElement(3) * t * t * c.inv().inv() /*c^4*/
                                                        * c * c * c * c * c * c * c * c,
                                                    N);
  // simpler: build 4 t z^2 - 3 c^4 t^2 directly
  KElement c4 = c * c * c * c;
  rad = z * z * (KElement(4) * t) - KSeries(KElement(3) * c4 * t * t, N);
  // rad = 9 t^2 c^4 (1 + ...) ; pull the square prefactor out
  KElement pref = KElement(9) * t * t * c4;
  KSeries unit = rad * pref.inv();
  KSeries root = ps_sqrt(unit) * (KElement(3) * t * c * c);
  KSeries num = z * (root + KSeries(c * c * t, N)) * (c * c);
  KSeries den = (z * z - KSeries(t * c4, N)) * KElement(2);
  KSeries iota = num * den.inverse();
  // subtract the base point s to get the local jet
  CHECK(iota.coeff(0) == s);
  for (int e = 1; e <= sig.order(); ++e) CHECK(iota.coeff(e) == sig.coeff(e));
}

TEST_CASE("kernel denominator: net simple pole and two-route equality") {
  for (bool exchanged : {false, true}) {
    auto cur = build_quadrangulation_curve();
    TrEngine eng(exchanged ? exchange_curve(cur) : cur);
    for (int b = 0; b < 2; ++b) {
      KSeries d1 = eng.kernel_denominator(b, 10);
      KSeries d2 = eng.kernel_denominator_pullback(b, 10);
      CHECK(d1.valuation() == 2);  // double zero -> kernel has a simple pole
      CHECK(agree_to_common_order(d1, d2));
    }
  }
}

TEST_CASE("omega_{1,1} ordinary: closed rational form") {
  // z (t c^4 z^4 + z^2 (1 - 5 t c^4) + t c^4) / ((z^2-1)^4 (1 - 3 t c^4)^2) dz,
  // checked as an exact partial-fraction identity at both branch points.
  TrEngine eng(build_quadrangulation_curve());
  const Amplitude& amp = eng.amplitude(1, 1);
  KElement c = KElement::c(), t = KElement::t();
  KElement tc4 = t * c * c * c * c;
  // reconstruct sum of pole parts and compare with the closed form by
  // clearing denominators: lhs(z) * (z^2-1)^4 (1-3tc4)^2 == numerator poly
  using KP = Polynomial<KElement>;
  KP z = KP::monomial(KElement(1), 1);
  KP one(KElement(1));
  KP zm1 = z - one, zp1 = z + one;
  auto power = [](KP base, int k) {
    KP r(KElement(1));
    for (int i = 0; i < k; ++i) r = r * base;
    return r;
  };
  KP lhs;  // sum C * (z-a)^{4-k} * (z+a)^4 etc.
  for (const auto& [idx, cf] : amp.coeff) {
    auto [b, k] = idx[0];
    KP num = b == 0 ? power(zm1, 4 - k) * power(zp1, 4) : power(zp1, 4 - k) * power(zm1, 4);
    lhs = lhs + num * cf;
  }
  KElement scale = (KElement(1) - KElement(3) * tc4);
  lhs = lhs * (scale * scale);
  KP rhs = z * (power(z, 4) * tc4 + power(z, 2) * (KElement(1) - KElement(5) * tc4) +
                KP(tc4));
  CHECK(lhs == rhs);
}

TEST_CASE("amplitude tensors match the independent-oracle values at c=5/4") {
  TrEngine ord(build_quadrangulation_curve());
  TrEngine exc(exchange_curve(build_quadrangulation_curve()));

  check_tensor(ord.amplitude(0, 3), {{mi({{0, 2}, {0, 2}, {0, 2}}), Rat(8, 7)},
                                     {mi({{1, 2}, {1, 2}, {1, 2}}), Rat(-8, 7)}});
  check_tensor(ord.amplitude(1, 1), {{mi({{0, 2}}), Rat(17, 98)},
                                     {mi({{0, 3}}), Rat(1, 7)},
                                     {mi({{0, 4}}), Rat(1, 7)},
                                     {mi({{1, 2}}), Rat(-17, 98)},
                                     {mi({{1, 3}}), Rat(1, 7)},
                                     {mi({{1, 4}}), Rat(-1, 7)}});
  check_tensor(exc.amplitude(0, 3), {{mi({{0, 2}, {0, 2}, {0, 2}}), Rat(-243, 896)},
                                     {mi({{1, 2}, {1, 2}, {1, 2}}), Rat(243, 896)}});
  check_tensor(exc.amplitude(1, 1), {{mi({{0, 2}}), Rat(-1215, 6272)},
                                     {mi({{0, 3}}), Rat(-27, 256)},
                                     {mi({{0, 4}}), Rat(-243, 7168)},
                                     {mi({{1, 2}}), Rat(1215, 6272)},
                                     {mi({{1, 3}}), Rat(-27, 256)},
                                     {mi({{1, 4}}), Rat(243, 7168)}});
  check_tensor(ord.amplitude(1, 2), {
    {mi({{0, 2}, {0, 2}}), Rat(7010, 2401)},  {mi({{0, 2}, {0, 3}}), Rat(506, 343)},
    {mi({{0, 2}, {0, 4}}), Rat(786, 343)},    {mi({{0, 2}, {0, 5}}), Rat(80, 49)},
    {mi({{0, 2}, {0, 6}}), Rat(40, 49)},      {mi({{0, 2}, {1, 2}}), Rat(-2, 49)},
    {mi({{0, 3}, {0, 3}}), Rat(24, 49)},      {mi({{0, 3}, {0, 4}}), Rat(24, 49)},
    {mi({{0, 4}, {0, 4}}), Rat(24, 49)},      {mi({{1, 2}, {1, 2}}), Rat(7010, 2401)},
    {mi({{1, 2}, {1, 3}}), Rat(-506, 343)},   {mi({{1, 2}, {1, 4}}), Rat(786, 343)},
    {mi({{1, 2}, {1, 5}}), Rat(-80, 49)},     {mi({{1, 2}, {1, 6}}), Rat(40, 49)},
    {mi({{1, 3}, {1, 3}}), Rat(24, 49)},      {mi({{1, 3}, {1, 4}}), Rat(-24, 49)},
    {mi({{1, 4}, {1, 4}}), Rat(24, 49)}});
}

TEST_CASE("pole structure: only orders >= 2, and the z -> -z symmetry") {
  TrEngine eng(build_quadrangulation_curve());
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {0, 4}, {1, 2}}) {
    const Amplitude& amp = eng.amplitude(g, n);
    CHECK(!amp.coeff.empty());
    for (const auto& [idx, cf] : amp.coeff) {
      int total_parity = 0;
      for (auto [b, k] : idx) {
        CHECK(k >= 2);
        total_parity += k + 1;
      }
      // reflected entry: branch 0 <-> 1, sign prod (-1)^{k+1}
      MultiIndex ridx = idx;
      for (auto& [b, k] : ridx) b = 1 - b;
      std::sort(ridx.begin(), ridx.end());
      auto it = amp.coeff.find(ridx);
      REQUIRE(it != amp.coeff.end());
      KElement expect = (total_parity % 2) ? -cf : cf;
      CHECK(it->second == expect);
    }
  }
}

TEST_CASE("dilaton equation holds exactly on both curves") {
  TrEngine ord(build_quadrangulation_curve());
  TrEngine exc(exchange_curve(build_quadrangulation_curve()));
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {1, 2}}) {
    Amplitude res;
    CHECK(ord.dilaton_check(g, n, &res));
    CHECK(res.coeff.empty());
    CHECK(exc.dilaton_check(g, n));
  }
}

TEST_CASE("homogeneity: y -> 2y rescales omega_{g,n} by 2^{2-2g-n}") {
  auto base = build_quadrangulation_curve();
  TrEngine eng(base);
  TrEngine eng2(with_scaled_y(base, 2));
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {0, 4}, {1, 2}}) {
    int e = 2 - 2 * g - n;
    Rat lam = e >= 0 ? rat_pow(2, e) : Rat(1) / rat_pow(2, -e);
    Amplitude scaled = eng.amplitude(g, n).scaled(KElement(lam));
    CHECK(scaled.same_entries(eng2.amplitude(g, n)));
  }
}
