#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "maprec/spectral.hpp"

using namespace maprec;

TEST_CASE("quadrangulation curve: evaluation and ramification") {
  auto cur = build_quadrangulation_curve();
  KElement c = KElement::c();
  CHECK(cur.xmap.eval_at(KElement(1)) == c + c);
  CHECK(cur.xmap.eval_at(KElement(-1)) == -(c + c));
  // dx = c (1 - 1/z^2) dz vanishes simply at +-1
  ZMap dx = cur.xmap.derivative();
  CHECK(dx.eval_at(KElement(1)).zero());
  CHECK(dx.eval_at(KElement(-1)).zero());
  CHECK_NOTHROW(validate_curve(cur));
  // u-normalization gamma^2 - 3 t gamma^4 = 1 with gamma = c
  KElement t = KElement::t();
  CHECK(c * c - KElement(3) * t * c * c * c * c == KElement(1));
}

TEST_CASE("w expansion at infinity starts 1/(cz)") {
  auto cur = build_quadrangulation_curve();
  KSeries w = infinity_jet(cur.ymap, 5);  // exponent e = coefficient of z^{-e}
  CHECK(w.coeff(1) == KElement::c().inv());
  CHECK(w.coeff(2).zero());
  CHECK(w.coeff(3) == -(KElement::t() * KElement::c() * KElement::c() * KElement::c()));
}

TEST_CASE("exchanged curve: branch points and values") {
  auto cur = build_quadrangulation_curve();
  auto exc = exchange_curve(cur);
  CHECK(exc.mode == CurveMode::exchanged);
  CHECK_NOTHROW(validate_curve(exc));
  KElement s = KElement::s(), c = KElement::c();
  // dw(+-s) = 0
  ZMap dw = exc.xmap.derivative();
  CHECK(dw.eval_at(s).zero());
  CHECK(dw.eval_at(-s).zero());
  // w(s) = 2/(3 c s)
  KElement ws = exc.xmap.eval_at(s);
  CHECK(ws == KElement(2) * (KElement(3) * c * s).inv());
  // x(s) = c (s + 1/s)
  CHECK(exc.ymap.eval_at(s) == c * (s + s.inv()));
  CHECK_THROWS(exchange_curve(exc));
}

TEST_CASE("general curve, zero potential: Gaussian normalization") {
  PotentialSpec pot;  // no face weights
  auto cur = build_general_curve(pot, 4);
  CHECK(cur.alpha.known_zero());
  // gamma = sqrt(u) exactly
  CHECK(cur.gamma.coeff(0) == UPoly::monomial(1, 1));
  for (int e = 1; e <= 4; ++e) CHECK(is_zero(cur.gamma.coeff(e)));
  // disk series at u=1: Catalan numbers in even lengths
  CHECK(at_unit_u(general_disk_coeff(cur, 0)).coeff(0) == 1);
  CHECK(at_unit_u(general_disk_coeff(cur, 2)).coeff(0) == 1);
  CHECK(at_unit_u(general_disk_coeff(cur, 4)).coeff(0) == 2);
  CHECK(at_unit_u(general_disk_coeff(cur, 6)).coeff(0) == 5);
  CHECK(at_unit_u(general_disk_coeff(cur, 8)).coeff(0) == 14);
  CHECK(at_unit_u(general_disk_coeff(cur, 3)).known_zero());
}

TEST_CASE("general curve, quartic weight: gamma recovers c(t); disks match") {
  PotentialSpec pot;
  pot.weights[4] = 1;
  auto cur = build_general_curve(pot, 8);
  QSeries gamma1 = at_unit_u(cur.gamma);
  QSeries c = c_series(8);
  CHECK(agree_to_common_order(gamma1, c));
  // ordinary disks of length 2: 1, 2, 9, 54, 378
  QSeries f2 = at_unit_u(general_disk_coeff(cur, 2));
  CHECK(f2.coeff(0) == 1);
  CHECK(f2.coeff(1) == 2);
  CHECK(f2.coeff(2) == 9);
  CHECK(f2.coeff(3) == 54);
  CHECK(f2.coeff(4) == 378);
  // odd lengths vanish
  CHECK(at_unit_u(general_disk_coeff(cur, 5)).known_zero());
}

TEST_CASE("general curve (quartic) is the quadrangulation curve after expansion") {
  PotentialSpec pot;
  pot.weights[4] = 1;
  auto gen = build_general_curve(pot, 6);
  auto quad = build_quadrangulation_curve();
  // x-maps: coefficient of z and of 1/z both equal c
  QSeries cq = expand_t(KElement::c(), 6);
  CHECK(agree_to_common_order(at_unit_u(gen.gamma), cq));
  CHECK(at_unit_u(gen.alpha).known_zero());
  // y-map: quad ymap expands to the disk part of V' on the general curve
  // compare Laurent coefficients at negative powers of z
  for (int e = -3; e <= -1; ++e) {
    QSeries lhs = expand_t(quad.ymap.coeff(e), 6);
    auto it = gen.disk_part.find(e);
    QSeries rhs = it == gen.disk_part.end() ? QSeries(6) : at_unit_u(it->second);
    CHECK(agree_to_common_order(lhs, rhs));
  }
}

TEST_CASE("general curve with cubic weight develops nonzero alpha") {
  PotentialSpec pot;
  pot.weights[3] = 1;
  auto cur = build_general_curve(pot, 4);
  CHECK(!cur.alpha.known_zero());
  // disk of length 1 exists at first order: a single triangle with
  // a 1-gon boundary glued... the count at order 1 must be an integer >= 0.
  QSeries f1 = at_unit_u(general_disk_coeff(cur, 1));
  CHECK(denominator(f1.coeff(1)) == 1);
}
