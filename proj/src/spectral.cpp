#include "maprec/spectral.hpp"

#include <stdexcept>

namespace maprec {

SpectralCurveData build_quadrangulation_curve() {
  KElement c = KElement::c();
  KElement t = KElement::t();
  ZMap x;
  x.add_term(1, c);
  x.add_term(-1, c);
  ZMap w;
  w.add_term(-1, c.inv());
  w.add_term(-3, -(t * c * c * c));
  SpectralCurveData cur;
  cur.mode = CurveMode::ordinary;
  cur.xmap = x;
  cur.ymap = w;
  cur.branch_points = {KElement(1), KElement(-1)};
  return cur;
}

SpectralCurveData exchange_curve(const SpectralCurveData& cur) {
  if (cur.mode != CurveMode::ordinary)
    throw std::invalid_argument("exchange_curve: input must be the ordinary curve");
  SpectralCurveData out;
  out.mode = CurveMode::exchanged;
  out.xmap = cur.ymap;
  out.ymap = cur.xmap;
  out.branch_points = {KElement::s(), -KElement::s()};
  out.y_scale = cur.y_scale;
  return out;
}

SpectralCurveData with_scaled_y(const SpectralCurveData& cur, const Rat& lambda) {
  SpectralCurveData out = cur;
  out.y_scale = cur.y_scale * lambda;
  return out;
}

KSeries map_jet(const ZMap& m, const KElement& a, int order) {
  KSeries z(order);
  z.set_coeff(0, a);
  z.set_coeff(1, KElement(1));
  return m.eval_series(z);
}

KSeries infinity_jet(const ZMap& m, int order) {
  // z = 1/u; exponent e of the result is the coefficient of z^{-e}
  KSeries zinv = KSeries::monomial(KElement(1), -1, order);
  return m.eval_series(zinv);
}

void validate_curve(const SpectralCurveData& cur) {
  for (const auto& a : cur.branch_points) {
    KSeries xj = map_jet(cur.xmap, a, 3);
    if (!xj.coeff(1).zero() || xj.coeff(2).zero())
      throw std::domain_error("branch point is not a simple critical point of x");
    KSeries yj = map_jet(cur.ymap, a, 2);
    if (yj.coeff(0).zero() && yj.coeff(1).zero())
      throw std::domain_error("y degenerate at branch point");
    if (yj.coeff(1).zero()) throw std::domain_error("dy vanishes at branch point");
  }
}

// ---- general polynomial potentials -----------------------------------------

namespace {

// V'(x) = x - sum_j tau_j eps x^{j-1}; returns the zeta-Laurent coefficients of
// V'(alpha + gamma (zeta + 1/zeta)) for the exponents we need.
struct VPrimeEval {
  const PotentialSpec& pot;
  int order;

  // zeta-Laurent map of x(zeta)^k up to needed k; exponents -> USeries
  static std::map<int, USeries> x_pow(const std::map<int, USeries>& x, int k, int order) {
    std::map<int, USeries> acc;
    acc[0] = USeries(UPoly(Rat(1)), order);
    for (int i = 0; i < k; ++i) {
      std::map<int, USeries> next;
      for (const auto& [e1, v1] : acc)
        for (const auto& [e2, v2] : x) {
          auto it = next.find(e1 + e2);
          if (it == next.end())
            next[e1 + e2] = v1 * v2;
          else
            it->second = it->second + v1 * v2;
        }
      acc = std::move(next);
    }
    return acc;
  }

  std::map<int, USeries> eval(const USeries& alpha, const USeries& gamma) const {
    std::map<int, USeries> x;
    x[0] = alpha;
    x[1] = gamma;
    x[-1] = gamma;
    std::map<int, USeries> out = x;  // V' starts with x
    for (const auto& [j, tau] : pot.weights) {
      if (is_zero(tau)) continue;
      auto xp = x_pow(x, j - 1, order);
      // subtract tau * eps * x^{j-1}
      USeries eps = USeries::monomial(UPoly(tau), 1, order);
      for (auto& [e, v] : xp) {
        USeries term = eps * v;
        auto it = out.find(e);
        if (it == out.end())
          out[e] = -term;
        else
          it->second = it->second - term;
      }
    }
    return out;
  }
};

USeries get_coeff(const std::map<int, USeries>& m, int e, int order) {
  auto it = m.find(e);
  return it == m.end() ? USeries(order) : it->second;
}

}  // namespace

GeneralCurveData build_general_curve(const PotentialSpec& pot, int order) {
  VPrimeEval vp{pot, order};
  UPoly su = UPoly::monomial(Rat(1), 1);  // sqrt(u)
  UPoly u = UPoly::monomial(Rat(1), 2);
  USeries alpha(order);
  USeries gamma(UPoly::monomial(Rat(1), 1), order);
  USeries u_series(u, order);

  // Newton iteration on A = [zeta^0] V'(x), B = gamma [zeta^-1] V'(x) - u.
  for (int iter = 0; iter <= order + 2; ++iter) {
    auto vpx = vp.eval(alpha, gamma);
    USeries A = get_coeff(vpx, 0, order);
    USeries B = gamma * get_coeff(vpx, -1, order) - u_series;
    if (A.known_zero() && B.known_zero()) break;
    if (iter == order + 2)
      throw std::runtime_error("general curve: Newton iteration did not converge");
    // V''(x(zeta)) coefficients for the Jacobian
    std::map<int, USeries> x{{0, alpha}, {1, gamma}, {-1, gamma}};
    std::map<int, USeries> vpp;
    vpp[0] = USeries(UPoly(Rat(1)), order);
    for (const auto& [j, tau] : pot.weights) {
      if (is_zero(tau)) continue;
      auto xp = VPrimeEval::x_pow(x, j - 2, order);
      USeries eps = USeries::monomial(UPoly(tau * Rat(j - 1)), 1, order);
      for (auto& [e, v] : xp) {
        USeries term = eps * v;
        auto it = vpp.find(e);
        if (it == vpp.end())
          vpp[e] = -term;
        else
          it->second = it->second - term;
      }
    }
    // dA = [z^0](V'' dx), dB = dgamma [z^-1]V' + gamma [z^-1](V'' dx)
    // with dx = dalpha + dgamma (zeta + 1/zeta).
    USeries Aa = get_coeff(vpp, 0, order);
    USeries Ag = get_coeff(vpp, 1, order) + get_coeff(vpp, -1, order);
    USeries Ba = gamma * get_coeff(vpp, -1, order);
    USeries Bg =
        get_coeff(vpx, -1, order) + gamma * (get_coeff(vpp, 0, order) + get_coeff(vpp, -2, order));
    USeries det = Aa * Bg - Ag * Ba;
    USeries det_inv = det.inverse();
    USeries dalpha = (A * Bg - B * Ag) * det_inv;
    USeries dgamma = (B * Aa - A * Ba) * det_inv;
    alpha = (alpha - dalpha).truncated(order);
    gamma = (gamma - dgamma).truncated(order);
  }

  GeneralCurveData out;
  out.order = order;
  out.alpha = alpha;
  out.gamma = gamma;
  auto vpx = vp.eval(alpha, gamma);
  for (const auto& [e, v] : vpx) {
    if (v.known_zero()) continue;
    if (e >= 0)
      out.w_part[e] = v;
    else
      out.disk_part[e] = v;
  }
  return out;
}

USeries general_disk_coeff(const GeneralCurveData& cur, int ell) {
  // F_ell = [zeta^{-1}] ( x(zeta)^ell * W(x(zeta)) * x'(zeta) )
  int order = cur.order;
  std::map<int, USeries> x{{0, cur.alpha}, {1, cur.gamma}, {-1, cur.gamma}};
  auto xp = VPrimeEval::x_pow(x, ell, order);
  // x'(zeta) = gamma (1 - zeta^{-2})
  std::map<int, USeries> xprime{{0, cur.gamma}, {-2, -cur.gamma}};
  USeries acc(order);
  for (const auto& [e1, v1] : xp)
    for (const auto& [e2, v2] : xprime)
      for (const auto& [e3, v3] : cur.disk_part)
        if (e1 + e2 + e3 == -1) acc = acc + v1 * v2 * v3;
  return acc;
}

QSeries at_unit_u(const USeries& s) {
  QSeries out(s.order());
  for (int e = s.valuation(); e <= s.order(); ++e) {
    UPoly p = s.coeff(e);
    Rat v = 0;
    for (const auto& [k, c] : p.terms()) v += c;
    if (!is_zero(v)) out.set_coeff(e, v);
  }
  return out;
}

}  // namespace maprec
