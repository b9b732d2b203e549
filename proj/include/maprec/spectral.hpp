#pragma once

// Spectral curves for map enumeration.
//
// The quadrangulation curve is kept exact over K = Q(c)[s]/(s^2 - c^2 + 1):
//   x(z) = c (z + 1/z),   w(z) = 1/(c z) - t c^3 / z^3,  t = (c^2-1)/(3 c^4).
// dx vanishes simply at z = +-1, dw at z = +-s. The exchanged curve swaps the
// roles of x and w and has branch points +-s.
//
// The general polynomial-potential curve x(zeta) = alpha + gamma (zeta+1/zeta)
// is solved as a truncated series in the joint face-weight scale, with the
// vertex weight u kept symbolic through a Laurent grading in sqrt(u).

#include <map>
#include <vector>

#include "maprec/laurent.hpp"

namespace maprec {

using ZMap = LaurentPoly<KElement>;

enum class CurveMode { ordinary, exchanged };

struct SpectralCurveData {
  CurveMode mode;
  ZMap xmap;  // the map whose critical points drive the recursion
  ZMap ymap;
  std::vector<KElement> branch_points;
  Rat y_scale = 1;  // scales omega_{0,1}; used by the homogeneity property
};

SpectralCurveData build_quadrangulation_curve();
SpectralCurveData exchange_curve(const SpectralCurveData& cur);
SpectralCurveData with_scaled_y(const SpectralCurveData& cur, const Rat& lambda);

// Jet of a curve map around z = a + zeta, to the given zeta-order.
KSeries map_jet(const ZMap& m, const KElement& a, int order);

// Laurent expansion at infinity in the local coordinate 1/z: returns the
// series in powers of (1/z) whose exponent e carries the z^{-e} coefficient.
KSeries infinity_jet(const ZMap& m, int order);

// Checks simple ramification of x and regularity of y at every listed branch
// point; throws on violation.
void validate_curve(const SpectralCurveData& cur);

// ---- general polynomial potentials -----------------------------------------

using UPoly = LaurentPoly<Rat>;          // Laurent polynomial in r = sqrt(u)
using USeries = TruncatedSeries<UPoly>;  // series in the face-weight scale

struct PotentialSpec {
  // weights[j] is the coefficient of the degree-j face weight, j >= 3; the
  // series variable of the outputs counts total face-weight degree.
  std::map<int, Rat> weights;
};

struct GeneralCurveData {
  USeries alpha, gamma;             // x(zeta) = alpha + gamma (zeta + 1/zeta)
  std::map<int, USeries> w_part;    // [V'(x(zeta))]_+  (zeta-exponents >= 0)
  std::map<int, USeries> disk_part; // V'(x(zeta)) - w_part: the disk series W(x(zeta))
  int order;
};

GeneralCurveData build_general_curve(const PotentialSpec& pot, int order);

// F_ell from the general curve: [x^{-(ell+1)}] of the disk resolvent, as a
// series in the face-weight scale with sqrt(u)-graded coefficients.
USeries general_disk_coeff(const GeneralCurveData& cur, int ell);

// Specialize the sqrt(u)-grading at u = 1.
QSeries at_unit_u(const USeries& s);

}  // namespace maprec
