#pragma once

// Topological recursion over a genus-0 curve with simple branch points.
//
// Amplitudes are stored in a pole basis: omega_{g,n} = sum over multi-indices
// ((a_1,k_1),...,(a_n,k_n)) of C[...] prod_i dz_i/(z_i - a_i)^{k_i}, with the
// coefficient attached to EVERY arrangement of the sorted multi-index (the
// fully symmetric extension). Residues are taken purely on local jets, so the
// exchanged curve's non-rational deck map costs nothing extra.

#include <map>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "maprec/spectral.hpp"

namespace maprec {

using PoleIndex = std::pair<int, int>;  // (branch point index, pole order >= 2)
using MultiIndex = std::vector<PoleIndex>;

struct Amplitude {
  int g = 0, n = 0;
  std::map<MultiIndex, KElement> coeff;

  bool same_entries(const Amplitude& o) const;
  Amplitude scaled(const KElement& f) const;
};

class TrEngine {
 public:
  explicit TrEngine(SpectralCurveData curve);

  const SpectralCurveData& curve() const { return curve_; }

  // Memoized omega_{g,n}; requires 2g - 2 + n > 0.
  const Amplitude& amplitude(int g, int n);

  // Local deck map sigma(zeta) = -zeta + ..., solving x(a+sigma) = x(a+zeta).
  KSeries deck_jet(int branch, int order) const;

  // Kernel denominator 2(y(a+zeta) - y(a+sigma(zeta))) x'(a+zeta), the direct
  // route and the pullback route (sigma' x'(a+sigma) carried explicitly).
  KSeries kernel_denominator(int branch, int order) const;
  KSeries kernel_denominator_pullback(int branch, int order) const;

  // Dilaton: sum_a Res_{z->a} omega_{g,n+1}(..., z) Phi(z) against
  // (2-2g-n) omega_{g,n}. Returns true on exact equality; the residual tensor
  // (LHS - RHS) is written to *residual when given.
  bool dilaton_check(int g, int n, Amplitude* residual = nullptr);

 private:
  struct BranchData {
    KElement a;
    KSeries sigma, sigma_prime;
    std::vector<KSeries> sigma_pow;
    KSeries y, x, x_prime;
    KSeries denom_inv;
  };

  const BranchData& branch(int i, int min_order);
  Amplitude compute(int g, int n);
  int max_pole(int g, int n);  // max single-slot pole order of a computed tensor

  SpectralCurveData curve_;
  std::map<std::pair<int, int>, Amplitude> memo_;
  mutable std::shared_mutex memo_mutex_;
  std::recursive_mutex compute_mutex_;
  std::vector<BranchData> branch_;
  int branch_order_ = -1;
};

}  // namespace maprec
