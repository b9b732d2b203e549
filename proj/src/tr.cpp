#include "maprec/tr.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>

namespace maprec {

namespace {

// Multiset helpers on sorted MultiIndex vectors.
bool contains(const MultiIndex& idx, const MultiIndex& sub) {
  auto it = idx.begin();
  for (const auto& e : sub) {
    it = std::find(it, idx.end(), e);
    if (it == idx.end()) return false;
    ++it;
  }
  return true;
}

MultiIndex removed(const MultiIndex& idx, const PoleIndex& e) {
  MultiIndex r = idx;
  r.erase(std::find(r.begin(), r.end(), e));
  return r;
}

MultiIndex multiset_minus(const MultiIndex& idx, const MultiIndex& sub) {
  MultiIndex r = idx;
  for (const auto& e : sub) r.erase(std::find(r.begin(), r.end(), e));
  return r;
}

std::vector<MultiIndex> sub_multisets_of_size(const MultiIndex& idx, int size) {
  // distinct value-multisets; idx sorted
  std::vector<std::pair<PoleIndex, int>> groups;
  for (const auto& e : idx) {
    if (!groups.empty() && groups.back().first == e)
      groups.back().second++;
    else
      groups.emplace_back(e, 1);
  }
  std::vector<MultiIndex> out;
  MultiIndex cur;
  std::function<void(size_t, int)> rec = [&](size_t gi, int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    if (gi == groups.size()) return;
    int take_max = std::min(groups[gi].second, left);
    for (int take = 0; take <= take_max; ++take) {
      for (int q = 0; q < take; ++q) cur.push_back(groups[gi].first);
      rec(gi + 1, left - take);
      for (int q = 0; q < take; ++q) cur.pop_back();
    }
  };
  rec(0, size);
  return out;
}

Int n_position_subsets(const MultiIndex& t, const MultiIndex& m) {
  // number of slot subsets of t realizing the multiset m
  Int total = 1;
  std::set<PoleIndex> vals(t.begin(), t.end());
  for (const auto& v : vals) {
    long ct = std::count(t.begin(), t.end(), v);
    long cm = std::count(m.begin(), m.end(), v);
    total *= binomial(ct, cm);
  }
  return total;
}

}  // namespace

bool Amplitude::same_entries(const Amplitude& o) const { return coeff == o.coeff; }

Amplitude Amplitude::scaled(const KElement& f) const {
  Amplitude r;
  r.g = g;
  r.n = n;
  for (const auto& [k, v] : coeff) {
    KElement s = v * f;
    if (!s.zero()) r.coeff[k] = s;
  }
  return r;
}

TrEngine::TrEngine(SpectralCurveData curve) : curve_(std::move(curve)) {
  validate_curve(curve_);
}

KSeries TrEngine::deck_jet(int br, int order) const {
  const KElement& a = curve_.branch_points[br];
  KSeries x = map_jet(curve_.xmap, a, order + 2);
  KSeries u = x - KSeries(x.coeff(0), x.order());
  if (u.valuation() != 2) throw std::domain_error("deck_jet: ramification is not simple");
  KElement u2_inv = (u.coeff(2) + u.coeff(2)).inv();
  KSeries sig = KSeries::monomial(KElement(-1), 1, order);
  for (int m = 2; m <= order; ++m) {
    KSeries err = ps_compose(u, sig) - u;
    KElement cm = err.coeff(m + 1);
    if (!cm.zero()) sig.set_coeff(m, cm * u2_inv);
  }
  return sig;
}

const TrEngine::BranchData& TrEngine::branch(int i, int min_order) {
  if (branch_order_ < min_order) {
    int order = min_order;
    branch_.clear();
    for (size_t b = 0; b < curve_.branch_points.size(); ++b) {
      BranchData d;
      d.a = curve_.branch_points[b];
      d.sigma = deck_jet(static_cast<int>(b), order);
      d.sigma_prime = d.sigma.derivative();
      d.sigma_pow.push_back(KSeries(KElement(1), order));
      for (int k = 1; k <= order + 3; ++k) d.sigma_pow.push_back(d.sigma_pow.back() * d.sigma);
      d.x = map_jet(curve_.xmap, d.a, order);
      d.x_prime = d.x.derivative();
      d.y = map_jet(curve_.ymap, d.a, order) * KElement(Rat(curve_.y_scale));
      KSeries ysig = ps_compose(d.y, d.sigma);
      KSeries denom = (d.y - ysig) * d.x_prime * KElement(2);
      d.denom_inv = denom.inverse();
      branch_.push_back(std::move(d));
    }
    branch_order_ = order;
  }
  return branch_[i];
}

KSeries TrEngine::kernel_denominator(int br, int order) const {
  const KElement& a = curve_.branch_points[br];
  KSeries sig = deck_jet(br, order);
  KSeries x = map_jet(curve_.xmap, a, order);
  KSeries y = map_jet(curve_.ymap, a, order) * KElement(Rat(curve_.y_scale));
  return (y - ps_compose(y, sig)) * x.derivative() * KElement(2);
}

KSeries TrEngine::kernel_denominator_pullback(int br, int order) const {
  // 2 [ y x' - (y o sigma)(x' o sigma) sigma' ]; equals the direct route since
  // x o sigma = x, but exercises independent jets.
  const KElement& a = curve_.branch_points[br];
  KSeries sig = deck_jet(br, order);
  KSeries x = map_jet(curve_.xmap, a, order);
  KSeries y = map_jet(curve_.ymap, a, order) * KElement(Rat(curve_.y_scale));
  KSeries xp = x.derivative();
  KSeries term = ps_compose(y, sig) * ps_compose(xp, sig) * sig.derivative();
  return (y * xp - term) * KElement(2);
}

const Amplitude& TrEngine::amplitude(int g, int n) {
  if (2 * g - 2 + n <= 0) throw std::invalid_argument("amplitude: need 2g-2+n > 0");
  {
    std::shared_lock lock(memo_mutex_);
    auto it = memo_.find({g, n});
    if (it != memo_.end()) return it->second;
  }
  // Resolve dependencies without holding the lock.
  if (g >= 1 && 2 * (g - 1) - 2 + (n + 1) > 0) amplitude(g - 1, n + 1);
  for (int h = 0; h <= g; ++h)
    for (int n1 = 1; n1 <= n; ++n1) {
      int g2 = g - h, n2 = n + 1 - n1;
      if (2 * h - 2 + n1 > 0 && !(h == g && n1 == n)) amplitude(h, n1);
      if (2 * g2 - 2 + n2 > 0 && !(g2 == g && n2 == n)) amplitude(g2, n2);
    }
  std::lock_guard compute_lock(compute_mutex_);
  {
    std::shared_lock lock(memo_mutex_);
    auto it = memo_.find({g, n});
    if (it != memo_.end()) return it->second;
  }
  Amplitude amp = compute(g, n);
  std::unique_lock lock(memo_mutex_);
  auto [it, inserted] = memo_.emplace(std::make_pair(g, n), std::move(amp));
  return it->second;
}

int TrEngine::max_pole(int g, int n) {
  if (g == 0 && n <= 2) return 2;
  const Amplitude& a = amplitude(g, n);
  int m = 2;
  for (const auto& [idx, v] : a.coeff)
    for (const auto& [b, k] : idx) m = std::max(m, k);
  return m;
}

Amplitude TrEngine::compute(int g, int n) {
  // jet order: generous bound on bracket pole order plus margin
  int pole_bound = 6 * g - 4 + 2 * n;
  int order = 2 * pole_bound + 10;
  int nb = static_cast<int>(curve_.branch_points.size());
  branch(0, order);

  // raw[(first, spect)] = coefficient of the arrangement z1 <- first,
  // (z2..zn) <- spect (any fixed order; the value is arrangement-independent).
  std::map<std::pair<PoleIndex, MultiIndex>, KElement> raw;

  for (int i = 0; i < nb; ++i) {
    const BranchData& bd = branch(i, order);

    auto leg = [&](const PoleIndex& e, bool use_sigma) -> KSeries {
      auto [b, k] = e;
      if (b == i) {
        if (!use_sigma) return KSeries::monomial(KElement(1), -k, order);
        return bd.sigma.inverse().pow(k) * bd.sigma_prime;
      }
      KElement diff = bd.a - curve_.branch_points[b];
      if (!use_sigma) {
        KSeries base(order);
        base.set_coeff(0, diff);
        base.set_coeff(1, KElement(1));
        return base.inverse().pow(k);
      }
      KSeries base = bd.sigma + KSeries(diff, bd.sigma.order());
      return base.inverse().pow(k) * bd.sigma_prime;
    };

    std::map<MultiIndex, KSeries> brackets;
    auto add_bracket = [&](const MultiIndex& spect, const KSeries& jet) {
      auto it = brackets.find(spect);
      if (it == brackets.end())
        brackets.emplace(spect, jet);
      else
        it->second = it->second + jet;
    };

    // term A: omega_{g-1, n+1}(z, sigma z, spectators)
    if (g >= 1) {
      if (g - 1 == 0 && n + 1 == 2) {
        KSeries d = KSeries::variable(order) - bd.sigma;
        add_bracket({}, d.inverse().pow(2) * bd.sigma_prime);
      } else {
        const Amplitude& prev = amplitude(g - 1, n + 1);
        for (const auto& [idx, cf] : prev.coeff) {
          std::set<PoleIndex> firsts(idx.begin(), idx.end());
          for (const auto& e1 : firsts) {
            MultiIndex r1 = removed(idx, e1);
            std::set<PoleIndex> seconds(r1.begin(), r1.end());
            for (const auto& e2 : seconds) {
              MultiIndex rest = removed(r1, e2);
              add_bracket(rest, leg(e1, false) * leg(e2, true) * cf);
            }
          }
        }
      }
    }

    // term B: sum' over stable splittings; pieces supply value-multisets.
    // piecejet(gp, np, M, use_sigma) = the z-jet of omega_{gp,np}(z, slots=M);
    // for (0,2) the slot leg is the pole-basis expansion of B(z, z_j) at a_i.
    auto piecejet = [&](int gp, int np, const MultiIndex& m,
                        bool use_sigma) -> std::pair<bool, KSeries> {
      if (gp == 0 && np == 2) {
        if (m.size() != 1 || m[0].first != i || m[0].second < 2) return {false, KSeries(order)};
        int p = m[0].second - 2;
        if (!use_sigma) return {true, KSeries::monomial(KElement(p + 1), p, order)};
        return {true, bd.sigma_pow[p] * bd.sigma_prime * KElement(p + 1)};
      }
      if (2 * gp - 2 + np <= 0) return {false, KSeries(order)};
      const Amplitude& piece = amplitude(gp, np);
      bool any = false;
      KSeries tot(order);
      for (const auto& [idx, cf] : piece.coeff) {
        if (static_cast<int>(idx.size()) != static_cast<int>(m.size()) + 1) continue;
        if (!contains(idx, m)) continue;
        MultiIndex rem = multiset_minus(idx, m);
        tot = tot + leg(rem[0], use_sigma) * cf;
        any = true;
      }
      return {any, tot};
    };

    // candidate spectator multisets from all stable pairs
    int spect = n - 1;
    struct Split {
      int g1, n1, g2, n2;
    };
    std::vector<Split> splits;
    for (int h = 0; h <= g; ++h)
      for (int s1 = 0; s1 <= spect; ++s1) {
        Split sp{h, s1 + 1, g - h, spect - s1 + 1};
        if ((sp.g1 == 0 && sp.n1 == 1) || (sp.g2 == 0 && sp.n2 == 1)) continue;
        splits.push_back(sp);
      }

    auto source_multisets = [&](int gp, int np, int partner_maxpole) {
      std::vector<MultiIndex> out;
      if (gp == 0 && np == 2) {
        for (int m = 2; m <= partner_maxpole + 2; ++m) out.push_back({{i, m}});
        return out;
      }
      if (2 * gp - 2 + np <= 0) return out;
      std::set<MultiIndex> seen;
      for (const auto& [idx, cf] : amplitude(gp, np).coeff)
        for (auto& m : sub_multisets_of_size(idx, static_cast<int>(idx.size()) - 1))
          seen.insert(m);
      out.assign(seen.begin(), seen.end());
      return out;
    };

    std::set<MultiIndex> candidates;
    struct SplitSources {
      Split sp;
      std::vector<MultiIndex> s1, s2;
    };
    std::vector<SplitSources> split_sources;
    for (const auto& sp : splits) {
      int mp1 = (sp.g1 == 0 && sp.n1 == 2) ? 2 : max_pole(sp.g1, sp.n1);
      int mp2 = (sp.g2 == 0 && sp.n2 == 2) ? 2 : max_pole(sp.g2, sp.n2);
      auto s1 = source_multisets(sp.g1, sp.n1, mp2);
      auto s2 = source_multisets(sp.g2, sp.n2, mp1);
      if (s1.empty() || s2.empty()) continue;
      for (const auto& m1 : s1)
        for (const auto& m2 : s2) {
          MultiIndex t = m1;
          t.insert(t.end(), m2.begin(), m2.end());
          std::sort(t.begin(), t.end());
          candidates.insert(t);
        }
      split_sources.push_back({sp, std::move(s1), std::move(s2)});
    }

    for (const auto& t : candidates) {
      KSeries tot(order);
      bool any = false;
      for (const auto& ss : split_sources) {
        for (const auto& m1 : sub_multisets_of_size(t, ss.sp.n1 - 1)) {
          MultiIndex m2 = multiset_minus(t, m1);
          std::sort(m2.begin(), m2.end());
          auto [ok1, j1] = piecejet(ss.sp.g1, ss.sp.n1, m1, false);
          if (!ok1) continue;
          auto [ok2, j2] = piecejet(ss.sp.g2, ss.sp.n2, m2, true);
          if (!ok2) continue;
          Int mult = n_position_subsets(t, m1);
          any = true;
          tot = tot + j1 * j2 * KElement(Rat(mult));
        }
      }
      if (any) add_bracket(t, tot);
    }

    // residue against the kernel; pole order j+1 in z1 collects
    // Res_zeta (zeta^j - sigma^j) / D * bracket
    for (const auto& [sp, br] : brackets) {
      int pv = br.valuation();
      int jmax = 1 - pv;
      if (jmax < 1) continue;
      for (int j = 1; j <= jmax; ++j) {
        KSeries kq = (KSeries::monomial(KElement(1), j, order) - bd.sigma_pow[j]) * bd.denom_inv;
        KSeries prod = kq * br;
        if (prod.order() < -1)
          throw std::runtime_error("tr: jet order insufficient for residue, need >= " +
                                   std::to_string(order + (-1 - prod.order())));
        KElement val = prod.residue();
        if (!val.zero()) {
          auto key = std::make_pair(PoleIndex{i, j + 1}, sp);
          auto it = raw.find(key);
          if (it == raw.end())
            raw.emplace(key, val);
          else
            it->second = it->second + val;
        }
      }
    }
  }

  // collapse per-arrangement values into symmetric storage; symmetry of the
  // outcome is verified, not imposed
  Amplitude amp;
  amp.g = g;
  amp.n = n;
  for (const auto& [key, val] : raw) {
    if (val.zero()) continue;
    MultiIndex full = key.second;
    full.push_back(key.first);
    std::sort(full.begin(), full.end());
    auto it = amp.coeff.find(full);
    if (it == amp.coeff.end()) amp.coeff[full] = val;
  }
  for (const auto& [full, val] : amp.coeff) {
    std::set<PoleIndex> vals(full.begin(), full.end());
    for (const auto& e : vals) {
      auto key = std::make_pair(e, removed(full, e));
      auto it = raw.find(key);
      KElement got = (it == raw.end()) ? KElement() : it->second;
      if (!(got - val).zero())
        throw std::runtime_error("tr: amplitude failed the symmetry cross-check");
    }
  }
  return amp;
}

bool TrEngine::dilaton_check(int g, int n, Amplitude* residual) {
  if (2 * g - 2 + n <= 0) throw std::invalid_argument("dilaton_check: need 2g-2+n > 0");
  const Amplitude& big = amplitude(g, n + 1);
  const Amplitude& small = amplitude(g, n);
  std::lock_guard compute_lock(compute_mutex_);
  int order = 6 * g - 4 + 2 * (n + 1) + 8;
  branch(0, order);

  std::map<MultiIndex, KElement> lhs;
  int nb = static_cast<int>(curve_.branch_points.size());
  for (int i = 0; i < nb; ++i) {
    const BranchData& bd = branch(i, order);
    KSeries phi = (bd.y * bd.x_prime).antiderivative();
    for (const auto& [idx, cf] : big.coeff) {
      std::set<PoleIndex> vals(idx.begin(), idx.end());
      for (const auto& e : vals) {
        if (e.first != i) continue;
        KSeries jet = KSeries::monomial(KElement(1), -e.second, order) * phi * cf;
        KElement r = jet.residue();
        if (r.zero()) continue;
        MultiIndex rest = removed(idx, e);
        auto it = lhs.find(rest);
        if (it == lhs.end())
          lhs[rest] = r;
        else
          it->second = it->second + r;
      }
    }
  }
  KElement factor = KElement(2 - 2 * g - n);
  Amplitude res;
  res.g = g;
  res.n = n;
  std::set<MultiIndex> keys;
  for (const auto& [k, v] : lhs) keys.insert(k);
  for (const auto& [k, v] : small.coeff) keys.insert(k);
  bool ok = true;
  for (const auto& k : keys) {
    KElement l = lhs.count(k) ? lhs.at(k) : KElement();
    KElement r = small.coeff.count(k) ? small.coeff.at(k) * factor : KElement();
    KElement d = l - r;
    if (!d.zero()) {
      ok = false;
      res.coeff[k] = d;
    }
  }
  if (residual) *residual = std::move(res);
  return ok;
}

}  // namespace maprec
