#include "etalg/pairing.hpp"

#include <algorithm>

#include "etalg/error.hpp"

namespace etalg {

namespace {

struct Split {
  std::vector<Rational> left, core, right;  // each ascending
};

Split split_block(const FiniteSpectrum& S, int i, const Rational& eta) {
  Split s;
  for (const auto& y : S.interior) {
    if (y.i != i) continue;
    if (y.t < eta)
      s.left.push_back(y.t);
    else if (y.t > 1 - eta)
      s.right.push_back(y.t);
    else
      s.core.push_back(y.t);
  }
  std::sort(s.left.begin(), s.left.end());
  std::sort(s.core.begin(), s.core.end());
  std::sort(s.right.begin(), s.right.end());
  return s;
}

std::vector<Rational> selection(const Split& s, std::size_t cl, std::size_t cr) {
  std::vector<Rational> x(s.left.end() - long(cl), s.left.end());
  x.insert(x.end(), s.core.begin(), s.core.end());
  x.insert(x.end(), s.right.begin(), s.right.begin() + long(cr));
  return x;
}

}  // namespace

PairingResult pair_spectra(const Presentation& P, const FiniteSpectrum& Sphi,
                           const FiniteSpectrum& Spsi, const Rational& epsilon, int m) {
  require(m >= 1, ErrorKind::invalid_input, "pair_spectra: grid size must be positive");
  require(spectrum_size(P, Sphi) == spectrum_size(P, Spsi), ErrorKind::invalid_input,
          "pair_spectra: impossible sizes (the spectra have different total size)");
  const FiniteSpectrum a = boundary_rewrite(P, Sphi), b = boundary_rewrite(P, Spsi);
  PairingResult res;
  res.eta = make_rational(1, m);
  res.epsilon = epsilon;
  res.max_gap = 0;
  for (int i = 0; i < P.l(); ++i) {
    Split sa = split_block(a, i, res.eta), sb = split_block(b, i, res.eta);
    bool found = false;
    Rational best_gap;
    std::size_t best_used = 0;
    std::vector<Rational> best_x, best_xp;
    std::size_t best_cl[2] = {0, 0}, best_cr[2] = {0, 0};
    for (std::size_t cla = 0; cla <= sa.left.size(); ++cla)
      for (std::size_t cra = 0; cra <= sa.right.size(); ++cra)
        for (std::size_t clb = 0; clb <= sb.left.size(); ++clb) {
          long need = long(cla + sa.core.size() + cra) - long(clb + sb.core.size());
          if (need < 0 || need > long(sb.right.size())) continue;
          std::size_t crb = std::size_t(need);
          auto x = selection(sa, cla, cra), xp = selection(sb, clb, crb);
          Rational gap(0);
          for (std::size_t q = 0; q < x.size(); ++q) gap = rmax(gap, rabs(x[q] - xp[q]));
          std::size_t used = cla + cra + clb + crb;
          if (!found || gap < best_gap || (gap == best_gap && used < best_used)) {
            found = true;
            best_gap = gap;
            best_used = used;
            best_x = std::move(x);
            best_xp = std::move(xp);
            best_cl[0] = cla;
            best_cr[0] = cra;
            best_cl[1] = clb;
            best_cr[1] = crb;
          }
        }
    if (!found)
      fail(ErrorKind::invalid_input, "pair_spectra: impossible sizes in block " + std::to_string(i) +
                                         " (core points cannot be matched)");
    BlockPairing bp;
    bp.block = i;
    bp.x = best_x;
    bp.x_prime = best_xp;
    bp.max_gap = best_gap;
    bp.unmatched_phi.assign(sa.left.begin(), sa.left.end() - long(best_cl[0]));
    bp.unmatched_phi.insert(bp.unmatched_phi.end(), sa.right.begin() + long(best_cr[0]), sa.right.end());
    bp.unmatched_psi.assign(sb.left.begin(), sb.left.end() - long(best_cl[1]));
    bp.unmatched_psi.insert(bp.unmatched_psi.end(), sb.right.begin() + long(best_cr[1]), sb.right.end());
    res.max_gap = rmax(res.max_gap, best_gap);
    res.blocks.push_back(std::move(bp));
  }
  res.within_bound = res.max_gap <= 2 * res.eta;
  return res;
}

HypothesisCheck check_pairing_hypothesis(const Presentation& P, const FiniteSpectrum& Sphi,
                                         const FiniteSpectrum& Spsi, const Rational& epsilon,
                                         int m, EnumerationBudget budget) {
  HypothesisCheck out;
  out.max_deviation = 0;
  HEnumerator it(P, m, budget);
  while (auto h = it.next()) {
    ProfileElement f = to_profile(P, *h);
    auto ea = eigenvalues_of(P, Sphi, f), eb = eigenvalues_of(P, Spsi, f);
    require(ea.size() == eb.size(), ErrorKind::invalid_input, "hypothesis check: size mismatch");
    Rational d(0);
    for (std::size_t q = 0; q < ea.size(); ++q) d = rmax(d, rabs(ea[q] - eb[q]));
    if (!out.worst || d > out.max_deviation) {
      out.max_deviation = d;
      out.worst = *h;
    }
    ++out.checked;
  }
  out.truncated = it.truncated();
  out.holds = out.max_deviation < epsilon;
  return out;
}

}  // namespace etalg
