#pragma once

#include <random>

#include "etalg/presentation.hpp"
#include "etalg/spectrum.hpp"

namespace fixtures {

using namespace etalg;

inline Presentation P_DD() { return Presentation{{1, 1}, {2}, {{1, 1}}, {{2, 0}}, true}; }
inline Presentation INT() { return interval_presentation(1); }

inline Rational q(long a, long b = 1) { return make_rational(a, b); }

// Random valid unital presentation with p, l <= 4 and multiplicities <= 3.
// dims is the alpha row sum; beta rows are redrawn until their sums agree.
inline Presentation random_unital(std::mt19937& rng, int max_p = 4, int max_l = 4, int max_entry = 3) {
  std::uniform_int_distribution<int> pd(1, max_p), ld(0, max_l), kd(1, 3), ed(0, max_entry);
  while (true) {
    Presentation P;
    int p = pd(rng), l = ld(rng);
    for (int j = 0; j < p; ++j) P.k.push_back(kd(rng));
    bool ok = true;
    for (int i = 0; i < l && ok; ++i) {
      std::vector<int> a(p), b(p);
      long sa = 0;
      for (int j = 0; j < p; ++j) {
        a[j] = ed(rng);
        sa += long(a[j]) * P.k[j];
      }
      if (sa == 0) {
        ok = false;
        break;
      }
      bool found = false;
      for (int tries = 0; tries < 200 && !found; ++tries) {
        long sb = 0;
        for (int j = 0; j < p; ++j) {
          b[j] = ed(rng);
          sb += long(b[j]) * P.k[j];
        }
        found = sb == sa;
      }
      if (!found) {
        ok = false;
        break;
      }
      P.dims.push_back(int(sa));
      P.alpha.push_back(a);
      P.beta.push_back(b);
    }
    if (ok) return P;
  }
}

// Random presentation that only needs the non-unital inequalities.
inline Presentation random_any(std::mt19937& rng, int max_p = 4, int max_l = 4, int max_entry = 3) {
  std::uniform_int_distribution<int> pd(0, max_p), ld(0, max_l), kd(1, 3), ed(0, max_entry), extra(0, 2);
  Presentation P;
  P.unital = false;
  int p = pd(rng), l = ld(rng);
  for (int j = 0; j < p; ++j) P.k.push_back(kd(rng));
  for (int i = 0; i < l; ++i) {
    std::vector<int> a(p), b(p);
    long sa = 0, sb = 0;
    for (int j = 0; j < p; ++j) {
      a[j] = ed(rng);
      b[j] = ed(rng);
      sa += long(a[j]) * P.k[j];
      sb += long(b[j]) * P.k[j];
    }
    P.dims.push_back(int(std::max(std::max(sa, sb), 1L) + extra(rng)));
    P.alpha.push_back(a);
    P.beta.push_back(b);
  }
  return P;
}

// Random closed subset: random thetas and up to three intervals or points
// per block on a 1/den grid, closed up.
inline ClosedSubset random_closed(std::mt19937& rng, const Presentation& P, int den = 20) {
  std::uniform_int_distribution<int> coin(0, 1), cnt(0, 3), num(0, den), kind(0, 3);
  ClosedSubset S;
  for (int j = 0; j < P.p(); ++j)
    if (coin(rng)) S.thetas.push_back(j);
  S.pieces.resize(P.l());
  for (int i = 0; i < P.l(); ++i) {
    if (kind(rng) == 0) {
      S.pieces[i].push_back({q(0), q(1)});
      continue;
    }
    int c = cnt(rng);
    for (int r = 0; r < c; ++r) {
      int a = num(rng), b = kind(rng) == 0 ? a : num(rng);
      if (a > b) std::swap(a, b);
      S.pieces[i].push_back({q(a, den), q(b, den)});
    }
  }
  return closure(P, S);
}

}  // namespace fixtures
