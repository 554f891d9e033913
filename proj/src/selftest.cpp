#include "etalg/selftest.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "etalg/bridge.hpp"
#include "etalg/discretization.hpp"
#include "etalg/error.hpp"
#include "etalg/pairing.hpp"
#include "etalg/presentation.hpp"
#include "etalg/restriction.hpp"
#include "etalg/rewriter.hpp"

namespace etalg {

namespace {

using Rng = std::mt19937_64;

int draw(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Presentation random_presentation(Rng& rng) {
  while (true) {
    Presentation P;
    const int p = draw(rng, 1, 3), l = draw(rng, 0, 3);
    for (int j = 0; j < p; ++j) P.k.push_back(draw(rng, 1, 2));
    bool ok = true;
    for (int i = 0; i < l && ok; ++i) {
      std::vector<int> a(p), b(p);
      long sa = 0, sb = -1;
      for (int j = 0; j < p; ++j) {
        a[j] = draw(rng, 0, 2);
        sa += long(a[j]) * P.k[j];
      }
      for (int tries = 0; tries < 100 && sb != sa; ++tries) {
        sb = 0;
        for (int j = 0; j < p; ++j) {
          b[j] = draw(rng, 0, 2);
          sb += long(b[j]) * P.k[j];
        }
      }
      ok = sa > 0 && sb == sa;
      P.dims.push_back(int(sa));
      P.alpha.push_back(a);
      P.beta.push_back(b);
    }
    if (ok) return P;
  }
}

ClosedSubset random_subset(Rng& rng, const Presentation& P) {
  const int den = 12;
  ClosedSubset S = empty_subset(P);
  for (int j = 0; j < P.p(); ++j)
    if (draw(rng, 0, 1)) S.thetas.push_back(j);
  for (int i = 0; i < P.l(); ++i)
    for (int r = draw(rng, 0, 2); r > 0; --r) {
      int a = draw(rng, 0, den), b = draw(rng, 0, den);
      if (a > b) std::swap(a, b);
      S.pieces[i].push_back({make_rational(a, den), make_rational(b, den)});
    }
  return closure(P, S);
}

class Suite {
 public:
  Suite(std::string name, SelftestReport& rep) : rep_(rep) { res_.name = std::move(name); }
  ~Suite() {
    rep_.ok = rep_.ok && res_.failures == 0;
    rep_.suites.push_back(res_);
  }
  void check(bool cond, const std::string& what) {
    ++res_.checked;
    if (cond) return;
    if (res_.failures++ == 0) res_.first_failure = what;
  }
  void guard(const std::string& what, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(false, what + ": " + e.what());
    }
  }

 private:
  SelftestReport& rep_;
  SuiteResult res_;
};

}  // namespace

SelftestReport run_selftest(std::uint64_t seed) {
  SelftestReport rep;
  rep.seed = seed;
  Rng rng(seed);

  {
    Suite s("k-theory", rep);
    for (int r = 0; r < 100; ++r) {
      Presentation P = random_presentation(rng);
      s.guard("presentation " + std::to_string(r), [&] {
        KTheoryResult k = k_theory(P);
        s.check(k.k0_rank == P.p() - k.rank, "kernel rank differs from p - rank");
        for (const auto& v : k.k0_basis)
          for (int i = 0; i < P.l(); ++i) {
            Integer acc(0);
            for (int j = 0; j < P.p(); ++j) acc += Integer(P.alpha[i][j] - P.beta[i][j]) * v[j];
            s.check(acc == 0, "kernel vector not annihilated");
          }
        for (int t = 0; t + 1 < k.rank; ++t)
          s.check(k.smith_diagonal[t + 1] % k.smith_diagonal[t] == 0, "invariant factors do not divide");
      });
    }
  }

  {
    Suite s("closed-sets", rep);
    for (int r = 0; r < 100; ++r) {
      Presentation P = random_presentation(rng);
      ClosedSubset A = random_subset(rng, P), B = random_subset(rng, P);
      s.guard("subset " + std::to_string(r), [&] {
        s.check(closure(P, A) == A, "closure not idempotent");
        ClosedSubset U = set_union(P, A, B), I = set_intersection(P, A, B);
        s.check(is_subset(A, U) && is_subset(B, U), "union misses an operand");
        s.check(is_subset(I, A) && is_subset(I, B), "intersection exceeds an operand");
      });
    }
  }

  {
    Suite s("discretization", rep);
    for (int r = 0; r < 60; ++r) {
      Presentation P = random_presentation(rng);
      if (P.l() == 0) continue;
      ClosedSubset Y = random_subset(rng, P);
      const Rational delta = std::vector<Rational>{1, make_rational(1, 3), make_rational(1, 10)}[r % 3];
      s.guard("subset " + std::to_string(r), [&] {
        Discretization d = discretize(P, Y, delta);
        s.check(index_sets(P, d.Z).Lll.empty() && index_sets(P, d.Z).Lrr.empty(), "index sets not empty");
        for (int i = 0; i < P.l(); ++i)
          for (const auto& iv : Y.pieces[i])
            for (const Rational& y : {iv.lo, iv.hi, Rational((iv.lo + iv.hi) / 2)}) {
              if (y == 0 || y == 1) continue;
              SpectrumPoint z = d.rho.apply(Interior{i, y});
              s.check(contains(P, d.Z, z), "rho leaves Z");
              auto dd = dist(Interior{i, y}, z);
              s.check(dd && *dd < delta, "rho moves a point by delta or more");
            }
        for (const auto& ap : d.rho.skeleton.pairs)
          if (ap.edge) s.check(ap.map(ap.map.lo()) == ap.ys && ap.map(ap.map.hi()) == ap.yt, "edge map not onto");
      });
    }
  }

  {
    Suite s("restriction", rep);
    for (int r = 0; r < 60; ++r) {
      Presentation P = random_presentation(rng);
      ClosedSubset Z = random_subset(rng, P);
      if (Z.empty()) continue;
      s.guard("subset " + std::to_string(r), [&] {
        RestrictionResult R = restrict_algebra(P, Z);
        std::vector<SpectrumPoint> samples;
        for (int i = 0; i < P.l(); ++i)
          for (const auto& iv : Z.pieces[i]) samples.push_back(Interior{i, (iv.lo + iv.hi) / 2});
        ValidationReport a = audit_restriction(P, Z, R, samples);
        s.check(a.ok, a.ok ? "" : a.violations.front().detail);
      });
    }
  }

  {
    Suite s("pairing", rep);
    Presentation P = interval_presentation(1);
    for (int r = 0; r < 60; ++r) {
      const int m = draw(rng, 10, 30), den = 4 * m;
      FiniteSpectrum a = empty_spectrum(P), b = empty_spectrum(P);
      for (int c = draw(rng, 1, 4); c > 0; --c) {
        int x = draw(rng, 4, den - 4), y = std::clamp(x + draw(rng, -8, 8), 4, den - 4);
        a.interior.push_back({0, make_rational(x, den)});
        b.interior.push_back({0, make_rational(y, den)});
      }
      std::sort(a.interior.begin(), a.interior.end());
      std::sort(b.interior.begin(), b.interior.end());
      s.guard("pair " + std::to_string(r), [&] {
        PairingResult pr = pair_spectra(P, a, b, Rational(1), m);
        s.check(pr.within_bound, "constructed pair not matched within 2 eta");
      });
    }
  }

  {
    Suite s("bridge", rep);
    for (int r = 0; r < 4; ++r)
      s.guard("instance " + std::to_string(r), [&] {
        BridgeTrace tr = unitary_bridge(random_bridge_instance(2 << (r % 2), rng(), make_rational(1, 2)));
        s.check(tr.ok, "path defect or endpoint error too large");
      });
  }

  {
    Suite s("rewriter", rep);
    for (int r = 0; r < 4; ++r)
      s.guard("chain " + std::to_string(r), [&] {
        RewriteCertificate cert = rewrite_chain(random_chain(rng(), 3));
        s.check(cert.ok, cert.ok ? "" : cert.violations.front());
      });
  }
  return rep;
}

}  // namespace etalg
