#include <random>

#include "doctest.h"
#include "etalg/error.hpp"
#include "etalg/perturbation.hpp"
#include "oracles/fixtures.hpp"
#include "oracles/random_spectra.hpp"

using namespace etalg;
using fixtures::INT;
using fixtures::q;

namespace {

FiniteSpectrum on_int(std::vector<Rational> ts, int theta0 = 0, int theta1 = 0) {
  FiniteSpectrum S = empty_spectrum(INT());
  S.theta_mult = {theta0, theta1};
  for (auto& t : ts) S.interior.push_back(Interior{0, t});
  return S;
}

ProfileElement identity_profile() {
  return scalar_profile(INT(), PLMap::affine(0, 1, 0, 1));
}

}  // namespace

TEST_SUITE_BEGIN("perturbation");

TEST_CASE("constant bundle") {
  auto b = choose_constants(INT(), 2, q(1, 2), {identity_profile()});
  CHECK(b.m == 8);
  CHECK(b.eta == q(1, 32));
  CHECK(b.eps_prime == q(1, 5120));
  CHECK(b.eta1 < b.eta / 2);
  CHECK(4 * b.eta1 / b.eta < b.eps_prime / 8);
  CHECK(b.m1 == Integer(32 * 32 * 5120 + 1));

  auto c = choose_constants(INT(), 2, q(1, 2), {constant_profile(INT(), q(3, 7))});
  CHECK(c.m == 1);
  CHECK(c.eta == q(1, 4));

  auto d = choose_constants(INT(), 3, q(1, 4), {identity_profile()});
  auto e = choose_constants(INT(), 3, q(1, 2), {identity_profile()});
  CHECK(e.eps_prime == 2 * d.eps_prime);
  CHECK_THROWS_AS(choose_constants(INT(), 0, q(1), {}), Error);
}

TEST_CASE("window sweep and settling") {
  auto a = on_int({q(1, 2)}), b = on_int({q(11, 20)});
  auto pr = pair_spectra(INT(), a, b, q(1), 20);
  auto fam = spectral_paths(INT(), a, b, pr, q(1, 20));
  REQUIRE(fam.outgoing.size() == 1);
  const auto& g = fam.outgoing[0];
  CHECK(g.window == Interval{q(3, 10), q(7, 10)});
  CHECK(g.gamma.min_value() == q(3, 10));
  CHECK(g.gamma.max_value() == q(7, 10));
  CHECK(g.gamma(0) == q(1, 2));
  CHECK(g.gamma(q(1, 3)) == q(11, 20));
  CHECK(g.gamma(q(1, 9)) == q(3, 10));
  CHECK(fam.middle == on_int({q(11, 20)}));
  CHECK(coverage_check(fam, Interior{0, q(1, 2)}));
  CHECK(coverage_check(fam, Interior{0, q(11, 20)}));
  CHECK(swept_set(fam, 0) == IntervalList{{q(3, 10), q(3, 4)}});
  CHECK_THROWS_AS(coverage_check(fam, Interior{0, q(1, 3)}), Error);
  CHECK(validate_pattern(fixtures::family_pattern(INT(), fam)).ok);
}

TEST_CASE("collar point swept to the glued endpoint") {
  auto a = on_int({q(1, 40)}), b = on_int({}, 1, 0);
  auto pr = pair_spectra(INT(), a, b, q(1), 20);
  auto fam = spectral_paths(INT(), a, b, pr, q(1, 20));
  REQUIRE(fam.outgoing.size() == 1);
  CHECK(fam.outgoing[0].target == 0);
  CHECK(fam.outgoing[0].window == Interval{q(0), q(9, 40)});
  CHECK(fam.middle == on_int({}, 1, 0));
  CHECK(coverage_check(fam, Interior{0, q(1, 40)}));
  CHECK(validate_pattern(fixtures::family_pattern(INT(), fam)).ok);
  Cell last = fam.cells[0];
  CHECK(boundary_rewrite(INT(), cell_spectrum(last, q(1, 3), INT())) == on_int({}, 1, 0));
}

TEST_CASE("equal spectra keep their endpoints") {
  auto a = on_int({q(1, 4), q(2, 3)}, 1, 1);
  auto pr = pair_spectra(INT(), a, a, q(1), 10);
  auto fam = spectral_paths(INT(), a, a, pr, q(1, 10));
  CHECK(fam.middle == a);
  for (const auto& g : fam.outgoing) CHECK(g.target == g.origin);
  for (const auto& g : fam.incoming) {
    CHECK(g.gamma(1) == g.origin);
    CHECK(g.gamma.max_value() - g.gamma.min_value() == g.window.length());
    CHECK(g.window.length() < q(4, 5));
  }
  CHECK(eval_spectrum(fixtures::family_pattern(INT(), fam), Interior{0, q(1, 2)}) == a);
}

TEST_CASE("unbalanced theta parts are rejected") {
  auto a = on_int({}, 1, 0), b = on_int({}, 0, 1);
  auto pr = pair_spectra(INT(), a, b, q(1), 10);
  CHECK_THROWS_AS(spectral_paths(INT(), a, b, pr, q(1, 10)), Error);
}

TEST_CASE("pairing must cover the core") {
  auto a = on_int({q(1, 2)}), b = on_int({q(1, 2)});
  PairingResult pr;
  pr.blocks.push_back(BlockPairing{0, {}, {}, {}, {}, q(0)});
  CHECK_THROWS_AS(spectral_paths(INT(), a, b, pr, q(1, 10)), Error);
}

TEST_CASE("reparametrized cells") {
  auto a = on_int({q(1, 2)});
  auto fam = spectral_paths(INT(), a, a, pair_spectra(INT(), a, a, q(1), 10), q(1, 10));
  auto cells = reparametrize_cells(fam.cells, q(1, 5), q(1, 2));
  CHECK(cells.front().lo == q(1, 5));
  CHECK(cells.back().hi == q(1, 2));
  CHECK(cells[1].lo == q(3, 10));
  CHECK(cells[0].tracks[0].path(q(1, 5)) == q(1, 2));
}

TEST_CASE("random families: endpoints, coverage, well-formed") {
  std::mt19937 rng(2024);
  int checked_points = 0;
  for (int rep = 0; rep < 150; ++rep) {
    auto in = fixtures::random_spectrum_pair(rng);
    const Rational eta1 = q(1, in.m1);
    auto pr = pair_spectra(in.P, in.a, in.b, q(1), in.m1);
    CHECK(pr.within_bound);
    auto fam = spectral_paths(in.P, in.a, in.b, pr, eta1);
    auto pat = fixtures::family_pattern(in.P, fam);
    REQUIRE(validate_pattern(pat).ok);
    CHECK(eval_spectrum(pat, Theta{0}) == boundary_rewrite(in.P, in.a));
    CHECK(eval_spectrum(pat, Theta{1}) == boundary_rewrite(in.P, in.b));
    CHECK(eval_spectrum(pat, Interior{0, q(1, 2)}) == fam.middle);
    CHECK(eval_spectrum(pat, Interior{0, q(1, 3)}) == fam.middle);
    for (const auto* S : {&fam.start, &fam.end})
      for (const auto& y : S->interior) {
        CHECK(coverage_check(fam, y));
        ++checked_points;
      }
    for (const auto& g : fam.outgoing) CHECK(g.gamma.max_value() - g.gamma.min_value() ==
                                             g.window.length());
  }
  CHECK(checked_points > 100);
}

TEST_SUITE_END();
