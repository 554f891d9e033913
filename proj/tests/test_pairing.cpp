#include <random>

#include "doctest.h"
#include "etalg/error.hpp"
#include "etalg/pairing.hpp"
#include "oracles/fixtures.hpp"
#include "oracles/pairing_oracle.hpp"

using namespace etalg;
using fixtures::INT;
using fixtures::q;

namespace {

// INT_n-like presentation whose single block has size 1, so any number of
// interior points is matched by theta padding.
FiniteSpectrum points(const Presentation& P, std::vector<Rational> ts, int theta0 = 0) {
  FiniteSpectrum S = empty_spectrum(P);
  S.theta_mult[0] = theta0;
  for (auto& t : ts) S.interior.push_back(Interior{0, t});
  return S;
}

}  // namespace

TEST_SUITE_BEGIN("pairing");

TEST_CASE("examples") {
  auto a = points(INT(), {q(1, 2), q(1, 2)}), b = points(INT(), {q(9, 20), q(11, 20)});
  auto r = pair_spectra(INT(), a, b, q(1, 10), 4);
  CHECK(r.max_gap == q(1, 20));
  CHECK(r.within_bound);
  CHECK(r.blocks[0].x == std::vector<Rational>{q(1, 2), q(1, 2)});
  CHECK(r.blocks[0].x_prime == std::vector<Rational>{q(9, 20), q(11, 20)});

  CHECK(pair_spectra(INT(), a, a, q(1, 10), 4).max_gap == 0);

  auto c = pair_spectra(INT(), points(INT(), {q(1, 8)}), points(INT(), {}, 1), q(1, 10), 4);
  CHECK(c.max_gap == 0);
  CHECK(c.blocks[0].x.empty());
  CHECK(c.blocks[0].unmatched_phi == std::vector<Rational>{q(1, 8)});
  CHECK(c.within_bound);

  CHECK_THROWS_AS(pair_spectra(INT(), points(INT(), {q(1, 2)}), points(INT(), {}), q(1), 4), Error);
  CHECK_THROWS_AS(pair_spectra(INT(), points(INT(), {q(1, 2)}), points(INT(), {}, 1), q(1), 4), Error);
}

TEST_CASE("boundary points are rewritten before pairing") {
  auto r = pair_spectra(INT(), points(INT(), {q(0), q(1, 2)}), points(INT(), {q(1, 2)}, 1), q(1), 4);
  CHECK(r.max_gap == 0);
}

TEST_CASE("bottleneck agrees with exhaustive search") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> cnt(0, 4), num(1, 15);
  int compared = 0;
  for (int rep = 0; rep < 400; ++rep) {
    std::vector<Rational> a, b;
    int na = cnt(rng), nb = cnt(rng);
    for (int r = 0; r < na; ++r) a.push_back(q(num(rng), 16));
    for (int r = 0; r < nb; ++r) b.push_back(q(num(rng), 16));
    const int total = std::max(na, nb);
    auto Sa = points(INT(), a, total - na), Sb = points(INT(), b, total - nb);
    auto best = oracle::best_bottleneck(a, b, q(1, 4));
    if (!best) {
      CHECK_THROWS_AS(pair_spectra(INT(), Sa, Sb, q(1), 4), Error);
      continue;
    }
    auto r = pair_spectra(INT(), Sa, Sb, q(1), 4);
    CHECK(r.max_gap == *best);
    const auto& bp = r.blocks[0];
    REQUIRE(bp.x.size() == bp.x_prime.size());
    for (const auto& t : a)
      if (q(1, 4) <= t && t <= q(3, 4)) CHECK(std::count(bp.x.begin(), bp.x.end(), t) >= 1);
    ++compared;
  }
  CHECK(compared > 100);
}

TEST_CASE("hypothesis check") {
  auto a = points(INT(), {q(1, 2)}), b = points(INT(), {q(9, 16)});
  auto h = check_pairing_hypothesis(INT(), a, b, q(1, 2), 4);
  CHECK(h.holds);
  CHECK(h.max_deviation == q(1, 4));
  CHECK_FALSE(h.truncated);
  CHECK(h.checked == enumerate_H(INT(), 4).items.size());
  auto h2 = check_pairing_hypothesis(INT(), a, b, q(1, 4), 4);
  CHECK_FALSE(h2.holds);
}

TEST_SUITE_END();
