#include <random>

#include "doctest.h"
#include "etalg/error.hpp"
#include "etalg/pl_map.hpp"
#include "oracles/fixtures.hpp"

using namespace etalg;
using fixtures::q;

namespace {

PLMap random_map(std::mt19937& rng, int pieces) {
  std::uniform_int_distribution<int> y(0, 8);
  std::vector<Rational> xs, ys;
  for (int k = 0; k <= pieces; ++k) {
    xs.push_back(q(k, pieces));
    ys.push_back(q(y(rng), 8));
  }
  return PLMap(xs, ys);
}

}  // namespace

TEST_SUITE_BEGIN("pl-map");

TEST_CASE("evaluation and shape") {
  PLMap f({q(0), q(1, 2), q(1)}, {q(0), q(1), q(1, 2)});
  CHECK(f(q(1, 4)) == q(1, 2));
  CHECK(f(q(3, 4)) == q(3, 4));
  CHECK(f.max_value() == 1);
  CHECK(f.min_value() == 0);
  CHECK(f.max_abs_slope() == 2);
  CHECK_FALSE(f.is_nondecreasing());
  CHECK_THROWS_AS(f(q(2)), Error);
  CHECK_THROWS_AS(PLMap({q(1), q(0)}, {q(0), q(0)}), Error);
  PLMap g({q(0), q(1, 2), q(1)}, {q(0), q(1, 2), q(1)});
  CHECK(g.xs().size() == 2);
  CHECK(PLMap::constant(q(0), q(1), q(3)).is_constant());
}

TEST_CASE("composition and preimage") {
  PLMap inner = PLMap::affine(q(0), q(1), q(0), q(1, 2));
  PLMap outer({q(0), q(1, 4), q(1, 2)}, {q(0), q(1), q(0)});
  PLMap c = inner.then(outer);
  CHECK(c(q(1, 2)) == 1);
  CHECK(c(q(1)) == 0);
  auto pre = outer.preimage(q(1, 2));
  CHECK(pre == std::vector<Rational>{q(1, 8), q(3, 8)});
  auto r = c.restricted(q(1, 4), q(3, 4));
  CHECK(r.lo() == q(1, 4));
  CHECK(r(q(1, 2)) == 1);
  auto moved = r.reparametrized(q(0), q(1));
  CHECK(moved(q(1, 2)) == 1);
  auto joined = c.restricted(q(0), q(1, 2)).concatenated(c.restricted(q(1, 2), q(1)));
  CHECK(joined == c);
}

TEST_CASE("composition matches pointwise evaluation") {
  std::mt19937 rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    PLMap f = random_map(rng, 1 + rep % 4);
    PLMap g = random_map(rng, 1 + rep % 3);
    PLMap h = f.then(g);
    for (int k = 0; k <= 48; ++k) {
      Rational x = q(k, 48);
      CHECK(h(x) == g(f(x)));
    }
    for (int k = 0; k <= 8; ++k)
      for (const Rational& x : f.preimage(q(k, 8))) CHECK(f(x) == q(k, 8));
  }
}

TEST_SUITE_END();
