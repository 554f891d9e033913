#include <cstdlib>
#include <random>

#include "doctest.h"
#include "etalg/element.hpp"
#include "etalg/error.hpp"
#include "etalg/test_functions.hpp"
#include "oracles/fixtures.hpp"

using namespace etalg;
using fixtures::P_DD;
using fixtures::q;

namespace {

std::vector<Rational> R(std::initializer_list<Rational> v) { return v; }

// Independent count of grid subsets: nonempty point sets, each cell with
// both endpoints present may be included or not.
long type2_count(int m) {
  const int pts = m - 1;
  long total = 0;
  for (long mask = 1; mask < (1L << pts); ++mask) {
    long mult = 1;
    for (int q = 0; q + 1 < pts; ++q)
      if ((mask >> q & 1) && (mask >> (q + 1) & 1)) mult *= 2;
    total += mult;
  }
  return total;
}

long type1_count(int m) {
  long c = 0;
  for (int a = 0; a <= m; ++a)
    for (int b = a + 2; b <= m; ++b) ++c;
  return c;
}

}  // namespace

TEST_SUITE_BEGIN("test-functions");

TEST_CASE("type1 profile") {
  auto h = make_type1(P_DD(), 4, 0, {1}, {3});
  PLMap g = scalar_profile_of(P_DD(), h, 0);
  CHECK(g(q(0)) == 1);
  CHECK(g(q(1, 4)) == 1);
  CHECK(g(q(3, 8)) == q(1, 2));
  CHECK(g(q(1, 2)) == 0);
  CHECK(g(q(3, 4)) == 1);
  CHECK(g(q(1)) == 1);
  CHECK(eig_at(P_DD(), h, Theta{0}).values == R({q(1)}));
  CHECK(eig_at(P_DD(), h, Theta{1}).values == R({q(0)}));
  CHECK_THROWS_AS(make_type1(P_DD(), 4, 0, {1}, {2}), Error);
}

TEST_CASE("type1 eigenvalues on the ramps") {
  auto h = make_type1(P_DD(), 4, 0, {1}, {3});
  CHECK(eig_at(P_DD(), h, Interior{0, q(3, 8)}).values == R({q(0), q(1, 2)}));
  CHECK(eig_at(P_DD(), h, Interior{0, q(5, 8)}).values == R({q(1, 2), q(1, 2)}));
  CHECK(eig_at(P_DD(), h, Interior{0, q(1, 8)}).values == R({q(0), q(1)}));
  CHECK(eig_at(P_DD(), h, Interior{0, q(7, 8)}).values == R({q(1), q(1)}));
  CHECK(eig_at(P_DD(), h, Interior{0, q(1, 2)}).values == R({q(0), q(0)}));
}

TEST_CASE("type2 profile") {
  auto h = make_type2(P_DD(), 4, 0, {{1, 2}});
  PLMap g = scalar_profile_of(P_DD(), h, 0);
  CHECK(g(q(1, 4)) == 1);
  CHECK(g(q(1, 2)) == 1);
  CHECK(g(q(1, 8)) == q(1, 2));
  CHECK(g(q(0)) == 0);
  CHECK(g(q(3, 4)) == 0);
  CHECK(g(q(5, 8)) == q(1, 2));
  auto tent = make_type2(P_DD(), 4, 0, {{2, 2}});
  PLMap t = scalar_profile_of(P_DD(), tent, 0);
  CHECK(t(q(1, 2)) == 1);
  CHECK(t(q(3, 8)) == q(1, 2));
  CHECK(t(q(1, 4)) == 0);
  CHECK(eig_at(P_DD(), tent, Interior{0, q(7, 16)}).values == R({q(3, 4), q(3, 4)}));
  CHECK(eig_at(P_DD(), tent, Theta{0}).values == R({q(0)}));
  CHECK_THROWS_AS(make_type2(P_DD(), 4, 0, {{0, 1}}), Error);
  CHECK_THROWS_AS(make_type2(P_DD(), 4, 0, {{3, 4}}), Error);
}

TEST_CASE("enumeration counts") {
  auto H = enumerate_H(P_DD(), 4);
  CHECK_FALSE(H.truncated);
  long t1 = 0, t2 = 0;
  for (const auto& h : H.items) (std::holds_alternative<Type1>(h.shape) ? t1 : t2)++;
  CHECK(t1 == 12);
  CHECK(t2 == type2_count(4));
  CHECK(t2 == 12);
  for (int m = 3; m <= 7; ++m) {
    auto Hm = enumerate_H(P_DD(), m);
    CHECK(long(Hm.items.size()) == 2 * type1_count(m) + type2_count(m));
  }
  auto F = enumerate_H(finite_presentation({1, 2}), 4);
  for (const auto& h : F.items) CHECK(std::holds_alternative<Type1>(h.shape));

  EnumerationBudget small;
  small.max_yield = 5;
  auto T = enumerate_H(P_DD(), 4, small);
  CHECK(T.truncated);
  CHECK(T.items.size() == 5);
  CHECK(T.items == std::vector<TestFunction>(H.items.begin(), H.items.begin() + 5));
}

TEST_CASE("enumeration order") {
  auto H = enumerate_H(P_DD(), 4);
  const auto& first = std::get<Type1>(H.items[0].shape);
  CHECK(first.j == 0);
  CHECK(first.a == std::vector<int>{0});
  CHECK(first.b == std::vector<int>{2});
  const auto& second = std::get<Type1>(H.items[1].shape);
  CHECK(second.b == std::vector<int>{3});
  const auto& t2first = std::get<Type2>(H.items[12].shape);
  CHECK(t2first.X == std::vector<std::pair<int, int>>{{1, 1}});
}

TEST_CASE("budget from environment") {
  setenv("ETALG_MAX_BUDGET", "7", 1);
  EnumerationBudget b = budget_from_env();
  CHECK(b.max_yield == 7);
  unsetenv("ETALG_MAX_BUDGET");
  CHECK(budget_from_env().max_yield == EnumerationBudget{}.max_yield);
}

TEST_CASE("lifts") {
  auto h1 = make_type1(P_DD(), 4, 0, {1}, {3});
  auto lifts = lift_to_Htilde(P_DD(), h1);
  CHECK(lifts.size() == 1);
  CHECK(forget_tag(lifts[0]) == h1);
  auto h2 = make_type2(P_DD(), 4, 0, {{1, 1}});
  auto l2 = lift_to_Htilde(P_DD(), h2);
  CHECK(l2.size() == 4);
  for (const auto& t : l2) CHECK(forget_tag(t) == h2);
  CHECK_THROWS_AS(eig_at(P_DD(), l2[0], Theta{0}), Error);
}

TEST_CASE("generated functions are positive contractions with consistent endpoints") {
  std::mt19937 rng(2);
  for (int pr = 0; pr < 8; ++pr) {
    Presentation P = fixtures::random_unital(rng, 3, 3);
    const int m = 5;
    auto H = enumerate_H(P, m);
    for (const auto& h : H.items) {
      ProfileElement f = to_profile(P, h);
      CHECK(validate_profile(P, f).ok);
      for (int i = 0; i < P.l(); ++i) {
        PLMap g = scalar_profile_of(P, h, i);
        Rational mx(0);
        for (int k = 0; k <= 4 * m; ++k) {
          Rational v = g(q(k, 4 * m));
          CHECK(v >= 0);
          CHECK(v <= 1);
          mx = rmax(mx, v);
        }
        CHECK(mx == g.max_value());
        CHECK(eig_at(P, h, Interior{i, q(0)}).values == endpoint_expansion(P, f.theta_eigs, i, 0));
        CHECK(eig_at(P, h, Interior{i, q(1)}).values == endpoint_expansion(P, f.theta_eigs, i, 1));
        for (int k = 0; k <= 2 * m; ++k) {
          SpectrumPoint x = Interior{i, q(k, 2 * m)};
          CHECK(eig_at(P, h, x) == eig_at(P, f, x));
        }
      }
    }
  }
}

TEST_SUITE_END();
