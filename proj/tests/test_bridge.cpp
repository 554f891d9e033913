#include "doctest.h"
#include "etalg/bridge.hpp"
#include "etalg/error.hpp"
#include "oracles/fixtures.hpp"

using namespace etalg;
using fixtures::q;

TEST_SUITE_BEGIN("bridge");

TEST_CASE("identical homomorphisms give a trivial path") {
  auto in = random_bridge_instance(4, 11, q(1, 2), true);
  auto tr = unitary_bridge(in);
  CHECK(tr.ok);
  CHECK(tr.hypothesis_max < 1e-12);
  CHECK(tr.max_defect < 1e-12);
  CHECK(tr.endpoint_error < 1e-12);
}

TEST_CASE("commutant conjugation stays within tolerance") {
  for (int n : {2, 4, 8})
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      auto in = random_bridge_instance(n, seed, q(1, 2));
      auto tr = unitary_bridge(in);
      CAPTURE(n);
      CAPTURE(seed);
      CHECK(tr.ok);
      CHECK(tr.endpoint_error < 1e-8);
      CHECK(tr.join_error < 1e-8);
      CHECK(tr.max_defect < 0.5);
      CHECK(tr.sample_t.size() == 32);
      REQUIRE(tr.bounds.size() == 8);
      for (const auto& b : tr.bounds) CHECK_MESSAGE(b.ok, b.name);
      int total = 0;
      for (int g : tr.group_sizes) total += g;
      CHECK(total == n);
      CHECK(op_norm(tr.W * tr.W.adjoint() - CMatrix::Identity(n, n)) < 1e-12);
    }
}

TEST_CASE("singular guard and hypothesis failure") {
  auto in = random_bridge_instance(2, 3, q(1, 2));
  in.eps_prime = q(1, 4);
  CHECK_THROWS_WITH_AS(unitary_bridge(in), doctest::Contains("T possibly singular"), Error);

  int failures = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto far = random_bridge_instance(4, seed, q(1, 2));
    CMatrix swap = CMatrix::Zero(4, 4);
    for (int r = 0; r < 4; ++r) swap(r, 3 - r) = 1;
    far.V = swap * far.U;
    try {
      unitary_bridge(far);
    } catch (const Error& e) {
      if (std::string(e.what()).find("hypothesis") != std::string::npos) ++failures;
    }
  }
  CHECK(failures > 5);
}

TEST_CASE("concrete realizations") {
  auto P = fixtures::P_DD();
  ProfileElement f;
  f.theta_eigs = {{q(1)}, {q(2)}};
  f.branches = {{PLMap::affine(0, 1, 1, 1), PLMap::affine(0, 1, 2, 1)}};
  auto c = concrete_from_profile(P, f);
  CHECK(op_norm(c.at(0, q(0)) - boundary_embedding(P, c, 0, 0)) < 1e-15);
  CHECK(op_norm(c.at(0, q(1)) - boundary_embedding(P, c, 0, 1)) < 1e-15);
  CHECK(std::abs(c.at(0, q(1, 2))(1, 1).real() - 1.5) < 1e-15);

  ProfileElement crossed = f;
  crossed.branches = {{PLMap::affine(0, 1, 2, 1), PLMap::affine(0, 1, 1, 1)}};
  CHECK_NOTHROW(concrete_from_profile(P, crossed));

  auto h = make_type1(P, 8, 0, {1}, {4});
  auto hc = concrete_from_test(P, h);
  CHECK(std::abs(hc.at(0, q(0))(0, 0).real() - 1) < 1e-15);
  CHECK(op_norm(hc.at(0, q(1, 4))) < 1e-15);
  CHECK(std::abs(hc.at(0, q(1))(0, 0).real() - 1) < 1e-15);
  CHECK(std::abs(hc.at(0, q(1))(1, 1).real() - 1) < 1e-15);
  auto unit_lift = lift_to_Htilde(P, make_type2(P, 8, 0, {{2, 3}}));
  REQUIRE(unit_lift.size() == 4);
  auto u = concrete_from_test(P, unit_lift[1]);
  CHECK(op_norm(u.at(0, q(1, 4))) == doctest::Approx(1.0));
}

TEST_SUITE_END();
