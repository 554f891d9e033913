#include <random>

#include "doctest.h"
#include "etalg/error.hpp"
#include "etalg/pattern.hpp"
#include "etalg/test_functions.hpp"
#include "oracles/fixtures.hpp"
#include "oracles/random_patterns.hpp"

using namespace etalg;
using fixtures::INT;
using fixtures::P_DD;
using fixtures::q;

namespace {

FiniteSpectrum spec(const Presentation& P, std::vector<int> thetas, std::vector<Interior> pts, int pad = 0) {
  FiniteSpectrum S = empty_spectrum(P);
  for (int j : thetas) S.theta_mult[j]++;
  S.interior = std::move(pts);
  S.zero_pad = pad;
  return S;
}

// f -> f(z/2) on INT.
PatternHom half_map() {
  PatternHom phi;
  phi.source = INT();
  phi.target = INT();
  phi.domain = full_spectrum(INT());
  phi.vertex_spec[0] = spec(INT(), {0}, {});
  phi.vertex_spec[1] = spec(INT(), {}, {Interior{0, q(1, 2)}});
  Cell c{q(0), q(1), {Track::block(0, PLMap::affine(q(0), q(1), q(0), q(1, 2)))}, 0};
  phi.pieces.push_back(PiecePattern{0, Interval{q(0), q(1)}, {c}});
  return phi;
}

PatternHom constant_map(const Rational& v) {
  PatternHom phi;
  phi.source = INT();
  phi.target = INT();
  phi.domain = full_spectrum(INT());
  phi.vertex_spec[0] = spec(INT(), {}, {Interior{0, v}});
  phi.vertex_spec[1] = phi.vertex_spec[0];
  Cell c{q(0), q(1), {Track::block(0, PLMap::constant(q(0), q(1), v))}, 0};
  phi.pieces.push_back(PiecePattern{0, Interval{q(0), q(1)}, {c}});
  return phi;
}

// INT -> INT_2 covering [0,1/2] and [1/2,1].
PatternHom covering_map() {
  Presentation T = interval_presentation(2);
  PatternHom phi;
  phi.source = INT();
  phi.target = T;
  phi.domain = full_spectrum(T);
  phi.vertex_spec[0] = spec(INT(), {0}, {Interior{0, q(1, 2)}});
  phi.vertex_spec[1] = spec(INT(), {1}, {Interior{0, q(1, 2)}});
  Cell c{q(0), q(1),
         {Track::block(0, PLMap::affine(q(0), q(1), q(0), q(1, 2))),
          Track::block(0, PLMap::affine(q(0), q(1), q(1, 2), q(1)))},
         0};
  phi.pieces.push_back(PiecePattern{0, Interval{q(0), q(1)}, {c}});
  return phi;
}

ProfileElement identity_coordinate() {
  return ProfileElement{{{q(0)}, {q(1)}}, {{PLMap::affine(q(0), q(1), q(0), q(1))}}};
}

}  // namespace

TEST_SUITE_BEGIN("pattern-homs");

TEST_CASE("boundary_rewrite") {
  auto a = boundary_rewrite(P_DD(), spec(P_DD(), {}, {Interior{0, q(0)}}));
  CHECK(a.theta_mult == std::vector<int>{1, 1});
  CHECK(a.interior.empty());
  auto b = boundary_rewrite(P_DD(), spec(P_DD(), {}, {Interior{0, q(1)}}));
  CHECK(b.theta_mult == std::vector<int>{2, 0});
  auto c = spec(P_DD(), {0}, {Interior{0, q(1, 3)}});
  CHECK(boundary_rewrite(P_DD(), c) == c);
  CHECK(spectrum_size(P_DD(), a) == 2);
  Presentation nu{{1}, {3}, {{1}}, {{2}}, false};
  auto d = boundary_rewrite(nu, spec(nu, {}, {Interior{0, q(0)}}));
  CHECK(d.theta_mult == std::vector<int>{1});
  CHECK(d.zero_pad == 2);
}

TEST_CASE("identity pattern") {
  for (const auto& P : {P_DD(), INT(), finite_presentation({2, 1})}) {
    auto id = identity_pattern(P);
    CHECK(validate_pattern(id).ok);
    CHECK(is_injective(id).injective);
    CHECK(sp_image(id) == full_spectrum(P));
  }
  auto id = identity_pattern(P_DD());
  auto S = eval_spectrum(id, Interior{0, q(1, 2)});
  CHECK(S.interior == std::vector<Interior>{{0, q(1, 2)}});
  auto h = make_type1(P_DD(), 4, 0, {1}, {3});
  for (int k = 0; k <= 8; ++k) {
    SpectrumPoint z = Interior{0, q(k, 8)};
    CHECK(eval_element(id, h, z) == eig_at(P_DD(), h, z));
  }
  CHECK(eval_element(id, h, Theta{1}) == eig_at(P_DD(), h, Theta{1}));
}

TEST_CASE("evaluation at z/2") {
  auto phi = half_map();
  CHECK(validate_pattern(phi).ok);
  CHECK(eval_spectrum(phi, Interior{0, q(1)}).interior == std::vector<Interior>{{0, q(1, 2)}});
  CHECK(eval_spectrum(phi, Theta{1}) == phi.vertex_spec[1]);
  CHECK(eval_spectrum(phi, Interior{0, q(0)}) == phi.vertex_spec[0]);
  auto img = sp_image(phi);
  CHECK(img.thetas == std::vector<int>{0});
  CHECK(img.pieces[0] == IntervalList{{q(0), q(1, 2)}});
  auto w = is_injective(phi);
  CHECK_FALSE(w.injective);
  CHECK(w.missing_thetas == std::vector<int>{1});
  REQUIRE(w.missing_gaps.size() == 1);
  CHECK(w.missing_gaps[0].lo == q(1, 2));
  CHECK(w.missing_gaps[0].hi == 1);
  CHECK_FALSE(w.missing_gaps[0].lo_closed);
  CHECK(w.missing_gaps[0].hi_closed);
}

TEST_CASE("composition") {
  auto phi = half_map();
  auto quarter = compose(phi, phi);
  CHECK(validate_pattern(quarter).ok);
  REQUIRE(quarter.pieces[0].cells.size() == 1);
  CHECK(quarter.pieces[0].cells[0].tracks[0].path == PLMap::affine(q(0), q(1), q(0), q(1, 4)));
  CHECK(compose(identity_pattern(INT()), phi) == phi);
  CHECK(compose(phi, identity_pattern(INT())) == phi);
}

TEST_CASE("covering tracks are injective") {
  auto phi = covering_map();
  CHECK(validate_pattern(phi).ok);
  CHECK(is_injective(phi).injective);
}

TEST_CASE("spec_distance") {
  CHECK(spec_distance(constant_map(q(1, 2)), constant_map(q(3, 5)), identity_coordinate()) == q(1, 10));
  CHECK(spec_distance(half_map(), half_map(), identity_coordinate()) == 0);
  CHECK(spec_distance(half_map(), identity_pattern(INT()), identity_coordinate()) == q(1, 2));
  auto a = covering_map(), b = covering_map();
  std::swap(b.pieces[0].cells[0].tracks[0], b.pieces[0].cells[0].tracks[1]);
  CHECK(spec_distance(a, b, identity_coordinate()) == 0);
}

TEST_CASE("validation catches broken patterns") {
  auto phi = covering_map();
  phi.pieces[0].cells[0].tracks.pop_back();
  auto rep = validate_pattern(phi);
  CHECK_FALSE(rep.ok);
  bool size_violation = false;
  for (const auto& v : rep.violations) size_violation |= v.invariant.find("size") != std::string::npos;
  CHECK(size_violation);

  auto psi = half_map();
  psi.vertex_spec[1] = spec(INT(), {1}, {});
  CHECK_FALSE(validate_pattern(psi).ok);
}

TEST_CASE("zero padding") {
  Presentation T = interval_presentation(3);
  PatternHom phi;
  phi.source = INT();
  phi.target = T;
  phi.domain = full_spectrum(T);
  phi.vertex_spec[0] = spec(INT(), {0, 0}, {}, 1);
  phi.vertex_spec[1] = spec(INT(), {1, 1}, {}, 1);
  Cell c{q(0), q(1),
         {Track::block(0, PLMap::affine(q(0), q(1), q(0), q(1))),
          Track::block(0, PLMap::affine(q(0), q(1), q(0), q(1)))},
         1};
  phi.pieces.push_back(PiecePattern{0, Interval{q(0), q(1)}, {c}});
  CHECK(validate_pattern(phi).ok);
  auto e = eval_element(phi, constant_profile(INT(), q(1)), Interior{0, q(1, 3)});
  CHECK(e.values == std::vector<Rational>{q(0), q(1), q(1)});
}

TEST_CASE("random patterns: sizes, composition, image, distance") {
  std::mt19937 rng(13);
  for (int rep = 0; rep < 40; ++rep) {
    auto A = INT();
    auto phi = fixtures::random_pattern(rng, A, 2);           // INT -> INT_2
    auto psi = fixtures::random_pattern(rng, phi.target, 2);  // INT_2 -> INT_4
    auto chi = fixtures::random_pattern(rng, psi.target, 1);  // INT_4 -> INT_4
    REQUIRE(validate_pattern(phi).ok);
    REQUIRE(validate_pattern(psi).ok);
    auto pc = compose(phi, psi);
    CHECK(validate_pattern(pc).ok);

    std::uniform_int_distribution<int> num(1, 96);
    for (int s = 0; s < 10; ++s) {
      SpectrumPoint z = Interior{0, q(num(rng), 97)};
      CHECK(spectrum_size(A, eval_spectrum(pc, z)) == 4);
    }

    auto left = canonical_tracks(compose(compose(phi, psi), chi));
    auto right = canonical_tracks(compose(phi, compose(psi, chi)));
    CHECK(pattern_equivalent(left, right));
    CHECK(left == right);

    CHECK(is_subset(sp_image(pc), sp_image(phi)));

    auto f = fixtures::random_profile(rng, A);
    REQUIRE(validate_profile(A, f).ok);
    for (int s = 0; s <= 12; ++s) {
      SpectrumPoint z = Interior{0, q(s, 12)};
      CHECK(eval_element(pc, f, z) == eval_element(psi, push_forward(phi, f), z));
    }

    auto phi2 = fixtures::random_pattern(rng, A, 2), phi3 = fixtures::random_pattern(rng, A, 2);
    Rational d12 = spec_distance(phi, phi2, f), d23 = spec_distance(phi2, phi3, f),
             d13 = spec_distance(phi, phi3, f);
    CHECK(d13 <= d12 + d23);
    CHECK(spec_distance(phi, phi, f) == 0);
    CHECK(d12 == spec_distance(phi2, phi, f));
  }
}

TEST_CASE("spec_distance is exact against dense sampling") {
  std::mt19937 rng(29);
  for (int rep = 0; rep < 30; ++rep) {
    auto A = INT();
    auto phi = fixtures::random_pattern(rng, A, 3), psi = fixtures::random_pattern(rng, A, 3);
    auto f = fixtures::random_profile(rng, A);
    Rational d = spec_distance(phi, psi, f);
    Rational sampled(0);
    for (int s = 0; s <= 360; ++s) {
      SpectrumPoint z = Interior{0, q(s, 360)};
      auto a = eval_element(phi, f, z).values, b = eval_element(psi, f, z).values;
      for (std::size_t r = 0; r < a.size(); ++r) sampled = rmax(sampled, rabs(a[r] - b[r]));
    }
    CHECK(sampled <= d);
    CHECK(d - sampled <= q(1, 6));
  }
}

TEST_SUITE_END();
