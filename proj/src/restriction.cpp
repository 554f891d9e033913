#include "etalg/restriction.hpp"

#include <algorithm>
#include <map>

#include "etalg/error.hpp"

namespace etalg {

namespace {

FiniteSpectrum single_point(const Presentation& A, const SpectrumPoint& x) {
  FiniteSpectrum S = empty_spectrum(A);
  if (auto th = std::get_if<Theta>(&x))
    S.theta_mult[th->j] = 1;
  else
    S.interior.push_back(std::get<Interior>(x));
  return S;
}

PLMap affine_unit_to(const Rational& lo, const Rational& hi) {
  return PLMap::affine(Rational(0), Rational(1), lo, hi);
}

}  // namespace

RestrictionResult restrict_algebra(const Presentation& P, const ClosedSubset& Z) {
  require_valid(P);
  auto rep = validate_closed(P, Z);
  if (!rep.ok) fail(ErrorKind::invalid_input, "restrict_algebra: set not closed: " + rep.violations[0].detail);
  require(!Z.empty(), ErrorKind::invalid_input, "restrict_algebra: empty set");
  const IndexSets I = index_sets(P, Z);

  RestrictionResult R;
  R.Z = Z;
  Presentation& B = R.B;
  B.unital = P.unital;
  std::map<int, int> e1_of_theta, stub_left, stub_right;
  for (int j : I.J) {
    e1_of_theta[j] = B.p();
    B.k.push_back(P.k[j]);
    R.f1_origin.push_back({F1Origin::Kind::theta, j, Rational(0)});
  }
  for (int i : I.Ll) {
    stub_left[i] = B.p();
    B.k.push_back(P.dims[i]);
    R.f1_origin.push_back({F1Origin::Kind::stub, i, I.s.at(i)});
  }
  for (int i : I.Lr) {
    stub_right[i] = B.p();
    B.k.push_back(P.dims[i]);
    R.f1_origin.push_back({F1Origin::Kind::stub, i, I.t.at(i)});
  }

  struct Summand {
    int block;
    Interval iv;
  };
  std::vector<Summand> intervals, points;
  for (int i : I.La)
    for (const auto& iv : Z.pieces[i]) {
      if (iv.lo == 0 || iv.hi == 1) continue;
      (iv.is_point() ? points : intervals).push_back({i, iv});
    }
  std::vector<int> interval_lo_block;
  for (const auto& s : intervals) {
    interval_lo_block.push_back(B.p());
    B.k.push_back(P.dims[s.block]);
    R.f1_origin.push_back({F1Origin::Kind::interval_end, s.block, s.iv.lo});
    B.k.push_back(P.dims[s.block]);
    R.f1_origin.push_back({F1Origin::Kind::interval_end, s.block, s.iv.hi});
  }
  for (const auto& s : points) {
    B.k.push_back(P.dims[s.block]);
    R.f1_origin.push_back({F1Origin::Kind::point, s.block, s.iv.lo});
  }

  const int pB = B.p();
  auto theta_row = [&](const std::vector<int>& row) {
    std::vector<int> out(pB, 0);
    for (const auto& [j, e] : e1_of_theta) out[e] = row[j];
    return out;
  };
  auto unit_row = [&](int e) {
    std::vector<int> out(pB, 0);
    out[e] = 1;
    return out;
  };
  for (int i : I.L1) {
    B.dims.push_back(P.dims[i]);
    B.alpha.push_back(theta_row(P.alpha[i]));
    B.beta.push_back(theta_row(P.beta[i]));
    R.f2_origin.push_back({i, Rational(0), Rational(1)});
  }
  for (int i : I.Ll) {
    B.dims.push_back(P.dims[i]);
    B.alpha.push_back(theta_row(P.alpha[i]));
    B.beta.push_back(unit_row(stub_left[i]));
    R.f2_origin.push_back({i, Rational(0), I.s.at(i)});
  }
  for (int i : I.Lr) {
    B.dims.push_back(P.dims[i]);
    B.alpha.push_back(unit_row(stub_right[i]));
    B.beta.push_back(theta_row(P.beta[i]));
    R.f2_origin.push_back({i, I.t.at(i), Rational(1)});
  }
  for (std::size_t q = 0; q < intervals.size(); ++q) {
    B.dims.push_back(P.dims[intervals[q].block]);
    B.alpha.push_back(unit_row(interval_lo_block[q]));
    B.beta.push_back(unit_row(interval_lo_block[q] + 1));
    R.f2_origin.push_back({intervals[q].block, intervals[q].iv.lo, intervals[q].iv.hi});
  }
  require_valid(B);

  // Quotient A -> B.
  PatternHom& q = R.quotient;
  q.source = P;
  q.target = B;
  q.domain = full_spectrum(B);
  for (int e = 0; e < pB; ++e) q.vertex_spec[e] = single_point(P, R.to_source(Theta{e}));
  for (int ip = 0; ip < B.l(); ++ip) {
    const F2Origin& o = R.f2_origin[ip];
    Cell c{Rational(0), Rational(1), {Track::block(o.block, affine_unit_to(o.lo, o.hi))}, 0};
    q.pieces.push_back(PiecePattern{ip, Interval{Rational(0), Rational(1)}, {c}});
  }

  // Inclusion B -> A|_Z.
  PatternHom& inc = R.inclusion;
  inc.source = B;
  inc.target = P;
  inc.domain = Z;
  for (const auto& [j, e] : e1_of_theta) {
    FiniteSpectrum S = empty_spectrum(B);
    S.theta_mult[e] = 1;
    inc.vertex_spec[j] = S;
  }
  for (int i = 0; i < P.l(); ++i)
    for (const auto& iv : Z.pieces[i]) {
      PiecePattern pp{i, iv, {}};
      if (iv.is_point()) {
        SpectrumPoint w = R.to_target(Interior{i, iv.lo});
        Cell c{iv.lo, iv.lo, {}, 0};
        if (auto th = std::get_if<Theta>(&w))
          c.tracks.push_back(Track::theta(th->j));
        else
          c.tracks.push_back(Track::block(std::get<Interior>(w).i,
                                          PLMap({iv.lo}, {std::get<Interior>(w).t})));
        pp.cells.push_back(std::move(c));
      } else {
        int ip = -1;
        for (int b = 0; b < B.l(); ++b)
          if (R.f2_origin[b].block == i && R.f2_origin[b].lo == iv.lo && R.f2_origin[b].hi == iv.hi) ip = b;
        require(ip >= 0, ErrorKind::internal, "restrict_algebra: interval piece without an F2 block");
        pp.cells.push_back(Cell{iv.lo, iv.hi, {Track::block(ip, PLMap::affine(iv.lo, iv.hi, 0, 1))}, 0});
      }
      inc.pieces.push_back(std::move(pp));
    }
  return R;
}

SpectrumPoint RestrictionResult::to_target(const SpectrumPoint& z) const {
  if (auto th = std::get_if<Theta>(&z)) {
    for (std::size_t e = 0; e < f1_origin.size(); ++e)
      if (f1_origin[e].kind == F1Origin::Kind::theta && f1_origin[e].index == th->j) return Theta{int(e)};
    fail(ErrorKind::domain, "point " + to_string(z) + " not in Z");
  }
  const auto& in = std::get<Interior>(z);
  require(0 < in.t && in.t < 1, ErrorKind::invalid_input, "to_target expects a canonical point");
  for (std::size_t e = 0; e < f1_origin.size(); ++e)
    if (f1_origin[e].kind != F1Origin::Kind::theta && f1_origin[e].index == in.i &&
        f1_origin[e].coord == in.t)
      return Theta{int(e)};
  for (std::size_t b = 0; b < f2_origin.size(); ++b) {
    const auto& o = f2_origin[b];
    if (o.block == in.i && o.lo < in.t && in.t < o.hi)
      return Interior{int(b), (in.t - o.lo) / (o.hi - o.lo)};
  }
  fail(ErrorKind::domain, "point " + to_string(z) + " not in Z");
}

SpectrumPoint RestrictionResult::to_source(const SpectrumPoint& w) const {
  if (auto th = std::get_if<Theta>(&w)) {
    require(0 <= th->j && th->j < int(f1_origin.size()), ErrorKind::invalid_input, "theta out of range");
    const auto& o = f1_origin[th->j];
    if (o.kind == F1Origin::Kind::theta) return Theta{o.index};
    return Interior{o.index, o.coord};
  }
  const auto& in = std::get<Interior>(w);
  require(0 <= in.i && in.i < int(f2_origin.size()), ErrorKind::invalid_input, "block out of range");
  const auto& o = f2_origin[in.i];
  return Interior{o.block, o.lo + in.t * (o.hi - o.lo)};
}

std::pair<int, int> dimension_at(const Presentation& P, const ClosedSubset& Z,
                                 const RestrictionResult& R, const SpectrumPoint& z) {
  require(contains(P, Z, z), ErrorKind::invalid_input, "dimension_at: point not in Z");
  int a;
  if (auto th = std::get_if<Theta>(&z))
    a = P.k[th->j];
  else
    a = P.dims[std::get<Interior>(z).i];
  if (auto in = std::get_if<Interior>(&z); in && (in->t == 0 || in->t == 1)) {
    for (std::size_t e = 0; e < R.f2_origin.size(); ++e) {
      const auto& o = R.f2_origin[e];
      if (o.block == in->i && o.lo <= in->t && in->t <= o.hi) return {a, R.B.dims[e]};
    }
    fail(ErrorKind::internal, "dimension_at: no block of B ends at " + to_string(z));
  }
  SpectrumPoint w = R.to_target(z);
  int b;
  if (auto th = std::get_if<Theta>(&w))
    b = R.B.k[th->j];
  else
    b = R.B.dims[std::get<Interior>(w).i];
  return {a, b};
}

namespace {

// θ-multiset glued at coordinate `side` of block i, mapped into B's blocks.
std::vector<int> mapped_expansion(const Presentation& P, const RestrictionResult& R, int i, int side,
                                  int* pad) {
  std::vector<int> mult(R.B.p(), 0);
  const auto& row = side == 0 ? P.alpha[i] : P.beta[i];
  long used = 0;
  for (int j = 0; j < P.p(); ++j) {
    if (row[j] == 0) continue;
    mult[std::get<Theta>(R.to_target(Theta{j})).j] += row[j];
    used += long(row[j]) * P.k[j];
  }
  *pad = int(P.dims[i] - used);
  return mult;
}

std::vector<int> b_expansion(const Presentation& B, int ip, int side, int* pad) {
  const auto& row = side == 0 ? B.alpha[ip] : B.beta[ip];
  long used = 0;
  for (int j = 0; j < B.p(); ++j) used += long(row[j]) * B.k[j];
  *pad = int(B.dims[ip] - used);
  return row;
}

}  // namespace

ValidationReport audit_restriction(const Presentation& P, const ClosedSubset& Z,
                                   const RestrictionResult& R,
                                   const std::vector<SpectrumPoint>& samples) {
  ValidationReport rep;
  rep.merge(validate_presentation(R.B), "B.");
  if (!rep.ok) return rep;
  auto check_dim = [&](const SpectrumPoint& z, const std::string& where) {
    auto [a, b] = dimension_at(P, Z, R, z);
    if (a != b)
      rep.add("fiber_dimension", {},
              where + " " + to_string(z) + ": A-fiber " + std::to_string(a) + " vs B-fiber " + std::to_string(b));
  };
  for (int j : Z.thetas) check_dim(Theta{j}, "theta");
  for (std::size_t e = 0; e < R.f1_origin.size(); ++e)
    if (R.f1_origin[e].kind != F1Origin::Kind::theta) check_dim(R.to_source(Theta{int(e)}), "vertex");
  for (const auto& z : samples) check_dim(z, "sample");
  // Gluing multisets: each B block end must reproduce the A-side gluing.
  for (int ip = 0; ip < R.B.l(); ++ip) {
    const F2Origin& o = R.f2_origin[ip];
    for (int side = 0; side < 2; ++side) {
      Rational coord = side == 0 ? o.lo : o.hi;
      int pad_b = 0;
      std::vector<int> bmult = b_expansion(R.B, ip, side, &pad_b);
      std::vector<int> amult(R.B.p(), 0);
      int pad_a = 0;
      if (coord == 0 || coord == 1) {
        amult = mapped_expansion(P, R, o.block, coord == 0 ? 0 : 1, &pad_a);
      } else {
        SpectrumPoint w = R.to_target(Interior{o.block, coord});
        if (auto th = std::get_if<Theta>(&w)) amult[th->j] = 1;
      }
      if (amult != bmult || pad_a != pad_b)
        rep.add("gluing", {ip, side},
                "gluing multiset at " + to_string(coord) + " of source block " + std::to_string(o.block) +
                    " differs between A and B");
    }
  }
  rep.merge(validate_pattern(R.quotient), "quotient.");
  rep.merge(validate_pattern(R.inclusion), "inclusion.");
  if (!rep.ok) return rep;
  if (!pattern_equivalent(compose(R.quotient, R.inclusion), identity_on(P, Z)))
    rep.add("round_trip", {}, "inclusion after quotient is not the restriction to Z");
  if (!pattern_equivalent(compose(R.inclusion, R.quotient), identity_pattern(R.B)))
    rep.add("round_trip", {}, "quotient after inclusion is not the identity of B");
  return rep;
}

}  // namespace etalg
