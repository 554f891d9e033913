#include "etalg/discretization.hpp"

#include <algorithm>
#include <map>

#include "etalg/error.hpp"

namespace etalg {

PLMap monotone_surjection(const IntervalList& raw, const Rational& zs, const Rational& zt) {
  require(!raw.empty(), ErrorKind::invalid_input, "monotone_surjection: empty set");
  require(zs <= zt, ErrorKind::invalid_input, "monotone_surjection: reversed target");
  IntervalList pieces = merge_intervals(raw);
  Rational total(0);
  for (const auto& iv : pieces) total += iv.length();
  require(total > 0, ErrorKind::invalid_input, "monotone_surjection: set has zero total length");
  std::vector<Rational> xs, ys;
  Rational acc(0);
  for (const auto& iv : pieces) {
    if (iv.is_point()) continue;
    Rational y0 = zs + (zt - zs) * acc / total;
    acc += iv.length();
    Rational y1 = zs + (zt - zs) * acc / total;
    if (xs.empty() && pieces.front().lo < iv.lo) {
      xs.push_back(pieces.front().lo);
      ys.push_back(zs);
    }
    if (xs.empty() || xs.back() != iv.lo) {
      xs.push_back(iv.lo);
      ys.push_back(y0);
    }
    xs.push_back(iv.hi);
    ys.push_back(y1);
  }
  if (xs.back() != pieces.back().hi) {
    xs.push_back(pieces.back().hi);
    ys.push_back(zt);
  }
  return PLMap(std::move(xs), std::move(ys));
}

int skeleton_grid(const Rational& delta) {
  require(delta > 0, ErrorKind::invalid_input, "delta must be positive");
  Integer m = floor_of(Rational(2) / delta) + 1;
  require(m.fits_sint_p() && m <= 50000000, ErrorKind::failed, "delta too small for a skeleton grid");
  return int(m.get_si());
}

Skeleton build_skeleton(const Presentation& P, const ClosedSubset& Y, const Rational& delta) {
  require(is_closed(P, Y), ErrorKind::invalid_input, "build_skeleton: set not closed");
  Skeleton sk;
  sk.m = skeleton_grid(delta);
  const int m = sk.m;
  sk.vertices.resize(P.l());
  for (int i = 0; i < P.l(); ++i) {
    auto& vs = sk.vertices[i];
    std::map<long, std::pair<Rational, Rational>> cell_range;
    for (const auto& iv : Y.pieces[i]) {
      Integer rlo = ceil_of(iv.lo * m), rhi = floor_of(iv.hi * m) + 1;
      long r0 = std::max(1L, rlo.get_si()), r1 = std::min(long(m), rhi.get_si());
      for (long r = r0; r <= r1; ++r) {
        Rational a = rmax(iv.lo, make_rational(r - 1, m)), b = rmin(iv.hi, make_rational(r, m));
        if (a > b) continue;
        auto [it, fresh] = cell_range.try_emplace(r, a, b);
        if (!fresh) {
          it->second.first = rmin(it->second.first, a);
          it->second.second = rmax(it->second.second, b);
        }
      }
    }
    for (const auto& [r, ab] : cell_range) {
      vs.push_back(ab.first);
      vs.push_back(ab.second);
    }
    sort_unique(vs);
    for (std::size_t q = 0; q + 1 < vs.size(); ++q) {
      AdjacentPair ap;
      ap.block = i;
      ap.ys = vs[q];
      ap.yt = vs[q + 1];
      IntervalList inside = intersect_intervals(Y.pieces[i], {Interval{ap.ys, ap.yt}});
      ap.edge = measure_within(inside, ap.ys, ap.yt) > 0;
      if (ap.edge) {
        ap.map = monotone_surjection(inside, ap.ys, ap.yt);
      } else {
        std::vector<Rational> pts;
        for (const auto& iv : inside) pts.push_back(iv.lo);
        sort_unique(pts);
        ap.gap_lo = pts[0];
        ap.gap_hi = pts[1];
        for (std::size_t r = 1; r + 1 < pts.size(); ++r)
          if (pts[r + 1] - pts[r] > ap.gap_hi - ap.gap_lo) {
            ap.gap_lo = pts[r];
            ap.gap_hi = pts[r + 1];
          }
      }
      sk.pairs.push_back(std::move(ap));
    }
  }
  return sk;
}

Rational CollapseMap::apply_coord(int block, const Rational& y) const {
  require(contains(P, Y, Interior{block, y}), ErrorKind::domain,
          "rho applied outside Y at " + to_string(y));
  const auto& vs = skeleton.vertices[block];
  if (std::binary_search(vs.begin(), vs.end(), y)) return y;
  auto lo = std::lower_bound(skeleton.pairs.begin(), skeleton.pairs.end(), std::make_pair(block, y),
                             [](const AdjacentPair& a, const std::pair<int, Rational>& key) {
                               return a.block != key.first ? a.block < key.first : a.yt < key.second;
                             });
  require(lo != skeleton.pairs.end() && lo->block == block && lo->ys <= y && y <= lo->yt,
          ErrorKind::internal, "rho: no adjacent pair contains the point");
  if (lo->edge) return lo->map(y);
  return y <= lo->gap_lo ? lo->ys : lo->yt;
}

SpectrumPoint CollapseMap::apply(const SpectrumPoint& y) const {
  if (std::holds_alternative<Theta>(y)) {
    require(contains(P, Y, y), ErrorKind::domain, "rho applied outside Y");
    return y;
  }
  const auto& in = std::get<Interior>(y);
  return Interior{in.i, apply_coord(in.i, in.t)};
}

Discretization discretize(const Presentation& P, const ClosedSubset& Y, const Rational& delta) {
  Discretization d;
  d.rho.P = P;
  d.rho.Y = Y;
  d.rho.delta = delta;
  d.rho.skeleton = build_skeleton(P, Y, delta);
  ClosedSubset raw = empty_subset(P);
  raw.thetas = Y.thetas;
  for (int i = 0; i < P.l(); ++i)
    for (const auto& v : d.rho.skeleton.vertices[i]) raw.pieces[i].push_back({v, v});
  for (const auto& ap : d.rho.skeleton.pairs)
    if (ap.edge) raw.pieces[ap.block].push_back({ap.ys, ap.yt});
  d.Z = closure(P, raw);
  return d;
}

PatternHom collapse_pattern(const Discretization& d) {
  const Presentation& P = d.rho.P;
  const ClosedSubset& Y = d.rho.Y;
  PatternHom phi;
  phi.source = P;
  phi.target = P;
  phi.domain = Y;
  for (int j : Y.thetas) {
    FiniteSpectrum S = empty_spectrum(P);
    S.theta_mult[j] = 1;
    phi.vertex_spec[j] = S;
  }
  const auto& pairs = d.rho.skeleton.pairs;
  for (int i = 0; i < P.l(); ++i)
    for (const auto& iv : Y.pieces[i]) {
      PiecePattern pp{i, iv, {}};
      if (iv.is_point()) {
        Rational z = d.rho.apply_coord(i, iv.lo);
        pp.cells.push_back(Cell{iv.lo, iv.lo, {Track::block(i, PLMap({iv.lo}, {z}))}, 0});
      } else {
        std::vector<Rational> xs, ys;
        auto first = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(i, iv.lo),
                                      [](const AdjacentPair& a, const std::pair<int, Rational>& key) {
                                        return a.block != key.first ? a.block < key.first
                                                                    : a.yt <= key.second;
                                      });
        for (auto it = first; it != pairs.end() && it->block == i && it->ys < iv.hi; ++it) {
          if (!it->edge) continue;
          Rational a = rmax(it->ys, iv.lo), b = rmin(it->yt, iv.hi);
          if (!(a < b)) continue;
          PLMap seg = it->map.restricted(a, b);
          std::size_t skip = (!xs.empty() && xs.back() == seg.lo()) ? 1 : 0;
          xs.insert(xs.end(), seg.xs().begin() + long(skip), seg.xs().end());
          ys.insert(ys.end(), seg.ys().begin() + long(skip), seg.ys().end());
        }
        require(!xs.empty() && xs.front() == iv.lo && xs.back() == iv.hi, ErrorKind::internal,
                "collapse_pattern: edges do not cover an interval piece");
        PLMap path(std::move(xs), std::move(ys));
        pp.cells.push_back(Cell{iv.lo, iv.hi, {Track::block(i, path)}, 0});
      }
      phi.pieces.push_back(std::move(pp));
    }
  return phi;
}

}  // namespace etalg
