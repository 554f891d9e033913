#include "etalg/perturbation.hpp"

#include <algorithm>

#include "etalg/error.hpp"

namespace etalg {

ConstantBundle choose_constants(const Presentation& P, int n, const Rational& epsilon,
                                const std::vector<ProfileElement>& F) {
  require(n >= 1, ErrorKind::invalid_input, "choose_constants: n must be positive");
  require(epsilon > 0, ErrorKind::invalid_input, "choose_constants: epsilon must be positive");
  ConstantBundle b;
  b.n = n;
  b.epsilon = epsilon;
  b.lipschitz = 0;
  for (const auto& f : F) {
    ValidationReport rep = validate_profile(P, f);
    require(rep.ok, ErrorKind::invalid_input, "choose_constants: invalid element in F");
    b.lipschitz = rmax(b.lipschitz, lipschitz(f));
  }
  Rational ratio = 4 * b.lipschitz / epsilon;
  b.m = std::max(1L, ceil_of(ratio).get_si());
  b.eta = make_rational(1, 2 * b.m * long(n));
  Rational n6 = 1;
  for (int q = 0; q < 6; ++q) n6 *= n;
  b.eps_prime = epsilon / (40 * n6);
  Rational bound = rmax(2 / b.eta, 32 / (b.eta * b.eps_prime));
  b.m1 = floor_of(bound) + 1;
  b.eta1 = Rational(Integer(1), b.m1);
  b.eta1.canonicalize();
  return b;
}

namespace {

Interval window_of(const Rational& x, const Rational& eta1) {
  return Interval{rmax(Rational(0), x - 4 * eta1), rmin(Rational(1), x + 4 * eta1)};
}

// Near and far window edges; ties go to the lower edge.
std::pair<Rational, Rational> edges(const Rational& x, const Interval& w) {
  if (x - w.lo <= w.hi - x) return {w.lo, w.hi};
  return {w.hi, w.lo};
}

std::vector<Rational> points_in_block(const FiniteSpectrum& S, int i) {
  std::vector<Rational> v;
  for (const auto& y : S.interior)
    if (y.i == i) v.push_back(y.t);
  return v;
}

// Removes each element of sub from pool (multiset difference); false if missing.
bool remove_all(std::vector<Rational>& pool, const std::vector<Rational>& sub) {
  for (const auto& x : sub) {
    auto it = std::find(pool.begin(), pool.end(), x);
    if (it == pool.end()) return false;
    pool.erase(it);
  }
  return true;
}

void add_static_tracks(const FiniteSpectrum& S, Cell& c) {
  for (std::size_t j = 0; j < S.theta_mult.size(); ++j)
    for (int q = 0; q < S.theta_mult[j]; ++q) c.tracks.push_back(Track::theta(int(j)));
  c.pad += S.zero_pad;
}

Rational collar_target(const Rational& x, const Rational& eta1) {
  if (x < eta1) return Rational(0);
  if (x > 1 - eta1) return Rational(1);
  fail(ErrorKind::invalid_input, "spectral_paths: pairing missing for non-collar point " +
                                     to_string(x));
}

}  // namespace

PathFamily spectral_paths(const Presentation& P, const FiniteSpectrum& Sphi,
                          const FiniteSpectrum& Spsi, const PairingResult& pairing,
                          const Rational& eta1) {
  require(eta1 > 0, ErrorKind::invalid_input, "spectral_paths: eta1 must be positive");
  require(int(pairing.blocks.size()) == P.l(), ErrorKind::invalid_input,
          "spectral_paths: pairing has wrong number of blocks");
  PathFamily fam;
  fam.eta1 = eta1;
  fam.start = boundary_rewrite(P, Sphi);
  fam.end = boundary_rewrite(P, Spsi);
  const Rational third = make_rational(1, 3), two_thirds = make_rational(2, 3);
  const Rational t19 = make_rational(1, 9), t29 = make_rational(2, 9);
  const Rational t79 = make_rational(7, 9), t89 = make_rational(8, 9);

  Cell out{Rational(0), third, {}, 0}, in{two_thirds, Rational(1), {}, 0};
  add_static_tracks(fam.start, out);
  add_static_tracks(fam.end, in);

  for (int i = 0; i < P.l(); ++i) {
    const BlockPairing& bp = pairing.blocks[i];
    require(bp.block == i && bp.x.size() == bp.x_prime.size(), ErrorKind::invalid_input,
            "spectral_paths: malformed pairing for block " + std::to_string(i));
    std::vector<Rational> pa = points_in_block(fam.start, i), pb = points_in_block(fam.end, i);
    std::vector<Rational> left_a = pa, left_b = pb;
    if (!remove_all(left_a, bp.x) || !remove_all(left_b, bp.x_prime))
      fail(ErrorKind::invalid_input,
           "spectral_paths: pairing does not match the spectra in block " + std::to_string(i));
    auto emit_out = [&](const Rational& x, const Rational& target) {
      SpectralPath sp{i, x, target, window_of(x, eta1), PLMap()};
      auto [near, far] = edges(x, sp.window);
      sp.gamma = PLMap({Rational(0), t19, t29, third}, {x, near, far, target});
      out.tracks.push_back(Track::block(i, sp.gamma));
      fam.outgoing.push_back(std::move(sp));
    };
    auto emit_in = [&](const Rational& y, const Rational& target) {
      SpectralPath sp{i, y, target, window_of(y, eta1), PLMap()};
      auto [near, far] = edges(y, sp.window);
      sp.gamma = PLMap({two_thirds, t79, t89, Rational(1)}, {target, far, near, y});
      in.tracks.push_back(Track::block(i, sp.gamma));
      fam.incoming.push_back(std::move(sp));
    };
    for (std::size_t q = 0; q < bp.x.size(); ++q) {
      emit_out(bp.x[q], bp.x_prime[q]);
      emit_in(bp.x_prime[q], bp.x_prime[q]);
    }
    for (const auto& x : left_a) emit_out(x, collar_target(x, eta1));
    for (const auto& y : left_b) emit_in(y, collar_target(y, eta1));
  }

  FiniteSpectrum mid_a = boundary_rewrite(P, cell_spectrum(out, third, P));
  FiniteSpectrum mid_b = boundary_rewrite(P, cell_spectrum(in, two_thirds, P));
  if (!(mid_a == mid_b))
    fail(ErrorKind::failed,
         "spectral_paths: the swept spectra differ on the matched segment (theta parts do not balance)");
  fam.middle = mid_a;
  Cell mid{third, two_thirds, {}, 0};
  add_static_tracks(mid_a, mid);
  for (const auto& y : mid_a.interior)
    mid.tracks.push_back(Track::block(y.i, PLMap::constant(third, two_thirds, y.t)));
  for (Cell* c : {&out, &mid, &in}) std::sort(c->tracks.begin(), c->tracks.end());
  fam.cells = {out, mid, in};
  return fam;
}

PathFamily spectral_paths(const Presentation& P, const FiniteSpectrum& Sphi,
                          const FiniteSpectrum& Spsi, const PairingResult& pairing,
                          const ConstantBundle& bundle) {
  return spectral_paths(P, Sphi, Spsi, pairing, bundle.eta1);
}

IntervalList swept_set(const PathFamily& fam, int block) {
  IntervalList raw;
  for (const auto& c : fam.cells)
    for (const auto& tr : c.tracks)
      if (tr.kind == Track::Kind::block && tr.index == block)
        raw.push_back(Interval{tr.path.min_value(), tr.path.max_value()});
  return merge_intervals(raw);
}

bool coverage_check(const PathFamily& fam, const Interior& y) {
  auto member = [&](const FiniteSpectrum& S) {
    return std::find(S.interior.begin(), S.interior.end(), y) != S.interior.end();
  };
  require(member(fam.start) || member(fam.end), ErrorKind::invalid_input,
          "coverage_check: point " + to_string(SpectrumPoint(y)) + " is not in either spectrum");
  Interval ball = window_of(y.t, fam.eta1);
  for (const auto& piece : swept_set(fam, y.i))
    if (piece.lo <= ball.lo && ball.hi <= piece.hi) return true;
  return false;
}

std::vector<Cell> reparametrize_cells(const std::vector<Cell>& cells, const Rational& a,
                                      const Rational& b) {
  require(a < b, ErrorKind::invalid_input, "reparametrize_cells: empty target interval");
  auto move = [&](const Rational& x) -> Rational { return a + x * (b - a); };
  std::vector<Cell> out;
  for (const auto& c : cells) {
    Cell d{move(c.lo), move(c.hi), {}, c.pad};
    for (const auto& tr : c.tracks) {
      if (tr.kind == Track::Kind::theta)
        d.tracks.push_back(tr);
      else
        d.tracks.push_back(Track::block(tr.index, tr.path.reparametrized(d.lo, d.hi)));
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace etalg
