#include <algorithm>

#include "etalg/error.hpp"
#include "etalg/pattern.hpp"
#include "pattern_internal.hpp"

namespace etalg {

namespace {

struct Affine {
  Rational at_u, at_v;
};

Rational interpolate(const Affine& a, const Rational& u, const Rational& v, const Rational& w) {
  if (u == v) return a.at_u;
  return a.at_u + (w - u) / (v - u) * (a.at_v - a.at_u);
}

// Refined breakpoints of a cell: between consecutive points every track is
// affine and maps into a single linear segment of every branch of f.
std::vector<Rational> cell_breakpoints(const Presentation& A, const Cell& c,
                                       const ProfileElement* f) {
  std::vector<Rational> pts{c.lo, c.hi};
  for (const auto& tr : c.tracks) {
    if (tr.kind != Track::Kind::block) continue;
    pts.insert(pts.end(), tr.path.xs().begin(), tr.path.xs().end());
    if (!f) continue;
    std::vector<Rational> bx;
    for (const auto& b : f->branches[tr.index]) bx.insert(bx.end(), b.xs().begin(), b.xs().end());
    sort_unique(bx);
    for (const auto& x : bx) {
      auto pre = tr.path.preimage(x);
      pts.insert(pts.end(), pre.begin(), pre.end());
    }
  }
  (void)A;
  sort_unique(pts);
  return pts;
}

std::vector<Affine> eigen_functions(const Presentation& A, const Cell& c, const Rational& u,
                                    const Rational& v, const ProfileElement& f) {
  std::vector<Affine> out;
  for (const auto& tr : c.tracks) {
    if (tr.kind == Track::Kind::theta) {
      for (const auto& x : f.theta_eigs[tr.index]) out.push_back({x, x});
      continue;
    }
    Rational gu = tr.path(u), gv = tr.path(v);
    for (const auto& b : f.branches[tr.index]) out.push_back({b(gu), b(gv)});
  }
  for (int q = 0; q < c.pad; ++q) out.push_back({Rational(0), Rational(0)});
  (void)A;
  return out;
}

// Points of a piece between which every sorted eigenvalue of phi(f) is affine.
std::vector<Rational> critical_points(const Presentation& A, const PiecePattern& pp,
                                      const ProfileElement& f) {
  std::vector<Rational> all;
  for (const auto& c : pp.cells) {
    auto pts = cell_breakpoints(A, c, &f);
    all.insert(all.end(), pts.begin(), pts.end());
    for (std::size_t q = 0; q + 1 < pts.size(); ++q) {
      const Rational &u = pts[q], &v = pts[q + 1];
      auto fx = eigen_functions(A, c, u, v, f);
      for (std::size_t a = 0; a < fx.size(); ++a)
        for (std::size_t b = a + 1; b < fx.size(); ++b) {
          Rational du = fx[a].at_u - fx[b].at_u, dv = fx[a].at_v - fx[b].at_v;
          if ((du < 0 && dv > 0) || (du > 0 && dv < 0)) all.push_back(u + (v - u) * du / (du - dv));
        }
    }
  }
  sort_unique(all);
  return all;
}

std::vector<Rational> sorted_eigs(const Presentation& A, const PiecePattern& pp,
                                  const ProfileElement& f, const Rational& z) {
  const Cell& c = detail::find_cell(pp, z);
  return eigenvalues_of(A, cell_spectrum(c, z, A), f);
}

Rational list_distance(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  require(a.size() == b.size(), ErrorKind::invalid_input, "spec_distance: size mismatch");
  Rational d(0);
  for (std::size_t k = 0; k < a.size(); ++k) d = rmax(d, rabs(a[k] - b[k]));
  return d;
}

void append_spectrum_as_tracks(const FiniteSpectrum& V, const Rational& lo, const Rational& hi,
                               Cell& out) {
  for (std::size_t j = 0; j < V.theta_mult.size(); ++j)
    for (int c = 0; c < V.theta_mult[j]; ++c) out.tracks.push_back(Track::theta(int(j)));
  for (const auto& y : V.interior) out.tracks.push_back(Track::block(y.i, PLMap::constant(lo, hi, y.t)));
  out.pad += V.zero_pad;
}

std::vector<Cell> substitute_cell(const PatternHom& phi, const Cell& c) {
  std::vector<Rational> pts{c.lo, c.hi};
  std::vector<int> piece_of(c.tracks.size(), -1);
  for (std::size_t q = 0; q < c.tracks.size(); ++q) {
    const Track& g = c.tracks[q];
    if (g.kind == Track::Kind::theta) {
      if (!phi.vertex_spec.count(g.index))
        fail(ErrorKind::domain, "compose: track hits theta " + std::to_string(g.index) +
                                    " outside the domain of the inner map");
      continue;
    }
    int k = detail::find_piece_containing(phi, g.index, g.path.min_value(), g.path.max_value());
    if (k < 0 && g.path.min_value() == g.path.max_value() &&
        (g.path.min_value() == 0 || g.path.min_value() == 1)) {
      piece_of[q] = g.path.min_value() == 0 ? -2 : -3;
      continue;
    }
    if (k < 0)
      fail(ErrorKind::domain, "compose: track range [" + to_string(g.path.min_value()) + "," +
                                  to_string(g.path.max_value()) + "] in block " +
                                  std::to_string(g.index) + " leaves the domain of the inner map");
    piece_of[q] = k;
    for (std::size_t r = 0; r + 1 < phi.pieces[k].cells.size(); ++r) {
      auto pre = g.path.preimage(phi.pieces[k].cells[r].hi);
      pts.insert(pts.end(), pre.begin(), pre.end());
    }
  }
  sort_unique(pts);
  std::vector<std::pair<Rational, Rational>> spans;
  if (c.lo == c.hi)
    spans.push_back({c.lo, c.hi});
  else
    for (std::size_t q = 0; q + 1 < pts.size(); ++q) spans.push_back({pts[q], pts[q + 1]});

  std::vector<Cell> out;
  for (const auto& [w0, w1] : spans) {
    Cell nc{w0, w1, {}, c.pad};
    Rational mid = (w0 + w1) / 2;
    for (std::size_t q = 0; q < c.tracks.size(); ++q) {
      const Track& g = c.tracks[q];
      if (g.kind == Track::Kind::theta) {
        append_spectrum_as_tracks(phi.vertex_spec.at(g.index), w0, w1, nc);
        continue;
      }
      if (piece_of[q] < -1) {
        append_spectrum_as_tracks(target_endpoint_expansion(phi, g.index, piece_of[q] == -2 ? 0 : 1),
                                  w0, w1, nc);
        continue;
      }
      PLMap gs = g.path.restricted(w0, w1);
      const PiecePattern& pp = phi.pieces[piece_of[q]];
      const Cell& inner = detail::find_cell(pp, g.path(mid));
      for (const auto& h : inner.tracks) {
        if (h.kind == Track::Kind::theta)
          nc.tracks.push_back(h);
        else
          nc.tracks.push_back(Track::block(h.index, gs.then(h.path)));
      }
      nc.pad += inner.pad;
    }
    std::sort(nc.tracks.begin(), nc.tracks.end());
    out.push_back(std::move(nc));
  }
  return out;
}

}  // namespace

PatternHom canonical_tracks(PatternHom phi) {
  const Presentation& S = phi.source;
  for (auto& pp : phi.pieces)
    for (auto& c : pp.cells) {
      std::vector<Track> out;
      for (auto& g : c.tracks) {
        const bool at_end = g.kind == Track::Kind::block && g.path.is_constant() &&
                            (g.path.min_value() == 0 || g.path.min_value() == 1);
        if (!at_end) {
          out.push_back(std::move(g));
          continue;
        }
        const auto& row = g.path.min_value() == 0 ? S.alpha[g.index] : S.beta[g.index];
        long used = 0;
        for (int j = 0; j < S.p(); ++j)
          for (int r = 0; r < row[j]; ++r) {
            out.push_back(Track::theta(j));
            used += S.k[j];
          }
        c.pad += int(S.dims[g.index] - used);
      }
      std::sort(out.begin(), out.end());
      c.tracks = std::move(out);
    }
  return phi;
}

PatternHom compose(const PatternHom& phi, const PatternHom& psi) {
  require(phi.target == psi.source, ErrorKind::invalid_input,
          "compose: target of the first map differs from the source of the second");
  PatternHom chi;
  chi.source = phi.source;
  chi.target = psi.target;
  chi.domain = psi.domain;
  for (const auto& [j, S] : psi.vertex_spec) {
    FiniteSpectrum V = empty_spectrum(phi.source);
    for (int jp = 0; jp < phi.target.p(); ++jp) {
      if (S.theta_mult[jp] == 0) continue;
      auto it = phi.vertex_spec.find(jp);
      if (it == phi.vertex_spec.end())
        fail(ErrorKind::domain, "compose: vertex spectrum uses theta " + std::to_string(jp) +
                                    " outside the domain of the inner map");
      add_into(V, it->second, S.theta_mult[jp]);
    }
    for (const auto& y : S.interior) add_into(V, eval_spectrum(phi, y));
    V.zero_pad += S.zero_pad;
    chi.vertex_spec[j] = boundary_rewrite(phi.source, V);
  }
  for (const auto& pp : psi.pieces) {
    PiecePattern np{pp.block, pp.span, {}};
    for (const auto& c : pp.cells) {
      auto cells = substitute_cell(phi, c);
      np.cells.insert(np.cells.end(), cells.begin(), cells.end());
    }
    chi.pieces.push_back(std::move(np));
  }
  return chi;
}

Rational spec_distance(const PatternHom& phi, const PatternHom& psi, const ProfileElement& f,
                       const SamplePlan& plan) {
  require(phi.source == psi.source && phi.target == psi.target, ErrorKind::invalid_input,
          "spec_distance: maps must share source and target");
  require(phi.domain == psi.domain, ErrorKind::invalid_input, "spec_distance: domains differ");
  require(validate_profile(phi.source, f).ok, ErrorKind::invalid_input,
          "spec_distance: element is not a valid profile of the source");
  const Presentation& A = phi.source;
  Rational d(0);
  for (const auto& [j, S] : phi.vertex_spec)
    d = rmax(d, list_distance(eigenvalues_of(A, S, f), eigenvalues_of(A, psi.vertex_spec.at(j), f)));
  for (std::size_t k = 0; k < phi.pieces.size(); ++k) {
    const auto &pa = phi.pieces[k], &pb = psi.pieces[k];
    auto pts = critical_points(A, pa, f);
    auto pb_pts = critical_points(A, pb, f);
    pts.insert(pts.end(), pb_pts.begin(), pb_pts.end());
    for (const auto& z : plan.extra)
      if (auto in = std::get_if<Interior>(&z); in && in->i == pa.block && pa.span.contains(in->t))
        pts.push_back(in->t);
    sort_unique(pts);
    for (const auto& z : pts) d = rmax(d, list_distance(sorted_eigs(A, pa, f, z), sorted_eigs(A, pb, f, z)));
  }
  return d;
}

ClosedSubset sp_image(const PatternHom& phi) {
  const Presentation& A = phi.source;
  ClosedSubset raw = empty_subset(A);
  auto add_spec = [&](const FiniteSpectrum& S) {
    for (int j = 0; j < A.p(); ++j)
      if (S.theta_mult[j] > 0) raw.thetas.push_back(j);
    for (const auto& y : S.interior) raw.pieces[y.i].push_back({y.t, y.t});
  };
  for (const auto& [j, S] : phi.vertex_spec) add_spec(S);
  for (const auto& pp : phi.pieces)
    for (const auto& c : pp.cells)
      for (const auto& tr : c.tracks) {
        if (tr.kind == Track::Kind::theta)
          raw.thetas.push_back(tr.index);
        else
          raw.pieces[tr.index].push_back({tr.path.min_value(), tr.path.max_value()});
      }
  std::sort(raw.thetas.begin(), raw.thetas.end());
  raw.thetas.erase(std::unique(raw.thetas.begin(), raw.thetas.end()), raw.thetas.end());
  return closure(A, raw);
}

InjectivityWitness is_injective(const PatternHom& phi) {
  InjectivityWitness w;
  w.image = sp_image(phi);
  const Presentation& A = phi.source;
  for (int j = 0; j < A.p(); ++j)
    if (!w.image.has_theta(j)) w.missing_thetas.push_back(j);
  w.missing_gaps = complement_gaps(A, w.image);
  w.injective = w.image == full_spectrum(A);
  return w;
}

PatternHom restrict_domain(const PatternHom& phi, const ClosedSubset& Y) {
  require(is_closed(phi.target, Y), ErrorKind::invalid_input, "restrict_domain: set not closed");
  require(is_subset(Y, phi.domain), ErrorKind::invalid_input,
          "restrict_domain: set not inside the domain");
  PatternHom out;
  out.source = phi.source;
  out.target = phi.target;
  out.domain = Y;
  for (int j : Y.thetas) out.vertex_spec[j] = phi.vertex_spec.at(j);
  for (int i = 0; i < phi.target.l(); ++i)
    for (const auto& iv : Y.pieces[i]) {
      int k = detail::find_piece_containing(phi, i, iv.lo, iv.hi);
      require(k >= 0, ErrorKind::internal, "restrict_domain: piece lookup failed");
      PiecePattern np{i, iv, {}};
      if (iv.is_point()) {
        const Cell& c = detail::find_cell(phi.pieces[k], iv.lo);
        Cell nc{iv.lo, iv.lo, {}, c.pad};
        for (const auto& tr : c.tracks)
          nc.tracks.push_back(tr.kind == Track::Kind::theta
                                  ? tr
                                  : Track::block(tr.index, tr.path.restricted(iv.lo, iv.lo)));
        np.cells.push_back(std::move(nc));
      } else {
        for (const auto& c : phi.pieces[k].cells) {
          Rational a = rmax(c.lo, iv.lo), b = rmin(c.hi, iv.hi);
          if (!(a < b)) continue;
          Cell nc{a, b, {}, c.pad};
          for (const auto& tr : c.tracks)
            nc.tracks.push_back(tr.kind == Track::Kind::theta ? tr
                                                              : Track::block(tr.index, tr.path.restricted(a, b)));
          np.cells.push_back(std::move(nc));
        }
      }
      out.pieces.push_back(std::move(np));
    }
  return out;
}

ImageRestriction image_restrict(const PatternHom& phi) {
  const Presentation& B = phi.target;
  ClosedSubset raw = empty_subset(B);
  for (const auto& [j, S] : phi.vertex_spec)
    if (spectrum_size(phi.source, S) > S.zero_pad) raw.thetas.push_back(j);
  for (const auto& pp : phi.pieces)
    for (const auto& c : pp.cells)
      if (!c.tracks.empty()) raw.pieces[pp.block].push_back({c.lo, c.hi});
  ClosedSubset Y = closure(B, raw);
  require(!Y.empty(), ErrorKind::invalid_input, "image_restrict: the map is identically zero");
  return ImageRestriction{Y, restrict_domain(phi, Y)};
}

ProfileElement push_forward(const PatternHom& phi, const ProfileElement& f) {
  require(phi.domain == full_spectrum(phi.target), ErrorKind::invalid_input,
          "push_forward: map must be defined on the whole spectrum");
  require(validate_profile(phi.source, f).ok, ErrorKind::invalid_input,
          "push_forward: element is not a valid profile of the source");
  const Presentation &A = phi.source, &B = phi.target;
  ProfileElement g;
  for (int j = 0; j < B.p(); ++j) g.theta_eigs.push_back(eigenvalues_of(A, phi.vertex_spec.at(j), f));
  g.branches.resize(B.l());
  for (const auto& pp : phi.pieces) {
    auto pts = critical_points(A, pp, f);
    std::vector<std::vector<Rational>> vals(B.dims[pp.block]);
    for (const auto& z : pts) {
      auto e = sorted_eigs(A, pp, f, z);
      for (std::size_t r = 0; r < e.size(); ++r) vals[r].push_back(e[r]);
    }
    for (auto& v : vals) g.branches[pp.block].push_back(PLMap(pts, std::move(v)));
  }
  return g;
}

Rational max_track_slope(const PatternHom& phi) {
  Rational m(0);
  for (const auto& pp : phi.pieces)
    for (const auto& c : pp.cells)
      for (const auto& tr : c.tracks)
        if (tr.kind == Track::Kind::block) m = rmax(m, tr.path.max_abs_slope());
  return m;
}

bool pattern_equivalent(const PatternHom& phi, const PatternHom& psi) {
  if (!(phi.source == psi.source) || !(phi.target == psi.target) || !(phi.domain == psi.domain))
    return false;
  const Presentation& A = phi.source;
  if (phi.vertex_spec != psi.vertex_spec) return false;
  for (std::size_t k = 0; k < phi.pieces.size(); ++k) {
    const auto &pa = phi.pieces[k], &pb = psi.pieces[k];
    std::vector<Rational> pts;
    std::size_t ntracks = 0;
    for (const auto* pp : {&pa, &pb})
      for (const auto& c : pp->cells) {
        auto b = cell_breakpoints(A, c, nullptr);
        pts.insert(pts.end(), b.begin(), b.end());
        ntracks = std::max(ntracks, c.tracks.size());
      }
    sort_unique(pts);
    // Two multisets of N affine functions agreeing at N+1 points agree on
    // the whole segment (power sums are polynomials of degree <= N).
    std::vector<Rational> samples = pts;
    for (std::size_t q = 0; q + 1 < pts.size(); ++q)
      for (std::size_t r = 1; r <= ntracks; ++r)
        samples.push_back(pts[q] + (pts[q + 1] - pts[q]) * make_rational(long(r), long(ntracks + 1)));
    for (const auto& z : samples) {
      auto sa = boundary_rewrite(A, cell_spectrum(detail::find_cell(pa, z), z, A));
      auto sb = boundary_rewrite(A, cell_spectrum(detail::find_cell(pb, z), z, A));
      if (!(sa == sb)) return false;
    }
  }
  return true;
}

}  // namespace etalg
