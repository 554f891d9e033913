#include <algorithm>

#include "etalg/error.hpp"
#include "etalg/pattern.hpp"
#include "pattern_internal.hpp"

namespace etalg {

PatternHom identity_pattern(const Presentation& P) {
  require_valid(P);
  PatternHom phi;
  phi.source = P;
  phi.target = P;
  phi.domain = full_spectrum(P);
  for (int j = 0; j < P.p(); ++j) {
    FiniteSpectrum S = empty_spectrum(P);
    S.theta_mult[j] = 1;
    phi.vertex_spec[j] = S;
  }
  for (int i = 0; i < P.l(); ++i) {
    Cell c{Rational(0), Rational(1), {Track::block(i, PLMap::affine(0, 1, 0, 1))}, 0};
    phi.pieces.push_back(PiecePattern{i, Interval{Rational(0), Rational(1)}, {c}});
  }
  return phi;
}

PatternHom identity_on(const Presentation& P, const ClosedSubset& Y) {
  return restrict_domain(identity_pattern(P), Y);
}

namespace detail {

int find_piece(const PatternHom& phi, int block, const Rational& t) {
  for (std::size_t k = 0; k < phi.pieces.size(); ++k)
    if (phi.pieces[k].block == block && phi.pieces[k].span.contains(t)) return int(k);
  return -1;
}

int find_piece_containing(const PatternHom& phi, int block, const Rational& lo, const Rational& hi) {
  for (std::size_t k = 0; k < phi.pieces.size(); ++k)
    if (phi.pieces[k].block == block && phi.pieces[k].span.lo <= lo && hi <= phi.pieces[k].span.hi)
      return int(k);
  return -1;
}

const Cell& find_cell(const PiecePattern& piece, const Rational& t) {
  for (const auto& c : piece.cells)
    if (c.lo <= t && t <= c.hi) return c;
  fail(ErrorKind::domain, "no cell contains coordinate " + to_string(t));
}

const Cell& find_cell_over(const PiecePattern& piece, const Rational& u, const Rational& v) {
  for (const auto& c : piece.cells)
    if (c.lo <= u && v <= c.hi) return c;
  fail(ErrorKind::internal, "no cell covers [" + to_string(u) + "," + to_string(v) + "]");
}

}  // namespace detail

FiniteSpectrum cell_spectrum(const Cell& c, const Rational& z, const Presentation& source) {
  FiniteSpectrum S = empty_spectrum(source);
  S.zero_pad = c.pad;
  for (const auto& tr : c.tracks) {
    if (tr.kind == Track::Kind::theta)
      S.theta_mult[tr.index] += 1;
    else
      S.interior.push_back(Interior{tr.index, tr.path(z)});
  }
  return S;
}

FiniteSpectrum target_endpoint_expansion(const PatternHom& phi, int i, int side) {
  const Presentation& B = phi.target;
  FiniteSpectrum S = empty_spectrum(phi.source);
  const auto& row = side == 0 ? B.alpha[i] : B.beta[i];
  long used = 0;
  for (int j = 0; j < B.p(); ++j) {
    if (row[j] == 0) continue;
    auto it = phi.vertex_spec.find(j);
    if (it == phi.vertex_spec.end())
      fail(ErrorKind::domain, "vertex spectrum missing at target theta " + std::to_string(j));
    add_into(S, it->second, row[j]);
    used += long(row[j]) * B.k[j];
  }
  S.zero_pad += int(B.dims[i] - used);
  return S;
}

FiniteSpectrum eval_spectrum(const PatternHom& phi, const SpectrumPoint& z) {
  if (auto th = std::get_if<Theta>(&z)) {
    auto it = phi.vertex_spec.find(th->j);
    if (it == phi.vertex_spec.end())
      fail(ErrorKind::domain, "point " + to_string(z) + " outside the pattern domain");
    return it->second;
  }
  const auto& in = std::get<Interior>(z);
  int k = detail::find_piece(phi, in.i, in.t);
  if (k < 0) {
    if ((in.t == 0 || in.t == 1) && contains(phi.target, phi.domain, z))
      return boundary_rewrite(phi.source, target_endpoint_expansion(phi, in.i, in.t == 0 ? 0 : 1));
    fail(ErrorKind::domain, "point " + to_string(z) + " outside the pattern domain");
  }
  const Cell& c = detail::find_cell(phi.pieces[k], in.t);
  return boundary_rewrite(phi.source, cell_spectrum(c, in.t, phi.source));
}

EigList eval_element(const PatternHom& phi, const ProfileElement& f, const SpectrumPoint& z) {
  FiniteSpectrum S = eval_spectrum(phi, z);
  return EigList{eigenvalues_of(phi.source, S, f)};
}

EigList eval_element(const PatternHom& phi, const TestFunction& h, const SpectrumPoint& z) {
  return eval_element(phi, to_profile(phi.source, h), z);
}

namespace {

void check_vertex(const PatternHom& phi, int j, const FiniteSpectrum& S, ValidationReport& rep) {
  const Presentation& A = phi.source;
  if (int(S.theta_mult.size()) != A.p()) {
    rep.add("vertex_shape", {j}, "vertex spectrum has wrong theta count");
    return;
  }
  for (int t : S.theta_mult)
    if (t < 0) rep.add("vertex_nonnegative", {j}, "negative theta multiplicity");
  if (S.zero_pad < 0) rep.add("vertex_nonnegative", {j}, "negative zero_pad");
  for (const auto& y : S.interior)
    if (y.i < 0 || y.i >= A.l()) {
      rep.add("vertex_block", {j}, "vertex spectrum point in unknown block");
      return;
    }
  if (!is_canonical(S)) rep.add("vertex_canonical", {j}, "vertex spectrum not canonical");
  if (spectrum_size(A, S) != phi.target.k[j])
    rep.add("vertex_size", {j},
            "vertex spectrum at theta " + std::to_string(j) + " has size " +
                std::to_string(spectrum_size(A, S)) + " != " + std::to_string(phi.target.k[j]));
}

}  // namespace

ValidationReport validate_pattern(const PatternHom& phi) {
  ValidationReport rep;
  rep.merge(validate_presentation(phi.source), "source.");
  rep.merge(validate_presentation(phi.target), "target.");
  if (!rep.ok) return rep;
  rep.merge(validate_closed(phi.target, phi.domain), "domain.");
  if (!rep.ok) return rep;
  const Presentation &A = phi.source, &B = phi.target;

  std::vector<int> keys;
  for (const auto& [j, S] : phi.vertex_spec) keys.push_back(j);
  if (keys != phi.domain.thetas) rep.add("vertex_keys", {}, "vertex spectra must match the domain thetas");
  for (const auto& [j, S] : phi.vertex_spec)
    if (0 <= j && j < B.p()) check_vertex(phi, j, S, rep);
  if (!rep.ok) return rep;

  std::size_t expected = 0;
  for (const auto& b : phi.domain.pieces) expected += b.size();
  if (phi.pieces.size() != expected) {
    rep.add("piece_count", {}, "one piece pattern per domain piece required");
    return rep;
  }
  std::size_t idx = 0;
  for (int i = 0; i < B.l(); ++i)
    for (std::size_t c = 0; c < phi.domain.pieces[i].size(); ++c, ++idx) {
      const auto& pp = phi.pieces[idx];
      const int pi = int(idx);
      if (pp.block != i || !(pp.span == phi.domain.pieces[i][c])) {
        rep.add("piece_span", {pi}, "piece pattern does not match its domain piece");
        continue;
      }
      if (pp.cells.empty()) {
        rep.add("cells_empty", {pi}, "piece has no cells");
        continue;
      }
      if (pp.cells.front().lo != pp.span.lo || pp.cells.back().hi != pp.span.hi)
        rep.add("cells_cover", {pi}, "cells must cover the piece");
      if (pp.span.is_point() && pp.cells.size() != 1) rep.add("cells_point", {pi}, "point piece needs one cell");
      bool cells_ok = true;
      for (std::size_t q = 0; q < pp.cells.size(); ++q) {
        const Cell& cl = pp.cells[q];
        const int qi = int(q);
        if (!pp.span.is_point() && !(cl.lo < cl.hi)) {
          rep.add("cell_degenerate", {pi, qi}, "cell must have positive length");
          cells_ok = false;
        }
        if (q > 0 && pp.cells[q - 1].hi != cl.lo) {
          rep.add("cells_contiguous", {pi, qi}, "cells must be contiguous");
          cells_ok = false;
        }
        if (cl.pad < 0) rep.add("pad_nonnegative", {pi, qi}, "negative pad");
        long size = cl.pad;
        for (const auto& tr : cl.tracks) {
          if (tr.kind == Track::Kind::theta) {
            if (tr.index < 0 || tr.index >= A.p()) {
              rep.add("track_index", {pi, qi}, "theta track index out of range");
              cells_ok = false;
              continue;
            }
            size += A.k[tr.index];
          } else {
            if (tr.index < 0 || tr.index >= A.l() || tr.path.xs().empty()) {
              rep.add("track_index", {pi, qi}, "block track malformed");
              cells_ok = false;
              continue;
            }
            size += A.dims[tr.index];
            if (tr.path.lo() != cl.lo || tr.path.hi() != cl.hi) {
              rep.add("track_domain", {pi, qi}, "track domain differs from its cell");
              cells_ok = false;
            }
            if (tr.path.min_value() < 0 || tr.path.max_value() > 1) {
              rep.add("track_range", {pi, qi}, "track leaves [0,1]");
              cells_ok = false;
            }
          }
        }
        if (size != B.dims[i])
          rep.add("size", {pi, qi},
                  "cell size " + std::to_string(size) + " != target dimension " + std::to_string(B.dims[i]) +
                      " on [" + to_string(cl.lo) + "," + to_string(cl.hi) + "]_" + std::to_string(i));
      }
      if (!cells_ok || !rep.ok) continue;
      for (std::size_t q = 0; q + 1 < pp.cells.size(); ++q) {
        const Rational& x = pp.cells[q].hi;
        if (!(boundary_rewrite(A, cell_spectrum(pp.cells[q], x, A)) ==
              boundary_rewrite(A, cell_spectrum(pp.cells[q + 1], x, A))))
          rep.add("join", {pi, int(q)}, "spectra disagree at the cell join " + to_string(x));
      }
      for (int side = 0; side < 2; ++side) {
        Rational x(side);
        if (!pp.span.contains(x)) continue;
        const Cell& cl = side == 0 ? pp.cells.front() : pp.cells.back();
        FiniteSpectrum got = boundary_rewrite(A, cell_spectrum(cl, x, A));
        FiniteSpectrum want = boundary_rewrite(A, target_endpoint_expansion(phi, i, side));
        if (!(got == want))
          rep.add("vertex_compatibility", {pi, side},
                  "tracks at coordinate " + std::to_string(side) + " of target block " +
                      std::to_string(i) + " do not match the vertex spectra");
      }
    }
  return rep;
}

}  // namespace etalg
