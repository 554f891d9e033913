#pragma once

#include <map>
#include <optional>
#include <vector>

#include "etalg/element.hpp"
#include "etalg/pl_map.hpp"
#include "etalg/presentation.hpp"
#include "etalg/spectrum.hpp"
#include "etalg/test_functions.hpp"

namespace etalg {

// Spectrum of a homomorphism into a matrix algebra: theta_mult[j] copies of
// theta_j, interior points (each of size dims[block]) and zero_pad zeros.
struct FiniteSpectrum {
  std::vector<int> theta_mult;
  std::vector<Interior> interior;
  int zero_pad = 0;

  bool operator==(const FiniteSpectrum& o) const {
    return theta_mult == o.theta_mult && interior == o.interior && zero_pad == o.zero_pad;
  }
};

FiniteSpectrum empty_spectrum(const Presentation& P);
long spectrum_size(const Presentation& P, const FiniteSpectrum& S);
bool is_canonical(const FiniteSpectrum& S);
// Replaces coordinates 0/1 by their alpha/beta theta-expansions; the
// non-unital deficit enters zero_pad. Result interior is sorted.
FiniteSpectrum boundary_rewrite(const Presentation& P, FiniteSpectrum S);
void add_into(FiniteSpectrum& acc, const FiniteSpectrum& S, int times = 1);

std::vector<Rational> eigenvalues_of(const Presentation& P, const FiniteSpectrum& S,
                                     const ProfileElement& f);

struct Track {
  enum class Kind { theta, block };
  Kind kind = Kind::block;
  int index = 0;  // theta index or source F2 block
  PLMap path;     // block tracks only; domain = the cell

  static Track theta(int j) { return Track{Kind::theta, j, PLMap()}; }
  static Track block(int i, PLMap path) { return Track{Kind::block, i, std::move(path)}; }
  bool operator==(const Track& o) const {
    return kind == o.kind && index == o.index && path == o.path;
  }
  bool operator<(const Track& o) const;
};

// A stretch of a domain piece on which the tracks are fixed.
struct Cell {
  Rational lo, hi;
  std::vector<Track> tracks;
  int pad = 0;
  bool operator==(const Cell& o) const {
    return lo == o.lo && hi == o.hi && tracks == o.tracks && pad == o.pad;
  }
};

struct PiecePattern {
  int block = 0;  // target F2 block
  Interval span;
  std::vector<Cell> cells;
  bool operator==(const PiecePattern& o) const {
    return block == o.block && span == o.span && cells == o.cells;
  }
};

// Homomorphism source -> target|_domain recorded by its spectra: vertex
// spectra at the domain thetas and PL tracks along each domain piece.
// pieces follow the order of domain.pieces (block-major).
struct PatternHom {
  Presentation source, target;
  ClosedSubset domain;
  std::map<int, FiniteSpectrum> vertex_spec;
  std::vector<PiecePattern> pieces;

  bool operator==(const PatternHom& o) const {
    return source == o.source && target == o.target && domain == o.domain &&
           vertex_spec == o.vertex_spec && pieces == o.pieces;
  }
};

PatternHom identity_pattern(const Presentation& P);
PatternHom identity_on(const Presentation& P, const ClosedSubset& Y);

ValidationReport validate_pattern(const PatternHom& phi);

// Raw spectrum of one cell at z (coordinates 0/1 not rewritten).
FiniteSpectrum cell_spectrum(const Cell& c, const Rational& z, const Presentation& source);
// alpha'/beta'-weighted union of the vertex spectra at coordinate side of
// target block i, padded to dims'[i].
FiniteSpectrum target_endpoint_expansion(const PatternHom& phi, int i, int side);

FiniteSpectrum eval_spectrum(const PatternHom& phi, const SpectrumPoint& z);
EigList eval_element(const PatternHom& phi, const ProfileElement& f, const SpectrumPoint& z);
EigList eval_element(const PatternHom& phi, const TestFunction& h, const SpectrumPoint& z);

// Extra points where distances are also evaluated; breakpoints are always used.
struct SamplePlan {
  std::vector<SpectrumPoint> extra;
};

// sup over the domain of the sup-distance between sorted eigenvalue lists.
Rational spec_distance(const PatternHom& phi, const PatternHom& psi, const ProfileElement& f,
                       const SamplePlan& plan = {});

// psi o phi for phi: A -> B and psi: B -> C.
PatternHom compose(const PatternHom& phi, const PatternHom& psi);

ClosedSubset sp_image(const PatternHom& phi);

struct InjectivityWitness {
  bool injective = false;
  ClosedSubset image;
  std::vector<int> missing_thetas;
  std::vector<Gap> missing_gaps;
};

InjectivityWitness is_injective(const PatternHom& phi);

PatternHom restrict_domain(const PatternHom& phi, const ClosedSubset& Y);

struct ImageRestriction {
  ClosedSubset support;
  PatternHom restricted;
};

ImageRestriction image_restrict(const PatternHom& phi);

// phi(f) as an element of the target; phi must be defined on all of Sp(target).
ProfileElement push_forward(const PatternHom& phi, const ProfileElement& f);

Rational max_track_slope(const PatternHom& phi);

// Equal spectra at every point of the domain (checked exactly).
bool pattern_equivalent(const PatternHom& phi, const PatternHom& psi);

// Constant tracks at coordinate 0/1 become theta tracks (plus padding) and
// tracks are sorted within cells; adjacent cells are kept as they are.
PatternHom canonical_tracks(PatternHom phi);

}  // namespace etalg
