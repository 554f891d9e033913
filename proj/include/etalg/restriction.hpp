#pragma once

#include <vector>

#include "etalg/pattern.hpp"
#include "etalg/spectrum.hpp"

namespace etalg {

// Where an F1 block of the restricted algebra comes from.
struct F1Origin {
  enum class Kind { theta, stub, interval_end, point };
  Kind kind = Kind::theta;
  int index = 0;   // source theta (theta) or source F2 block (others)
  Rational coord;  // coordinate in the source block (not for theta)
};

// F2 block of the restricted algebra: [lo, hi] of a source block, affinely
// reparametrized onto [0,1].
struct F2Origin {
  int block = 0;
  Rational lo, hi;
};

struct RestrictionResult {
  Presentation B;
  ClosedSubset Z;
  std::vector<F1Origin> f1_origin;
  std::vector<F2Origin> f2_origin;
  PatternHom quotient;   // A -> B, f -> f|_Z
  PatternHom inclusion;  // B -> A|_Z, identifies B with A|_Z

  // Sp(A) cap Z -> Sp(B) (canonical points).
  SpectrumPoint to_target(const SpectrumPoint& z) const;
  // Sp(B) -> coordinates of Z (coordinates 0/1 may be raw).
  SpectrumPoint to_source(const SpectrumPoint& w) const;
};

// F1 blocks: thetas of Z ascending, then left stubs (i in Ll), then right
// stubs (i in Lr). F2 blocks: L1, Ll, Lr. Interior intervals and isolated
// points of Z follow as separate summands in block/coordinate order.
RestrictionResult restrict_algebra(const Presentation& P, const ClosedSubset& Z);

// (fiber dimension of A at z, fiber dimension of B at the matching point).
std::pair<int, int> dimension_at(const Presentation& P, const ClosedSubset& Z,
                                 const RestrictionResult& R, const SpectrumPoint& z);

// Fiber dimensions and gluing multisets at thetas, stub ends, interval ends,
// the given interior samples, plus the round trips of quotient/inclusion.
ValidationReport audit_restriction(const Presentation& P, const ClosedSubset& Z,
                                   const RestrictionResult& R,
                                   const std::vector<SpectrumPoint>& samples);

}  // namespace etalg
