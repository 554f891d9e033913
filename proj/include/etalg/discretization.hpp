#pragma once

#include <vector>

#include "etalg/pattern.hpp"
#include "etalg/spectrum.hpp"

namespace etalg {

// Non-decreasing continuous surjection from the hull of pieces onto
// [zs, zt], affine on each component with slope proportional to
// (zt - zs) / total length and constant across gaps.
PLMap monotone_surjection(const IntervalList& pieces, const Rational& zs, const Rational& zt);

struct AdjacentPair {
  int block = 0;
  Rational ys, yt;
  bool edge = false;
  PLMap map;               // edge: surjection of Y on [ys, yt] onto [ys, yt]
  Rational gap_lo, gap_hi; // no edge: points <= gap_lo go to ys, >= gap_hi to yt
};

struct Skeleton {
  int m = 1;
  std::vector<std::vector<Rational>> vertices;  // per block, ascending
  std::vector<AdjacentPair> pairs;               // consecutive vertices, block-major
};

// Smallest m with 1/m < delta/2.
int skeleton_grid(const Rational& delta);

Skeleton build_skeleton(const Presentation& P, const ClosedSubset& Y, const Rational& delta);

struct CollapseMap {
  Presentation P;
  ClosedSubset Y;
  Skeleton skeleton;
  Rational delta;

  Rational apply_coord(int block, const Rational& y) const;
  SpectrumPoint apply(const SpectrumPoint& y) const;
};

struct Discretization {
  ClosedSubset Z;
  CollapseMap rho;
};

Discretization discretize(const Presentation& P, const ClosedSubset& Y, const Rational& delta);

// The pattern P -> P|_Y of f -> f o rho.
PatternHom collapse_pattern(const Discretization& d);

}  // namespace etalg
