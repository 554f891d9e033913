#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "etalg/presentation.hpp"
#include "etalg/rational.hpp"

namespace etalg {

struct Theta {
  int j = 0;
  auto operator<=>(const Theta&) const = default;
};

// Coordinate t of block i. t = 0 and t = 1 are raw coordinates standing for
// the glued theta-multisets.
struct Interior {
  int i = 0;
  Rational t;
  bool operator==(const Interior& o) const { return i == o.i && t == o.t; }
  bool operator<(const Interior& o) const { return i != o.i ? i < o.i : t < o.t; }
};

using SpectrumPoint = std::variant<Theta, Interior>;

std::string to_string(const SpectrumPoint& x);

struct Interval {
  Rational lo, hi;
  bool is_point() const { return lo == hi; }
  Rational length() const { return hi - lo; }
  bool contains(const Rational& t) const { return lo <= t && t <= hi; }
  bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

using IntervalList = std::vector<Interval>;

// Finite union of theta points and closed rational intervals/points per
// block. Canonical form: thetas sorted and unique; pieces[i] sorted, pairwise
// disjoint and non-touching; no point pieces at coordinate 0 or 1.
struct ClosedSubset {
  std::vector<int> thetas;
  std::vector<IntervalList> pieces;

  bool has_theta(int j) const;
  bool empty() const;
  bool operator==(const ClosedSubset& o) const {
    return thetas == o.thetas && pieces == o.pieces;
  }
};

ClosedSubset empty_subset(const Presentation& P);
ClosedSubset full_spectrum(const Presentation& P);

// Merges pieces, drops endpoint point pieces and adds the theta points
// forced by pieces touching 0 (alpha support) or 1 (beta support).
ClosedSubset closure(const Presentation& P, const ClosedSubset& raw, bool* changed = nullptr);

ValidationReport validate_closed(const Presentation& P, const ClosedSubset& S);
bool is_closed(const Presentation& P, const ClosedSubset& S);

struct IndexSets {
  std::vector<int> J, L0, L1, Ll, Lll, Lr, Lrr, La;
  std::map<int, Rational> s, t;
};

IndexSets index_sets(const Presentation& P, const ClosedSubset& Y);

// Distance within one block; nullopt stands for infinity.
std::optional<Rational> dist(const SpectrumPoint& x, const SpectrumPoint& y);

// Membership of a point; Interior(i,0) / Interior(i,1) are members when all
// of their glued theta points are.
bool contains(const Presentation& P, const ClosedSubset& Y, const SpectrumPoint& x);

ClosedSubset set_union(const Presentation& P, const ClosedSubset& A, const ClosedSubset& B);
ClosedSubset set_intersection(const Presentation& P, const ClosedSubset& A,
                              const ClosedSubset& B);
bool is_subset(const ClosedSubset& A, const ClosedSubset& B);

// Merge sorted-or-not raw intervals into disjoint non-touching pieces.
IntervalList merge_intervals(IntervalList raw);
IntervalList intersect_intervals(const IntervalList& a, const IntervalList& b);
// Lebesgue measure of pieces within [lo, hi].
Rational measure_within(const IntervalList& pieces, const Rational& lo, const Rational& hi);

// A maximal interval of [0,1]_i not covered by Y, with its endpoint types.
struct Gap {
  int block = 0;
  Rational lo, hi;
  bool lo_closed = false, hi_closed = false;
  std::string to_string() const;
};

std::vector<Gap> complement_gaps(const Presentation& P, const ClosedSubset& Y);

}  // namespace etalg
