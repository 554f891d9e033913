#pragma once

#include <vector>

#include "etalg/rational.hpp"

namespace etalg {

// Continuous piecewise-linear map on [xs.front(), xs.back()] through the
// points (xs[k], ys[k]). A single breakpoint encodes a map on a point.
class PLMap {
 public:
  PLMap() = default;
  PLMap(std::vector<Rational> xs, std::vector<Rational> ys);

  static PLMap constant(const Rational& lo, const Rational& hi, const Rational& value);
  static PLMap affine(const Rational& lo, const Rational& hi, const Rational& ylo,
                      const Rational& yhi);

  const std::vector<Rational>& xs() const { return xs_; }
  const std::vector<Rational>& ys() const { return ys_; }
  const Rational& lo() const { return xs_.front(); }
  const Rational& hi() const { return xs_.back(); }
  bool is_point_domain() const { return xs_.size() == 1; }

  Rational operator()(const Rational& x) const;
  Rational min_value() const;
  Rational max_value() const;
  Rational max_abs_slope() const;
  bool is_nondecreasing() const;
  bool is_constant() const;

  PLMap restricted(const Rational& a, const Rational& b) const;
  // outer o this; requires the range of this inside the domain of outer.
  PLMap then(const PLMap& outer) const;
  // Joins maps on [a,b] and [b,c] that agree at b.
  PLMap concatenated(const PLMap& next) const;
  // Same values, domain moved affinely onto [a,b].
  PLMap reparametrized(const Rational& a, const Rational& b) const;

  // Points x with f(x) = v; whole constant segments contribute both ends.
  std::vector<Rational> preimage(const Rational& v) const;

  bool operator==(const PLMap& o) const { return xs_ == o.xs_ && ys_ == o.ys_; }
  bool operator<(const PLMap& o) const;

 private:
  void normalize();
  std::size_t segment_of(const Rational& x) const;

  std::vector<Rational> xs_;
  std::vector<Rational> ys_;
};

}  // namespace etalg
