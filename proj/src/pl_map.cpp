#include "etalg/pl_map.hpp"

#include <algorithm>

#include "etalg/error.hpp"

namespace etalg {

PLMap::PLMap(std::vector<Rational> xs, std::vector<Rational> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  require(!xs_.empty() && xs_.size() == ys_.size(), ErrorKind::invalid_input,
          "PL map needs matching nonempty breakpoint arrays");
  for (std::size_t k = 1; k < xs_.size(); ++k)
    require(xs_[k - 1] < xs_[k], ErrorKind::invalid_input,
            "PL map breakpoints must be strictly increasing");
  normalize();
}

PLMap PLMap::constant(const Rational& lo, const Rational& hi, const Rational& value) {
  if (lo == hi) return PLMap({lo}, {value});
  return PLMap({lo, hi}, {value, value});
}

PLMap PLMap::affine(const Rational& lo, const Rational& hi, const Rational& ylo,
                    const Rational& yhi) {
  if (lo == hi) {
    require(ylo == yhi, ErrorKind::invalid_input, "affine map on a point must be constant");
    return PLMap({lo}, {ylo});
  }
  return PLMap({lo, hi}, {ylo, yhi});
}

void PLMap::normalize() {
  if (xs_.size() <= 2) return;
  std::vector<Rational> nx{xs_[0]}, ny{ys_[0]};
  for (std::size_t k = 1; k + 1 < xs_.size(); ++k) {
    // keep xs_[k] unless collinear with the last kept point and the next
    Rational lhs = (ys_[k] - ny.back()) * (xs_[k + 1] - xs_[k]);
    Rational rhs = (ys_[k + 1] - ys_[k]) * (xs_[k] - nx.back());
    if (lhs != rhs) {
      nx.push_back(xs_[k]);
      ny.push_back(ys_[k]);
    }
  }
  nx.push_back(xs_.back());
  ny.push_back(ys_.back());
  xs_ = std::move(nx);
  ys_ = std::move(ny);
}

std::size_t PLMap::segment_of(const Rational& x) const {
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t k = std::size_t(it - xs_.begin());
  if (k == 0) return 0;
  if (k >= xs_.size()) return xs_.size() - 2;
  return k - 1;
}

Rational PLMap::operator()(const Rational& x) const {
  if (x < lo() || x > hi())
    fail(ErrorKind::domain, "PL map evaluated at " + to_string(x) + " outside [" + to_string(lo()) +
                                "," + to_string(hi()) + "]");
  if (xs_.size() == 1) return ys_[0];
  std::size_t k = segment_of(x);
  if (x == xs_[k]) return ys_[k];
  if (x == xs_[k + 1]) return ys_[k + 1];
  Rational s = (x - xs_[k]) / (xs_[k + 1] - xs_[k]);
  return ys_[k] + s * (ys_[k + 1] - ys_[k]);
}

Rational PLMap::min_value() const { return *std::min_element(ys_.begin(), ys_.end()); }
Rational PLMap::max_value() const { return *std::max_element(ys_.begin(), ys_.end()); }

Rational PLMap::max_abs_slope() const {
  Rational m(0);
  for (std::size_t k = 1; k < xs_.size(); ++k)
    m = rmax(m, rabs((ys_[k] - ys_[k - 1]) / (xs_[k] - xs_[k - 1])));
  return m;
}

bool PLMap::is_nondecreasing() const {
  for (std::size_t k = 1; k < ys_.size(); ++k)
    if (ys_[k] < ys_[k - 1]) return false;
  return true;
}

bool PLMap::is_constant() const {
  for (const auto& y : ys_)
    if (y != ys_[0]) return false;
  return true;
}

PLMap PLMap::restricted(const Rational& a, const Rational& b) const {
  require(lo() <= a && a <= b && b <= hi(), ErrorKind::domain, "PL restriction outside domain");
  if (a == b) return PLMap({a}, {(*this)(a)});
  std::vector<Rational> nx{a}, ny{(*this)(a)};
  for (std::size_t k = 0; k < xs_.size(); ++k)
    if (a < xs_[k] && xs_[k] < b) {
      nx.push_back(xs_[k]);
      ny.push_back(ys_[k]);
    }
  nx.push_back(b);
  ny.push_back((*this)(b));
  return PLMap(std::move(nx), std::move(ny));
}

std::vector<Rational> PLMap::preimage(const Rational& v) const {
  std::vector<Rational> out;
  if (xs_.size() == 1) {
    if (ys_[0] == v) out.push_back(xs_[0]);
    return out;
  }
  for (std::size_t k = 0; k + 1 < xs_.size(); ++k) {
    const Rational &y0 = ys_[k], &y1 = ys_[k + 1];
    if (y0 == v) out.push_back(xs_[k]);
    if (y1 == v) out.push_back(xs_[k + 1]);
    if ((y0 < v && v < y1) || (y1 < v && v < y0))
      out.push_back(xs_[k] + (v - y0) / (y1 - y0) * (xs_[k + 1] - xs_[k]));
  }
  sort_unique(out);
  return out;
}

PLMap PLMap::then(const PLMap& outer) const {
  require(outer.lo() <= min_value() && max_value() <= outer.hi(), ErrorKind::domain,
          "PL composition: range not inside outer domain");
  std::vector<Rational> pts = xs_;
  for (const auto& ox : outer.xs_) {
    auto pre = preimage(ox);
    pts.insert(pts.end(), pre.begin(), pre.end());
  }
  sort_unique(pts);
  std::vector<Rational> ys;
  ys.reserve(pts.size());
  for (const auto& x : pts) ys.push_back(outer((*this)(x)));
  return PLMap(std::move(pts), std::move(ys));
}

PLMap PLMap::concatenated(const PLMap& next) const {
  require(hi() == next.lo() && ys_.back() == next.ys_.front(), ErrorKind::invalid_input,
          "PL concatenation: maps do not join continuously");
  if (next.is_point_domain()) return *this;
  if (is_point_domain()) return next;
  std::vector<Rational> nx = xs_, ny = ys_;
  nx.insert(nx.end(), next.xs_.begin() + 1, next.xs_.end());
  ny.insert(ny.end(), next.ys_.begin() + 1, next.ys_.end());
  return PLMap(std::move(nx), std::move(ny));
}

PLMap PLMap::reparametrized(const Rational& a, const Rational& b) const {
  if (is_point_domain()) {
    require(a == b || is_constant(), ErrorKind::invalid_input, "cannot stretch a point map");
    return constant(a, b, ys_[0]);
  }
  require(a < b, ErrorKind::invalid_input, "reparametrization onto a degenerate interval");
  std::vector<Rational> nx;
  nx.reserve(xs_.size());
  Rational scale = (b - a) / (hi() - lo());
  for (const auto& x : xs_) nx.push_back(a + (x - lo()) * scale);
  nx.back() = b;
  return PLMap(std::move(nx), ys_);
}

bool PLMap::operator<(const PLMap& o) const {
  if (xs_ != o.xs_) return xs_ < o.xs_;
  return ys_ < o.ys_;
}

}  // namespace etalg
