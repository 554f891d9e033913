#include "etalg/spectrum.hpp"

#include <algorithm>

#include "etalg/error.hpp"

namespace etalg {

std::string to_string(const SpectrumPoint& x) {
  if (auto th = std::get_if<Theta>(&x)) return "theta_" + std::to_string(th->j);
  const auto& in = std::get<Interior>(x);
  return "(" + to_string(in.t) + ")_" + std::to_string(in.i);
}

bool ClosedSubset::has_theta(int j) const {
  return std::binary_search(thetas.begin(), thetas.end(), j);
}

bool ClosedSubset::empty() const {
  if (!thetas.empty()) return false;
  for (const auto& b : pieces)
    if (!b.empty()) return false;
  return true;
}

ClosedSubset empty_subset(const Presentation& P) {
  ClosedSubset S;
  S.pieces.assign(P.l(), {});
  return S;
}

ClosedSubset full_spectrum(const Presentation& P) {
  ClosedSubset S = empty_subset(P);
  for (int j = 0; j < P.p(); ++j) S.thetas.push_back(j);
  for (auto& b : S.pieces) b.push_back({Rational(0), Rational(1)});
  return S;
}

IntervalList merge_intervals(IntervalList raw) {
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
    return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
  });
  IntervalList out;
  for (auto& iv : raw) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (iv.hi > out.back().hi) out.back().hi = iv.hi;
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

IntervalList intersect_intervals(const IntervalList& a, const IntervalList& b) {
  IntervalList out;
  std::size_t x = 0, y = 0;
  while (x < a.size() && y < b.size()) {
    Rational lo = rmax(a[x].lo, b[y].lo), hi = rmin(a[x].hi, b[y].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (a[x].hi < b[y].hi)
      ++x;
    else
      ++y;
  }
  return merge_intervals(out);
}

Rational measure_within(const IntervalList& pieces, const Rational& lo, const Rational& hi) {
  Rational m(0);
  for (const auto& iv : pieces) {
    Rational a = rmax(iv.lo, lo), b = rmin(iv.hi, hi);
    if (a < b) m += b - a;
  }
  return m;
}

ClosedSubset closure(const Presentation& P, const ClosedSubset& raw, bool* changed) {
  require(int(raw.pieces.size()) == P.l(), ErrorKind::invalid_input,
          "closed set has wrong number of blocks");
  ClosedSubset S;
  S.thetas = raw.thetas;
  for (int j : S.thetas)
    require(0 <= j && j < P.p(), ErrorKind::invalid_input, "theta index out of range");
  S.pieces.resize(P.l());
  for (int i = 0; i < P.l(); ++i) {
    for (const auto& iv : raw.pieces[i])
      require(0 <= iv.lo && iv.lo <= iv.hi && iv.hi <= 1, ErrorKind::invalid_input,
              "piece outside [0,1] or reversed");
    IntervalList merged = merge_intervals(raw.pieces[i]);
    for (const auto& iv : merged) {
      if (iv.lo == 0)
        for (int j = 0; j < P.p(); ++j)
          if (P.alpha[i][j] > 0) S.thetas.push_back(j);
      if (iv.hi == 1)
        for (int j = 0; j < P.p(); ++j)
          if (P.beta[i][j] > 0) S.thetas.push_back(j);
      if (iv.is_point() && (iv.lo == 0 || iv.lo == 1)) continue;
      S.pieces[i].push_back(iv);
    }
  }
  std::sort(S.thetas.begin(), S.thetas.end());
  S.thetas.erase(std::unique(S.thetas.begin(), S.thetas.end()), S.thetas.end());
  if (changed) *changed = !(S == raw);
  return S;
}

ValidationReport validate_closed(const Presentation& P, const ClosedSubset& S) {
  ValidationReport rep;
  if (int(S.pieces.size()) != P.l()) {
    rep.add("block_count", {}, "pieces must have one list per F2 block");
    return rep;
  }
  for (std::size_t a = 0; a < S.thetas.size(); ++a) {
    if (S.thetas[a] < 0 || S.thetas[a] >= P.p()) rep.add("theta_range", {S.thetas[a]}, "theta out of range");
    if (a > 0 && S.thetas[a] <= S.thetas[a - 1]) rep.add("theta_sorted", {S.thetas[a]}, "thetas not sorted/unique");
  }
  for (int i = 0; i < P.l(); ++i) {
    const auto& b = S.pieces[i];
    for (std::size_t c = 0; c < b.size(); ++c) {
      const auto& iv = b[c];
      if (!(0 <= iv.lo && iv.lo <= iv.hi && iv.hi <= 1))
        rep.add("piece_range", {i, int(c)}, "piece outside [0,1] or reversed");
      if (c > 0 && !(b[c - 1].hi < iv.lo))
        rep.add("piece_disjoint", {i, int(c)}, "pieces overlap, touch or are unsorted");
      if (iv.is_point() && (iv.lo == 0 || iv.lo == 1))
        rep.add("endpoint_point", {i, int(c)}, "point piece at a glued endpoint");
      if (iv.lo == 0 && rep.ok)
        for (int j = 0; j < P.p(); ++j)
          if (P.alpha[i][j] > 0 && !S.has_theta(j))
            rep.add("closure_left", {i, j}, "piece touches 0 but theta " + std::to_string(j) + " missing");
      if (iv.hi == 1 && rep.ok)
        for (int j = 0; j < P.p(); ++j)
          if (P.beta[i][j] > 0 && !S.has_theta(j))
            rep.add("closure_right", {i, j}, "piece touches 1 but theta " + std::to_string(j) + " missing");
    }
  }
  return rep;
}

bool is_closed(const Presentation& P, const ClosedSubset& S) { return validate_closed(P, S).ok; }

IndexSets index_sets(const Presentation& P, const ClosedSubset& Y) {
  auto rep = validate_closed(P, Y);
  if (!rep.ok) fail(ErrorKind::invalid_input, "index_sets: set not closed: " + rep.violations[0].detail);
  IndexSets I;
  I.J = Y.thetas;
  for (int i = 0; i < P.l(); ++i) {
    const auto& b = Y.pieces[i];
    if (b.empty()) {
      I.L0.push_back(i);
      continue;
    }
    if (b.size() == 1 && b[0].lo == 0 && b[0].hi == 1) {
      I.L1.push_back(i);
      continue;
    }
    I.La.push_back(i);
    if (b.front().lo == 0) {
      I.Ll.push_back(i);
      I.s[i] = b.front().hi;
    }
    if (b.back().hi == 1) {
      I.Lr.push_back(i);
      I.t[i] = b.back().lo;
    }
    if (I.s.count(i) && I.t.count(i))
      require(I.s[i] < I.t[i], ErrorKind::internal, "index_sets: s_i >= t_i");
  }
  return I;
}

std::optional<Rational> dist(const SpectrumPoint& x, const SpectrumPoint& y) {
  if (auto a = std::get_if<Theta>(&x)) {
    if (auto b = std::get_if<Theta>(&y); b && a->j == b->j) return Rational(0);
    return std::nullopt;
  }
  const auto& a = std::get<Interior>(x);
  if (auto b = std::get_if<Interior>(&y); b && a.i == b->i) return rabs(a.t - b->t);
  return std::nullopt;
}

bool contains(const Presentation& P, const ClosedSubset& Y, const SpectrumPoint& x) {
  if (auto th = std::get_if<Theta>(&x)) return Y.has_theta(th->j);
  const auto& in = std::get<Interior>(x);
  require(0 <= in.i && in.i < P.l(), ErrorKind::invalid_input, "block index out of range");
  if (in.t == 0 || in.t == 1) {
    const auto& row = in.t == 0 ? P.alpha[in.i] : P.beta[in.i];
    for (int j = 0; j < P.p(); ++j)
      if (row[j] > 0 && !Y.has_theta(j)) return false;
    return true;
  }
  for (const auto& iv : Y.pieces[in.i])
    if (iv.contains(in.t)) return true;
  return false;
}

ClosedSubset set_union(const Presentation& P, const ClosedSubset& A, const ClosedSubset& B) {
  ClosedSubset raw = A;
  raw.thetas.insert(raw.thetas.end(), B.thetas.begin(), B.thetas.end());
  std::sort(raw.thetas.begin(), raw.thetas.end());
  raw.thetas.erase(std::unique(raw.thetas.begin(), raw.thetas.end()), raw.thetas.end());
  for (int i = 0; i < P.l(); ++i)
    raw.pieces[i].insert(raw.pieces[i].end(), B.pieces[i].begin(), B.pieces[i].end());
  return closure(P, raw);
}

ClosedSubset set_intersection(const Presentation& P, const ClosedSubset& A,
                              const ClosedSubset& B) {
  ClosedSubset raw = empty_subset(P);
  std::set_intersection(A.thetas.begin(), A.thetas.end(), B.thetas.begin(), B.thetas.end(),
                        std::back_inserter(raw.thetas));
  for (int i = 0; i < P.l(); ++i) raw.pieces[i] = intersect_intervals(A.pieces[i], B.pieces[i]);
  return closure(P, raw);
}

bool is_subset(const ClosedSubset& A, const ClosedSubset& B) {
  if (!std::includes(B.thetas.begin(), B.thetas.end(), A.thetas.begin(), A.thetas.end()))
    return false;
  if (A.pieces.size() != B.pieces.size()) return false;
  for (std::size_t i = 0; i < A.pieces.size(); ++i)
    for (const auto& iv : A.pieces[i]) {
      bool inside = false;
      for (const auto& jv : B.pieces[i])
        if (jv.lo <= iv.lo && iv.hi <= jv.hi) inside = true;
      if (!inside) return false;
    }
  return true;
}

std::string Gap::to_string() const {
  return std::string(lo_closed ? "[" : "(") + etalg::to_string(lo) + "," + etalg::to_string(hi) +
         (hi_closed ? "]" : ")") + "_" + std::to_string(block);
}

std::vector<Gap> complement_gaps(const Presentation& P, const ClosedSubset& Y) {
  std::vector<Gap> out;
  for (int i = 0; i < P.l(); ++i) {
    Rational cursor(0);
    bool cursor_in = contains(P, Y, Interior{i, Rational(0)});
    for (const auto& iv : Y.pieces[i]) {
      if (cursor < iv.lo) out.push_back({i, cursor, iv.lo, !cursor_in, false});
      cursor = iv.hi;
      cursor_in = true;
    }
    if (cursor < 1)
      out.push_back({i, cursor, Rational(1), !cursor_in, !contains(P, Y, Interior{i, Rational(1)})});
  }
  return out;
}

}  // namespace etalg
