#include "etalg/test_functions.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "etalg/error.hpp"

namespace etalg {

namespace {

Rational grid(int q, int m) { return make_rational(q, m); }

void check_type1(const Presentation& P, const Type1& h) {
  require(h.m >= 1, ErrorKind::invalid_input, "grid size must be positive");
  require(0 <= h.j && h.j < P.p(), ErrorKind::invalid_input, "type 1: F1 block out of range");
  require(int(h.a.size()) == P.l() && int(h.b.size()) == P.l(), ErrorKind::invalid_input,
          "type 1: need one (a_i, b_i) per F2 block");
  for (int i = 0; i < P.l(); ++i)
    require(0 <= h.a[i] && h.a[i] + 2 <= h.b[i] && h.b[i] <= h.m, ErrorKind::invalid_input,
            "type 1: need 0 <= a_i < a_i+2 <= b_i <= m at block " + std::to_string(i));
}

std::vector<std::pair<int, int>> merge_components(std::vector<std::pair<int, int>> X) {
  std::sort(X.begin(), X.end());
  std::vector<std::pair<int, int>> out;
  for (const auto& c : X) {
    if (!out.empty() && c.first <= out.back().second)
      out.back().second = std::max(out.back().second, c.second);
    else
      out.push_back(c);
  }
  return out;
}

void check_type2(const Presentation& P, const Type2& h) {
  require(h.m >= 1, ErrorKind::invalid_input, "grid size must be positive");
  require(0 <= h.i && h.i < P.l(), ErrorKind::invalid_input, "type 2: F2 block out of range");
  require(!h.X.empty(), ErrorKind::invalid_input, "type 2: X must be nonempty");
  for (const auto& [lo, hi] : h.X)
    require(1 <= lo && lo <= hi && hi <= h.m - 1, ErrorKind::invalid_input,
            "type 2: X must lie in [eta, 1-eta] on the grid");
}

void check_untagged(const TestFunction& h) {
  require(!h.lift, ErrorKind::invalid_input,
          "tagged test functions carry no eigenvalue-list semantics");
}

PLMap type1_part(const Type1& h, int i, int side) {
  const int m = h.m, a = h.a[i], b = h.b[i];
  std::vector<Rational> xs, ys;
  auto push = [&](const Rational& x, int y) {
    if (!xs.empty() && xs.back() == x) return;
    xs.push_back(x);
    ys.push_back(Rational(y));
  };
  if (side == 0) {
    push(Rational(0), 1);
    push(grid(a, m), 1);
    push(grid(a + 1, m), 0);
    push(Rational(1), 0);
  } else {
    push(Rational(0), 0);
    push(grid(b - 1, m), 0);
    push(grid(b, m), 1);
    push(Rational(1), 1);
  }
  return PLMap(xs, ys);
}

PLMap type2_profile(const Type2& h) {
  const int m = h.m;
  std::vector<Rational> xs, ys;
  for (int q = 0; q <= 2 * m; ++q) {
    Rational t = make_rational(q, 2 * m);
    Rational d(-1);
    for (const auto& [lo, hi] : h.X) {
      Rational dd = t < grid(lo, m) ? Rational(grid(lo, m) - t)
                                    : (t > grid(hi, m) ? Rational(t - grid(hi, m)) : Rational(0));
      if (d < 0 || dd < d) d = dd;
    }
    Rational v = 1 - d * m;
    xs.push_back(t);
    ys.push_back(v < 0 ? Rational(0) : v);
  }
  return PLMap(xs, ys);
}

int type1_rank(const Presentation& P, const Type1& h, int i, int side) {
  return (side == 0 ? P.alpha[i][h.j] : P.beta[i][h.j]) * P.k[h.j];
}

}  // namespace

TestFunction make_type1(const Presentation& P, int m, int j, std::vector<int> a, std::vector<int> b) {
  Type1 h{j, std::move(a), std::move(b), m};
  check_type1(P, h);
  return TestFunction{h, std::nullopt};
}

TestFunction make_type2(const Presentation& P, int m, int i, std::vector<std::pair<int, int>> X) {
  Type2 h{i, merge_components(std::move(X)), m};
  check_type2(P, h);
  return TestFunction{h, std::nullopt};
}

PLMap scalar_profile_of(const Presentation& P, const TestFunction& h, int i) {
  require(0 <= i && i < P.l(), ErrorKind::invalid_input, "block out of range");
  if (auto t1 = std::get_if<Type1>(&h.shape)) {
    check_type1(P, *t1);
    const int m = t1->m, a = t1->a[i], b = t1->b[i];
    std::vector<Rational> xs{Rational(0)}, ys{Rational(1)};
    auto push = [&](const Rational& x, int y) {
      if (xs.back() == x) return;
      xs.push_back(x);
      ys.push_back(Rational(y));
    };
    push(grid(a, m), 1);
    push(grid(a + 1, m), 0);
    push(grid(b - 1, m), 0);
    push(grid(b, m), 1);
    push(Rational(1), 1);
    return PLMap(xs, ys);
  }
  const auto& t2 = std::get<Type2>(h.shape);
  check_type2(P, t2);
  if (t2.i != i) return PLMap::constant(Rational(0), Rational(1), Rational(0));
  return type2_profile(t2);
}

EigList eig_at(const Presentation& P, const TestFunction& h, const SpectrumPoint& x) {
  check_untagged(h);
  if (auto th = std::get_if<Theta>(&x)) {
    require(0 <= th->j && th->j < P.p(), ErrorKind::invalid_input, "theta out of range");
    const auto* t1 = std::get_if<Type1>(&h.shape);
    int one = (t1 && t1->j == th->j) ? 1 : 0;
    return EigList{std::vector<Rational>(P.k[th->j], Rational(one))};
  }
  const auto& in = std::get<Interior>(x);
  require(0 <= in.i && in.i < P.l() && 0 <= in.t && in.t <= 1, ErrorKind::invalid_input,
          "interior point out of range");
  std::vector<Rational> v;
  if (auto t1 = std::get_if<Type1>(&h.shape)) {
    check_type1(P, *t1);
    Rational left_end = make_rational(t1->a[in.i] + 1, t1->m),
             right_start = make_rational(t1->b[in.i] - 1, t1->m);
    Rational val = scalar_profile_of(P, h, in.i)(in.t);
    int rank = 0;
    if (in.t <= left_end)
      rank = type1_rank(P, *t1, in.i, 0);
    else if (in.t >= right_start)
      rank = type1_rank(P, *t1, in.i, 1);
    v.assign(rank, val);
    v.resize(P.dims[in.i], Rational(0));
  } else {
    v.assign(P.dims[in.i], scalar_profile_of(P, h, in.i)(in.t));
  }
  return make_eiglist(std::move(v));
}

ProfileElement to_profile(const Presentation& P, const TestFunction& h) {
  check_untagged(h);
  ProfileElement f;
  const auto* t1 = std::get_if<Type1>(&h.shape);
  for (int j = 0; j < P.p(); ++j)
    f.theta_eigs.emplace_back(P.k[j], Rational((t1 && t1->j == j) ? 1 : 0));
  const PLMap zero = PLMap::constant(Rational(0), Rational(1), Rational(0));
  for (int i = 0; i < P.l(); ++i) {
    std::vector<PLMap> br;
    if (t1) {
      check_type1(P, *t1);
      const int rl = type1_rank(P, *t1, i, 0), rr = type1_rank(P, *t1, i, 1);
      const int both = std::min(rl, rr);
      PLMap full = scalar_profile_of(P, h, i);
      for (int c = 0; c < both; ++c) br.push_back(full);
      for (int c = both; c < rl; ++c) br.push_back(type1_part(*t1, i, 0));
      for (int c = both; c < rr; ++c) br.push_back(type1_part(*t1, i, 1));
    } else {
      br.assign(P.dims[i], scalar_profile_of(P, h, i));
    }
    while (int(br.size()) < P.dims[i]) br.push_back(zero);
    f.branches.push_back(std::move(br));
  }
  return f;
}

std::vector<TestFunction> lift_to_Htilde(const Presentation& P, const TestFunction& h) {
  check_untagged(h);
  int block, size;
  if (auto t1 = std::get_if<Type1>(&h.shape)) {
    check_type1(P, *t1);
    block = t1->j;
    size = P.k[block];
  } else {
    const auto& t2 = std::get<Type2>(h.shape);
    check_type2(P, t2);
    block = t2.i;
    size = P.dims[block];
  }
  std::vector<TestFunction> out;
  for (int s = 0; s < size; ++s)
    for (int t = 0; t < size; ++t) out.push_back(TestFunction{h.shape, MatrixUnit{block, s, t}});
  return out;
}

TestFunction forget_tag(const TestFunction& h) { return TestFunction{h.shape, std::nullopt}; }

EnumerationBudget budget_from_env(EnumerationBudget base) {
  if (const char* s = std::getenv("ETALG_MAX_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0') base.max_yield = std::min<std::size_t>(base.max_yield, v);
  }
  return base;
}

HEnumerator::HEnumerator(const Presentation& P, int m, EnumerationBudget budget)
    : P_(P), m_(m), budget_(budget) {
  require_valid(P);
  require(m >= 1, ErrorKind::invalid_input, "grid size must be positive");
  for (int a = 0; a <= m; ++a)
    for (int b = a + 2; b <= m; ++b) pairs_.push_back({a, b});
  digits_.assign(P.l(), 0);
}

bool HEnumerator::advance_type1() {
  if (P_.p() == 0 || (P_.l() > 0 && pairs_.empty())) return false;
  if (!started_) {
    started_ = true;
    return true;
  }
  for (int d = P_.l() - 1; d >= 0; --d) {
    if (++digits_[d] < pairs_.size()) return true;
    digits_[d] = 0;
  }
  return ++j_ < P_.p();
}

namespace {

int slot_count(int m) { return m >= 2 ? 2 * m - 3 : 0; }

// Decodes a slot mask into merged grid components; empty when invalid.
std::vector<std::pair<int, int>> decode_mask(unsigned long long mask, int m) {
  auto point = [&](int q) { return (mask >> (2 * (q - 1))) & 1ULL; };
  auto cell = [&](int q) { return (mask >> (2 * q - 1)) & 1ULL; };
  std::vector<std::pair<int, int>> X;
  for (int q = 1; q <= m - 2; ++q)
    if (cell(q) && !(point(q) && point(q + 1))) return {};
  for (int q = 1; q <= m - 1; ++q) {
    if (!point(q)) continue;
    if (!X.empty() && q >= 2 && X.back().second == q - 1 && cell(q - 1))
      X.back().second = q;
    else
      X.push_back({q, q});
  }
  return X;
}

}  // namespace

bool HEnumerator::advance_type2() {
  const int n = slot_count(m_);
  if (n == 0) return false;
  const unsigned long long limit = n >= 62 ? (1ULL << 62) : (1ULL << n);
  while (block_ < P_.l()) {
    while (++mask_ < limit) {
      auto X = decode_mask(mask_, m_);
      if (X.empty()) continue;
      if (int(X.size()) > budget_.max_type2_components) {
        truncated_ = true;
        continue;
      }
      return true;
    }
    if (n >= 62) truncated_ = true;
    mask_ = 0;
    ++block_;
  }
  return false;
}

std::optional<TestFunction> HEnumerator::next() {
  std::optional<TestFunction> cand;
  while (!cand && phase_ < 2) {
    if (phase_ == 0) {
      if (advance_type1()) {
        Type1 h{j_, {}, {}, m_};
        for (int i = 0; i < P_.l(); ++i) {
          h.a.push_back(pairs_[digits_[i]].first);
          h.b.push_back(pairs_[digits_[i]].second);
        }
        cand = TestFunction{h, std::nullopt};
      } else {
        phase_ = 1;
      }
    } else {
      if (advance_type2())
        cand = TestFunction{Type2{block_, decode_mask(mask_, m_), m_}, std::nullopt};
      else
        phase_ = 2;
    }
  }
  if (!cand) return std::nullopt;
  if (yielded_ >= budget_.max_yield) {
    truncated_ = true;
    phase_ = 2;
    return std::nullopt;
  }
  ++yielded_;
  return cand;
}

HEnumeration enumerate_H(const Presentation& P, int m, EnumerationBudget budget) {
  HEnumerator it(P, m, budget);
  HEnumeration out;
  while (auto h = it.next()) out.items.push_back(std::move(*h));
  out.truncated = it.truncated();
  return out;
}

}  // namespace etalg
