#include <algorithm>

#include "etalg/error.hpp"
#include "etalg/pattern.hpp"

namespace etalg {

FiniteSpectrum empty_spectrum(const Presentation& P) {
  FiniteSpectrum S;
  S.theta_mult.assign(P.p(), 0);
  return S;
}

long spectrum_size(const Presentation& P, const FiniteSpectrum& S) {
  require(int(S.theta_mult.size()) == P.p(), ErrorKind::invalid_input,
          "spectrum has wrong number of theta multiplicities");
  long n = S.zero_pad;
  for (int j = 0; j < P.p(); ++j) n += long(S.theta_mult[j]) * P.k[j];
  for (const auto& y : S.interior) {
    require(0 <= y.i && y.i < P.l(), ErrorKind::invalid_input, "spectrum point block out of range");
    n += P.dims[y.i];
  }
  return n;
}

bool is_canonical(const FiniteSpectrum& S) {
  for (const auto& y : S.interior)
    if (y.t <= 0 || y.t >= 1) return false;
  return std::is_sorted(S.interior.begin(), S.interior.end());
}

FiniteSpectrum boundary_rewrite(const Presentation& P, FiniteSpectrum S) {
  require(int(S.theta_mult.size()) == P.p(), ErrorKind::invalid_input,
          "spectrum has wrong number of theta multiplicities");
  std::vector<Interior> keep;
  for (const auto& y : S.interior) {
    require(0 <= y.i && y.i < P.l() && 0 <= y.t && y.t <= 1, ErrorKind::invalid_input,
            "spectrum point out of range");
    if (y.t != 0 && y.t != 1) {
      keep.push_back(y);
      continue;
    }
    const auto& row = y.t == 0 ? P.alpha[y.i] : P.beta[y.i];
    long used = 0;
    for (int j = 0; j < P.p(); ++j) {
      S.theta_mult[j] += row[j];
      used += long(row[j]) * P.k[j];
    }
    S.zero_pad += int(P.dims[y.i] - used);
  }
  std::sort(keep.begin(), keep.end());
  S.interior = std::move(keep);
  return S;
}

void add_into(FiniteSpectrum& acc, const FiniteSpectrum& S, int times) {
  if (acc.theta_mult.size() < S.theta_mult.size()) acc.theta_mult.resize(S.theta_mult.size(), 0);
  for (std::size_t j = 0; j < S.theta_mult.size(); ++j) acc.theta_mult[j] += times * S.theta_mult[j];
  for (int c = 0; c < times; ++c) acc.interior.insert(acc.interior.end(), S.interior.begin(), S.interior.end());
  std::sort(acc.interior.begin(), acc.interior.end());
  acc.zero_pad += times * S.zero_pad;
}

std::vector<Rational> eigenvalues_of(const Presentation& P, const FiniteSpectrum& S,
                                     const ProfileElement& f) {
  std::vector<Rational> v;
  for (int j = 0; j < P.p(); ++j)
    for (int c = 0; c < S.theta_mult[j]; ++c)
      v.insert(v.end(), f.theta_eigs[j].begin(), f.theta_eigs[j].end());
  for (const auto& y : S.interior)
    for (const auto& b : f.branches[y.i]) v.push_back(b(y.t));
  v.insert(v.end(), std::size_t(S.zero_pad), Rational(0));
  std::sort(v.begin(), v.end());
  return v;
}

bool Track::operator<(const Track& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (index != o.index) return index < o.index;
  if (kind == Kind::theta) return false;
  return path < o.path;
}

}  // namespace etalg
