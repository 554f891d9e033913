#pragma once

#include <vector>

#include "etalg/element.hpp"
#include "etalg/pairing.hpp"
#include "etalg/pattern.hpp"

namespace etalg {

struct ConstantBundle {
  int n = 1;
  Rational epsilon;
  Rational lipschitz;  // largest branch slope over F
  long m = 1;
  Rational eta;        // 1/(2mn)
  Rational eps_prime;  // epsilon/(40 n^6)
  Integer m1;
  Rational eta1;       // 1/m1
};

// Least m with 2 L_F / m <= epsilon/2; m1 least with 1/m1 < eta/2 and
// 4 eta1 / eta < eps_prime/8 (test functions of H(eta) have slope 1/eta).
ConstantBundle choose_constants(const Presentation& P, int n, const Rational& epsilon,
                                const std::vector<ProfileElement>& F);

// One moving point: out-and-back over its window, then settling.
struct SpectralPath {
  int block = 0;
  Rational origin;  // gamma(0) on the outgoing side, gamma(1) on the incoming side
  Rational target;  // 0 or 1 for swept collar points
  Interval window;  // clipped closed ball of radius 4 eta1
  PLMap gamma;
};

// Piecewise spectral motion over [0,1]: outgoing paths on [0,1/3], the
// constant matched spectrum on [1/3,2/3], incoming paths on [2/3,1].
struct PathFamily {
  Rational eta1;
  FiniteSpectrum start, middle, end;  // canonical
  std::vector<SpectralPath> outgoing, incoming;
  std::vector<Cell> cells;
};

PathFamily spectral_paths(const Presentation& P, const FiniteSpectrum& Sphi,
                          const FiniteSpectrum& Spsi, const PairingResult& pairing,
                          const Rational& eta1);
PathFamily spectral_paths(const Presentation& P, const FiniteSpectrum& Sphi,
                          const FiniteSpectrum& Spsi, const PairingResult& pairing,
                          const ConstantBundle& bundle);

// Union of the track positions of block i over the whole family.
IntervalList swept_set(const PathFamily& fam, int block);

// y must be an interior point of the start or end spectrum.
bool coverage_check(const PathFamily& fam, const Interior& y);

// Cells moved affinely from [0,1] onto [a,b].
std::vector<Cell> reparametrize_cells(const std::vector<Cell>& cells, const Rational& a,
                                      const Rational& b);

}  // namespace etalg
