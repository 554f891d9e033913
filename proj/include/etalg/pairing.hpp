#pragma once

#include <optional>
#include <vector>

#include "etalg/pattern.hpp"
#include "etalg/test_functions.hpp"

namespace etalg {

struct BlockPairing {
  int block = 0;
  std::vector<Rational> x, x_prime;   // matched in order
  std::vector<Rational> unmatched_phi, unmatched_psi;  // collar leftovers
  Rational max_gap;
};

struct PairingResult {
  Rational eta;
  Rational epsilon;
  std::vector<BlockPairing> blocks;
  Rational max_gap;
  bool within_bound = false;  // max_gap <= 2 eta
};

// Per block, the points in [eta, 1-eta] are always matched; collar points
// (t < eta or t > 1-eta) nearest to the core may be added on either side.
// The choice with the smallest bottleneck gap wins, then the one using
// fewer collar points. Sorted order gives the matching.
PairingResult pair_spectra(const Presentation& P, const FiniteSpectrum& Sphi,
                           const FiniteSpectrum& Spsi, const Rational& epsilon, int m);

struct HypothesisCheck {
  bool holds = false;
  Rational max_deviation;
  std::optional<TestFunction> worst;
  std::size_t checked = 0;
  bool truncated = false;
};

// Sorted-eigenvalue distance of h on both spectra, for h in H(1/m).
HypothesisCheck check_pairing_hypothesis(const Presentation& P, const FiniteSpectrum& Sphi,
                                         const FiniteSpectrum& Spsi, const Rational& epsilon,
                                         int m, EnumerationBudget budget = {});

}  // namespace etalg
