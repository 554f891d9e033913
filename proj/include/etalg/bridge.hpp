#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "etalg/element.hpp"
#include "etalg/pattern.hpp"
#include "etalg/test_functions.hpp"

namespace etalg {

using CMatrix = Eigen::MatrixXcd;

// An element of A as concrete matrices: theta[j] in M_{k_j} and, for each
// block, matrix values at rational knots of [0,1] joined linearly.
struct ConcreteElement {
  std::vector<CMatrix> theta;
  std::vector<std::vector<Rational>> knots;
  std::vector<std::vector<CMatrix>> values;

  CMatrix at(int i, const Rational& t) const;
};

// The canonical embedding of F1 at coordinate side of block i:
// diag(a(theta_0)^{alpha_i0}, a(theta_1)^{alpha_i1}, ..., 0).
CMatrix boundary_embedding(const Presentation& P, const ConcreteElement& a, int i, int side);

// Diagonal realization; branches are permuted once so that both ends agree
// with the canonical embeddings. Throws when no such ordering exists.
ConcreteElement concrete_from_profile(const Presentation& P, const ProfileElement& f);
ConcreteElement concrete_from_test(const Presentation& P, const TestFunction& h);

// diag(a(theta_j) copies, f(x_1), ...) in the canonical order of the spectrum.
CMatrix diagonal_evaluation(const Presentation& P, const FiniteSpectrum& S,
                            const ConcreteElement& f);

// phi(f) = U^* phi'(f) U and psi(f) = V^* phi'(f) V for the canonical spectrum.
struct BridgeInput {
  Presentation P;
  FiniteSpectrum spectrum;
  CMatrix U, V;
  std::vector<ProfileElement> F;
  Rational epsilon;
  std::optional<Rational> eps_prime;  // defaults to epsilon/(40 n^6)
  std::vector<TestFunction> extra_tests;
  int samples = 32;
  std::uint64_t seed = 0;
};

struct BoundCheck {
  std::string name;
  double value = 0, bound = 0;
  bool ok = false;
};

struct BridgeTrace {
  int n = 0;
  long m = 1;
  Rational eta, eps_prime;
  CMatrix W, Wt, T, S, D, O;
  std::vector<int> group_sizes;
  double hypothesis_max = 0;
  std::size_t hypothesis_checked = 0;
  std::vector<BoundCheck> bounds;
  std::vector<double> sample_t, sample_defect;
  double max_defect = 0;
  double endpoint_error = 0;
  double join_error = 0;
  bool ok = false;
};

BridgeTrace unitary_bridge(const BridgeInput& in);

// Homomorphism pair with equal spectra; psi is phi conjugated by a unitary
// that commutes with phi' up to a perturbation of size eps'/4.
BridgeInput random_bridge_instance(int n, std::uint64_t seed, const Rational& epsilon,
                                   bool identical = false);

double op_norm(const CMatrix& M);

}  // namespace etalg
