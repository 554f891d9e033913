#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "etalg/discretization.hpp"
#include "etalg/pattern.hpp"
#include "etalg/perturbation.hpp"
#include "etalg/restriction.hpp"

namespace etalg {

struct StepOptions {
  std::optional<Rational> delta;      // starting delta; computed when absent
  std::optional<Rational> g_epsilon;  // bound for the G table; defaults to epsilon
  int max_halvings = 20;
};

struct StepReport {
  Rational delta;
  int skeleton_m = 1;
  int halvings = 0;
  std::string binding;  // constraint that fixed the starting delta
  std::vector<std::string> rejected;  // reason per halving
  ConstantBundle bundle;
  Integer m1;
  Rational eta1;
  Rational track_slope;
  Rational f_bound, g_bound;
  std::vector<Rational> f_defects, g_defects;
  InjectivityWitness witness;
  int copied_edges = 0, collapsed_edges = 0, isolated_vertices = 0;
};

struct StepResult {
  Discretization disc;
  PatternHom psi;  // A -> B|_Z
  StepReport report;
};

// Replaces phi: A -> B|_Y (injective) by psi: A -> B|_Z with Z = discretize(B, Y, delta).Z.
// Edges of Z inside Y copy phi; the other edges carry spectral paths between
// the spectra at their ends. Isolated vertices copy phi.
StepResult injective_step(const PatternHom& phi, const std::vector<ProfileElement>& F,
                          const std::vector<ProfileElement>& G, const Rational& epsilon,
                          const StepOptions& opts = {});

struct ChainSpec {
  std::vector<Presentation> stages;
  std::vector<PatternHom> maps;  // maps[n]: stages[n] -> stages[n+1]
  std::vector<std::vector<ProfileElement>> dense_sets;
  std::vector<Rational> eps_schedule;  // empty: 2^-(n+1)
  std::optional<std::uint64_t> seed;
};

ValidationReport validate_chain(const ChainSpec& spec);

struct StageRecord {
  Presentation B;
  ClosedSubset Y, Z;  // image support in A_k and the discretized subset
  Rational delta;
  PatternHom embedding;  // B_k -> A_k|_Y
  std::vector<Rational> g_table;
  Rational g_bound;
};

struct LinkRecord {
  PatternHom psi;  // B_k -> B_{k+1}
  InjectivityWitness witness;
  std::vector<Rational> commutation;
  Rational bound;
  StepReport step;
};

struct RewriteCertificate {
  std::vector<StageRecord> stages;
  std::vector<LinkRecord> links;
  bool ok = false;
  std::vector<std::string> violations;
};

RewriteCertificate rewrite_chain(const ChainSpec& spec, const StepOptions& opts = {});

// Re-checks injectivity and every table entry against its bound.
ValidationReport check_certificate(const RewriteCertificate& cert);

// Chain INT_1 -> INT_r1 -> INT_r1r2 -> ... with random PL tracks and random
// dense elements.
ChainSpec random_chain(std::uint64_t seed, int stages = 3);

// f -> f(z/2) on INT.
ChainSpec half_interval_chain();

}  // namespace etalg
