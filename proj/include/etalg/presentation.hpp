#pragma once

#include <string>
#include <vector>

#include "etalg/rational.hpp"
#include "etalg/smith.hpp"

namespace etalg {

using IntGrid = std::vector<std::vector<int>>;

// A(F1, F2, phi0, phi1) with F1 = M_{k_0} + ... + M_{k_{p-1}} and
// F2 = M_{dims_0} + ... + M_{dims_{l-1}}. alpha and beta are l x p.
// Block indices are 0-based.
struct Presentation {
  std::vector<int> k;
  std::vector<int> dims;
  IntGrid alpha;
  IntGrid beta;
  bool unital = true;

  int p() const { return int(k.size()); }
  int l() const { return int(dims.size()); }
  long L() const;  // sum of dims

  bool operator==(const Presentation&) const = default;
};

struct Violation {
  std::string invariant;
  std::vector<int> index;
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  void add(std::string invariant, std::vector<int> index, std::string detail);
  void merge(const ValidationReport& other, const std::string& prefix = "");
};

ValidationReport validate_presentation(const Presentation& P);

// Throws Error(invalid_input) listing the first violation.
void require_valid(const Presentation& P);

struct Component {
  Presentation part;
  std::vector<int> f1_blocks;  // original F1 index of each F1 block of part
  std::vector<int> f2_blocks;  // original F2 index of each F2 block of part
};

// Connected components of the gluing graph. Components are ordered by
// their smallest F1 index; components without F1 blocks come last.
std::vector<Component> decompose_minimal(const Presentation& P);

struct KTheoryResult {
  int k0_rank = 0;
  std::vector<std::vector<Integer>> k0_basis;
  // Invariant factors of Z^l / Im(alpha - beta): factors > 1 in divisibility
  // order followed by one 0 per free summand. Unit factors are omitted.
  std::vector<Integer> k1_invariant_factors;
  // Full Smith diagonal of alpha - beta padded with zeros to length l.
  std::vector<Integer> smith_diagonal;
  int rank = 0;  // rank of alpha - beta
};

IntMatrix alpha_minus_beta(const Presentation& P);
KTheoryResult k_theory(const Presentation& P);

Presentation empty_presentation();
Presentation direct_sum(const Presentation& P1, const Presentation& P2);

// Interval summand C([a,b], M_n) presented with two one-dimensional vertices.
Presentation interval_presentation(int n);
// Finite-dimensional algebra M_{k_0} + ... (l = 0).
Presentation finite_presentation(std::vector<int> k);

struct BlockPermutation {
  std::vector<int> f1;  // f1[j] = index in Q of block j of P
  std::vector<int> f2;
};

// Searches F1 permutations and compares F2 rows as a multiset.
bool equivalent_up_to_permutation(const Presentation& P, const Presentation& Q,
                                  BlockPermutation* witness = nullptr);

// Bipartite gluing graph: F1 blocks are boxes, F2 blocks are circles.
std::string to_dot(const Presentation& P);

}  // namespace etalg
