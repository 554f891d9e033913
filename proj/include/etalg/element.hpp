#pragma once

#include <vector>

#include "etalg/pl_map.hpp"
#include "etalg/presentation.hpp"
#include "etalg/spectrum.hpp"

namespace etalg {

// Sorted eigenvalue list, with multiplicity.
struct EigList {
  std::vector<Rational> values;
  int total() const { return int(values.size()); }
  bool operator==(const EigList& o) const { return values == o.values; }
};

EigList make_eiglist(std::vector<Rational> values);

// Self-adjoint element given by its eigenvalue branches: k_j values at each
// theta_j and dims_i PL branches on [0,1] for each interval block.
struct ProfileElement {
  std::vector<std::vector<Rational>> theta_eigs;
  std::vector<std::vector<PLMap>> branches;

  bool operator==(const ProfileElement&) const = default;
};

ValidationReport validate_profile(const Presentation& P, const ProfileElement& f);

// Multiset of values that an element must take at coordinate 0 (side 0) or
// 1 (side 1) of block i, expanded from theta values with zero padding.
std::vector<Rational> endpoint_expansion(const Presentation& P,
                                         const std::vector<std::vector<Rational>>& theta_eigs,
                                         int i, int side);

EigList eig_at(const Presentation& P, const ProfileElement& f, const SpectrumPoint& x);

// Largest absolute slope over all branches.
Rational lipschitz(const ProfileElement& f);

ProfileElement constant_profile(const Presentation& P, const Rational& c);
// Every branch equal to g; theta values are forced by g(0) and g(1).
// Throws when the gluing makes these inconsistent.
ProfileElement scalar_profile(const Presentation& P, const PLMap& g);

}  // namespace etalg
