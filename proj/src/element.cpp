#include "etalg/element.hpp"

#include <algorithm>

#include "etalg/error.hpp"

namespace etalg {

EigList make_eiglist(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  return EigList{std::move(values)};
}

std::vector<Rational> endpoint_expansion(const Presentation& P,
                                         const std::vector<std::vector<Rational>>& theta_eigs,
                                         int i, int side) {
  const auto& row = side == 0 ? P.alpha[i] : P.beta[i];
  std::vector<Rational> out;
  long used = 0;
  for (int j = 0; j < P.p(); ++j)
    for (int c = 0; c < row[j]; ++c) {
      out.insert(out.end(), theta_eigs[j].begin(), theta_eigs[j].end());
      used += P.k[j];
    }
  for (long c = used; c < P.dims[i]; ++c) out.push_back(Rational(0));
  std::sort(out.begin(), out.end());
  return out;
}

ValidationReport validate_profile(const Presentation& P, const ProfileElement& f) {
  ValidationReport rep;
  if (int(f.theta_eigs.size()) != P.p() || int(f.branches.size()) != P.l()) {
    rep.add("element_shape", {}, "element block counts do not match the presentation");
    return rep;
  }
  for (int j = 0; j < P.p(); ++j)
    if (int(f.theta_eigs[j].size()) != P.k[j])
      rep.add("theta_size", {j}, "theta block " + std::to_string(j) + " needs k_j values");
  for (int i = 0; i < P.l(); ++i) {
    if (int(f.branches[i].size()) != P.dims[i]) {
      rep.add("branch_count", {i}, "block " + std::to_string(i) + " needs dims_i branches");
      continue;
    }
    for (const auto& b : f.branches[i])
      if (b.lo() != 0 || b.hi() != 1) rep.add("branch_domain", {i}, "branch domain must be [0,1]");
  }
  if (!rep.ok) return rep;
  for (int i = 0; i < P.l(); ++i)
    for (int side = 0; side < 2; ++side) {
      std::vector<Rational> vals;
      for (const auto& b : f.branches[i]) vals.push_back(b(Rational(side)));
      std::sort(vals.begin(), vals.end());
      if (vals != endpoint_expansion(P, f.theta_eigs, i, side))
        rep.add(side == 0 ? "gluing_left" : "gluing_right", {i},
                "branch values at coordinate " + std::to_string(side) + " of block " +
                    std::to_string(i) + " do not match the theta expansion");
    }
  return rep;
}

EigList eig_at(const Presentation& P, const ProfileElement& f, const SpectrumPoint& x) {
  if (auto th = std::get_if<Theta>(&x)) {
    require(0 <= th->j && th->j < P.p(), ErrorKind::invalid_input, "theta out of range");
    return make_eiglist(f.theta_eigs[th->j]);
  }
  const auto& in = std::get<Interior>(x);
  require(0 <= in.i && in.i < P.l(), ErrorKind::invalid_input, "block out of range");
  std::vector<Rational> v;
  for (const auto& b : f.branches[in.i]) v.push_back(b(in.t));
  return make_eiglist(std::move(v));
}

Rational lipschitz(const ProfileElement& f) {
  Rational m(0);
  for (const auto& blk : f.branches)
    for (const auto& b : blk) m = rmax(m, b.max_abs_slope());
  return m;
}

ProfileElement constant_profile(const Presentation& P, const Rational& c) {
  ProfileElement f;
  bool deficit = false;
  for (int i = 0; i < P.l(); ++i)
    for (int side = 0; side < 2; ++side) {
      long used = 0;
      for (int j = 0; j < P.p(); ++j) used += long(side == 0 ? P.alpha[i][j] : P.beta[i][j]) * P.k[j];
      if (used < P.dims[i]) deficit = true;
    }
  require(!deficit || c == 0, ErrorKind::invalid_input,
          "nonzero constant element needs a unital presentation");
  for (int j = 0; j < P.p(); ++j) f.theta_eigs.emplace_back(P.k[j], c);
  for (int i = 0; i < P.l(); ++i)
    f.branches.emplace_back(P.dims[i], PLMap::constant(Rational(0), Rational(1), c));
  return f;
}

ProfileElement scalar_profile(const Presentation& P, const PLMap& g) {
  require(g.lo() == 0 && g.hi() == 1, ErrorKind::invalid_input, "scalar profile needs domain [0,1]");
  std::vector<std::optional<Rational>> val(P.p());
  for (int i = 0; i < P.l(); ++i)
    for (int side = 0; side < 2; ++side) {
      const auto& row = side == 0 ? P.alpha[i] : P.beta[i];
      Rational v = g(Rational(side));
      long used = 0;
      for (int j = 0; j < P.p(); ++j) {
        if (row[j] == 0) continue;
        used += long(row[j]) * P.k[j];
        require(!val[j] || *val[j] == v, ErrorKind::invalid_input,
                "scalar profile inconsistent with the gluing at theta " + std::to_string(j));
        val[j] = v;
      }
      require(used == P.dims[i] || v == 0, ErrorKind::invalid_input,
              "scalar profile must vanish where the gluing is not unital");
    }
  ProfileElement f;
  for (int j = 0; j < P.p(); ++j) f.theta_eigs.emplace_back(P.k[j], val[j].value_or(Rational(0)));
  for (int i = 0; i < P.l(); ++i) f.branches.emplace_back(P.dims[i], g);
  return f;
}

}  // namespace etalg
