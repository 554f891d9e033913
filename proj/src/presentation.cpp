#include "etalg/presentation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "etalg/error.hpp"

namespace etalg {

long Presentation::L() const { return std::accumulate(dims.begin(), dims.end(), 0L); }

void ValidationReport::add(std::string invariant, std::vector<int> index, std::string detail) {
  ok = false;
  violations.push_back({std::move(invariant), std::move(index), std::move(detail)});
}

void ValidationReport::merge(const ValidationReport& other, const std::string& prefix) {
  for (const auto& v : other.violations) add(prefix + v.invariant, v.index, v.detail);
}

ValidationReport validate_presentation(const Presentation& P) {
  ValidationReport rep;
  const int p = P.p(), l = P.l();
  for (int j = 0; j < p; ++j)
    if (P.k[j] <= 0) rep.add("k_positive", {j}, "k[" + std::to_string(j) + "] must be positive");
  for (int i = 0; i < l; ++i)
    if (P.dims[i] <= 0)
      rep.add("dims_positive", {i}, "dims[" + std::to_string(i) + "] must be positive");
  if (int(P.alpha.size()) != l || int(P.beta.size()) != l) {
    rep.add("shape", {}, "alpha and beta must have l rows");
    return rep;
  }
  for (int i = 0; i < l; ++i) {
    if (int(P.alpha[i].size()) != p || int(P.beta[i].size()) != p) {
      rep.add("shape", {i}, "row " + std::to_string(i) + " must have p entries");
      continue;
    }
    long sa = 0, sb = 0;
    for (int j = 0; j < p; ++j) {
      if (P.alpha[i][j] < 0) rep.add("nonnegative", {i, j}, "negative alpha entry");
      if (P.beta[i][j] < 0) rep.add("nonnegative", {i, j}, "negative beta entry");
      sa += long(P.alpha[i][j]) * P.k[j];
      sb += long(P.beta[i][j]) * P.k[j];
    }
    auto check = [&](const char* name, long s) {
      bool good = P.unital ? s == P.dims[i] : s <= P.dims[i];
      if (!good)
        rep.add(std::string(name) + "_row_sum", {i},
                std::string(name) + " row " + std::to_string(i) + " sums to " + std::to_string(s) +
                    (P.unital ? " != " : " > ") + std::to_string(P.dims[i]));
    };
    check("alpha", sa);
    check("beta", sb);
  }
  return rep;
}

void require_valid(const Presentation& P) {
  auto rep = validate_presentation(P);
  if (!rep.ok) fail(ErrorKind::invalid_input, "invalid presentation: " + rep.violations[0].detail);
}

std::vector<Component> decompose_minimal(const Presentation& P) {
  require_valid(P);
  const int p = P.p(), l = P.l();
  std::vector<int> parent(p + l);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < p; ++j)
      if (P.alpha[i][j] + P.beta[i][j] > 0) parent[find(p + i)] = find(j);

  std::vector<int> order;  // representative of each component in output order
  for (int x = 0; x < p + l; ++x)
    if (std::find(order.begin(), order.end(), find(x)) == order.end()) order.push_back(find(x));

  std::vector<Component> out;
  for (int rep : order) {
    Component c;
    for (int j = 0; j < p; ++j)
      if (find(j) == rep) c.f1_blocks.push_back(j);
    for (int i = 0; i < l; ++i)
      if (find(p + i) == rep) c.f2_blocks.push_back(i);
    c.part.unital = P.unital;
    for (int j : c.f1_blocks) c.part.k.push_back(P.k[j]);
    for (int i : c.f2_blocks) {
      c.part.dims.push_back(P.dims[i]);
      std::vector<int> ra, rb;
      for (int j : c.f1_blocks) {
        ra.push_back(P.alpha[i][j]);
        rb.push_back(P.beta[i][j]);
      }
      c.part.alpha.push_back(ra);
      c.part.beta.push_back(rb);
    }
    out.push_back(std::move(c));
  }
  return out;
}

IntMatrix alpha_minus_beta(const Presentation& P) {
  IntMatrix M(P.l(), P.p());
  for (int i = 0; i < P.l(); ++i)
    for (int j = 0; j < P.p(); ++j) M(i, j) = P.alpha[i][j] - P.beta[i][j];
  return M;
}

KTheoryResult k_theory(const Presentation& P) {
  require_valid(P);
  IntMatrix M = alpha_minus_beta(P);
  SmithForm f = smith_normal_form(M);
  KTheoryResult r;
  r.rank = f.rank;
  r.k0_basis = integer_kernel(M);
  r.k0_rank = int(r.k0_basis.size());
  r.smith_diagonal = f.diagonal;
  r.smith_diagonal.resize(P.l(), Integer(0));
  for (int t = 0; t < f.rank; ++t)
    if (f.diagonal[t] > 1) r.k1_invariant_factors.push_back(f.diagonal[t]);
  for (int t = f.rank; t < P.l(); ++t) r.k1_invariant_factors.push_back(Integer(0));
  return r;
}

Presentation empty_presentation() { return Presentation{}; }

Presentation direct_sum(const Presentation& P1, const Presentation& P2) {
  require_valid(P1);
  require_valid(P2);
  const bool e1 = P1.p() == 0 && P1.l() == 0, e2 = P2.p() == 0 && P2.l() == 0;
  if (e1) return P2;
  if (e2) return P1;
  require(P1.unital == P2.unital, ErrorKind::invalid_input, "direct_sum: mismatched unital flags");
  Presentation S;
  S.unital = P1.unital;
  S.k = P1.k;
  S.k.insert(S.k.end(), P2.k.begin(), P2.k.end());
  S.dims = P1.dims;
  S.dims.insert(S.dims.end(), P2.dims.begin(), P2.dims.end());
  const int p = S.p();
  for (int i = 0; i < P1.l(); ++i) {
    std::vector<int> a(p, 0), b(p, 0);
    std::copy(P1.alpha[i].begin(), P1.alpha[i].end(), a.begin());
    std::copy(P1.beta[i].begin(), P1.beta[i].end(), b.begin());
    S.alpha.push_back(a);
    S.beta.push_back(b);
  }
  for (int i = 0; i < P2.l(); ++i) {
    std::vector<int> a(p, 0), b(p, 0);
    std::copy(P2.alpha[i].begin(), P2.alpha[i].end(), a.begin() + P1.p());
    std::copy(P2.beta[i].begin(), P2.beta[i].end(), b.begin() + P1.p());
    S.alpha.push_back(a);
    S.beta.push_back(b);
  }
  return S;
}

Presentation interval_presentation(int n) {
  require(n > 0, ErrorKind::invalid_input, "interval summand size must be positive");
  return Presentation{{n, n}, {n}, {{1, 0}}, {{0, 1}}, true};
}

Presentation finite_presentation(std::vector<int> k) {
  Presentation P;
  P.k = std::move(k);
  return P;
}

namespace {

struct Row {
  int dim;
  std::vector<int> a, b;
  bool operator<(const Row& o) const { return std::tie(dim, a, b) < std::tie(o.dim, o.a, o.b); }
  bool operator==(const Row& o) const = default;
};

}  // namespace

bool equivalent_up_to_permutation(const Presentation& P, const Presentation& Q,
                                  BlockPermutation* witness) {
  if (P.p() != Q.p() || P.l() != Q.l() || P.unital != Q.unital) return false;
  const int p = P.p(), l = P.l();
  std::vector<int> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Row> qrows(l);
  for (int i = 0; i < l; ++i) qrows[i] = Row{Q.dims[i], Q.alpha[i], Q.beta[i]};
  do {
    bool kmatch = true;
    for (int j = 0; j < p && kmatch; ++j) kmatch = P.k[j] == Q.k[perm[j]];
    if (!kmatch) continue;
    std::vector<Row> prows(l);
    for (int i = 0; i < l; ++i) {
      Row r{P.dims[i], std::vector<int>(p), std::vector<int>(p)};
      for (int j = 0; j < p; ++j) {
        r.a[perm[j]] = P.alpha[i][j];
        r.b[perm[j]] = P.beta[i][j];
      }
      prows[i] = r;
    }
    std::vector<Row> ps = prows, qs = qrows;
    std::sort(ps.begin(), ps.end());
    std::sort(qs.begin(), qs.end());
    if (ps != qs) continue;
    if (witness) {
      witness->f1 = perm;
      witness->f2.assign(l, -1);
      std::vector<bool> used(l, false);
      for (int i = 0; i < l; ++i)
        for (int i2 = 0; i2 < l; ++i2)
          if (!used[i2] && prows[i] == qrows[i2]) {
            used[i2] = true;
            witness->f2[i] = i2;
            break;
          }
    }
    return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::string to_dot(const Presentation& P) {
  std::ostringstream os;
  os << "graph presentation {\n";
  for (int j = 0; j < P.p(); ++j)
    os << "  f1_" << j << " [shape=box, label=\"F1[" << j << "] M_" << P.k[j] << "\"];\n";
  for (int i = 0; i < P.l(); ++i)
    os << "  f2_" << i << " [shape=circle, label=\"F2[" << i << "] M_" << P.dims[i] << "\"];\n";
  for (int i = 0; i < P.l(); ++i)
    for (int j = 0; j < P.p(); ++j)
      if (P.alpha[i][j] + P.beta[i][j] > 0)
        os << "  f1_" << j << " -- f2_" << i << " [label=\"α:" << P.alpha[i][j]
           << ",β:" << P.beta[i][j] << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace etalg
