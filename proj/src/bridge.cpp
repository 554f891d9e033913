#include "etalg/bridge.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <random>

#include "etalg/error.hpp"
#include "etalg/perturbation.hpp"

namespace etalg {

namespace {

using cd = std::complex<double>;

CMatrix blockdiag(const std::vector<CMatrix>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  CMatrix M = CMatrix::Zero(n, n);
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    M.block(off, off, b.rows(), b.cols()) = b;
    off += b.rows();
  }
  return M;
}

CMatrix diag_of(const std::vector<Rational>& v) {
  CMatrix M = CMatrix::Zero(Eigen::Index(v.size()), Eigen::Index(v.size()));
  for (std::size_t c = 0; c < v.size(); ++c) M(Eigen::Index(c), Eigen::Index(c)) = to_double(v[c]);
  return M;
}

CMatrix unit(int n, int s, int t) {
  CMatrix M = CMatrix::Zero(n, n);
  M(s, t) = 1.0;
  return M;
}

std::vector<Rational> canonical_expansion(const Presentation& P,
                                          const std::vector<std::vector<Rational>>& theta, int i,
                                          int side) {
  const auto& row = side == 0 ? P.alpha[i] : P.beta[i];
  std::vector<Rational> out;
  for (int j = 0; j < P.p(); ++j)
    for (int c = 0; c < row[j]; ++c) out.insert(out.end(), theta[j].begin(), theta[j].end());
  out.resize(std::size_t(P.dims[i]), Rational(0));
  return out;
}

// Assigns branches to slots so that both endpoint values agree.
bool assign_slots(const std::vector<PLMap>& br, const std::vector<Rational>& e0,
                  const std::vector<Rational>& e1, std::vector<int>& slot_of, std::vector<bool>& used,
                  std::size_t c) {
  if (c == br.size()) return true;
  for (std::size_t s = 0; s < e0.size(); ++s) {
    if (used[s] || br[c](0) != e0[s] || br[c](1) != e1[s]) continue;
    used[s] = true;
    slot_of[c] = int(s);
    if (assign_slots(br, e0, e1, slot_of, used, c + 1)) return true;
    used[s] = false;
  }
  return false;
}

// Unitary as Q diag(e^{i angle}) Q^*, for paths t -> e^{i t angle}.
struct UnitaryLog {
  CMatrix Q;
  Eigen::VectorXd angles;

  explicit UnitaryLog(const CMatrix& U) {
    Eigen::ComplexSchur<CMatrix> schur(U);
    Q = schur.matrixU();
    const CMatrix& T = schur.matrixT();
    angles.resize(T.rows());
    for (Eigen::Index k = 0; k < T.rows(); ++k) angles(k) = std::arg(T(k, k));
  }
  CMatrix power(double tau) const {
    Eigen::VectorXcd d(angles.size());
    for (Eigen::Index k = 0; k < angles.size(); ++k) d(k) = std::polar(1.0, tau * angles(k));
    return Q * d.asDiagonal() * Q.adjoint();
  }
};

CMatrix polar_unitary(const CMatrix& T) {
  Eigen::JacobiSVD<CMatrix> svd(T, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix kron_identity(const CMatrix& M, int b) {
  CMatrix out = CMatrix::Zero(M.rows() * b, M.cols() * b);
  for (Eigen::Index s = 0; s < M.rows(); ++s)
    for (Eigen::Index t = 0; t < M.cols(); ++t)
      out.block(s * b, t * b, b, b) = M(s, t) * CMatrix::Identity(b, b);
  return out;
}

// One summand of phi' in the canonical order.
struct Atom {
  bool theta = true;
  int index = 0;  // theta index or block
  Rational t;
  int size = 0;
};

std::vector<Atom> atoms_of(const Presentation& P, const FiniteSpectrum& S) {
  std::vector<Atom> out;
  for (int j = 0; j < P.p(); ++j)
    for (int c = 0; c < S.theta_mult[j]; ++c) out.push_back(Atom{true, j, Rational(0), P.k[j]});
  for (const auto& y : S.interior) out.push_back(Atom{false, y.i, y.t, P.dims[y.i]});
  return out;
}

// Group key: theta j -> (0, j, 0); grid point k/m of block i -> (1, i, k).
using Key = std::tuple<int, int, int>;

struct MovedAtom {
  int offset = 0, size = 0;
  Key key;
};

}  // namespace

double op_norm(const CMatrix& M) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(M);
  return svd.singularValues()(0);
}

CMatrix ConcreteElement::at(int i, const Rational& t) const {
  const auto& ks = knots[i];
  const auto& vs = values[i];
  require(!ks.empty() && ks.front() <= t && t <= ks.back(), ErrorKind::domain,
          "concrete element evaluated outside [0,1]");
  std::size_t k = 0;
  while (k + 1 < ks.size() && ks[k + 1] < t) ++k;
  if (k + 1 == ks.size() || ks[k] == t) return vs[k];
  double w = to_double((t - ks[k]) / (ks[k + 1] - ks[k]));
  return (1 - w) * vs[k] + w * vs[k + 1];
}

CMatrix boundary_embedding(const Presentation& P, const ConcreteElement& a, int i, int side) {
  const auto& row = side == 0 ? P.alpha[i] : P.beta[i];
  CMatrix M = CMatrix::Zero(P.dims[i], P.dims[i]);
  int off = 0;
  for (int j = 0; j < P.p(); ++j)
    for (int c = 0; c < row[j]; ++c) {
      M.block(off, off, P.k[j], P.k[j]) = a.theta[j];
      off += P.k[j];
    }
  return M;
}

ConcreteElement concrete_from_profile(const Presentation& P, const ProfileElement& f) {
  require(validate_profile(P, f).ok, ErrorKind::invalid_input, "concrete_from_profile: invalid element");
  ConcreteElement out;
  for (const auto& e : f.theta_eigs) out.theta.push_back(diag_of(e));
  for (int i = 0; i < P.l(); ++i) {
    auto e0 = canonical_expansion(P, f.theta_eigs, i, 0), e1 = canonical_expansion(P, f.theta_eigs, i, 1);
    std::vector<int> slot_of(f.branches[i].size(), -1);
    std::vector<bool> used(e0.size(), false);
    if (!assign_slots(f.branches[i], e0, e1, slot_of, used, 0))
      fail(ErrorKind::invalid_input,
           "concrete_from_profile: branches of block " + std::to_string(i) +
               " cannot be ordered to match both canonical embeddings");
    std::vector<Rational> ks;
    for (const auto& b : f.branches[i]) ks.insert(ks.end(), b.xs().begin(), b.xs().end());
    sort_unique(ks);
    std::vector<CMatrix> vs;
    for (const auto& t : ks) {
      std::vector<Rational> d(e0.size());
      for (std::size_t c = 0; c < slot_of.size(); ++c) d[std::size_t(slot_of[c])] = f.branches[i][c](t);
      vs.push_back(diag_of(d));
    }
    out.knots.push_back(ks);
    out.values.push_back(vs);
  }
  return out;
}

ConcreteElement concrete_from_test(const Presentation& P, const TestFunction& h) {
  ConcreteElement out;
  for (int j = 0; j < P.p(); ++j) out.theta.push_back(CMatrix::Zero(P.k[j], P.k[j]));
  if (auto t1 = std::get_if<Type1>(&h.shape)) {
    require(!h.lift || h.lift->block == t1->j, ErrorKind::invalid_input,
            "concrete_from_test: type 1 tag must sit in its own block");
    out.theta[t1->j] = h.lift ? unit(P.k[t1->j], h.lift->s, h.lift->t)
                              : CMatrix::Identity(P.k[t1->j], P.k[t1->j]);
    for (int i = 0; i < P.l(); ++i) {
      PLMap full = scalar_profile_of(P, forget_tag(h), i);
      Rational split_lo = make_rational(t1->a[i] + 1, t1->m), split_hi = make_rational(t1->b[i] - 1, t1->m);
      std::vector<Rational> ks = full.xs();
      ks.push_back(split_lo);
      ks.push_back(split_hi);
      sort_unique(ks);
      CMatrix left = boundary_embedding(P, out, i, 0), right = boundary_embedding(P, out, i, 1);
      std::vector<CMatrix> vs;
      for (const auto& t : ks) {
        double v = to_double(full(t));
        vs.push_back(t <= split_lo ? CMatrix(v * left) : t >= split_hi ? CMatrix(v * right)
                                                                         : CMatrix::Zero(P.dims[i], P.dims[i]));
      }
      out.knots.push_back(ks);
      out.values.push_back(vs);
    }
    return out;
  }
  const auto& t2 = std::get<Type2>(h.shape);
  require(!h.lift || h.lift->block == t2.i, ErrorKind::invalid_input,
          "concrete_from_test: type 2 tag must sit in its own block");
  for (int i = 0; i < P.l(); ++i) {
    PLMap full = scalar_profile_of(P, forget_tag(h), i);
    CMatrix E = h.lift && i == t2.i ? unit(P.dims[i], h.lift->s, h.lift->t)
                                    : CMatrix::Identity(P.dims[i], P.dims[i]);
    std::vector<CMatrix> vs;
    for (const auto& t : full.xs()) vs.push_back(to_double(full(t)) * E);
    out.knots.push_back(full.xs());
    out.values.push_back(vs);
  }
  return out;
}

CMatrix diagonal_evaluation(const Presentation& P, const FiniteSpectrum& S, const ConcreteElement& f) {
  std::vector<CMatrix> blocks;
  for (const auto& a : atoms_of(P, S))
    blocks.push_back(a.theta ? f.theta[a.index] : f.at(a.index, a.t));
  return blockdiag(blocks);
}

BridgeTrace unitary_bridge(const BridgeInput& in) {
  const Presentation& P = in.P;
  require_valid(P);
  require(P.unital, ErrorKind::invalid_input, "unitary_bridge: the algebra must be unital");
  require(decompose_minimal(P).size() == 1, ErrorKind::invalid_input,
          "unitary_bridge: the algebra must be minimal");
  const FiniteSpectrum S = boundary_rewrite(P, in.spectrum);
  const int n = int(spectrum_size(P, S));
  require(n >= 1 && n <= 8, ErrorKind::invalid_input, "unitary_bridge: need 1 <= n <= 8");
  require(in.U.rows() == n && in.U.cols() == n && in.V.rows() == n && in.V.cols() == n,
          ErrorKind::invalid_input, "unitary_bridge: U and V must be n x n");
  const CMatrix I = CMatrix::Identity(n, n);
  require(op_norm(in.U.adjoint() * in.U - I) < 1e-9 && op_norm(in.V.adjoint() * in.V - I) < 1e-9,
          ErrorKind::invalid_input, "unitary_bridge: U and V must be unitary");
  require(!in.F.empty(), ErrorKind::invalid_input, "unitary_bridge: F must be nonempty");

  BridgeTrace tr;
  tr.n = n;
  ConstantBundle bundle = choose_constants(P, n, in.epsilon, in.F);
  tr.m = bundle.m;
  tr.eta = bundle.eta;
  tr.eps_prime = in.eps_prime ? *in.eps_prime : bundle.eps_prime;
  const double ep = to_double(tr.eps_prime);
  const double n2 = double(n) * n, n4 = n2 * n2, n6 = n4 * n2;
  if (n2 * ep >= 1) fail(ErrorKind::failed, "unitary_bridge: T possibly singular (n^2 eps' >= 1)");
  const long m = tr.m, M = 2 * m * n;

  // Free windows (a eta, (a+2) eta) inside each grid cell.
  std::vector<std::vector<long>> win(std::size_t(P.l()));
  for (int i = 0; i < P.l(); ++i) {
    for (long k = 1; k <= m; ++k) {
      long chosen = -1;
      for (long a = (k - 1) * 2 * n; a <= 2 * n * k - 2 && chosen < 0; ++a) {
        Rational lo = make_rational(a, M), hi = make_rational(a + 2, M);
        bool free = true;
        for (const auto& y : S.interior)
          if (y.i == i && lo < y.t && y.t < hi) free = false;
        if (free) chosen = a;
      }
      if (chosen < 0)
        fail(ErrorKind::failed, "unitary_bridge: no spectrum-free window in cell " + std::to_string(k) +
                                    " of block " + std::to_string(i));
      win[std::size_t(i)].push_back(chosen);
    }
  }

  // Moved atoms of phi'' and their group keys.
  std::vector<Atom> atoms = atoms_of(P, S);
  std::vector<MovedAtom> moved;
  int off = 0;
  for (const auto& a : atoms) {
    if (a.theta) {
      moved.push_back(MovedAtom{off, a.size, Key{0, a.index, 0}});
    } else {
      const auto& w = win[std::size_t(a.index)];
      int side = -1;
      long grid = 0;
      if (a.t <= make_rational(w.front(), M))
        side = 0;
      else if (a.t >= make_rational(w.back() + 2, M))
        side = 1;
      else
        for (long k = 2; k <= m; ++k)
          if (make_rational(w[std::size_t(k - 2)] + 2, M) <= a.t && a.t <= make_rational(w[std::size_t(k - 1)], M))
            grid = k - 1;
      if (side >= 0) {
        const auto& row = side == 0 ? P.alpha[a.index] : P.beta[a.index];
        int sub = off;
        for (int j = 0; j < P.p(); ++j)
          for (int c = 0; c < row[j]; ++c) {
            moved.push_back(MovedAtom{sub, P.k[j], Key{0, j, 0}});
            sub += P.k[j];
          }
      } else {
        require(grid > 0, ErrorKind::internal, "unitary_bridge: point inside a window");
        moved.push_back(MovedAtom{off, a.size, Key{1, a.index, int(grid)}});
      }
    }
    off += a.size;
  }
  std::map<Key, std::vector<MovedAtom>> groups;
  for (const auto& ma : moved) groups[ma.key].push_back(ma);
  std::vector<int> perm;  // new position -> old index
  std::vector<std::pair<int, int>> group_range;
  std::vector<int> group_atom;
  for (const auto& [key, list] : groups) {
    int start = int(perm.size());
    for (const auto& ma : list)
      for (int c = 0; c < ma.size; ++c) perm.push_back(ma.offset + c);
    group_range.push_back({start, int(perm.size()) - start});
    group_atom.push_back(list.front().size);
    tr.group_sizes.push_back(int(perm.size()) - start);
  }
  tr.W = CMatrix::Zero(n, n);
  for (int r = 0; r < n; ++r) tr.W(r, perm[std::size_t(r)]) = 1.0;
  const CMatrix& W = tr.W;

  // phi'' evaluation: atoms replaced by their moved points.
  auto dprime = [&](const ConcreteElement& f) {
    CMatrix X = CMatrix::Zero(n, n);
    int o = 0;
    for (const auto& a : atoms) {
      CMatrix blk;
      if (a.theta) {
        blk = f.theta[a.index];
      } else {
        const auto& w = win[std::size_t(a.index)];
        if (a.t <= make_rational(w.front(), M))
          blk = boundary_embedding(P, f, a.index, 0);
        else if (a.t >= make_rational(w.back() + 2, M))
          blk = boundary_embedding(P, f, a.index, 1);
        else {
          long grid = 0;
          for (long k = 2; k <= m; ++k)
            if (make_rational(w[std::size_t(k - 2)] + 2, M) <= a.t && a.t <= make_rational(w[std::size_t(k - 1)], M))
              grid = k - 1;
          blk = f.at(a.index, make_rational(grid, m));
        }
      }
      X.block(o, o, a.size, a.size) = blk;
      o += a.size;
    }
    return X;
  };
  auto prime = [&](const ConcreteElement& f) { return diagonal_evaluation(P, S, f); };
  auto phi = [&](const CMatrix& X) { return CMatrix(in.U.adjoint() * X * in.U); };
  auto psi = [&](const CMatrix& X) { return CMatrix(in.V.adjoint() * X * in.V); };

  // G and its matrix-unit lifts.
  std::vector<TestFunction> G;
  for (int j = 0; j < P.p(); ++j) {
    std::vector<int> a, b;
    for (int i = 0; i < P.l(); ++i) {
      a.push_back(int(win[std::size_t(i)].front()));
      b.push_back(int(win[std::size_t(i)].back() + 2));
    }
    G.push_back(make_type1(P, int(M), j, a, b));
  }
  for (int i = 0; i < P.l(); ++i)
    for (long k = 1; k < m; ++k)
      G.push_back(make_type2(P, int(M), i,
                             {{int(win[std::size_t(i)][std::size_t(k - 1)] + 2), int(win[std::size_t(i)][std::size_t(k)])}}));
  std::vector<TestFunction> GG = G;
  for (const auto& h : G)
    for (const auto& lifted : lift_to_Htilde(P, h)) GG.push_back(lifted);

  std::vector<CMatrix> gg_dprime;
  for (const auto& h : GG) {
    ConcreteElement c = concrete_from_test(P, h);
    CMatrix X1 = prime(c), X2 = dprime(c);
    require(op_norm(X1 - X2) < 1e-12, ErrorKind::internal,
            "unitary_bridge: phi' and phi'' differ on a window test function");
    tr.hypothesis_max = std::max(tr.hypothesis_max, op_norm(phi(X1) - psi(X1)));
    gg_dprime.push_back(W * X2 * W.adjoint());
    ++tr.hypothesis_checked;
  }
  for (const auto& h : in.extra_tests) {
    CMatrix X = prime(concrete_from_test(P, h));
    tr.hypothesis_max = std::max(tr.hypothesis_max, op_norm(phi(X) - psi(X)));
    ++tr.hypothesis_checked;
  }
  if (!(tr.hypothesis_max < ep))
    fail(ErrorKind::failed, "unitary_bridge: hypothesis fails, max |phi(h) - psi(h)| = " +
                                std::to_string(tr.hypothesis_max) + " >= eps'");

  auto check = [&](const std::string& name, double value, double bound) {
    tr.bounds.push_back(BoundCheck{name, value, bound, value < 2 * bound});
  };

  tr.Wt = W * in.V * in.U.adjoint() * W.adjoint();
  tr.T = CMatrix::Zero(n, n);
  tr.S = CMatrix::Zero(n, n);
  tr.D = CMatrix::Zero(n, n);
  tr.O = CMatrix::Zero(n, n);
  std::vector<CMatrix> reduced_O;
  double scalar_defect = 0;
  for (std::size_t r = 0; r < group_range.size(); ++r) {
    auto [s0, sz] = group_range[r];
    CMatrix Tr = tr.Wt.block(s0, s0, sz, sz);
    tr.T.block(s0, s0, sz, sz) = Tr;
    CMatrix Sr = polar_unitary(Tr);
    tr.S.block(s0, s0, sz, sz) = Sr;
    const int b = group_atom[r], copies = sz / b;
    CMatrix Mr(copies, copies);
    for (int s = 0; s < copies; ++s)
      for (int t = 0; t < copies; ++t) {
        CMatrix sub = Sr.block(s * b, t * b, b, b);
        Mr(s, t) = sub.trace() / double(b);
        scalar_defect = std::max(scalar_defect, op_norm(sub - Mr(s, t) * CMatrix::Identity(b, b)));
      }
    tr.D.block(s0, s0, sz, sz) = kron_identity(Mr, b);
    CMatrix Or = polar_unitary(Mr);
    reduced_O.push_back(Or);
    tr.O.block(s0, s0, sz, sz) = kron_identity(Or, b);
  }
  check("|Wt - T| < n^2 eps'", op_norm(tr.Wt - tr.T), n2 * ep);
  check("|Wt S* - I| < 2n^2 eps'", op_norm(tr.Wt * tr.S.adjoint() - I), 2 * n2 * ep);
  double comm = 0;
  for (const auto& X : gg_dprime) comm = std::max(comm, op_norm(tr.S * X - X * tr.S));
  check("|[S, W phi''(h) W*]| < 5n^2 eps'", comm, 5 * n2 * ep);
  check("|w_st - d_st I| < 5n^4 eps'", scalar_defect, 5 * n4 * ep);
  check("|S - D| < 5n^6 eps'", op_norm(tr.S - tr.D), 5 * n6 * ep);

  std::vector<ConcreteElement> Fc;
  for (const auto& f : in.F) Fc.push_back(concrete_from_profile(P, f));
  double comm_dd = 0, comm_d = 0, move = 0;
  for (const auto& f : Fc) {
    CMatrix X2 = W * dprime(f) * W.adjoint(), X1 = W * prime(f) * W.adjoint();
    comm_dd = std::max(comm_dd, op_norm(tr.D * X2 - X2 * tr.D));
    comm_d = std::max(comm_d, op_norm(tr.D * X1 - X1 * tr.D));
    move = std::max(move, op_norm(X1 - X2));
  }
  check("|[D, W phi''(f) W*]| < 12n^6 eps'", comm_dd, 12 * n6 * ep);
  check("|[D, W phi'(f) W*]| < 2|D| |phi'(f) - phi''(f)| + 12n^6 eps'", comm_d,
        2 * op_norm(tr.D) * move + 12 * n6 * ep);
  check("|S* O - I| < 10n^6 eps'", op_norm(tr.S.adjoint() * tr.O - I), 10 * n6 * ep);

  // Paths: R'' from I to S*O, R' from O to I in the commutant, R from Wt S* to I.
  UnitaryLog L1(tr.S.adjoint() * tr.O), L3(tr.Wt * tr.S.adjoint());
  std::vector<UnitaryLog> L2;
  for (const auto& Or : reduced_O) L2.push_back(UnitaryLog(Or));
  auto Rprime = [&](double tau) {
    std::vector<CMatrix> blocks;
    for (std::size_t r = 0; r < L2.size(); ++r) blocks.push_back(kron_identity(L2[r].power(tau), group_atom[r]));
    return blockdiag(blocks);
  };
  auto ustar = [&](double t, int seg) -> CMatrix {
    if (seg == 0) return in.U.adjoint() * W.adjoint() * L1.power(3 * t) * W;
    if (seg == 1) return in.U.adjoint() * W.adjoint() * tr.S.adjoint() * Rprime(2 - 3 * t) * W;
    return in.V.adjoint() * W.adjoint() * L3.power(3 - 3 * t) * W;
  };
  auto seg_of = [](double t) { return t <= 1.0 / 3 ? 0 : t <= 2.0 / 3 ? 1 : 2; };
  tr.join_error = std::max(op_norm(ustar(1.0 / 3, 0) - ustar(1.0 / 3, 1)),
                           op_norm(ustar(2.0 / 3, 1) - ustar(2.0 / 3, 2)));
  std::vector<CMatrix> F1, Fphi, Fpsi;
  for (const auto& f : Fc) {
    F1.push_back(prime(f));
    Fphi.push_back(phi(F1.back()));
    Fpsi.push_back(psi(F1.back()));
  }
  const int samples = std::max(2, in.samples);
  for (int q = 0; q < samples; ++q) {
    double t = double(q) / (samples - 1);
    CMatrix us = ustar(t, seg_of(t));
    double worst = 0;
    for (std::size_t c = 0; c < F1.size(); ++c) {
      CMatrix phit = us * F1[c] * us.adjoint();
      worst = std::max(worst, op_norm(phit - Fphi[c]));
      if (q == 0) tr.endpoint_error = std::max(tr.endpoint_error, op_norm(phit - Fphi[c]));
      if (q == samples - 1) tr.endpoint_error = std::max(tr.endpoint_error, op_norm(phit - Fpsi[c]));
    }
    tr.sample_t.push_back(t);
    tr.sample_defect.push_back(worst);
    tr.max_defect = std::max(tr.max_defect, worst);
  }
  tr.endpoint_error = std::max({tr.endpoint_error, op_norm(ustar(0, 0) - in.U.adjoint()),
                                op_norm(ustar(1, 2) - in.V.adjoint())});
  bool bounds_ok = std::all_of(tr.bounds.begin(), tr.bounds.end(), [](const BoundCheck& b) { return b.ok; });
  tr.ok = bounds_ok && tr.endpoint_error < 1e-8 && tr.join_error < 1e-8 &&
          tr.max_defect < to_double(in.epsilon);
  return tr;
}

namespace {

Presentation bridge_algebra(int which) {
  switch (which % 4) {
    case 0: return interval_presentation(1);
    case 1: return Presentation{{1, 1}, {2}, {{1, 1}}, {{2, 0}}, true};
    case 2: return interval_presentation(2);
    default: return Presentation{{1, 2}, {2}, {{2, 0}}, {{0, 1}}, true};
  }
}

CMatrix random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0, 1);
  CMatrix Z(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) Z(r, c) = cd(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(Z);
  return qr.householderQ() * CMatrix::Identity(n, n);
}

CMatrix small_unitary(int n, double size, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0, 1);
  CMatrix K(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) K(r, c) = cd(g(rng), g(rng));
  K = (K + K.adjoint()).eval();
  double nk = op_norm(K);
  if (nk > 0) K *= size / nk;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(K);
  Eigen::VectorXcd d(n);
  for (int k = 0; k < n; ++k) d(k) = std::polar(1.0, es.eigenvalues()(k));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

ProfileElement ordered_profile(const Presentation& P, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> v(-2, 2);
  ProfileElement f;
  for (int j = 0; j < P.p(); ++j) {
    std::vector<Rational> e;
    for (int s = 0; s < P.k[j]; ++s) e.push_back(make_rational(v(rng), 4));
    f.theta_eigs.push_back(e);
  }
  const Rational half = make_rational(1, 2);
  for (int i = 0; i < P.l(); ++i) {
    auto e0 = canonical_expansion(P, f.theta_eigs, i, 0), e1 = canonical_expansion(P, f.theta_eigs, i, 1);
    std::vector<PLMap> br;
    for (std::size_t c = 0; c < e0.size(); ++c)
      br.push_back(PLMap({Rational(0), half, Rational(1)}, {e0[c], make_rational(v(rng), 4), e1[c]}));
    f.branches.push_back(br);
  }
  return f;
}

}  // namespace

BridgeInput random_bridge_instance(int n, std::uint64_t seed, const Rational& epsilon, bool identical) {
  require(n >= 1 && n <= 8, ErrorKind::invalid_input, "random_bridge_instance: need 1 <= n <= 8");
  std::mt19937_64 rng(seed);
  BridgeInput in;
  in.seed = seed;
  in.epsilon = epsilon;
  int which = int(rng() % 4);
  if (n % 2 == 1 && (which == 2 || which == 3)) which = 0;
  in.P = bridge_algebra(which);
  const Presentation& P = in.P;
  for (int c = 0; c < 2; ++c) in.F.push_back(ordered_profile(P, rng));
  ConstantBundle bundle = choose_constants(P, n, epsilon, in.F);
  const long M = 2 * bundle.m * n;
  std::uniform_int_distribution<long> pos(1, M - 1);
  std::uniform_int_distribution<int> pick(0, P.p() + P.l() - 1);
  while (true) {
    FiniteSpectrum S = empty_spectrum(P);
    long size = 0;
    while (size < n) {
      int c = pick(rng);
      if (c < P.p()) {
        S.theta_mult[std::size_t(c)] += 1;
        size += P.k[std::size_t(c)];
      } else {
        int i = c - P.p();
        S.interior.push_back(Interior{i, make_rational(pos(rng), M)});
        size += P.dims[std::size_t(i)];
      }
    }
    if (size != n) continue;
    in.spectrum = boundary_rewrite(P, S);
    break;
  }
  in.U = random_unitary(n, rng);
  if (identical) {
    in.V = in.U;
    return in;
  }
  // A unitary commuting with phi': mixes theta copies, rotates interior phases.
  std::vector<CMatrix> blocks;
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  for (int j = 0; j < P.p(); ++j) {
    int t = in.spectrum.theta_mult[std::size_t(j)];
    if (t > 0) blocks.push_back(kron_identity(random_unitary(t, rng), P.k[std::size_t(j)]));
  }
  for (const auto& y : in.spectrum.interior)
    blocks.push_back(std::polar(1.0, ang(rng)) * CMatrix::Identity(P.dims[std::size_t(y.i)], P.dims[std::size_t(y.i)]));
  CMatrix C = blockdiag(blocks);
  CMatrix X = small_unitary(n, to_double(bundle.eps_prime) / 4, rng);
  in.V = X * C * in.U;
  return in;
}

}  // namespace etalg
