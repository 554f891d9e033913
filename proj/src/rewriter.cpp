#include "etalg/rewriter.hpp"

#include <algorithm>
#include <random>

#include "etalg/error.hpp"
#include "pattern_internal.hpp"

namespace etalg {

namespace {

int fiber_bound(const Presentation& P) {
  int n = 1;
  for (int k : P.k) n = std::max(n, k);
  for (int d : P.dims) n = std::max(n, d);
  return n;
}

Rational max_lipschitz(const std::vector<ProfileElement>& F) {
  Rational m(0);
  for (const auto& f : F) m = rmax(m, lipschitz(f));
  return m;
}

Rational eig_gap(const Presentation& A, const FiniteSpectrum& Sa, const FiniteSpectrum& Sb,
                 const std::vector<ProfileElement>& F) {
  Rational d(0);
  for (const auto& f : F) {
    auto u = eigenvalues_of(A, Sa, f), v = eigenvalues_of(A, Sb, f);
    std::sort(u.begin(), u.end());
    std::sort(v.begin(), v.end());
    if (u.size() != v.size()) return Rational(1000000);
    for (std::size_t r = 0; r < u.size(); ++r) d = rmax(d, abs(u[r] - v[r]));
  }
  return d;
}

// Cells of phi over [a,b] (a point cell when a == b).
std::vector<Cell> slice(const PatternHom& phi, int block, const Rational& a, const Rational& b) {
  int k = detail::find_piece_containing(phi, block, a, b);
  require(k >= 0, ErrorKind::internal, "injective_step: no piece of the domain covers an edge");
  std::vector<Cell> out;
  auto cut = [&](const Cell& c, const Rational& lo, const Rational& hi) {
    Cell nc{lo, hi, {}, c.pad};
    for (const auto& tr : c.tracks)
      nc.tracks.push_back(tr.kind == Track::Kind::theta ? tr
                                                        : Track::block(tr.index, tr.path.restricted(lo, hi)));
    out.push_back(std::move(nc));
  };
  if (a == b) {
    cut(detail::find_cell(phi.pieces[k], a), a, a);
    return out;
  }
  for (const auto& c : phi.pieces[k].cells) {
    Rational lo = rmax(c.lo, a), hi = rmin(c.hi, b);
    if (lo < hi) cut(c, lo, hi);
  }
  return out;
}

bool bridgeable(const PatternHom& phi, int block, const Rational& a, const Rational& b,
                const std::vector<ProfileElement>& F, const Rational& epsilon, long m1,
                const Rational& eta1) {
  const Presentation& A = phi.source;
  FiniteSpectrum Sa = eval_spectrum(phi, Interior{block, a});
  FiniteSpectrum Sb = eval_spectrum(phi, Interior{block, b});
  if (eig_gap(A, Sa, Sb, F) > epsilon / 4) return false;
  try {
    PairingResult pr = pair_spectra(A, Sa, Sb, epsilon, int(m1));
    if (!pr.within_bound || pr.max_gap > eta1) return false;
    spectral_paths(A, Sa, Sb, pr, eta1);
  } catch (const Error&) {
    return false;
  }
  return true;
}

struct Attempt {
  StepResult result;
  std::string failure;
};

Attempt build_step(const PatternHom& phi, const std::vector<ProfileElement>& F,
                   const std::vector<ProfileElement>& G, const Rational& epsilon,
                   const Rational& g_epsilon, const Rational& delta, long m1,
                   const Rational& eta1) {
  const Presentation &A = phi.source, &B = phi.target;
  const ClosedSubset& Y = phi.domain;
  Attempt at;
  StepResult& r = at.result;
  StepReport& rep = r.report;
  r.disc = discretize(B, Y, delta);
  rep.delta = delta;
  rep.skeleton_m = r.disc.rho.skeleton.m;
  const ClosedSubset& Z = r.disc.Z;

  PatternHom& psi = r.psi;
  psi.source = A;
  psi.target = B;
  psi.domain = Z;
  for (int j : Z.thetas) psi.vertex_spec[j] = phi.vertex_spec.at(j);
  const auto& pairs = r.disc.rho.skeleton.pairs;
  for (int i = 0; i < B.l(); ++i)
    for (const auto& iv : Z.pieces[i]) {
      PiecePattern pp{i, iv, {}};
      if (iv.is_point()) {
        pp.cells = slice(phi, i, iv.lo, iv.lo);
        ++rep.isolated_vertices;
        psi.pieces.push_back(std::move(pp));
        continue;
      }
      std::optional<Interval> run;
      auto flush = [&]() {
        if (!run) return;
        auto cells = slice(phi, i, run->lo, run->hi);
        pp.cells.insert(pp.cells.end(), cells.begin(), cells.end());
        run.reset();
      };
      for (const auto& ap : pairs) {
        if (ap.block != i || !ap.edge || ap.ys < iv.lo || ap.yt > iv.hi) continue;
        IntervalList inside = intersect_intervals(Y.pieces[i], {Interval{ap.ys, ap.yt}});
        if (inside.size() == 1 && inside[0] == Interval{ap.ys, ap.yt}) {
          if (run && run->hi == ap.ys)
            run->hi = ap.yt;
          else {
            flush();
            run = Interval{ap.ys, ap.yt};
          }
          ++rep.copied_edges;
          continue;
        }
        flush();
        FiniteSpectrum Sa = eval_spectrum(phi, Interior{i, ap.ys});
        FiniteSpectrum Sb = eval_spectrum(phi, Interior{i, ap.yt});
        PairingResult pr = pair_spectra(A, Sa, Sb, epsilon, int(m1));
        if (!pr.within_bound) {
          at.failure = "spectra at the ends of [" + to_string(ap.ys) + "," + to_string(ap.yt) +
                       "] in block " + std::to_string(i) + " differ by " + to_string(pr.max_gap);
          return at;
        }
        PathFamily fam = spectral_paths(A, Sa, Sb, pr, eta1);
        auto cells = reparametrize_cells(fam.cells, ap.ys, ap.yt);
        pp.cells.insert(pp.cells.end(), cells.begin(), cells.end());
        ++rep.collapsed_edges;
      }
      flush();
      psi.pieces.push_back(std::move(pp));
    }

  ValidationReport v = validate_pattern(psi);
  if (!v.ok) {
    at.failure = "assembled map invalid: " + v.violations.front().detail;
    return at;
  }
  rep.witness = is_injective(psi);
  if (!rep.witness.injective) {
    at.failure = "assembled map not injective";
    return at;
  }
  PatternHom collapse = collapse_pattern(r.disc);
  PatternHom moved = compose(psi, collapse);
  for (const auto& f : F) {
    rep.f_defects.push_back(spec_distance(phi, moved, f));
    if (!(rep.f_defects.back() < epsilon)) {
      at.failure = "F defect " + to_string(rep.f_defects.back()) + " not below " + to_string(epsilon);
      return at;
    }
  }
  PatternHom id = identity_on(B, Y);
  for (const auto& g : G) {
    rep.g_defects.push_back(spec_distance(id, collapse, g));
    if (!(rep.g_defects.back() < g_epsilon)) {
      at.failure = "G defect " + to_string(rep.g_defects.back()) + " not below " + to_string(g_epsilon);
      return at;
    }
  }
  return at;
}

}  // namespace

StepResult injective_step(const PatternHom& phi, const std::vector<ProfileElement>& F,
                          const std::vector<ProfileElement>& G, const Rational& epsilon,
                          const StepOptions& opts) {
  require(epsilon > 0, ErrorKind::invalid_input, "injective_step: epsilon must be positive");
  ValidationReport v = validate_pattern(phi);
  require(v.ok, ErrorKind::invalid_input, "injective_step: map invalid");
  require(is_injective(phi).injective, ErrorKind::invalid_input, "injective_step: map not injective");
  const Presentation &A = phi.source, &B = phi.target;
  for (const auto& g : G)
    require(validate_profile(B, g).ok, ErrorKind::invalid_input, "injective_step: invalid element in G");
  const Rational g_eps = opts.g_epsilon ? *opts.g_epsilon : epsilon;
  require(g_eps > 0, ErrorKind::invalid_input, "injective_step: G bound must be positive");

  ConstantBundle bundle = choose_constants(A, fiber_bound(B), epsilon, F);
  Integer m1 = floor_of(2 / bundle.eta) + 1;
  if (bundle.lipschitz > 0) {
    Integer need = ceil_of(16 * bundle.lipschitz / epsilon);
    if (need > m1) m1 = need;
  }
  require(m1.fits_slong_p() && m1 <= 1000000000, ErrorKind::failed,
          "injective_step: spectral grid too fine");
  const long m1l = m1.get_si();
  const Rational eta1 = make_rational(1, m1l);
  const Rational slope = max_track_slope(phi);

  Rational delta(1);
  std::string binding = "unit";
  auto tighten = [&](const Rational& d, const std::string& why) {
    if (d < delta) {
      delta = d;
      binding = why;
    }
  };
  if (opts.delta) {
    require(*opts.delta > 0, ErrorKind::invalid_input, "injective_step: delta must be positive");
    delta = *opts.delta;
    binding = "override";
  } else {
    if (slope > 0) tighten(eta1 / slope, "track slope");
    Rational lg = max_lipschitz(G);
    if (lg > 0) tighten(g_eps / lg, "G modulus");
    for (int i = 0; i < B.l(); ++i) {
      const auto& ps = phi.domain.pieces[i];
      for (std::size_t q = 0; q + 1 < ps.size(); ++q) {
        const Rational &a = ps[q].hi, &b = ps[q + 1].lo;
        if (b - a < delta && !bridgeable(phi, i, a, b, F, epsilon, m1l, eta1))
          tighten(b - a, "gap (" + to_string(a) + "," + to_string(b) + ") in block " + std::to_string(i));
      }
    }
  }

  std::vector<std::string> rejected;
  for (int h = 0; h <= opts.max_halvings; ++h) {
    Attempt at;
    try {
      at = build_step(phi, F, G, epsilon, g_eps, delta, m1l, eta1);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::internal) throw;
      at.failure = e.what();
    }
    if (at.failure.empty()) {
      StepReport& rep = at.result.report;
      rep.halvings = h;
      rep.binding = binding;
      rep.rejected = rejected;
      rep.bundle = bundle;
      rep.m1 = m1;
      rep.eta1 = eta1;
      rep.track_slope = slope;
      rep.f_bound = epsilon;
      rep.g_bound = g_eps;
      return at.result;
    }
    rejected.push_back("delta " + to_string(delta) + ": " + at.failure);
    delta /= 2;
  }
  fail(ErrorKind::failed, "injective_step: no admissible delta (start fixed by " + binding +
                              "); last failure: " + rejected.back());
}

ValidationReport validate_chain(const ChainSpec& spec) {
  ValidationReport rep;
  const int N = int(spec.stages.size());
  if (N < 2) rep.add("chain.length", {N}, "need at least two stages");
  if (int(spec.maps.size()) != N - 1)
    rep.add("chain.maps", {int(spec.maps.size())}, "need one map per consecutive pair of stages");
  if (int(spec.dense_sets.size()) != N)
    rep.add("chain.dense_sets", {int(spec.dense_sets.size())}, "need one element list per stage");
  if (!rep.ok) return rep;
  for (int n = 0; n < N; ++n) {
    ValidationReport pv = validate_presentation(spec.stages[n]);
    if (!pv.ok) rep.merge(pv, "stage " + std::to_string(n) + ": ");
  }
  if (!rep.ok) return rep;
  for (int n = 0; n + 1 < N; ++n) {
    const PatternHom& phi = spec.maps[n];
    if (!(phi.source == spec.stages[n]) || !(phi.target == spec.stages[n + 1])) {
      rep.add("chain.compose", {n}, "map does not connect consecutive stages");
      continue;
    }
    if (!(phi.domain == full_spectrum(phi.target)))
      rep.add("chain.domain", {n}, "map must be defined on the whole spectrum");
    ValidationReport mv = validate_pattern(phi);
    if (!mv.ok) rep.merge(mv, "map " + std::to_string(n) + ": ");
  }
  for (int n = 0; n < N; ++n)
    for (std::size_t j = 0; j < spec.dense_sets[n].size(); ++j)
      if (!validate_profile(spec.stages[n], spec.dense_sets[n][j]).ok)
        rep.add("chain.dense", {n, int(j)}, "invalid element");
  if (!spec.eps_schedule.empty()) {
    if (int(spec.eps_schedule.size()) != N)
      rep.add("chain.eps", {int(spec.eps_schedule.size())}, "need one epsilon per stage");
    for (std::size_t n = 0; n < spec.eps_schedule.size(); ++n) {
      if (!(spec.eps_schedule[n] > 0)) rep.add("chain.eps", {int(n)}, "epsilon must be positive");
      if (n > 0 && !(spec.eps_schedule[n] < spec.eps_schedule[n - 1]))
        rep.add("chain.eps", {int(n)}, "epsilon schedule must decrease");
    }
  }
  return rep;
}

namespace {

std::vector<ProfileElement> prefix(const std::vector<ProfileElement>& v, std::size_t k) {
  return std::vector<ProfileElement>(v.begin(), v.begin() + long(std::min(k, v.size())));
}

}  // namespace

RewriteCertificate rewrite_chain(const ChainSpec& spec, const StepOptions& opts) {
  ValidationReport v = validate_chain(spec);
  if (!v.ok)
    fail(ErrorKind::invalid_input, "rewrite_chain: " + v.violations.front().invariant + ": " +
                                       v.violations.front().detail);
  const int N = int(spec.stages.size());
  std::vector<Rational> eps = spec.eps_schedule;
  if (eps.empty())
    for (int n = 0; n < N; ++n) eps.push_back(make_rational(1, 2L << n));

  std::vector<ClosedSubset> Y(N);
  Y[N - 1] = full_spectrum(spec.stages[N - 1]);
  std::vector<PatternHom> tilde(N - 1);
  for (int n = N - 2; n >= 0; --n) {
    tilde[n] = restrict_domain(spec.maps[n], Y[n + 1]);
    Y[n] = sp_image(tilde[n]);
  }

  RewriteCertificate cert;
  std::vector<RestrictionResult> R;

  {
    const Presentation& A = spec.stages[0];
    auto G = prefix(spec.dense_sets[0], 1);
    Rational bound = eps[0] / 2;
    Rational lg = max_lipschitz(G);
    Rational delta = lg > 0 ? rmin(Rational(1), bound / lg) : Rational(1);
    StageRecord st;
    st.Y = Y[0];
    st.g_bound = bound;
    for (int h = 0;; ++h) {
      require(h <= opts.max_halvings, ErrorKind::failed, "stage 0: no admissible delta");
      Discretization d = discretize(A, Y[0], delta);
      PatternHom collapse = collapse_pattern(d);
      PatternHom id = identity_on(A, Y[0]);
      st.g_table.clear();
      bool good = true;
      for (const auto& g : G) {
        st.g_table.push_back(spec_distance(id, collapse, g));
        good = good && st.g_table.back() < bound;
      }
      if (good) {
        R.push_back(restrict_algebra(A, d.Z));
        st.Z = d.Z;
        st.delta = delta;
        st.B = R.back().B;
        st.embedding = compose(R.back().inclusion, collapse);
        break;
      }
      delta /= 2;
    }
    cert.stages.push_back(std::move(st));
  }

  for (int k = 0; k + 1 < N; ++k) {
    try {
      std::vector<ProfileElement> F;
      for (int i = 0; i <= k; ++i)
        for (const auto& a : prefix(spec.dense_sets[i], std::size_t(k) + 1)) {
          ProfileElement x = push_forward(R[i].quotient, a);
          for (int r = i; r < k; ++r) x = push_forward(cert.links[r].psi, x);
          F.push_back(std::move(x));
        }
      auto G = prefix(spec.dense_sets[k + 1], std::size_t(k) + 2);
      PatternHom phi = compose(cert.stages[k].embedding, tilde[k]);
      StepOptions so = opts;
      so.g_epsilon = eps[k + 1] / 2;
      StepResult step = injective_step(phi, F, G, eps[k], so);

      const Presentation& A = spec.stages[k + 1];
      R.push_back(restrict_algebra(A, step.disc.Z));
      StageRecord st;
      st.Y = Y[k + 1];
      st.Z = step.disc.Z;
      st.delta = step.report.delta;
      st.B = R.back().B;
      st.embedding = compose(R.back().inclusion, collapse_pattern(step.disc));
      st.g_table = step.report.g_defects;
      st.g_bound = step.report.g_bound;

      LinkRecord ln;
      ln.psi = compose(step.psi, R.back().quotient);
      ln.witness = is_injective(ln.psi);
      ln.bound = eps[k];
      PatternHom around = compose(ln.psi, st.embedding);
      for (const auto& f : F) ln.commutation.push_back(spec_distance(phi, around, f));
      ln.step = std::move(step.report);
      cert.stages.push_back(std::move(st));
      cert.links.push_back(std::move(ln));
    } catch (const Error& e) {
      throw Error(e.kind(), "stage " + std::to_string(k) + ": " + e.what());
    }
  }
  ValidationReport c = check_certificate(cert);
  cert.ok = c.ok;
  for (const auto& viol : c.violations) cert.violations.push_back(viol.invariant + ": " + viol.detail);
  return cert;
}

ValidationReport check_certificate(const RewriteCertificate& cert) {
  ValidationReport rep;
  for (std::size_t k = 0; k < cert.links.size(); ++k) {
    const LinkRecord& ln = cert.links[k];
    if (!ln.witness.injective || !is_injective(ln.psi).injective)
      rep.add("cert.injective", {int(k)}, "connecting map not injective");
    ValidationReport pv = validate_pattern(ln.psi);
    if (!pv.ok) rep.merge(pv, "link " + std::to_string(k) + ": ");
    for (std::size_t j = 0; j < ln.commutation.size(); ++j)
      if (!(ln.commutation[j] < ln.bound))
        rep.add("cert.commutation", {int(k), int(j)},
                to_string(ln.commutation[j]) + " not below " + to_string(ln.bound));
  }
  for (std::size_t k = 0; k < cert.stages.size(); ++k) {
    const StageRecord& st = cert.stages[k];
    for (std::size_t j = 0; j < st.g_table.size(); ++j)
      if (!(st.g_table[j] < st.g_bound))
        rep.add("cert.approximation", {int(k), int(j)},
                to_string(st.g_table[j]) + " not below " + to_string(st.g_bound));
  }
  return rep;
}

namespace {

PLMap random_track(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> y(0, 4);
  return PLMap({Rational(0), make_rational(1, 2), Rational(1)},
               {make_rational(y(rng), 4), make_rational(y(rng), 4), make_rational(y(rng), 4)});
}

ProfileElement random_element(std::mt19937_64& rng, const Presentation& S) {
  std::uniform_int_distribution<int> v(-4, 4);
  ProfileElement f;
  for (int j = 0; j < S.p(); ++j) {
    std::vector<Rational> e;
    for (int s = 0; s < S.k[j]; ++s) e.push_back(make_rational(v(rng), 4));
    std::sort(e.begin(), e.end());
    f.theta_eigs.push_back(e);
  }
  for (int i = 0; i < S.l(); ++i) {
    auto left = endpoint_expansion(S, f.theta_eigs, i, 0);
    auto right = endpoint_expansion(S, f.theta_eigs, i, 1);
    std::shuffle(right.begin(), right.end(), rng);
    std::vector<PLMap> br;
    for (int r = 0; r < S.dims[i]; ++r)
      br.push_back(PLMap({Rational(0), make_rational(1, 2), Rational(1)},
                         {left[r], make_rational(v(rng), 4), right[r]}));
    f.branches.push_back(br);
  }
  return f;
}

PatternHom single_cell_map(const Presentation& S, const Presentation& T, std::vector<Track> tracks) {
  PatternHom phi;
  phi.source = S;
  phi.target = T;
  phi.domain = full_spectrum(T);
  Cell c{Rational(0), Rational(1), std::move(tracks), 0};
  std::sort(c.tracks.begin(), c.tracks.end());
  for (int side = 0; side < 2; ++side)
    phi.vertex_spec[side] = boundary_rewrite(S, cell_spectrum(c, Rational(side), S));
  phi.pieces.push_back(PiecePattern{0, Interval{Rational(0), Rational(1)}, {c}});
  return phi;
}

}  // namespace

ChainSpec random_chain(std::uint64_t seed, int stages) {
  require(stages >= 2, ErrorKind::invalid_input, "random_chain: need at least two stages");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> mult(1, 2), coin(0, 5), th(0, 1);
  ChainSpec spec;
  spec.seed = seed;
  int size = 1;
  spec.stages.push_back(interval_presentation(size));
  for (int n = 1; n < stages; ++n) {
    const int r = mult(rng);
    Presentation S = spec.stages.back(), T = interval_presentation(size * r);
    std::vector<Track> tracks;
    for (int q = 0; q < r; ++q)
      tracks.push_back(coin(rng) == 0 ? Track::theta(th(rng)) : Track::block(0, random_track(rng)));
    spec.maps.push_back(single_cell_map(S, T, std::move(tracks)));
    spec.stages.push_back(T);
    size *= r;
  }
  for (const auto& P : spec.stages) {
    std::vector<ProfileElement> d;
    for (int q = 0; q < 3; ++q) d.push_back(random_element(rng, P));
    spec.dense_sets.push_back(std::move(d));
  }
  return spec;
}

ChainSpec half_interval_chain() {
  Presentation P = interval_presentation(1);
  ChainSpec spec;
  spec.stages = {P, P};
  spec.maps.push_back(single_cell_map(P, P, {Track::block(0, PLMap({Rational(0), Rational(1)},
                                                                   {Rational(0), make_rational(1, 2)}))}));
  ProfileElement id = scalar_profile(P, PLMap({Rational(0), Rational(1)}, {Rational(0), Rational(1)}));
  spec.dense_sets = {{id}, {id}};
  spec.eps_schedule = {make_rational(1, 2), make_rational(1, 4)};
  return spec;
}

}  // namespace etalg
