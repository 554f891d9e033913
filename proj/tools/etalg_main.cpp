#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "etalg/bridge.hpp"
#include "etalg/discretization.hpp"
#include "etalg/error.hpp"
#include "etalg/json_io.hpp"
#include "etalg/pairing.hpp"
#include "etalg/restriction.hpp"
#include "etalg/rewriter.hpp"
#include "etalg/selftest.hpp"

using namespace etalg;

namespace {

enum Exit { ok = 0, validation = 1, schema = 2, internal = 3 };

Json read_json(const std::string& file) {
  std::ifstream in(file);
  if (!in) fail(ErrorKind::schema, "cannot read " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json origin_json(const F1Origin& o) {
  static const char* kinds[] = {"theta", "stub", "interval_end", "point"};
  Json j{{"kind", kinds[int(o.kind)]}, {"index", o.index}};
  if (o.kind != F1Origin::Kind::theta) j["coord"] = rational_to_json(o.coord);
  return j;
}

int cmd_inspect(const std::string& file, bool dot) {
  Presentation P = presentation_from_json(read_json(file));
  ValidationReport rep = validate_presentation(P);
  if (dot && rep.ok) {
    std::cout << to_dot(P);
    return ok;
  }
  Json j = report_to_json(rep);
  j["p"] = P.p();
  j["l"] = P.l();
  if (rep.ok) {
    j["L"] = P.L();
    j["components"] = decompose_minimal(P).size();
  }
  emit(j);
  std::cerr << (rep.ok ? "valid presentation\n" : "invalid presentation: " + rep.violations.front().detail + "\n");
  return rep.ok ? ok : validation;
}

int cmd_ktheory(const std::string& file) {
  Presentation P = presentation_from_json(read_json(file));
  KTheoryResult k = k_theory(P);
  Json basis = Json::array(), k1 = Json::array();
  for (const auto& v : k.k0_basis) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(integer_to_json(x));
    basis.push_back(row);
  }
  for (const auto& f : k.k1_invariant_factors) k1.push_back(integer_to_json(f));
  std::cout << Json{{"k0_rank", k.k0_rank}, {"k0_basis", basis}, {"k1", k1}}.dump() << "\n";
  std::cerr << "K0 rank " << k.k0_rank << ", K1 with " << k.k1_invariant_factors.size() << " summands\n";
  return ok;
}

int cmd_decompose(const std::string& file, bool dot) {
  Presentation P = presentation_from_json(read_json(file));
  require_valid(P);
  auto parts = decompose_minimal(P);
  if (dot) {
    for (const auto& c : parts) std::cout << to_dot(c.part);
    return ok;
  }
  Json out = Json::array();
  for (const auto& c : parts)
    out.push_back(Json{{"part", presentation_to_json(c.part)}, {"f1_blocks", c.f1_blocks}, {"f2_blocks", c.f2_blocks}});
  emit(Json{{"components", out}});
  std::cerr << parts.size() << " minimal components\n";
  return ok;
}

int cmd_restrict(const std::string& pfile, const std::string& zfile) {
  Presentation P = presentation_from_json(read_json(pfile));
  require_valid(P);
  ClosedSubset Z = closedset_from_json(read_json(zfile));
  require(is_closed(P, Z), ErrorKind::invalid_input, "subset is not closed");
  RestrictionResult R = restrict_algebra(P, Z);
  std::vector<SpectrumPoint> samples;
  for (int i = 0; i < P.l(); ++i)
    for (const auto& iv : Z.pieces[i]) samples.push_back(Interior{i, (iv.lo + iv.hi) / 2});
  ValidationReport audit = audit_restriction(P, Z, R, samples);
  Json f1 = Json::array(), f2 = Json::array();
  for (const auto& o : R.f1_origin) f1.push_back(origin_json(o));
  for (const auto& o : R.f2_origin)
    f2.push_back(Json{{"block", o.block}, {"lo", rational_to_json(o.lo)}, {"hi", rational_to_json(o.hi)}});
  emit(Json{{"B", presentation_to_json(R.B)}, {"f1_origin", f1}, {"f2_origin", f2}, {"audit", report_to_json(audit)}});
  std::cerr << "restricted algebra has p=" << R.B.p() << ", l=" << R.B.l()
            << (audit.ok ? ", audit passed\n" : ", audit FAILED\n");
  return audit.ok ? ok : validation;
}

int cmd_discretize(const std::string& pfile, const std::string& yfile, const std::string& delta_text) {
  Presentation P = presentation_from_json(read_json(pfile));
  require_valid(P);
  ClosedSubset Y = closedset_from_json(read_json(yfile));
  require(is_closed(P, Y), ErrorKind::invalid_input, "subset is not closed");
  Rational delta = rational_from_json(Json(delta_text), "/delta");
  Discretization d = discretize(P, Y, delta);
  Json pairs = Json::array();
  for (const auto& ap : d.rho.skeleton.pairs) {
    Json a{{"block", ap.block}, {"ys", rational_to_json(ap.ys)}, {"yt", rational_to_json(ap.yt)}, {"edge", ap.edge}};
    if (ap.edge) {
      a["map"] = Json{{"xs", Json::array()}, {"ys", Json::array()}};
      for (std::size_t q = 0; q < ap.map.xs().size(); ++q) {
        a["map"]["xs"].push_back(rational_to_json(ap.map.xs()[q]));
        a["map"]["ys"].push_back(rational_to_json(ap.map.ys()[q]));
      }
    } else {
      a["gap_lo"] = rational_to_json(ap.gap_lo);
      a["gap_hi"] = rational_to_json(ap.gap_hi);
    }
    pairs.push_back(a);
  }
  emit(Json{{"delta", rational_to_json(delta)}, {"m", d.rho.skeleton.m}, {"Z", closedset_to_json(d.Z)}, {"pairs", pairs}});
  std::cerr << "skeleton grid " << d.rho.skeleton.m << ", " << d.rho.skeleton.pairs.size() << " adjacent pairs\n";
  return ok;
}

int cmd_pair(const std::string& pfile, const std::string& afile, const std::string& bfile, int m,
             const std::string& eps_text, bool hypothesis) {
  Presentation P = presentation_from_json(read_json(pfile));
  require_valid(P);
  FiniteSpectrum a = spectrum_from_json(read_json(afile)), b = spectrum_from_json(read_json(bfile));
  Rational eps = rational_from_json(Json(eps_text), "/eps");
  PairingResult pr = pair_spectra(P, a, b, eps, m);
  Json blocks = Json::array();
  for (const auto& bp : pr.blocks) {
    Json x = Json::array(), y = Json::array(), u = Json::array(), v = Json::array();
    for (const auto& t : bp.x) x.push_back(rational_to_json(t));
    for (const auto& t : bp.x_prime) y.push_back(rational_to_json(t));
    for (const auto& t : bp.unmatched_phi) u.push_back(rational_to_json(t));
    for (const auto& t : bp.unmatched_psi) v.push_back(rational_to_json(t));
    blocks.push_back(Json{{"block", bp.block}, {"x", x}, {"x_prime", y}, {"unmatched_phi", u},
                          {"unmatched_psi", v}, {"max_gap", rational_to_json(bp.max_gap)}});
  }
  Json j{{"eta", rational_to_json(pr.eta)}, {"max_gap", rational_to_json(pr.max_gap)},
         {"within_bound", pr.within_bound}, {"blocks", blocks}};
  if (hypothesis) {
    HypothesisCheck hc = check_pairing_hypothesis(P, a, b, eps, m, budget_from_env());
    j["hypothesis"] = Json{{"holds", hc.holds}, {"max_deviation", rational_to_json(hc.max_deviation)},
                           {"checked", hc.checked}, {"truncated", hc.truncated}};
    if (hc.worst) j["hypothesis"]["worst"] = testfn_to_json(*hc.worst);
  }
  emit(j);
  std::cerr << "bottleneck " << to_string(pr.max_gap) << (pr.within_bound ? " within" : " exceeds") << " 2 eta\n";
  return pr.within_bound ? ok : validation;
}

int cmd_check_injective(const std::string& file) {
  PatternHom phi = pattern_from_json(read_json(file));
  ValidationReport v = validate_pattern(phi);
  if (!v.ok) {
    emit(Json{{"valid", report_to_json(v)}});
    std::cerr << "pattern invalid: " << v.violations.front().detail << "\n";
    return validation;
  }
  InjectivityWitness w = is_injective(phi);
  emit(witness_to_json(w));
  std::cerr << (w.injective ? "injective\n" : "not injective\n");
  return w.injective ? ok : validation;
}

int cmd_bridge(int n, std::uint64_t seed, const std::string& eps_text, int samples) {
  BridgeInput in = random_bridge_instance(n, seed, rational_from_json(Json(eps_text), "/eps"));
  in.samples = samples;
  BridgeTrace tr = unitary_bridge(in);
  Json bounds = Json::array(), table = Json::array();
  for (const auto& b : tr.bounds)
    bounds.push_back(Json{{"name", b.name}, {"value", b.value}, {"bound", b.bound}, {"ok", b.ok}});
  for (std::size_t q = 0; q < tr.sample_t.size(); ++q)
    table.push_back(Json{{"t", tr.sample_t[q]}, {"defect", tr.sample_defect[q]}});
  emit(Json{{"seed", seed},
            {"n", tr.n},
            {"m", tr.m},
            {"eta", rational_to_json(tr.eta)},
            {"eps_prime", rational_to_json(tr.eps_prime)},
            {"group_sizes", tr.group_sizes},
            {"hypothesis_max", tr.hypothesis_max},
            {"bounds", bounds},
            {"defects", table},
            {"max_defect", tr.max_defect},
            {"endpoint_error", tr.endpoint_error},
            {"join_error", tr.join_error},
            {"ok", tr.ok}});
  std::cerr << "t        defect\n";
  for (std::size_t q = 0; q < tr.sample_t.size(); ++q)
    std::cerr << tr.sample_t[q] << "  " << tr.sample_defect[q] << "\n";
  std::cerr << "max defect " << tr.max_defect << ", endpoint error " << tr.endpoint_error
            << (tr.ok ? ", ok\n" : ", FAILED\n");
  return tr.ok ? ok : validation;
}

int cmd_rewrite_chain(const std::string& chain_file, const std::optional<std::uint64_t>& random_seed,
                      const std::string& out_file) {
  ChainSpec spec;
  if (random_seed)
    spec = random_chain(*random_seed, 3);
  else
    spec = chain_from_json(read_json(chain_file));
  RewriteCertificate cert = rewrite_chain(spec);
  Json j = certificate_to_json(cert);
  if (spec.seed) j["seed"] = *spec.seed;
  if (out_file.empty()) {
    emit(j);
  } else {
    std::ofstream out(out_file);
    if (!out) fail(ErrorKind::schema, "cannot write " + out_file);
    out << j.dump(2) << "\n";
    emit(Json{{"ok", cert.ok}, {"out", out_file}, {"stages", cert.stages.size()}});
  }
  std::cerr << cert.links.size() << " connecting maps, certificate " << (cert.ok ? "ok\n" : "FAILED\n");
  return cert.ok ? ok : validation;
}

int cmd_selftest(std::uint64_t seed) {
  SelftestReport rep = run_selftest(seed);
  Json suites = Json::array();
  for (const auto& s : rep.suites) {
    Json j{{"name", s.name}, {"checked", s.checked}, {"failures", s.failures}};
    if (s.failures) j["first_failure"] = s.first_failure;
    suites.push_back(j);
    std::cerr << (s.failures ? "FAIL " : "ok   ") << s.name << " (" << s.checked << " checks)\n";
  }
  emit(Json{{"seed", seed}, {"ok", rep.ok}, {"suites", suites}});
  return rep.ok ? ok : validation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tools for one-dimensional noncommutative CW complexes"};
  app.require_subcommand(1);
  std::string file, file2, file3, delta = "1/10", eps = "1/2", chain, out;
  bool dot = false, hypothesis = false;
  int m = 10, n = 4, samples = 32;
  std::uint64_t seed = 0, random_seed = 0;

  auto* inspect_cmd = app.add_subcommand("inspect", "validate a presentation");
  inspect_cmd->add_option("presentation", file, "presentation/v1 file")->required();
  inspect_cmd->add_flag("--dot", dot, "print the gluing graph in DOT");
  auto* ktheory_cmd = app.add_subcommand("ktheory", "K0 and K1 of a presentation");
  ktheory_cmd->add_option("presentation", file)->required();
  auto* decompose_cmd = app.add_subcommand("decompose", "minimal direct summands");
  decompose_cmd->add_option("presentation", file)->required();
  decompose_cmd->add_flag("--dot", dot);
  auto* restrict_cmd = app.add_subcommand("restrict", "restriction to a closed subset");
  restrict_cmd->add_option("presentation", file)->required();
  restrict_cmd->add_option("subset", file2, "closedset/v1 file")->required();
  auto* discretize_cmd = app.add_subcommand("discretize", "skeleton and collapse map of a closed subset");
  discretize_cmd->add_option("presentation", file)->required();
  discretize_cmd->add_option("subset", file2)->required();
  discretize_cmd->add_option("--delta", delta, "rational delta");
  auto* pair_cmd = app.add_subcommand("pair", "pair two finite spectra");
  pair_cmd->add_option("presentation", file)->required();
  pair_cmd->add_option("phi", file2, "spectrum file")->required();
  pair_cmd->add_option("psi", file3, "spectrum file")->required();
  pair_cmd->add_option("--m", m, "grid size, eta = 1/m");
  pair_cmd->add_option("--eps", eps);
  pair_cmd->add_flag("--hypothesis", hypothesis, "also check the test-function hypothesis");
  auto* injective_cmd = app.add_subcommand("check-injective", "injectivity witness of a pattern");
  injective_cmd->add_option("pattern", file, "pattern/v1 file")->required();
  auto* bridge_cmd = app.add_subcommand("bridge", "randomized unitary path verification");
  bridge_cmd->add_option("--n", n, "matrix size (1..8)");
  bridge_cmd->add_option("--seed", seed)->required();
  bridge_cmd->add_option("--eps", eps);
  bridge_cmd->add_option("--samples", samples);
  auto* rewrite_cmd = app.add_subcommand("rewrite-chain", "injective rewrite of an inductive chain");
  auto* chain_opt = rewrite_cmd->add_option("--chain", chain, "chain/v1 file");
  auto* random_opt = rewrite_cmd->add_option("--random", random_seed, "use a random three-stage chain with this seed");
  chain_opt->excludes(random_opt);
  rewrite_cmd->add_option("--out", out, "write the certificate here");
  auto* selftest_cmd = app.add_subcommand("selftest", "randomized property suites");
  selftest_cmd->add_option("--seed", seed)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : schema;
  }

  try {
    if (*inspect_cmd) return cmd_inspect(file, dot);
    if (*ktheory_cmd) return cmd_ktheory(file);
    if (*decompose_cmd) return cmd_decompose(file, dot);
    if (*restrict_cmd) return cmd_restrict(file, file2);
    if (*discretize_cmd) return cmd_discretize(file, file2, delta);
    if (*pair_cmd) return cmd_pair(file, file2, file3, m, eps, hypothesis);
    if (*injective_cmd) return cmd_check_injective(file);
    if (*bridge_cmd) return cmd_bridge(n, seed, eps, samples);
    if (*rewrite_cmd) {
      if (!*chain_opt && !*random_opt) {
        std::cerr << "rewrite-chain needs --chain or --random\n";
        return schema;
      }
      return cmd_rewrite_chain(chain, *random_opt ? std::optional<std::uint64_t>(random_seed) : std::nullopt, out);
    }
    if (*selftest_cmd) return cmd_selftest(seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::schema: return schema;
      case ErrorKind::internal: return internal;
      default: return validation;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return internal;
  }
  return schema;
}
