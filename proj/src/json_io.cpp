#include "etalg/json_io.hpp"

#include <climits>

#include "etalg/error.hpp"

namespace etalg {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  fail(ErrorKind::schema, (path.empty() ? std::string("/") : path) + ": " + what);
}

std::string sub(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string sub(const std::string& path, std::size_t idx) { return path + "/" + std::to_string(idx); }

void check_tag(const Json& j, const std::string& path, const char* tag) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find("schema");
  if (it == j.end()) return;
  if (!it->is_string() || it->get<std::string>() != tag)
    schema_error(sub(path, "schema"), std::string("expected \"") + tag + "\"");
}

void require_tag(const Json& j, const std::string& path, const char* tag) {
  check_tag(j, path, tag);
  if (path.empty() && !j.contains("schema")) schema_error("/schema", "missing schema tag");
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(sub(path, key), "missing field");
  return *it;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array");
  return j;
}

int get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  long long v = j.get<long long>();
  if (v < INT_MIN || v > INT_MAX) schema_error(path, "integer out of range");
  return int(v);
}

bool get_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) schema_error(path, "expected a boolean");
  return j.get<bool>();
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a string");
  return j.get<std::string>();
}

Integer integer_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  std::string s = get_string(j, path);
  Integer z;
  if (s.empty() || z.set_str(s, 10) != 0) schema_error(path, "expected an integer string");
  return z;
}

std::vector<int> int_list(const Json& j, const std::string& path) {
  std::vector<int> out;
  for (std::size_t q = 0; q < array(j, path).size(); ++q) out.push_back(get_int(j[q], sub(path, q)));
  return out;
}

IntGrid int_grid(const Json& j, const std::string& path) {
  IntGrid out;
  for (std::size_t q = 0; q < array(j, path).size(); ++q) out.push_back(int_list(j[q], sub(path, q)));
  return out;
}

std::vector<Rational> rational_list(const Json& j, const std::string& path) {
  std::vector<Rational> out;
  for (std::size_t q = 0; q < array(j, path).size(); ++q)
    out.push_back(rational_from_json(j[q], sub(path, q)));
  return out;
}

Json rational_list_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rational_to_json(x));
  return a;
}

Json plmap_to_json(const PLMap& f) {
  return Json{{"xs", rational_list_json(f.xs())}, {"ys", rational_list_json(f.ys())}};
}

PLMap plmap_from_json(const Json& j, const std::string& path) {
  auto xs = rational_list(field(j, "xs", path), sub(path, "xs"));
  auto ys = rational_list(field(j, "ys", path), sub(path, "ys"));
  try {
    return PLMap(std::move(xs), std::move(ys));
  } catch (const Error& e) {
    schema_error(path, e.what());
  }
}

Json interval_to_json(const Interval& iv) {
  return Json::array({rational_to_json(iv.lo), rational_to_json(iv.hi)});
}

Interval interval_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) schema_error(path, "expected [lo, hi]");
  Interval iv{rational_from_json(j[0], sub(path, 0)), rational_from_json(j[1], sub(path, 1))};
  if (iv.lo > iv.hi) schema_error(path, "interval endpoints reversed");
  return iv;
}

Json track_to_json(const Track& t) {
  if (t.kind == Track::Kind::theta) return Json{{"theta", t.index}};
  Json j{{"block", t.index}};
  j["path"] = plmap_to_json(t.path);
  return j;
}

Track track_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  if (j.contains("theta")) return Track::theta(get_int(j["theta"], sub(path, "theta")));
  return Track::block(get_int(field(j, "block", path), sub(path, "block")),
                      plmap_from_json(field(j, "path", path), sub(path, "path")));
}

Json cell_to_json(const Cell& c) {
  Json tracks = Json::array();
  for (const auto& t : c.tracks) tracks.push_back(track_to_json(t));
  return Json{{"lo", rational_to_json(c.lo)}, {"hi", rational_to_json(c.hi)}, {"pad", c.pad},
              {"tracks", tracks}};
}

Cell cell_from_json(const Json& j, const std::string& path) {
  Cell c;
  c.lo = rational_from_json(field(j, "lo", path), sub(path, "lo"));
  c.hi = rational_from_json(field(j, "hi", path), sub(path, "hi"));
  c.pad = get_int(field(j, "pad", path), sub(path, "pad"));
  const std::string tp = sub(path, "tracks");
  const Json& ts = array(field(j, "tracks", path), tp);
  for (std::size_t q = 0; q < ts.size(); ++q) c.tracks.push_back(track_from_json(ts[q], sub(tp, q)));
  return c;
}

Json gap_to_json(const Gap& g) {
  return Json{{"block", g.block},
              {"lo", rational_to_json(g.lo)},
              {"hi", rational_to_json(g.hi)},
              {"lo_closed", g.lo_closed},
              {"hi_closed", g.hi_closed}};
}

Gap gap_from_json(const Json& j, const std::string& path) {
  Gap g;
  g.block = get_int(field(j, "block", path), sub(path, "block"));
  g.lo = rational_from_json(field(j, "lo", path), sub(path, "lo"));
  g.hi = rational_from_json(field(j, "hi", path), sub(path, "hi"));
  g.lo_closed = get_bool(field(j, "lo_closed", path), sub(path, "lo_closed"));
  g.hi_closed = get_bool(field(j, "hi_closed", path), sub(path, "hi_closed"));
  return g;
}

InjectivityWitness witness_from_json(const Json& j, const std::string& path) {
  InjectivityWitness w;
  w.injective = get_bool(field(j, "injective", path), sub(path, "injective"));
  w.image = closedset_from_json(field(j, "image", path), sub(path, "image"));
  w.missing_thetas = int_list(field(j, "missing_thetas", path), sub(path, "missing_thetas"));
  const std::string gp = sub(path, "missing_gaps");
  const Json& gs = array(field(j, "missing_gaps", path), gp);
  for (std::size_t q = 0; q < gs.size(); ++q) w.missing_gaps.push_back(gap_from_json(gs[q], sub(gp, q)));
  return w;
}

Json bundle_to_json(const ConstantBundle& b) {
  return Json{{"n", b.n},
              {"epsilon", rational_to_json(b.epsilon)},
              {"lipschitz", rational_to_json(b.lipschitz)},
              {"m", b.m},
              {"eta", rational_to_json(b.eta)},
              {"eps_prime", rational_to_json(b.eps_prime)},
              {"m1", integer_to_json(b.m1)},
              {"eta1", rational_to_json(b.eta1)}};
}

ConstantBundle bundle_from_json(const Json& j, const std::string& path) {
  ConstantBundle b;
  b.n = get_int(field(j, "n", path), sub(path, "n"));
  b.epsilon = rational_from_json(field(j, "epsilon", path), sub(path, "epsilon"));
  b.lipschitz = rational_from_json(field(j, "lipschitz", path), sub(path, "lipschitz"));
  const Json& m = field(j, "m", path);
  if (!m.is_number_integer()) schema_error(sub(path, "m"), "expected an integer");
  b.m = m.get<long>();
  b.eta = rational_from_json(field(j, "eta", path), sub(path, "eta"));
  b.eps_prime = rational_from_json(field(j, "eps_prime", path), sub(path, "eps_prime"));
  b.m1 = integer_from_json(field(j, "m1", path), sub(path, "m1"));
  b.eta1 = rational_from_json(field(j, "eta1", path), sub(path, "eta1"));
  return b;
}

Json step_to_json(const StepReport& r) {
  Json rejected = Json::array();
  for (const auto& s : r.rejected) rejected.push_back(s);
  return Json{{"delta", rational_to_json(r.delta)},
              {"skeleton_m", r.skeleton_m},
              {"halvings", r.halvings},
              {"binding", r.binding},
              {"rejected", rejected},
              {"bundle", bundle_to_json(r.bundle)},
              {"m1", integer_to_json(r.m1)},
              {"eta1", rational_to_json(r.eta1)},
              {"track_slope", rational_to_json(r.track_slope)},
              {"f_bound", rational_to_json(r.f_bound)},
              {"g_bound", rational_to_json(r.g_bound)},
              {"f_defects", rational_list_json(r.f_defects)},
              {"g_defects", rational_list_json(r.g_defects)},
              {"witness", witness_to_json(r.witness)},
              {"copied_edges", r.copied_edges},
              {"collapsed_edges", r.collapsed_edges},
              {"isolated_vertices", r.isolated_vertices}};
}

StepReport step_from_json(const Json& j, const std::string& path) {
  StepReport r;
  auto I = [&](const char* k) { return get_int(field(j, k, path), sub(path, k)); };
  auto Q = [&](const char* k) { return rational_from_json(field(j, k, path), sub(path, k)); };
  r.delta = Q("delta");
  r.skeleton_m = I("skeleton_m");
  r.halvings = I("halvings");
  r.binding = get_string(field(j, "binding", path), sub(path, "binding"));
  const std::string rp = sub(path, "rejected");
  const Json& rej = array(field(j, "rejected", path), rp);
  for (std::size_t q = 0; q < rej.size(); ++q) r.rejected.push_back(get_string(rej[q], sub(rp, q)));
  r.bundle = bundle_from_json(field(j, "bundle", path), sub(path, "bundle"));
  r.m1 = integer_from_json(field(j, "m1", path), sub(path, "m1"));
  r.eta1 = Q("eta1");
  r.track_slope = Q("track_slope");
  r.f_bound = Q("f_bound");
  r.g_bound = Q("g_bound");
  r.f_defects = rational_list(field(j, "f_defects", path), sub(path, "f_defects"));
  r.g_defects = rational_list(field(j, "g_defects", path), sub(path, "g_defects"));
  r.witness = witness_from_json(field(j, "witness", path), sub(path, "witness"));
  r.copied_edges = I("copied_edges");
  r.collapsed_edges = I("collapsed_edges");
  r.isolated_vertices = I("isolated_vertices");
  return r;
}

}  // namespace

Json rational_to_json(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Json integer_to_json(const Integer& z) {
  static const Integer limit = Integer(1) << 53;
  if (abs(z) < limit) return Json(std::stoll(z.get_str()));
  return z.get_str();
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  std::string s = get_string(j, path);
  auto slash = s.find('/');
  Integer num, den(1);
  std::string a = s.substr(0, slash);
  if (a.empty() || num.set_str(a, 10) != 0) schema_error(path, "malformed rational \"" + s + "\"");
  if (slash != std::string::npos) {
    std::string b = s.substr(slash + 1);
    if (b.empty() || b[0] == '-' || b[0] == '+' || den.set_str(b, 10) != 0 || den == 0)
      schema_error(path, "malformed rational \"" + s + "\"");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Json presentation_to_json(const Presentation& P) {
  return Json{{"schema", "presentation/v1"}, {"k", P.k},       {"dims", P.dims},
              {"alpha", P.alpha},            {"beta", P.beta}, {"unital", P.unital}};
}

Presentation presentation_from_json(const Json& j, const std::string& path) {
  require_tag(j, path, "presentation/v1");
  Presentation P;
  P.k = int_list(field(j, "k", path), sub(path, "k"));
  P.dims = int_list(field(j, "dims", path), sub(path, "dims"));
  P.alpha = int_grid(field(j, "alpha", path), sub(path, "alpha"));
  P.beta = int_grid(field(j, "beta", path), sub(path, "beta"));
  if (j.contains("unital")) P.unital = get_bool(j["unital"], sub(path, "unital"));
  if (int(P.alpha.size()) != P.l() || int(P.beta.size()) != P.l())
    schema_error(path, "alpha and beta need one row per F2 block");
  for (int i = 0; i < P.l(); ++i)
    if (int(P.alpha[i].size()) != P.p() || int(P.beta[i].size()) != P.p())
      schema_error(sub(sub(path, "alpha"), std::size_t(i)), "rows need one entry per F1 block");
  return P;
}

Json closedset_to_json(const ClosedSubset& S) {
  Json pieces = Json::array();
  for (const auto& blk : S.pieces) {
    Json b = Json::array();
    for (const auto& iv : blk) b.push_back(interval_to_json(iv));
    pieces.push_back(b);
  }
  return Json{{"schema", "closedset/v1"}, {"thetas", S.thetas}, {"pieces", pieces}};
}

ClosedSubset closedset_from_json(const Json& j, const std::string& path) {
  require_tag(j, path, "closedset/v1");
  ClosedSubset S;
  S.thetas = int_list(field(j, "thetas", path), sub(path, "thetas"));
  const std::string pp = sub(path, "pieces");
  const Json& ps = array(field(j, "pieces", path), pp);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    IntervalList blk;
    const Json& b = array(ps[i], sub(pp, i));
    for (std::size_t q = 0; q < b.size(); ++q) blk.push_back(interval_from_json(b[q], sub(sub(pp, i), q)));
    S.pieces.push_back(std::move(blk));
  }
  return S;
}

Json spectrum_to_json(const FiniteSpectrum& S) {
  Json interior = Json::array();
  for (const auto& y : S.interior) interior.push_back(Json::array({y.i, rational_to_json(y.t)}));
  return Json{{"theta_mult", S.theta_mult}, {"interior", interior}, {"zero_pad", S.zero_pad}};
}

FiniteSpectrum spectrum_from_json(const Json& j, const std::string& path) {
  FiniteSpectrum S;
  S.theta_mult = int_list(field(j, "theta_mult", path), sub(path, "theta_mult"));
  const std::string ip = sub(path, "interior");
  const Json& in = array(field(j, "interior", path), ip);
  for (std::size_t q = 0; q < in.size(); ++q) {
    if (!in[q].is_array() || in[q].size() != 2) schema_error(sub(ip, q), "expected [block, t]");
    S.interior.push_back(
        Interior{get_int(in[q][0], sub(sub(ip, q), 0)), rational_from_json(in[q][1], sub(sub(ip, q), 1))});
  }
  S.zero_pad = get_int(field(j, "zero_pad", path), sub(path, "zero_pad"));
  return S;
}

Json profile_to_json(const ProfileElement& f) {
  Json thetas = Json::array();
  for (const auto& e : f.theta_eigs) thetas.push_back(rational_list_json(e));
  Json branches = Json::array();
  for (const auto& blk : f.branches) {
    Json b = Json::array();
    for (const auto& g : blk) b.push_back(plmap_to_json(g));
    branches.push_back(b);
  }
  return Json{{"theta_eigs", thetas}, {"branches", branches}};
}

ProfileElement profile_from_json(const Json& j, const std::string& path) {
  ProfileElement f;
  const std::string tp = sub(path, "theta_eigs");
  const Json& ts = array(field(j, "theta_eigs", path), tp);
  for (std::size_t q = 0; q < ts.size(); ++q) f.theta_eigs.push_back(rational_list(ts[q], sub(tp, q)));
  const std::string bp = sub(path, "branches");
  const Json& bs = array(field(j, "branches", path), bp);
  for (std::size_t i = 0; i < bs.size(); ++i) {
    std::vector<PLMap> blk;
    const Json& b = array(bs[i], sub(bp, i));
    for (std::size_t q = 0; q < b.size(); ++q) blk.push_back(plmap_from_json(b[q], sub(sub(bp, i), q)));
    f.branches.push_back(std::move(blk));
  }
  return f;
}

Json testfn_to_json(const TestFunction& h) {
  Json j{{"schema", "testfn/v1"}};
  if (const auto* t1 = std::get_if<Type1>(&h.shape)) {
    j["type"] = 1;
    j["m"] = t1->m;
    j["j"] = t1->j;
    j["a"] = t1->a;
    j["b"] = t1->b;
  } else {
    const auto& t2 = std::get<Type2>(h.shape);
    j["type"] = 2;
    j["m"] = t2.m;
    j["i"] = t2.i;
    Json X = Json::array();
    for (const auto& [lo, hi] : t2.X) X.push_back(Json::array({lo, hi}));
    j["X"] = X;
  }
  if (h.lift) j["lift"] = Json{{"block", h.lift->block}, {"s", h.lift->s}, {"t", h.lift->t}};
  return j;
}

TestFunction testfn_from_json(const Json& j, const std::string& path) {
  require_tag(j, path, "testfn/v1");
  TestFunction h;
  int type = get_int(field(j, "type", path), sub(path, "type"));
  int m = get_int(field(j, "m", path), sub(path, "m"));
  if (type == 1) {
    Type1 t;
    t.m = m;
    t.j = get_int(field(j, "j", path), sub(path, "j"));
    t.a = int_list(field(j, "a", path), sub(path, "a"));
    t.b = int_list(field(j, "b", path), sub(path, "b"));
    h.shape = t;
  } else if (type == 2) {
    Type2 t;
    t.m = m;
    t.i = get_int(field(j, "i", path), sub(path, "i"));
    IntGrid X = int_grid(field(j, "X", path), sub(path, "X"));
    for (std::size_t q = 0; q < X.size(); ++q) {
      if (X[q].size() != 2) schema_error(sub(sub(path, "X"), q), "expected [lo, hi]");
      t.X.push_back({X[q][0], X[q][1]});
    }
    h.shape = t;
  } else {
    schema_error(sub(path, "type"), "type must be 1 or 2");
  }
  if (j.contains("lift")) {
    const Json& l = j["lift"];
    const std::string lp = sub(path, "lift");
    h.lift = MatrixUnit{get_int(field(l, "block", lp), sub(lp, "block")), get_int(field(l, "s", lp), sub(lp, "s")),
                        get_int(field(l, "t", lp), sub(lp, "t"))};
  }
  return h;
}

Json pattern_to_json(const PatternHom& phi) {
  Json vertices = Json::array();
  for (const auto& [j, S] : phi.vertex_spec) vertices.push_back(Json{{"theta", j}, {"spectrum", spectrum_to_json(S)}});
  Json pieces = Json::array();
  for (const auto& pp : phi.pieces) {
    Json cells = Json::array();
    for (const auto& c : pp.cells) cells.push_back(cell_to_json(c));
    pieces.push_back(Json{{"block", pp.block}, {"span", interval_to_json(pp.span)}, {"cells", cells}});
  }
  return Json{{"schema", "pattern/v1"},
              {"source", presentation_to_json(phi.source)},
              {"target", presentation_to_json(phi.target)},
              {"domain", closedset_to_json(phi.domain)},
              {"vertex_spec", vertices},
              {"pieces", pieces}};
}

PatternHom pattern_from_json(const Json& j, const std::string& path) {
  require_tag(j, path, "pattern/v1");
  PatternHom phi;
  phi.source = presentation_from_json(field(j, "source", path), sub(path, "source"));
  phi.target = presentation_from_json(field(j, "target", path), sub(path, "target"));
  phi.domain = closedset_from_json(field(j, "domain", path), sub(path, "domain"));
  const std::string vp = sub(path, "vertex_spec");
  const Json& vs = array(field(j, "vertex_spec", path), vp);
  for (std::size_t q = 0; q < vs.size(); ++q) {
    int th = get_int(field(vs[q], "theta", sub(vp, q)), sub(sub(vp, q), "theta"));
    if (phi.vertex_spec.count(th)) schema_error(sub(vp, q), "duplicate vertex");
    phi.vertex_spec[th] = spectrum_from_json(field(vs[q], "spectrum", sub(vp, q)), sub(sub(vp, q), "spectrum"));
  }
  const std::string pp = sub(path, "pieces");
  const Json& ps = array(field(j, "pieces", path), pp);
  for (std::size_t q = 0; q < ps.size(); ++q) {
    const std::string here = sub(pp, q);
    PiecePattern piece;
    piece.block = get_int(field(ps[q], "block", here), sub(here, "block"));
    piece.span = interval_from_json(field(ps[q], "span", here), sub(here, "span"));
    const std::string cp = sub(here, "cells");
    const Json& cs = array(field(ps[q], "cells", here), cp);
    for (std::size_t r = 0; r < cs.size(); ++r) piece.cells.push_back(cell_from_json(cs[r], sub(cp, r)));
    phi.pieces.push_back(std::move(piece));
  }
  return phi;
}

Json chain_to_json(const ChainSpec& spec) {
  Json stages = Json::array(), maps = Json::array(), dense = Json::array();
  for (const auto& P : spec.stages) stages.push_back(presentation_to_json(P));
  for (const auto& m : spec.maps) maps.push_back(pattern_to_json(m));
  for (const auto& d : spec.dense_sets) {
    Json a = Json::array();
    for (const auto& f : d) a.push_back(profile_to_json(f));
    dense.push_back(a);
  }
  Json j{{"schema", "chain/v1"},
         {"stages", stages},
         {"maps", maps},
         {"dense_sets", dense},
         {"eps_schedule", rational_list_json(spec.eps_schedule)}};
  if (spec.seed) j["seed"] = integer_to_json(Integer(std::to_string(*spec.seed)));
  return j;
}

ChainSpec chain_from_json(const Json& j, const std::string& path) {
  require_tag(j, path, "chain/v1");
  ChainSpec spec;
  const std::string sp = sub(path, "stages");
  const Json& ss = array(field(j, "stages", path), sp);
  for (std::size_t q = 0; q < ss.size(); ++q) spec.stages.push_back(presentation_from_json(ss[q], sub(sp, q)));
  const std::string mp = sub(path, "maps");
  const Json& ms = array(field(j, "maps", path), mp);
  for (std::size_t q = 0; q < ms.size(); ++q) spec.maps.push_back(pattern_from_json(ms[q], sub(mp, q)));
  const std::string dp = sub(path, "dense_sets");
  const Json& ds = array(field(j, "dense_sets", path), dp);
  for (std::size_t q = 0; q < ds.size(); ++q) {
    std::vector<ProfileElement> d;
    const Json& a = array(ds[q], sub(dp, q));
    for (std::size_t r = 0; r < a.size(); ++r) d.push_back(profile_from_json(a[r], sub(sub(dp, q), r)));
    spec.dense_sets.push_back(std::move(d));
  }
  if (j.contains("eps_schedule")) spec.eps_schedule = rational_list(j["eps_schedule"], sub(path, "eps_schedule"));
  if (j.contains("seed")) {
    Integer s = integer_from_json(j["seed"], sub(path, "seed"));
    if (s < 0 || !s.fits_ulong_p()) schema_error(sub(path, "seed"), "seed out of range");
    spec.seed = s.get_ui();
  }
  return spec;
}

Json witness_to_json(const InjectivityWitness& w) {
  Json gaps = Json::array();
  for (const auto& g : w.missing_gaps) gaps.push_back(gap_to_json(g));
  return Json{{"injective", w.injective},
              {"image", closedset_to_json(w.image)},
              {"missing_thetas", w.missing_thetas},
              {"missing_gaps", gaps}};
}

Json certificate_to_json(const RewriteCertificate& cert) {
  Json stages = Json::array(), links = Json::array(), violations = Json::array();
  for (const auto& st : cert.stages)
    stages.push_back(Json{{"B", presentation_to_json(st.B)},
                          {"Y", closedset_to_json(st.Y)},
                          {"Z", closedset_to_json(st.Z)},
                          {"delta", rational_to_json(st.delta)},
                          {"embedding", pattern_to_json(st.embedding)},
                          {"g_table", rational_list_json(st.g_table)},
                          {"g_bound", rational_to_json(st.g_bound)}});
  for (const auto& ln : cert.links)
    links.push_back(Json{{"psi", pattern_to_json(ln.psi)},
                         {"witness", witness_to_json(ln.witness)},
                         {"commutation", rational_list_json(ln.commutation)},
                         {"bound", rational_to_json(ln.bound)},
                         {"step", step_to_json(ln.step)}});
  for (const auto& v : cert.violations) violations.push_back(v);
  return Json{{"schema", "cert/v1"}, {"ok", cert.ok}, {"stages", stages}, {"links", links},
              {"violations", violations}};
}

RewriteCertificate certificate_from_json(const Json& j, const std::string& path) {
  require_tag(j, path, "cert/v1");
  RewriteCertificate cert;
  cert.ok = get_bool(field(j, "ok", path), sub(path, "ok"));
  const std::string sp = sub(path, "stages");
  const Json& ss = array(field(j, "stages", path), sp);
  for (std::size_t q = 0; q < ss.size(); ++q) {
    const std::string h = sub(sp, q);
    const Json& s = ss[q];
    StageRecord st;
    st.B = presentation_from_json(field(s, "B", h), sub(h, "B"));
    st.Y = closedset_from_json(field(s, "Y", h), sub(h, "Y"));
    st.Z = closedset_from_json(field(s, "Z", h), sub(h, "Z"));
    st.delta = rational_from_json(field(s, "delta", h), sub(h, "delta"));
    st.embedding = pattern_from_json(field(s, "embedding", h), sub(h, "embedding"));
    st.g_table = rational_list(field(s, "g_table", h), sub(h, "g_table"));
    st.g_bound = rational_from_json(field(s, "g_bound", h), sub(h, "g_bound"));
    cert.stages.push_back(std::move(st));
  }
  const std::string lp = sub(path, "links");
  const Json& ls = array(field(j, "links", path), lp);
  for (std::size_t q = 0; q < ls.size(); ++q) {
    const std::string h = sub(lp, q);
    const Json& l = ls[q];
    LinkRecord ln;
    ln.psi = pattern_from_json(field(l, "psi", h), sub(h, "psi"));
    ln.witness = witness_from_json(field(l, "witness", h), sub(h, "witness"));
    ln.commutation = rational_list(field(l, "commutation", h), sub(h, "commutation"));
    ln.bound = rational_from_json(field(l, "bound", h), sub(h, "bound"));
    ln.step = step_from_json(field(l, "step", h), sub(h, "step"));
    cert.links.push_back(std::move(ln));
  }
  const std::string vp = sub(path, "violations");
  const Json& vs = array(field(j, "violations", path), vp);
  for (std::size_t q = 0; q < vs.size(); ++q) cert.violations.push_back(get_string(vs[q], sub(vp, q)));
  return cert;
}

Json report_to_json(const ValidationReport& rep) {
  Json v = Json::array();
  for (const auto& x : rep.violations)
    v.push_back(Json{{"invariant", x.invariant}, {"index", x.index}, {"detail", x.detail}});
  return Json{{"ok", rep.ok}, {"violations", v}};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::schema, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace etalg
