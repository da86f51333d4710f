#include "opmc/instance.hpp"

#include <fstream>
#include <sstream>

#include "opmc/error.hpp"

namespace opmc {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(Reason::parse, where + ": " + what);
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing \"") + key + "\"");
  return j.at(key);
}

int need_int(const Json& j, const char* key, const std::string& where) {
  const auto& v = need(j, key, where);
  if (!v.is_number_integer()) bad(where + "/" + key, "expected an integer");
  return v.get<int>();
}

std::string need_str(const Json& j, const char* key, const std::string& where) {
  const auto& v = need(j, key, where);
  if (!v.is_string()) bad(where + "/" + key, "expected a string");
  return v.get<std::string>();
}

Scalar scalar_from_json(const Ring& R, const Json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return R.from_int(j.get<std::int64_t>());
    if (j.is_string()) return R.parse(j.get<std::string>());
  } catch (const Error& e) {
    bad(where, e.what());
  }
  bad(where, "expected a scalar (string or integer)");
}

Json sparse_to_json(const Ring& R, const OrbitModule& M, const Sparse<int>& x) {
  Json o = Json::object();
  for (const auto& [i, c] : x.terms) o[M.at(i).name] = R.to_string(c);
  return o;
}

Sparse<int> sparse_from_json(const Ring& R, const OrbitModule& M, const Json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object of name: scalar");
  Sparse<int> out;
  for (const auto& [name, c] : j.items()) {
    int idx;
    try {
      idx = M.index_of(name);
    } catch (const Error&) {
      bad(where, "unknown cooperad basis element " + name);
    }
    out.add(R, idx, scalar_from_json(R, c, where + "/" + name));
  }
  return out;
}

}  // namespace

Ring ring_from_json(const Json& j) {
  std::string kind = need_str(j, "kind", "/ring");
  if (kind == "integers") return Ring(RingSpec{RingKind::integers, 0});
  if (kind == "rationals") return Ring(RingSpec{RingKind::rationals, 0});
  if (kind == "integers-mod") {
    int m = need_int(j, "modulus", "/ring");
    return Ring(RingSpec{RingKind::integers_mod, m});
  }
  bad("/ring/kind", "unknown ring kind " + kind);
}

Json ring_to_json(const Ring& R) {
  switch (R.spec().kind) {
    case RingKind::integers: return {{"kind", "integers"}};
    case RingKind::rationals: return {{"kind", "rationals"}};
    case RingKind::integers_mod: return {{"kind", "integers-mod"}, {"modulus", R.spec().modulus}};
  }
  return {};
}

HopfCooperad cooperad_from_builder(const Ring& R, const Json& spec) {
  std::string fam = need_str(spec, "builder", "/cooperad");
  int rmax = need_int(spec, "rmax", "/cooperad");
  if (fam == "ass") return ass_cochains(R, rmax);
  if (fam == "com") return com_cochains(R, rmax);
  if (fam == "be") {
    int n = need_int(spec, "n", "/cooperad");
    int dmax = spec.contains("dmax") ? need_int(spec, "dmax", "/cooperad") : 1000;
    return barratt_eccles(R, n, rmax, dmax);
  }
  bad("/cooperad/builder", "unknown builder " + fam);
}

Json cooperad_tables_to_json(const HopfCooperad& hc) {
  const auto& C = hc.C;
  const Ring& R = C.ring;
  Json t;
  t["family"] = C.family;
  t["rmax"] = C.rmax;
  t["dmin"] = C.dmin;
  t["dmax"] = C.dmax;
  t["degree_complete"] = C.degree_complete;
  Json ar = Json::array();
  for (int r = 0; r <= C.rmax; ++r) {
    const auto& M = C.at(r);
    Json a;
    a["arity"] = r;
    a["mode"] = M.mode() == NormMode::free_sum ? "free" : "average";
    Json basis = Json::array();
    for (int b = 0; b < M.size(); ++b) {
      Json e{{"name", M.at(b).name}, {"degree", M.at(b).degree}};
      if (C.has_labels()) {
        Json s = Json::array();
        for (const auto& p : C.labels[r][b]) s.push_back(p.images());
        e["simplex"] = s;
      }
      basis.push_back(e);
    }
    a["basis"] = basis;
    a["action"] = M.action_table();
    Json cc = Json::array();
    for (int c = 0; c < M.size(); ++c) {
      Json terms = Json::array();
      for (const auto& t2 : C.terms(r, c)) {
        int k = static_cast<int>(t2.shape.inner.size());
        Json inner = Json::array();
        for (const auto& b : t2.shape.inner) inner.push_back(Json::array({b.arity, C.name(b)}));
        terms.push_back({{"outer", C.at(k).at(t2.shape.outer).name}, {"inner", inner}, {"coeff", R.to_string(t2.coeff)}});
      }
      cc.push_back({{"element", M.at(c).name}, {"terms", terms}});
    }
    a["cocomposition"] = cc;
    if (C.has_differential()) {
      Json d = Json::array();
      for (int c = 0; c < M.size(); ++c)
        if (!C.differential(r, c).empty())
          d.push_back({{"element", M.at(c).name}, {"value", sparse_to_json(R, M, C.differential(r, c))}});
      a["differential"] = d;
    }
    ar.push_back(a);
  }
  t["arities"] = ar;
  Json eta = Json::array(), mu = Json::array();
  for (int r = 0; r < static_cast<int>(hc.H.eta.size()); ++r)
    eta.push_back({{"arity", r}, {"value", sparse_to_json(R, C.at(r), hc.H.eta[r])}});
  for (int r = 0; r < static_cast<int>(hc.H.mu.size()); ++r)
    for (const auto& [ab, v] : hc.H.mu[r])
      if (!v.empty())
        mu.push_back({{"arity", r},
                      {"a", C.at(r).at(ab.first).name},
                      {"b", C.at(r).at(ab.second).name},
                      {"value", sparse_to_json(R, C.at(r), v)}});
  t["hopf"] = {{"eta", eta}, {"mu", mu}};
  return t;
}

HopfCooperad cooperad_from_tables(const Ring& R, const Json& t) {
  const std::string W = "/cooperad/tables";
  HopfCooperad hc;
  auto& C = hc.C;
  C.ring = R;
  C.family = t.contains("family") ? need_str(t, "family", W) : "tables";
  C.rmax = need_int(t, "rmax", W);
  C.dmin = t.contains("dmin") ? need_int(t, "dmin", W) : 0;
  C.dmax = t.contains("dmax") ? need_int(t, "dmax", W) : 0;
  C.degree_complete = t.contains("degree_complete") ? t.at("degree_complete").get<bool>() : true;
  const auto& ar = need(t, "arities", W);
  if (!ar.is_array() || static_cast<int>(ar.size()) != C.rmax + 1) bad(W + "/arities", "need one entry per arity 0..rmax");
  bool labels = true, diff = false;
  for (int r = 0; r <= C.rmax; ++r) {
    const auto& a = ar[r];
    std::string w = W + "/arities/" + std::to_string(r);
    if (need_int(a, "arity", w) != r) bad(w, "arities must be listed in order");
    std::vector<BasisElement> basis;
    std::vector<BESimplex> lab;
    for (const auto& e : need(a, "basis", w)) {
      basis.push_back({need_str(e, "name", w + "/basis"), need_int(e, "degree", w + "/basis"), 1});
      if (e.contains("simplex")) {
        BESimplex s;
        for (const auto& p : e.at("simplex")) s.push_back(Permutation(p.get<std::vector<int>>()));
        lab.push_back(std::move(s));
      } else {
        labels = false;
      }
    }
    auto action = need(a, "action", w).get<std::vector<std::vector<int>>>();
    std::string mode = a.contains("mode") ? need_str(a, "mode", w) : "free";
    try {
      C.comp.emplace_back(r, std::move(basis), std::move(action),
                          mode == "average" ? NormMode::rational_average : NormMode::free_sum);
    } catch (const Error& e) {
      bad(w, e.what());
    }
    C.labels.push_back(std::move(lab));
    if (a.contains("differential")) diff = true;
  }
  C.cocomp.resize(C.rmax + 1);
  if (diff) C.diff.resize(C.rmax + 1);
  for (int r = 0; r <= C.rmax; ++r) {
    const auto& a = ar[r];
    const auto& M = C.at(r);
    std::string w = W + "/arities/" + std::to_string(r);
    C.cocomp[r].resize(M.size());
    if (diff) C.diff[r].resize(M.size());
    for (const auto& ce : need(a, "cocomposition", w)) {
      std::string name = need_str(ce, "element", w + "/cocomposition");
      int c;
      try {
        c = M.index_of(name);
      } catch (const Error&) {
        bad(w + "/cocomposition", "unknown element " + name);
      }
      for (const auto& tm : need(ce, "terms", w + "/cocomposition/" + name)) {
        std::string wt = w + "/cocomposition/" + name;
        CocompTerm term;
        const auto& inner = need(tm, "inner", wt);
        int k = static_cast<int>(inner.size());
        if (k > C.rmax) bad(wt, "outer arity beyond rmax");
        try {
          term.shape.outer = C.at(k).index_of(need_str(tm, "outer", wt));
          for (const auto& b : inner) {
            int ba = b.at(0).get<int>();
            if (ba < 0 || ba > C.rmax) bad(wt, "inner arity out of range");
            term.shape.inner.push_back({ba, C.at(ba).index_of(b.at(1).get<std::string>())});
          }
        } catch (const Error& e) {
          if (e.reason() == Reason::parse) throw;
          bad(wt, e.what());
        }
        term.coeff = scalar_from_json(R, need(tm, "coeff", wt), wt + "/coeff");
        C.cocomp[r][c].push_back(std::move(term));
      }
    }
    if (diff && a.contains("differential"))
      for (const auto& de : a.at("differential")) {
        std::string name = need_str(de, "element", w + "/differential");
        int c;
        try {
          c = M.index_of(name);
        } catch (const Error&) {
          bad(w + "/differential", "unknown element " + name);
        }
        C.diff[r][c] = sparse_from_json(R, M, need(de, "value", w + "/differential"), w + "/differential/" + name);
      }
  }
  if (!labels) C.labels.clear();
  C.finalize();
  auto& H = hc.H;
  H.mu.resize(C.rmax + 1);
  H.eta.resize(C.rmax + 1);
  if (t.contains("hopf")) {
    const auto& h = t.at("hopf");
    if (h.contains("eta"))
      for (const auto& e : h.at("eta")) {
        int r = need_int(e, "arity", W + "/hopf/eta");
        if (r < 0 || r > C.rmax) bad(W + "/hopf/eta", "arity out of range");
        H.eta[r] = sparse_from_json(R, C.at(r), need(e, "value", W + "/hopf/eta"), W + "/hopf/eta");
      }
    if (h.contains("mu"))
      for (const auto& e : h.at("mu")) {
        std::string w = W + "/hopf/mu";
        int r = need_int(e, "arity", w);
        if (r < 0 || r > C.rmax) bad(w, "arity out of range");
        try {
          int a = C.at(r).index_of(need_str(e, "a", w));
          int b = C.at(r).index_of(need_str(e, "b", w));
          H.mu[r][{a, b}] = sparse_from_json(R, C.at(r), need(e, "value", w), w);
        } catch (const Error& x) {
          if (x.reason() == Reason::parse) throw;
          bad(w, x.what());
        }
      }
  }
  return hc;
}

Element element_from_json(const GradedModule& V, const Json& j, const std::string& where) {
  const Ring& R = V.ring();
  Element out;
  if (j.is_number_integer() && j.get<int>() == 0) return out;
  if (!j.is_object()) bad(where, "expected an object of name: scalar");
  for (const auto& [name, c] : j.items()) {
    if (!V.has(name)) bad(where, "unknown generator " + name);
    out.add(R, V.index_of(name), scalar_from_json(R, c, where + "/" + name));
  }
  return out;
}

Json element_to_json(const GradedModule& V, const Element& x) {
  Json o = Json::object();
  for (const auto& [i, c] : x.terms) o[V.at(i).name] = V.ring().to_string(c);
  return o;
}

Element element_from_text(const GradedModule& V, const std::string& s) {
  const Ring& R = V.ring();
  Element out;
  if (s.empty() || s == "0") return out;
  if (s.front() == '{') return element_from_json(V, Json::parse(s), "--element");
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    std::string name = item.substr(0, colon);
    Scalar c = R.one();
    if (colon != std::string::npos) {
      try {
        c = R.parse(item.substr(colon + 1));
      } catch (const Error& e) {
        bad("--element", e.what());
      }
    }
    if (!V.has(name)) bad("--element", "unknown generator " + name);
    out.add(R, V.index_of(name), c);
  }
  return out;
}

std::unique_ptr<Instance> instance_from_json(const Json& j) {
  if (!j.is_object()) bad("/", "expected an object");
  if (!j.contains("schema") || j.at("schema") != kInstanceSchema)
    bad("/schema", std::string("expected \"") + kInstanceSchema + "\"");
  auto I = std::make_unique<Instance>();
  I->ring = ring_from_json(need(j, "ring", "/"));
  const auto& cj = need(j, "cooperad", "/");
  try {
    if (cj.contains("tables")) {
      I->hc = cooperad_from_tables(I->ring, cj.at("tables"));
      I->cooperad_spec = nullptr;
    } else {
      I->hc = cooperad_from_builder(I->ring, cj);
      I->cooperad_spec = cj;
    }
  } catch (const Json::exception& e) {
    bad("/cooperad", e.what());
  }
  std::vector<BasisElement> basis;
  for (const auto& e : need(j, "module", "/"))
    basis.push_back({need_str(e, "name", "/module"), need_int(e, "degree", "/module"), need_int(e, "weight", "/module")});
  try {
    I->V = GradedModule(I->ring, basis);
  } catch (const Error& e) {
    bad("/module", e.what());
  }
  int mw = I->V.size() ? I->V.max_weight() : 1;
  I->wmax = mw;
  if (j.contains("options") && j.at("options").contains("wmax")) I->wmax = need_int(j.at("options"), "wmax", "/options");
  I->F = std::make_unique<CofreeCoalgebra>(I->hc.C, I->V, I->wmax);
  const auto& C = I->hc.C;
  if (j.contains("coderivation"))
    for (std::size_t n = 0; n < j.at("coderivation").size(); ++n) {
      const auto& e = j.at("coderivation")[n];
      std::string w = "/coderivation/" + std::to_string(n);
      int r = need_int(e, "arity", w);
      if (r < 0 || r > C.rmax) bad(w, "arity out of range");
      ClassKey k{r, 0, {}};
      try {
        k.c = C.at(r).index_of(need_str(e, "element", w));
      } catch (const Error& x) {
        if (x.reason() == Reason::parse) throw;
        bad(w, x.what());
      }
      const auto& ins = need(e, "inputs", w);
      if (!ins.is_array() || static_cast<int>(ins.size()) != r) bad(w, "need one input per arity");
      for (const auto& nm : ins) {
        if (!nm.is_string() || !I->V.has(nm.get<std::string>())) bad(w, "unknown generator " + nm.dump());
        k.v.push_back(I->V.index_of(nm.get<std::string>()));
      }
      auto val = element_from_json(I->V, need(e, "value", w), w + "/value");
      Element old = I->Q.value(*I->F, k);
      old.add_all(I->ring, val, I->ring.one());
      try {
        I->Q.set(*I->F, k, old);
      } catch (const Error& x) {
        bad(w, x.what());
      }
    }
  return I;
}

std::unique_ptr<Instance> load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

Json instance_to_json(const Instance& I, bool explicit_tables) {
  Json j;
  j["schema"] = kInstanceSchema;
  j["ring"] = ring_to_json(I.ring);
  if (!explicit_tables && !I.cooperad_spec.is_null())
    j["cooperad"] = I.cooperad_spec;
  else
    j["cooperad"] = {{"tables", cooperad_tables_to_json(I.hc)}};
  Json mod = Json::array();
  for (const auto& b : I.V.basis()) mod.push_back({{"name", b.name}, {"degree", b.degree}, {"weight", b.weight}});
  j["module"] = mod;
  j["options"] = {{"wmax", I.wmax}};
  Json q = Json::array();
  const auto& C = I.hc.C;
  for (const auto& [k, v] : I.Q.values) {
    if (v.empty()) continue;
    Json ins = Json::array();
    for (int i : k.v) ins.push_back(I.V.at(i).name);
    q.push_back({{"arity", k.arity},
                 {"element", C.at(k.arity).at(k.c).name},
                 {"inputs", ins},
                 {"value", element_to_json(I.V, v)}});
  }
  j["coderivation"] = q;
  return j;
}

Report validate_instance(const Instance& I, bool check_morphism) {
  Report rep;
  const auto& C = I.hc.C;
  auto merge = [&](const Report& r, const std::string& pre) {
    for (const auto& c : r.checks) rep.add(pre + c.law, c.pass, c.witness, c.note);
  };
  merge(validate_cooperad(C), "cooperad.");
  merge(validate_hopf(C, I.hc.H), "hopf.");
  if (check_morphism && C.has_labels() && C.family != "be-inf") {
    try {
      auto E = be_operad(0, C.rmax, -C.dmin);
      auto Ec = simplicial_cochain_cooperad(C.ring, E);
      merge(validate_morphism(einfty_to_en_morphism(Ec.C, C)), "morphism.");
    } catch (const Error& e) {
      rep.add("morphism", true, "", std::string("skipped: ") + e.what());
    }
  }
  auto comp = completeness_check(*I.F, I.Q, -1);
  rep.add("completeness", comp.complete, comp.witness);
  if (comp.complete) {
    auto sq = square_check(*I.F, I.Q);
    rep.add("square-zero", sq.ok, sq.witness);
  }
  return rep;
}

Json simplex_to_json(const GradedModule& V, const ConvolutionElement& psi) {
  Json vals = Json::array();
  for (const auto& [F, v] : psi.values) vals.push_back({{"face", F}, {"value", element_to_json(V, v)}});
  return {{"schema", kSimplexSchema}, {"n", psi.n}, {"values", vals}};
}

ConvolutionElement simplex_from_json(const GradedModule& V, const Json& j) {
  if (!j.contains("schema") || j.at("schema") != kSimplexSchema)
    bad("/schema", std::string("expected \"") + kSimplexSchema + "\"");
  ConvolutionElement psi{need_int(j, "n", "/"), 0, {}};
  for (const auto& e : need(j, "values", "/")) {
    auto F = need(e, "face", "/values").get<Face>();
    for (std::size_t i = 0; i < F.size(); ++i)
      if (F[i] < 0 || F[i] > psi.n || (i && F[i] <= F[i - 1])) bad("/values", "faces must be increasing vertex lists in [0, n]");
    if (F.empty()) bad("/values", "empty face");
    psi.set(F, element_from_json(V, need(e, "value", "/values"), "/values/value"));
  }
  return psi;
}

Json horn_to_json(const GradedModule& V, const HornData& h) {
  Json j = simplex_to_json(V, h.phi);
  j["k"] = h.k;
  return j;
}

HornData horn_from_json(const GradedModule& V, const Json& j) {
  auto psi = simplex_from_json(V, j);
  return {psi.n, need_int(j, "k", "/"), psi};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Reason::parse, path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw Error(Reason::parse, path + ": " + e.what());
  }
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace opmc
