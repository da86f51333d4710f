#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "opmc/instance.hpp"
#include "opmc/twisting.hpp"

using namespace opmc;

namespace {

void emit(const Json& j, const std::string& out) {
  std::string s = dump_canonical(j);
  if (out.empty()) {
    std::cout << s;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(Reason::precondition, out + ": cannot open for writing");
  f << s;
  if (!f) throw Error(Reason::precondition, out + ": write failed");
}

std::unique_ptr<Instance> load_valid(const std::string& path, bool morphism = false) {
  auto I = load_instance(path);
  auto rep = validate_instance(*I, morphism);
  if (!rep.ok()) {
    const auto* f = rep.first_failure();
    Reason why = Reason::validation;
    if (f->law == "completeness") why = Reason::completeness;
    throw Error(why, f->law + ": " + f->witness);
  }
  return I;
}

Ring ring_from_text(const std::string& s) {
  if (s == "Z") return Ring(RingSpec{RingKind::integers, 0});
  if (s == "Q") return Ring(RingSpec{RingKind::rationals, 0});
  if (s.rfind("Z/", 0) == 0) {
    try {
      return Ring(RingSpec{RingKind::integers_mod, std::stoi(s.substr(2))});
    } catch (const std::logic_error&) {
    }
  }
  throw Error(Reason::parse, "--ring: expected Z, Q or Z/m, got " + s);
}

Face face_from_text(const std::string& s) {
  Face F;
  std::stringstream ss(s);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) F.push_back(std::stoi(item));
  } catch (const std::logic_error&) {
    throw Error(Reason::parse, "--face: expected comma separated vertices");
  }
  return F;
}

Json report_json(const Report& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json e{{"law", c.law}, {"pass", c.pass}};
    if (!c.witness.empty()) e["witness"] = c.witness;
    if (!c.note.empty()) e["note"] = c.note;
    checks.push_back(e);
  }
  return {{"ok", rep.ok()}, {"checks", checks}};
}

Json elements_json(const GradedModule& V, const std::vector<Element>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(element_to_json(V, x));
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"opmc: twisting and Maurer-Cartan computations over Hopf cooperads"};
  app.require_subcommand(1);
  std::string out;

  std::string inst;
  auto* validate = app.add_subcommand("validate", "run the validator cascade on an instance");
  validate->add_option("instance", inst, "instance file")->required();
  bool no_morphism = false;
  validate->add_flag("--no-morphism", no_morphism, "skip the E_inf morphism check");

  auto* build = app.add_subcommand("build-cooperad", "print a cooperad block");
  std::string family, ring_text = "Z";
  int bn = 2, rmax = 3, dmax = 1000;
  bool tables = false;
  build->add_option("--family", family)->required()->check(CLI::IsMember({"ass", "com", "be"}));
  build->add_option("--n", bn);
  build->add_option("--rmax", rmax);
  build->add_option("--dmax", dmax);
  build->add_option("--ring", ring_text);
  build->add_flag("--tables", tables, "write explicit tables");
  build->add_option("--out", out);

  std::string element = "0";
  auto* twist_cmd = app.add_subcommand("twist", "print the instance with the twisted coderivation");
  twist_cmd->add_option("--instance", inst)->required();
  twist_cmd->add_option("--element", element)->required();
  twist_cmd->add_option("--out", out);

  bool enumerate = false;
  auto* mc = app.add_subcommand("mc", "Maurer-Cartan residual or enumeration");
  mc->add_option("--instance", inst)->required();
  mc->add_flag("--enumerate", enumerate);
  mc->add_option("--element", element);
  mc->add_option("--out", out);

  int n = 1, k = 0;
  std::string check_file;
  auto* mcs = app.add_subcommand("mc-simplicial", "Maurer-Cartan simplices");
  mcs->add_option("--instance", inst)->required();
  mcs->add_option("--n", n)->check(CLI::Range(0, 6));
  mcs->add_flag("--enumerate", enumerate);
  mcs->add_option("--check", check_file, "simplex file to verify");
  mcs->add_option("--out", out);

  std::string horn_file, top = "0";
  auto* horn = app.add_subcommand("horn-fill", "fill a horn");
  horn->add_option("--instance", inst)->required();
  horn->add_option("--n", n)->required()->check(CLI::Range(1, 6));
  horn->add_option("--k", k)->required();
  horn->add_option("--horn", horn_file)->required();
  horn->add_option("--top", top, "value on the top cell");
  horn->add_option("--out", out);

  int trials = 20, nmax = 3;
  std::uint64_t seed = 12345;
  auto* kan = app.add_subcommand("kan-check", "fill random horns");
  kan->add_option("--instance", inst)->required();
  kan->add_option("--trials", trials)->check(CLI::PositiveNumber);
  kan->add_option("--seed", seed);
  kan->add_option("--nmax", nmax)->check(CLI::Range(1, 4));

  std::string face_text;
  int r = 2;
  auto* dec = app.add_subcommand("decompose-simplex", "C-coalgebra decomposition of a face");
  dec->add_option("--instance", inst)->required();
  dec->add_option("--face", face_text)->required();
  dec->add_option("--r", r)->check(CLI::NonNegativeNumber);

  auto* exp_cmd = app.add_subcommand("export", "re-emit an instance canonically");
  exp_cmd->add_option("--instance", inst)->required();
  exp_cmd->add_flag("--tables", tables);
  exp_cmd->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*validate) {
      auto I = load_instance(inst);
      auto rep = validate_instance(*I, !no_morphism);
      emit(report_json(rep), "");
      if (!rep.ok()) {
        const auto* f = rep.first_failure();
        std::cerr << "error: " << (f->law == "completeness" ? "completeness" : "validation") << ": " << f->law
                  << ": " << f->witness << "\n";
        return 1;
      }
    } else if (*build) {
      Ring R = ring_from_text(ring_text);
      Json spec{{"builder", family}, {"rmax", rmax}};
      if (family == "be") {
        spec["n"] = bn;
        spec["dmax"] = dmax;
      }
      auto hc = cooperad_from_builder(R, spec);
      auto rep = validate_cooperad(hc.C);
      if (!rep.ok()) throw Error(Reason::internal, "builder output fails validation: " + rep.first_failure()->law);
      Json j{{"ring", ring_to_json(R)}};
      j["cooperad"] = tables ? Json{{"tables", cooperad_tables_to_json(hc)}} : spec;
      emit(j, out);
    } else if (*twist_cmd) {
      auto I = load_valid(inst);
      Element v = element_from_text(I->V, element);
      I->Q = twist(*I->F, I->hc.H, I->Q, v);
      emit(instance_to_json(*I), out);
    } else if (*mc) {
      auto I = load_valid(inst);
      if (enumerate) {
        auto xs = mc_enumerate(*I->F, I->hc.H, I->Q);
        emit({{"mc_elements", elements_json(I->V, xs)}}, out);
      } else {
        Element v = element_from_text(I->V, element);
        Element res = mc_residual(*I->F, I->hc.H, I->Q, v);
        emit({{"element", element_to_json(I->V, v)}, {"residual", element_to_json(I->V, res)}, {"mc", res.empty()}},
             out);
      }
    } else if (*mcs) {
      auto I = load_valid(inst);
      if (!check_file.empty()) {
        auto psi = simplex_from_json(I->V, read_json_file(check_file));
        McSpace S(*I->F, I->Q, std::max(psi.n, 1));
        auto c = S.mc_check(psi);
        Json j{{"mc", c.ok}};
        if (!c.ok) j["witness"] = c.witness;
        emit(j, out);
        if (!c.ok) {
          std::cerr << "error: validation: not a Maurer-Cartan simplex: " << c.witness << "\n";
          return 1;
        }
      } else {
        if (!enumerate) throw Error(Reason::parse, "mc-simplicial needs --enumerate or --check");
        McSpace S(*I->F, I->Q, std::max(n, 1));
        Json a = Json::array();
        for (const auto& psi : S.mc_simplices(n)) a.push_back(simplex_to_json(I->V, psi));
        emit({{"n", n}, {"simplices", a}}, out);
      }
    } else if (*horn) {
      auto I = load_valid(inst);
      auto h = horn_from_json(I->V, read_json_file(horn_file));
      if (h.n != n || h.k != k) throw Error(Reason::precondition, "horn file does not match --n/--k");
      McSpace S(*I->F, I->Q, n);
      auto res = S.horn_fill(h, element_from_text(I->V, top));
      Json j = simplex_to_json(I->V, res.psi);
      j["iterations"] = res.iterations;
      emit(j, out);
    } else if (*kan) {
      auto I = load_valid(inst);
      McSpace S(*I->F, I->Q, nmax);
      auto rep = S.kan_spot_check(trials, seed, nmax);
      emit({{"trials", rep.trials},
            {"filled", rep.filled},
            {"max_iterations", rep.max_iterations},
            {"seed", seed},
            {"failures", rep.failures}},
           "");
      if (!rep.failures.empty()) {
        std::cerr << "error: internal: " << rep.failures.front() << "\n";
        return 1;
      }
    } else if (*dec) {
      auto I = load_valid(inst);
      Face F = face_from_text(face_text);
      int m = static_cast<int>(F.size()) - 1;
      if (m < 0) throw Error(Reason::parse, "--face: empty face");
      SimplexCoalgebra SC(I->hc.C, m);
      const auto& C = I->hc.C;
      if (r > C.rmax) throw Error(Reason::truncation, "--r exceeds the cooperad arity bound");
      Json terms = Json::array();
      for (const auto& [t, c] : SC.decompose(F, r).terms)
        terms.push_back({{"element", C.at(r).at(t.c).name}, {"faces", t.faces}, {"coeff", I->ring.to_string(c)}});
      emit({{"face", F}, {"r", r}, {"terms", terms}}, "");
    } else if (*exp_cmd) {
      auto I = load_valid(inst, true);
      emit(instance_to_json(*I, tables), out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << reason_name(e.reason()) << ": " << e.what() << "\n";
    return e.reason() == Reason::parse ? 2 : 1;
  } catch (const Json::exception& e) {
    std::cerr << "error: parse: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
