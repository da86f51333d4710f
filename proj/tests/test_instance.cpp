#include "doctest.h"
#include "helpers.hpp"
#include "opmc/error.hpp"
#include "opmc/instance.hpp"
#include "opmc/twisting.hpp"

using namespace opmc;
using namespace testing_support;

namespace {

Json base(const Ring& R, const Json& coop, int size, std::uint64_t seed) {
  InstanceRandom rng(seed);
  Json mod = Json::array();
  for (int i = 0; i < size; ++i)
    mod.push_back({{"name", "g" + std::to_string(i)}, {"degree", rng.uniform(-1, 1)}, {"weight", rng.uniform(1, 2)}});
  return {{"schema", kInstanceSchema}, {"ring", ring_to_json(R)}, {"cooperad", coop}, {"module", mod},
          {"options", {{"wmax", 3}}}};
}

Json ass_spec(int rmax) { return {{"builder", "ass"}, {"rmax", rmax}}; }

}  // namespace

TEST_CASE("instance: random round trip through JSON") {
  for (const Ring& R : {Z(), Zm(2), Zm(8), Q()}) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      Json coop = seed % 3 == 0 ? Json{{"builder", "be"}, {"n", 2}, {"rmax", 3}, {"dmax", 2}} : ass_spec(3);
      auto I = instance_from_json(base(R, coop, 3, seed));
      InstanceRandom rng(seed * 31);
      I->Q = rng.square_zero(*I->F, seed % 2 == 0, 0.6);
      for (bool tables : {false, true}) {
        Json j = instance_to_json(*I, tables);
        auto I2 = instance_from_json(Json::parse(dump_canonical(j)));
        CHECK(I2->V.basis() == I->V.basis());
        CHECK(I2->wmax == I->wmax);
        CHECK(I2->Q == I->Q);
        CHECK(dump_canonical(instance_to_json(*I2, tables)) == dump_canonical(j));
        if (tables) {
          CHECK(I2->hc.H.mu == I->hc.H.mu);
          CHECK(I2->hc.H.eta == I->hc.H.eta);
          CHECK(I2->hc.C.labels == I->hc.C.labels);
          CHECK(validate_instance(*I2, false).ok());
        }
      }
    }
  }
}

TEST_CASE("instance: parse errors carry a location") {
  Ring R = Zm(2);
  Json j = base(R, ass_spec(2), 2, 1);
  j["options"]["wmax"] = 2;
  j["coderivation"] = Json::array({{{"arity", 2}, {"element", "12"}, {"inputs", {"g0", "nope"}}, {"value", Json::object()}}});
  try {
    instance_from_json(j);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.reason() == Reason::parse);
    CHECK(std::string(e.what()).find("/coderivation/0") != std::string::npos);
  }
  Json k = base(R, ass_spec(2), 2, 1);
  k["schema"] = "something/2";
  CHECK_THROWS_AS(instance_from_json(k), Error);
  Json m = base(R, {{"builder", "lie"}, {"rmax", 2}}, 2, 1);
  CHECK_THROWS_AS(instance_from_json(m), Error);
}

TEST_CASE("instance: validator cascade") {
  Ring R = Zm(2);
  Json j{{"schema", kInstanceSchema},
         {"ring", ring_to_json(R)},
         {"cooperad", ass_spec(2)},
         {"module", {{{"name", "x"}, {"degree", 0}, {"weight", 1}}, {{"name", "y"}, {"degree", -1}, {"weight", 2}}}},
         {"coderivation", {{{"arity", 2}, {"element", "12"}, {"inputs", {"x", "x"}}, {"value", {{"y", "1"}}}}}}};
  auto I = instance_from_json(j);
  CHECK(validate_instance(*I).ok());

  j["coderivation"][0]["value"] = {{"x", "1"}};
  auto bad = instance_from_json(j);
  auto rep = validate_instance(*bad);
  REQUIRE(!rep.ok());
  CHECK(rep.first_failure()->law == "completeness");
  CHECK(rep.first_failure()->witness.find("12(x,x)") != std::string::npos);

  Json t = instance_to_json(*I, true);
  auto& eta = t["cooperad"]["tables"]["hopf"]["eta"];
  Json kept = Json::array();
  for (const auto& e : eta)
    if (e["arity"] != 1) kept.push_back(e);
  eta = kept;
  auto noeta = instance_from_json(t);
  auto rep2 = validate_instance(*noeta);
  REQUIRE(!rep2.ok());
  CHECK(rep2.first_failure()->law.rfind("hopf.", 0) == 0);
}

TEST_CASE("instance: elements from text") {
  Ring R = Zm(8);
  GradedModule V(R, {{"x", 0, 1}, {"y", 0, 1}});
  CHECK(element_from_text(V, "0").empty());
  Element e = element_from_text(V, "x:3,y");
  CHECK(e.coeff(0) == R.from_int(3));
  CHECK(e.coeff(1) == R.one());
  CHECK(element_from_text(V, R"({"x":"5"})").coeff(0) == R.from_int(5));
  CHECK_THROWS_AS(element_from_text(V, "q"), Error);
}

TEST_CASE("instance: filled horn survives export and reload") {
  Ring R = Zm(2);
  Json j{{"schema", kInstanceSchema},
         {"ring", ring_to_json(R)},
         {"cooperad", ass_spec(2)},
         {"module",
          {{{"name", "x"}, {"degree", 0}, {"weight", 1}},
           {{"name", "z"}, {"degree", 0}, {"weight", 1}},
           {{"name", "w"}, {"degree", -1}, {"weight", 2}}}},
         {"coderivation", {{{"arity", 2}, {"element", "12"}, {"inputs", {"x", "z"}}, {"value", {{"w", "1"}}}}}}};
  auto I = instance_from_json(j);
  McSpace S(*I->F, I->Q, 2);
  for (const auto& psi : S.mc_simplices(2)) {
    for (int k = 0; k <= 2; ++k) {
      auto h = S.horn_of(psi, k);
      auto h2 = horn_from_json(I->V, Json::parse(dump_canonical(horn_to_json(I->V, h))));
      CHECK(h2.k == k);
      CHECK(h2.phi == h.phi);
      auto fill = S.horn_fill(h2);
      auto back = simplex_from_json(I->V, Json::parse(dump_canonical(simplex_to_json(I->V, fill.psi))));
      CHECK(back == fill.psi);
      CHECK(S.mc_check(back).ok);
    }
  }
}
