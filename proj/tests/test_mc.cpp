#include "doctest.h"
#include "helpers.hpp"
#include "opmc/error.hpp"
#include "opmc/mc_space.hpp"
#include "opmc/random_instance.hpp"
#include "opmc/twisting.hpp"

using namespace opmc;
using namespace testing_support;

namespace {

ConvolutionElement random_conv(InstanceRandom& rng, const GradedModule& V, int n, int degree) {
  const Ring& R = V.ring();
  ConvolutionElement psi{n, degree, {}};
  for (const auto& I : all_faces(n)) {
    Element e;
    for (int i : V.indices_of_degree(static_cast<int>(I.size()) - 1 + degree)) e.add(R, i, rng.scalar(R));
    psi.set(I, e);
  }
  return psi;
}

ConvolutionElement combo(const Ring& R, const ConvolutionElement& a, const Scalar& ca, const ConvolutionElement& b,
                         const Scalar& cb) {
  ConvolutionElement out{a.n, a.degree, {}};
  for (const auto& [I, v] : a.values) out.add(R, I, v, ca);
  for (const auto& [I, v] : b.values) out.add(R, I, v, cb);
  return out;
}

int first_rep(const OrbitModule& M) {
  for (int b = 0; b < M.size(); ++b)
    if (M.is_rep(b)) return b;
  return -1;
}

struct Inst {
  HopfCooperad hc;
  GradedModule V;
  std::unique_ptr<CofreeCoalgebra> F;
  Coderivation Q;
};

// Flat instance over fixed degrees; even seeds use the two-step generator,
// odd seeds a conjugated square-zero coderivation.
Inst make_instance(const Ring& R, std::uint64_t seed, int which, int size = 8) {
  InstanceRandom rng(seed);
  Inst I{which == 0 ? ass_cochains(R, 3) : barratt_eccles(R, 2, 3, 3), {}, nullptr, {}};
  const int degs[] = {0, 0, 1, 1, 2, -1, 0, 1};
  const char hi[] = {0, 0, 0, 0, 0, 1, 1, 1};
  std::vector<BasisElement> b;
  std::vector<char> high;
  for (int i = 0; i < size; ++i) {
    b.push_back({"e" + std::to_string(i), degs[i], hi[i] ? rng.uniform(2, 3) : 1});
    high.push_back(hi[i]);
  }
  I.V = GradedModule(R, b);
  I.F = std::make_unique<CofreeCoalgebra>(I.hc.C, I.V, 3);
  I.Q = seed % 2 == 0 ? rng.two_step(*I.F, high, 0.5) : rng.square_zero(*I.F, false, 0.7);
  return I;
}

}  // namespace

TEST_CASE("convolution differential") {
  Ring R = Z();
  auto A = ass(R, 3);
  GradedModule V(R, {{"a", 0, 1}, {"b", 0, 1}});
  CofreeCoalgebra F(A.C(), V, 3);
  Coderivation Q;
  McSpace M(F, Q, 2);
  ConvolutionElement psi{1, 0, {}};
  psi.set({0}, vec(R, {{0, 1}}));
  psi.set({1}, vec(R, {{1, 1}}));
  auto d = M.conv_differential(psi);
  CHECK(d.degree == -1);
  CHECK(d.at({0, 1}) == vec(R, {{0, 1}, {1, -1}}));
  CHECK(d.at({0}).empty());
  for (int which = 0; which < 2; ++which) {
    auto I = make_instance(Zm(8), 40 + which, which);
    McSpace N(*I.F, I.Q, 3);
    InstanceRandom rng(5);
    for (int t = 0; t < 10; ++t) {
      auto x = random_conv(rng, I.V, 1 + t % 3, rng.uniform(-1, 1));
      CHECK(N.conv_differential(N.conv_differential(x)).values.empty());
    }
  }
}

TEST_CASE("star_iota and the MC equation on vertices") {
  for (int which = 0; which < 2; ++which) {
    Ring R = Zm(2);
    auto I = make_instance(R, 50 + which, which);
    const auto& H = I.hc.H;
    McSpace M(*I.F, I.Q, 3);
    InstanceRandom rng(51);
    for (int t = 0; t < 10; ++t) {
      auto v = rng.degree_zero_element(I.V);
      ConvolutionElement psi{0, 0, {}};
      psi.set({0}, v);
      auto star = M.star_iota(psi);
      Element lhs = star.at({0});
      lhs.add_all(R, M.conv_differential(psi).at({0}), R.one());
      CHECK(lhs == mc_residual(*I.F, H, I.Q, v));
      CHECK(M.mc_check(psi).ok == is_mc(*I.F, H, I.Q, v));
    }
    // residual = d psi + star psi, and the expansion into mu_r
    for (int t = 0; t < 5; ++t) {
      auto psi = random_conv(rng, I.V, 2, 0);
      auto chk = M.mc_check(psi);
      auto sum = M.conv_differential(psi);
      for (int r = 2; r <= 3; ++r) {
        std::vector<const ConvolutionElement*> args(r, &psi);
        for (const auto& [F, v] : M.conv_mu(args).values) sum.add(R, F, v, R.one());
      }
      CHECK(chk.residual == sum);
      CHECK(chk.ok == sum.values.empty());
    }
  }
  // only a linear part: star vanishes
  Ring R = Z();
  auto A = ass(R, 3);
  GradedModule V(R, {{"a", 0, 1}, {"b", -1, 1}});
  CofreeCoalgebra F(A.C(), V, 3);
  Coderivation Q;
  Q.set(F, {1, 0, {0}}, vec(R, {{1, 1}}));
  McSpace M(F, Q, 2);
  ConvolutionElement psi{2, 0, {}};
  psi.set({0}, vec(R, {{0, 1}}));
  psi.set({2}, vec(R, {{0, 3}}));
  CHECK(M.star_iota(psi).values.empty());
}

TEST_CASE("star_iota rejects curved coderivations") {
  Ring R = Zm(2);
  auto A = ass(R, 3);
  GradedModule V(R, {{"a", 0, 1}, {"b", -1, 1}});
  CofreeCoalgebra F(A.C(), V, 3);
  Coderivation Q;
  Q.set(F, CofreeCoalgebra::unit_key(), vec(R, {{1, 1}}));
  McSpace M(F, Q, 1);
  CHECK_THROWS_AS(M.star_iota(M.zero(1)), Error);
}

TEST_CASE("conv_mu: multilinear, zero argument, mu_2 is a cocycle") {
  for (int which = 0; which < 2; ++which) {
    Ring R = Z();
    auto I = make_instance(R, 60 + which, which);
    McSpace M(*I.F, I.Q, 3);
    InstanceRandom rng(61);
    for (int t = 0; t < 8; ++t) {
      int n = 1 + t % 3;
      auto a = random_conv(rng, I.V, n, rng.uniform(-1, 1));
      auto b = random_conv(rng, I.V, n, a.degree);
      auto c = random_conv(rng, I.V, n, rng.uniform(-1, 1));
      Scalar x = rng.scalar(R), y = rng.scalar(R);
      auto ab = combo(R, a, x, b, y);
      auto lhs = M.conv_mu({&ab, &c});
      auto ma = M.conv_mu({&a, &c}), mb = M.conv_mu({&b, &c});
      CHECK(lhs == combo(R, ma, x, mb, y));
      auto z = M.zero(n, 0);
      CHECK(M.conv_mu({&z, &c}).values.empty());
      // d mu_2(a, c) + mu_2(da, c) + (-1)^{|a|} mu_2(a, dc) = 0
      auto da = M.conv_differential(a), dc = M.conv_differential(c);
      auto s = M.conv_differential(M.conv_mu({&a, &c}));
      auto m1 = M.conv_mu({&da, &c}), m2 = M.conv_mu({&a, &dc});
      for (const auto& [F, v] : m1.values) s.add(R, F, v, R.one());
      for (const auto& [F, v] : m2.values) s.add(R, F, v, a.degree % 2 ? R.neg(R.one()) : R.one());
      CHECK_MESSAGE(s.values.empty(), "which=" << which << " t=" << t);
    }
  }
}

TEST_CASE("Ass, arity 2 on a vertex sums over both orderings") {
  Ring R = Z();
  auto A = ass(R, 2);
  GradedModule V(R, {{"a", 0, 1}, {"b", -1, 2}});
  CofreeCoalgebra F(A.C(), V, 2);
  Coderivation Q;
  int id = first_rep(A.C().at(2));
  Q.set(F, {2, id, {0, 0}}, vec(R, {{1, 1}}));
  McSpace M(F, Q, 0);
  ConvolutionElement psi{0, 0, {}};
  psi.set({0}, vec(R, {{0, 1}}));
  // eta_2 has two vertices; Tr^{-1} keeps the representative only
  CHECK(M.conv_mu({&psi, &psi}).at({0}) == vec(R, {{1, 1}}));
}

TEST_CASE("faces, degeneracies and simplicial identities on MC simplices") {
  for (int which = 0; which < 2; ++which) {
    Ring R = Zm(2);
    auto I = make_instance(R, 70 + which, which, 3);
    McSpace M(*I.F, I.Q, 3);
    auto v0 = M.mc_simplices(0);
    auto en = mc_enumerate(*I.F, I.hc.H, I.Q);
    REQUIRE(v0.size() == en.size());
    for (std::size_t i = 0; i < en.size(); ++i) CHECK(v0[i].at({0}) == en[i]);
    auto rep = M.kan_spot_check(6, 71, 3, Exec::serial);
    CHECK(rep.filled == rep.trials);
    // random MC 3-simplex through successive fills
    auto psi = v0.back();
    InstanceRandom rng(72);
    for (int d = 1; d <= 3; ++d) {
      Element top;
      for (int i : I.V.indices_of_degree(d)) top.add(R, i, rng.scalar(R));
      psi = M.horn_fill(M.horn_of(M.degeneracy(0, psi), d), top).psi;
    }
    REQUIRE(M.mc_check(psi).ok);
    for (int i = 0; i <= 3; ++i)
      for (int j = i + 1; j <= 3; ++j) CHECK(M.face(i, M.face(j, psi)) == M.face(j - 1, M.face(i, psi)));
    auto tri = M.face(0, psi);
    auto edge = M.face(0, tri);
    for (int i = 0; i <= 1; ++i)
      for (int j = i; j <= 1; ++j)
        CHECK(M.degeneracy(i, M.degeneracy(j, edge)) == M.degeneracy(j + 1, M.degeneracy(i, edge)));
    for (int j = 0; j <= 2; ++j) {
      CHECK(M.face(j, M.degeneracy(j, tri)) == tri);
      CHECK(M.face(j + 1, M.degeneracy(j, tri)) == tri);
    }
  }
}

TEST_CASE("Q = 0: MC simplices are the degree 0 cycles") {
  Ring R = Zm(2);
  auto A = ass(R, 3);
  GradedModule V(R, {{"a", 0, 1}, {"b", 1, 1}});
  CofreeCoalgebra F(A.C(), V, 3);
  Coderivation Q;
  McSpace M(F, Q, 2);
  for (int n = 0; n <= 2; ++n) {
    auto mcs = M.mc_simplices(n);
    // brute force over all degree-0 elements
    auto faces = all_faces(n);
    long count = 0;
    std::vector<ConvolutionElement> all{M.zero(n)};
    for (const auto& I : faces) {
      auto idx = V.indices_of_degree(static_cast<int>(I.size()) - 1);
      if (idx.empty()) continue;
      std::vector<ConvolutionElement> next;
      for (const auto& p : all)
        for (int s = 0; s < 2; ++s) {
          auto q = p;
          if (s) q.set(I, vec(R, {{idx[0], 1}}));
          next.push_back(q);
        }
      all = std::move(next);
    }
    for (const auto& p : all) count += M.conv_differential(p).values.empty();
    CHECK(static_cast<long>(mcs.size()) == count);
  }
}

TEST_CASE("lifted operators: chain homotopy identity") {
  Ring R = Z();
  auto I = make_instance(R, 80, 0);
  McSpace M(*I.F, I.Q, 4);
  InstanceRandom rng(81);
  for (int t = 0; t < 100; ++t) {
    int n = t % 5, k = rng.uniform(0, n);
    auto psi = random_conv(rng, I.V, n, rng.uniform(-2, 1));
    auto lhs = M.conv_differential(M.lift_H(k, psi));
    for (const auto& [F, v] : M.lift_H(k, M.conv_differential(psi)).values) lhs.add(R, F, v, R.one());
    auto rhs = combo(R, psi, R.one(), M.lift_P(k, psi), R.neg(R.one()));
    CHECK(lhs == rhs);
    for (const auto& [F, v] : M.lift_P(k, psi).values) CHECK(F.size() == 1);
    CHECK(M.lift_R(k, psi) == M.conv_differential(M.lift_H(k, psi)));
  }
  CHECK(M.lift_E(2, vec(R, {{0, 1}})).values.size() == 3);
}

TEST_CASE("horn filling") {
  // abelian instance: one correction at most
  {
    auto I = make_instance(Z(), 90, 0);
    Coderivation Q1;
    for (const auto& [k, v] : I.Q.values)
      if (k.arity == 1) Q1.values[k] = v;
    McSpace M(*I.F, Q1, 3);
    for (int n = 1; n <= 3; ++n)
      for (int k = 0; k <= n; ++k) {
        auto psi = M.zero(0);
        for (int d = 1; d <= n; ++d) psi = M.degeneracy(0, psi);
        auto res = M.horn_fill(M.horn_of(psi, k));
        CHECK(res.iterations <= 1);
      }
  }
  // one quadratic term forces one correction
  {
    Ring R = Zm(2);
    auto A = ass(R, 3);
    GradedModule V(R, {{"x", 0, 1}, {"z", 1, 1}, {"w", 0, 2}});
    CofreeCoalgebra F(A.C(), V, 3);
    Coderivation Q;
    Q.set(F, {2, first_rep(A.C().at(2)), {0, 1}}, vec(R, {{2, 1}}));
    REQUIRE(square_check(F, Q).ok);
    McSpace M(F, Q, 2);
    ConvolutionElement phi{1, 0, {}};
    phi.set({0}, vec(R, {{0, 1}}));
    auto res = M.horn_fill({1, 0, phi}, vec(R, {{1, 1}}));
    CHECK(res.iterations == 1);
    CHECK(res.psi.at({1}) == vec(R, {{0, 1}, {2, 1}}));
    CHECK(res.defect_min_weight == std::vector<int>{2, -1});
  }
  // tiny Z/2 instance: the filler is among all MC simplices with that horn and top 0
  for (int which = 0; which < 2; ++which) {
    Ring R = Zm(2);
    auto I = make_instance(R, 92 + 2 * which, which, 5);
    McSpace M(*I.F, I.Q, 2);
    for (int n = 1; n <= 2; ++n) {
      auto all = M.mc_simplices(n);
      for (int k = 0; k <= n; ++k)
        for (const auto& psi : all) {
          if (!psi.at(all_faces(n).back()).empty()) continue;
          auto horn = M.horn_of(psi, k);
          auto res = M.horn_fill(horn);
          bool found = false;
          for (const auto& c : all) found = found || c == res.psi;
          CHECK(found);
          CHECK(M.mc_check(res.psi).ok);
          CHECK(M.horn_of(res.psi, k).phi == horn.phi);
          for (std::size_t i = 1; i < res.defect_min_weight.size(); ++i) {
            int a = res.defect_min_weight[i - 1], b = res.defect_min_weight[i];
            CHECK((b < 0 || b > a));
          }
        }
    }
    // non-MC horn
    ConvolutionElement bad{1, 0, {}};
    Element y;
    for (int i : I.V.indices_of_degree(0)) y.add(R, i, R.one());
    bad.set({0}, y);
    HornData h{1, 0, bad};
    if (!M.residual_at(bad, {0}).empty()) CHECK_THROWS_AS(M.horn_fill(h), Error);
  }
}

TEST_CASE("Kan spot check") {
  Ring R = Zm(2);
  auto A = ass(R, 3);
  GradedModule V(R, {{"a", 0, 1}});
  CofreeCoalgebra F(A.C(), V, 3);
  Coderivation Q;
  McSpace M(F, Q, 3);
  auto rep = M.kan_spot_check(12, 1);
  CHECK(rep.filled == 12);
  int ok = 0, maxit = 0;
  for (int s = 0; s < 6; ++s) {
    auto I = make_instance(R, 100 + s, (s / 2) % 2);
    McSpace N(*I.F, I.Q, 3);
    auto r = N.kan_spot_check(9, s);
    ok += r.filled == r.trials;
    maxit = std::max(maxit, r.max_iterations);
    for (const auto& f : r.failures) MESSAGE(f);
  }
  CHECK(ok == 6);
  CHECK(maxit >= 1);
}
