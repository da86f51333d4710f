#include "doctest.h"
#include "helpers.hpp"
#include "opmc/error.hpp"
#include "opmc/random_instance.hpp"
#include "opmc/twisting.hpp"

using namespace opmc;
using namespace testing_support;

namespace {

template <class S>
S neg(const Ring& R, const S& v) {
  S out;
  out.add_all(R, v, R.neg(R.one()));
  return out;
}

// Phi^{(x)k} applied to a pair decomposition, blockwise shuffle products.
Decomposition blockwise_products(const CofreeCoalgebra& F, const HopfStructure& H, const Decomposition& D) {
  const auto& C = F.cooperad();
  const Ring& R = F.ring();
  const auto& U = F.basis_module();
  auto udeg = [&](int i) { return U.degree(i); };
  Decomposition out;
  for (const auto& [key, c] : D.terms) {
    std::vector<TensorElement> prods;
    for (int p : key.v) {
      auto [a, b] = pair_of(F, p);
      prods.push_back(shuffle(F, H, F.basis_element(a), F.basis_element(b)));
    }
    ClassKey k2{key.arity, key.c, std::vector<int>(key.arity)};
    auto rec = [&](auto&& self, int j, const Scalar& s) -> void {
      if (j == key.arity) {
        auto [k3, sg] = coinv_normalize_by(C.at(k2.arity), k2, udeg);
        if (sg != 0) out.add(R, k3, sg > 0 ? s : R.neg(s));
        return;
      }
      for (const auto& [t, ct] : prods[j].terms) {
        k2.v[j] = F.index_of(t);
        self(self, j + 1, R.mul(s, ct));
      }
    };
    rec(rec, 0, c);
  }
  return out;
}

}  // namespace

TEST_CASE("shuffle: unit, associativity, commutativity over Ass") {
  for (Ring R : {Zm(2), Z()}) {
    InstanceRandom rng(21);
    auto A = ass(R, 4);
    auto V = rng.module(R, {2, -1, 0, 1, 1});
    CofreeCoalgebra F(A.C(), V, 4);
    const auto& H = A.H();
    int n = static_cast<int>(F.basis().size());
    for (int i = 0; i < n; ++i) {
      auto x = F.basis_element(i);
      CHECK(shuffle(F, H, F.unit(), x) == x);
      CHECK(shuffle(F, H, x, F.unit()) == x);
    }
    for (int t = 0; t < 30; ++t) {
      int i = rng.uniform(0, n - 1), j = rng.uniform(0, n - 1), l = rng.uniform(0, n - 1);
      auto x = F.basis_element(i), y = F.basis_element(j), z = F.basis_element(l);
      CHECK(shuffle(F, H, shuffle(F, H, x, y), z) == shuffle(F, H, x, shuffle(F, H, y, z)));
      auto yx = shuffle(F, H, y, x);
      if ((F.degree(F.basis()[i]) * F.degree(F.basis()[j])) & 1) yx = neg(R, yx);
      CHECK(shuffle(F, H, x, y) == yx);
    }
  }
}

TEST_CASE("shuffle is a coalgebra map") {
  Ring R = Z();
  InstanceRandom rng(22);
  for (int which = 0; which < 2; ++which) {
    auto Co = which == 0 ? ass(R, 4) : e2(R, 3);
    auto V = rng.module(R, {2, -1, 0, 1, 1});
    CofreeCoalgebra F(Co.C(), V, which == 0 ? 4 : 3);
    const auto& H = Co.H();
    int n = static_cast<int>(F.basis().size());
    for (int t = 0; t < 80; ++t) {
      int i = rng.uniform(0, n - 1), j = rng.uniform(0, n - 1);
      if (F.weight(F.basis()[i]) + F.weight(F.basis()[j]) > F.wmax()) continue;  // product truncates to 0
      auto x = F.basis_element(i), y = F.basis_element(j);
      auto xy = shuffle(F, H, x, y);
      for (int k = 2; k <= F.cooperad().rmax; ++k) {
        auto lhs = decompose(F, xy, k);
        auto rhs = blockwise_products(F, H, pair_decompose(F, H, x, y, k));
        CHECK_MESSAGE(lhs == rhs, "k=" << k);
      }
    }
  }
}

TEST_CASE("shuffle associativity over E_2") {
  Ring R = Zm(8);
  InstanceRandom rng(23);
  auto E = e2(R, 3);
  auto V = rng.module(R, {2, -1, 0, 1, 1});
  CofreeCoalgebra F(E.C(), V, 3);
  int n = static_cast<int>(F.basis().size());
  for (int t = 0; t < 20; ++t) {
    auto x = F.basis_element(rng.uniform(0, n - 1)), y = F.basis_element(rng.uniform(0, n - 1)),
         z = F.basis_element(rng.uniform(0, n - 1));
    CHECK(shuffle(F, E.H(), shuffle(F, E.H(), x, y), z) == shuffle(F, E.H(), x, shuffle(F, E.H(), y, z)));
  }
}

TEST_CASE("exp is a one-parameter group") {
  for (int which = 0; which < 2; ++which) {
    Ring R = Zm(8);
    InstanceRandom rng(24 + which);
    auto Co = which == 0 ? ass(R, 4) : e2(R, 3);
    auto V = rng.module(R, {3, -1, 0, 1, 1});
    CofreeCoalgebra F(Co.C(), V, Co.C().rmax);
    const auto& H = Co.H();
    for (int t = 0; t < 5; ++t) {
      auto v = rng.degree_zero_element(V);
      auto a = R.from_int(rng.uniform(0, 7)), b = R.from_int(rng.uniform(0, 7));
      CHECK(shuffle(F, H, one_param(F, H, v, a), one_param(F, H, v, b)) == one_param(F, H, v, R.add(a, b)));
      CHECK(shuffle(F, H, exp(F, H, v), exp(F, H, neg(R, v))) == F.unit());
      CHECK(project(F, exp(F, H, v)) == v);
    }
  }
}

TEST_CASE("exp needs degree 0") {
  Ring R = Z();
  auto A = ass(R, 3);
  GradedModule V(R, {{"x", 0, 1}, {"y", -1, 1}});
  CofreeCoalgebra F(A.C(), V, 3);
  CHECK_THROWS_AS(exp(F, A.H(), vec(R, {{1, 1}})), Error);
}

TEST_CASE("twist squares to zero, is involutive, curvature equals residual") {
  int cnt = 0;
  for (Ring R : {Zm(2), Zm(8), Z()}) {
    InstanceRandom rng(31);
    auto A = ass(R, 4);
    auto V = rng.module(R, {3, -1, 0, 1, 2});
    CofreeCoalgebra F(A.C(), V, 4);
    for (bool curved : {false, true}) {
      auto Q = rng.square_zero(F, curved);
      auto v = rng.degree_zero_element(V);
      auto T = twist(F, A.H(), Q, v);
      auto rep = square_check(F, T);
      CHECK_MESSAGE(rep.ok, rep.witness);
      CHECK(twist(F, A.H(), T, neg(R, v), Exec::serial) == Q);
      CHECK(curvature(F, T) == mc_residual(F, A.H(), Q, v));
      CHECK(twisted_curvature(F, A.H(), Q, v) == curvature(F, T));
      CHECK(twist(F, A.H(), Q, Element{}) == Q);
      ++cnt;
    }
  }
  Ring R = Z();
  InstanceRandom rng(32);
  auto E = e2(R, 3);
  auto V = rng.module(R, {2, -1, 0, 1, 1});
  CofreeCoalgebra F(E.C(), V, 3);
  auto Q = rng.square_zero(F, true);
  auto v = rng.degree_zero_element(V);
  auto T = twist(F, E.H(), Q, v);
  auto rep = square_check(F, T);
  CHECK_MESSAGE(rep.ok, rep.witness);
  CHECK(twist(F, E.H(), T, neg(R, v)) == Q);
  CHECK(curvature(F, T) == mc_residual(F, E.H(), Q, v));
  CHECK(cnt == 6);
}

TEST_CASE("twist requires W_max at least the top weight") {
  Ring R = Zm(2);
  auto A = ass(R, 3);
  GradedModule V(R, {{"x", 0, 1}, {"y", -1, 3}});
  CofreeCoalgebra F(A.C(), V, 2);
  Coderivation Q;
  CHECK_THROWS_AS(twist(F, A.H(), Q, vec(R, {{0, 1}})), Error);
}

TEST_CASE("Z/2 example with one quadratic term") {
  Ring R = Zm(2);
  auto A = ass(R, 3);
  GradedModule V(R, {{"x", 0, 1}, {"y", -1, 2}});
  CofreeCoalgebra F(A.C(), V, 3);
  Coderivation Q;
  // m_2(x, x) = y on the class of delta_id (x) x (x) x
  const auto& M2 = A.C().at(2);
  int id = -1;
  for (int b = 0; b < M2.size(); ++b)
    if (M2.is_rep(b)) id = b;
  REQUIRE(id >= 0);
  Q.set(F, {2, id, {0, 0}}, vec(R, {{1, 1}}));
  auto x = vec(R, {{0, 1}});
  CHECK(mc_residual(F, A.H(), Q, x) == vec(R, {{1, 1}}));
  CHECK(mc_residual_eta(F, A.H(), Q, x) == vec(R, {{1, 1}}));
  CHECK(is_mc(F, A.H(), Q, Element{}));
  auto mcs = mc_enumerate(F, A.H(), Q);
  REQUIRE(mcs.size() == 1);
  CHECK(mcs[0].empty());
  CHECK(mc_enumerate(F, A.H(), Q, Exec::serial) == mcs);
}
