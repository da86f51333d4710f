#include "doctest.h"
#include "helpers.hpp"
#include "opmc/error.hpp"

using namespace opmc;
using namespace testing_support;

namespace {

// (1 (x) Q in one slot + d_C (x) 1) on a decomposition, renormalized.
Decomposition leibniz_side(const CofreeCoalgebra& F, const Coderivation& Q, const Decomposition& D) {
  const auto& C = F.cooperad();
  const Ring& R = F.ring();
  const auto& U = F.basis_module();
  auto udeg = [&](int i) { return U.degree(i); };
  Decomposition out;
  auto put = [&](const ClassKey& k, const Scalar& c) {
    int w = 0;
    for (int u : k.v) w += U.weight(u);
    if (w > F.wmax()) return;  // equality holds modulo weight > W_max
    auto [k2, s] = coinv_normalize_by(C.at(k.arity), k, udeg);
    if (s != 0) out.add(R, k2, s > 0 ? c : R.neg(c));
  };
  for (const auto& [key, c] : D.terms) {
    for (const auto& [a2, ca] : C.differential(key.arity, key.c).terms) put({key.arity, a2, key.v}, R.mul(c, ca));
    int pre = C.degree({key.arity, key.c});
    for (int i = 0; i < key.arity; ++i) {
      auto y = coderivation_apply(F, Q, F.basis_element(key.v[i]));
      for (const auto& [b, cb] : y.terms) {
        ClassKey k2 = key;
        k2.v[i] = F.index_of(b);
        REQUIRE(k2.v[i] >= 0);
        put(k2, (pre & 1) ? R.neg(R.mul(c, cb)) : R.mul(c, cb));
      }
      pre += U.degree(key.v[i]);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("cofree basis sizes") {
  Ring R = Zm(2);
  auto A = ass(R, 3);
  GradedModule V0(R, {});
  CHECK(CofreeCoalgebra(A.C(), V0, 3).basis().size() == 1);
  GradedModule V1(R, {{"x", 0, 1}});
  CofreeCoalgebra F(A.C(), V1, 3);
  CHECK(F.basis().size() == 4);
  CofreeCoalgebra F2(A.C(), V1, 2);
  CHECK(F2.basis().size() == 3);
  CHECK_THROWS_AS(CofreeCoalgebra(A.C(), V1, 4), Error);
}

TEST_CASE("decompose: counit and unit patterns") {
  Ring R = Z();
  auto A = ass(R, 3);
  GradedModule V(R, {{"x", 0, 1}, {"y", -1, 1}});
  CofreeCoalgebra F(A.C(), V, 3);
  for (std::size_t i = 0; i < F.basis().size(); ++i) {
    auto x = F.basis_element(static_cast<int>(i));
    auto d1 = decompose(F, x, 1);
    Decomposition want;
    want.add(R, ClassKey{1, 0, {static_cast<int>(i)}}, R.one());
    CHECK(d1 == want);
  }
  auto du = decompose(F, F.unit(), 2);
  Decomposition want;
  want.add(R, ClassKey{2, A.C().at(2).reps()[0], {0, 0}}, R.one());
  CHECK(du == want);
}

TEST_CASE("decompose is coassociative") {
  for (Ring R : {Z(), Zm(2)}) {
    auto A = e2(R, 3);
    GradedModule V(R, {{"x", 0, 1}, {"y", -1, 1}});
    CofreeCoalgebra F(A.C(), V, 3);
    const auto& C = A.C();
    const auto& U = F.basis_module();
    for (std::size_t i = 0; i < F.basis().size(); ++i) {
      auto x = F.basis_element(static_cast<int>(i));
      for (int k = 1; k <= 3; ++k) {
        auto D = decompose(F, x, k);
        for (int j = 1; j <= 3; ++j) {
          // route 1: decompose each block of D into j pieces.
          // route 2: decompose x into pieces, split the outer factor.
          // Compared on two-level trees where every level is a normal form.
          using Tree = std::pair<int, std::vector<ClassKey>>;
          Sparse<Tree> r1, r2;
          for (const auto& [key, c] : D.terms) {
            std::vector<std::pair<std::vector<ClassKey>, Scalar>> acc{{{}, c}};
            std::vector<int> deg{C.degree({k, key.c})};
            for (int b = 0; b < k; ++b) {
              auto Db = decompose(F, F.basis_element(key.v[b]), j);
              std::vector<std::pair<std::vector<ClassKey>, Scalar>> next;
              for (const auto& [t, s] : acc)
                for (const auto& [bk, cb] : Db.terms) {
                  auto t2 = t;
                  t2.push_back(bk);
                  next.push_back({std::move(t2), R.mul(s, cb)});
                }
              acc = std::move(next);
            }
            for (auto& [t, s] : acc) r1.add(R, Tree{key.c, t}, s);
          }
          // route 2 via the cooperad tables on the expanded m-fold decomposition
          int m = k * j;
          if (m > C.rmax) continue;
          auto Dm = decompose(F, x, m);
          for (const auto& [key, c] : Dm.terms) {
            auto ex = norm(C.at(m), U, key);
            for (const auto& [t, ct] : ex.terms)
              for (const auto& term : C.terms(m, t.c)) {
                if (static_cast<int>(term.shape.inner.size()) != k) continue;
                bool ok = true;
                for (const auto& b : term.shape.inner) ok = ok && b.arity == j;
                if (!ok) continue;
                if (!C.at(k).is_rep(term.shape.outer)) continue;
                std::vector<int> deg, order;
                for (const auto& b : term.shape.inner) deg.push_back(C.degree(b));
                for (int u : t.v) deg.push_back(U.degree(u));
                std::vector<ClassKey> blocks;
                int pos = 0;
                for (int b = 0; b < k && ok; ++b) {
                  order.push_back(b);
                  ClassKey bk{j, term.shape.inner[b].idx, {}};
                  for (int q = 0; q < j; ++q) {
                    order.push_back(k + pos);
                    bk.v.push_back(t.v[pos++]);
                  }
                  if (!C.at(j).is_rep(bk.c)) ok = false;
                  blocks.push_back(bk);
                }
                if (!ok) continue;
                Scalar v = R.mul(R.mul(c, ct), term.coeff);
                if (reorder_sign(order, deg) < 0) v = R.neg(v);
                r2.add(R, Tree{term.shape.outer, blocks}, v);
              }
          }
          CHECK_MESSAGE(r1 == r2, F.name(F.basis()[i]) << " k=" << k << " j=" << j);
        }
      }
    }
  }
}

TEST_CASE("coderivation round trip and co-Leibniz") {
  for (Ring R : {Zm(2), Z()}) {
    InstanceRandom rng(7);
    auto A = ass(R, 4);
    auto V = rng.module(R, {2, -1, 0, 1, 2});
    CofreeCoalgebra F(A.C(), V, 4);
    for (int trial = 0; trial < 5; ++trial) {
      auto Q = rng.coderivation(F);
      auto back = corestriction(F, [&](const TensorElement& x) { return coderivation_apply(F, Q, x); },
                                V.max_weight());
      CHECK(back == Q);
      for (std::size_t i = 0; i < F.basis().size(); ++i) {
        auto x = F.basis_element(static_cast<int>(i));
        auto Qx = coderivation_apply(F, Q, x);
        for (int k = 1; k <= 4; ++k)
          CHECK_MESSAGE(decompose(F, Qx, k) == leibniz_side(F, Q, decompose(F, x, k)),
                        F.name(F.basis()[i]) << " k=" << k);
      }
    }
  }
}

TEST_CASE("co-Leibniz over E_2 with the cooperad differential") {
  Ring R = Z();
  InstanceRandom rng(9);
  auto E = e2(R, 3);
  auto V = rng.module(R, {2, -1, 1, 1, 1});
  CofreeCoalgebra F(E.C(), V, 3);
  for (int trial = 0; trial < 2; ++trial) {
    auto Q = rng.coderivation(F, 0.7);
    for (std::size_t i = 0; i < F.basis().size(); ++i) {
      auto x = F.basis_element(static_cast<int>(i));
      auto Qx = coderivation_apply(F, Q, x);
      for (int k = 1; k <= 3; ++k)
        CHECK_MESSAGE(decompose(F, Qx, k) == leibniz_side(F, Q, decompose(F, x, k)),
                      F.name(F.basis()[i]) << " k=" << k);
    }
  }
}

TEST_CASE("conjugated instances square to zero") {
  for (Ring R : {Zm(2), Zm(8), Z()}) {
    InstanceRandom rng(11);
    auto A = ass(R, 4);
    auto V = rng.module(R, {3, -1, 0, 1, 2});
    CofreeCoalgebra F(A.C(), V, 4);
    for (bool curved : {false, true}) {
      auto Q = rng.square_zero(F, curved);
      CHECK(completeness_check(F, Q, -1).complete);
      auto rep = square_check(F, Q);
      CHECK_MESSAGE(rep.ok, rep.witness);
    }
  }
  Ring R = Z();
  InstanceRandom rng(5);
  auto E = e2(R, 3);
  auto V = rng.module(R, {2, -1, 0, 1, 1});
  CofreeCoalgebra F(E.C(), V, 3);
  auto Q = rng.square_zero(F, true);
  auto rep = square_check(F, Q, Exec::serial);
  CHECK_MESSAGE(rep.ok, rep.witness);
}

TEST_CASE("morphism extension") {
  Ring R = Z();
  InstanceRandom rng(3);
  auto A = ass(R, 3);
  GradedModule V(R, {{"x", 0, 1}, {"y", -1, 1}});
  CofreeCoalgebra F(A.C(), V, 3);
  CoalgebraMorphismData id;
  for (int i = 0; i < V.size(); ++i) id.set(F, {1, 0, {i}}, vec(R, {{i, 1}}));
  for (std::size_t i = 0; i < F.basis().size(); ++i) {
    auto x = F.basis_element(static_cast<int>(i));
    CHECK(morphism_apply(F, F, id, x) == x);
  }
  CoalgebraMorphismData g = id;
  for (const auto& k : F.basis())
    if (k.arity >= 2 && F.degree(k) == 0) g.set(F, k, vec(R, {{0, 2}}));
  CHECK(morphism_apply(F, F, g, F.unit()) == F.unit());
  auto back = corestriction(F, [&](const TensorElement& x) { return morphism_apply(F, F, g, x); }, 3);
  CHECK(back == g);
  for (std::size_t i = 0; i < F.basis().size(); ++i) {
    auto x = F.basis_element(static_cast<int>(i));
    auto y = unipotent_inverse_apply(F, g, morphism_apply(F, F, g, x));
    CHECK(y == x);
  }
}

TEST_CASE("curvature and completeness") {
  Ring R = Zm(2);
  auto A = ass(R, 3);
  GradedModule V(R, {{"x", 0, 1}, {"y", -1, 2}});
  CofreeCoalgebra F(A.C(), V, 3);
  Coderivation Q;
  CHECK(curvature(F, Q).empty());
  Q.set(F, CofreeCoalgebra::unit_key(), vec(R, {{1, 1}}));
  CHECK(curvature(F, Q) == vec(R, {{1, 1}}));
  auto c = completeness_check(F, Q, -1);
  CHECK(c.complete);
  CHECK(c.nilpotence == 0);
  Coderivation bad;
  bad.set(F, ClassKey{1, 0, {1}}, vec(R, {{0, 1}}));
  CHECK_FALSE(completeness_check(F, bad, 0).complete);
}
