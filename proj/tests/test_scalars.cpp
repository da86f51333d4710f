#include "doctest.h"
#include "helpers.hpp"
#include "opmc/error.hpp"
#include "opmc/sym_action.hpp"

using namespace opmc;
using namespace testing_support;

TEST_CASE("rings: defining relations") {
  Ring F2 = Zm(2);
  CHECK(F2.is_zero(F2.add(F2.one(), F2.one())));
  CHECK_FALSE(Z().is_unit(Z().from_int(2)));
  CHECK(Q().contains_rationals());
  CHECK_FALSE(Zm(8).contains_rationals());
  Ring R8 = Zm(8);
  CHECK(R8.is_zero(R8.add(R8.from_int(3), R8.from_int(5))));
  CHECK(R8.from_int(-1) == R8.from_int(7));
  try {
    Ring bad(RingSpec{RingKind::integers_mod, 1});
    FAIL("modulus 1 accepted");
  } catch (const Error& e) {
    CHECK(e.reason() == Reason::invalid_ring);
  }
}

TEST_CASE("rings: inverses against brute force") {
  Ring R8 = Zm(8);
  for (int a = 0; a < 8; ++a) {
    int found = -1;
    for (int x = 0; x < 8; ++x)
      if (a * x % 8 == 1) found = x;
    if (found < 0) {
      CHECK_FALSE(R8.is_unit(R8.from_int(a)));
      CHECK_THROWS_AS(R8.inv(R8.from_int(a)), Error);
    } else {
      CHECK(R8.inv(R8.from_int(a)) == R8.from_int(found));
    }
  }
  CHECK(R8.inv(R8.from_int(3)) == R8.from_int(3));
  try {
    Z().inv(Z().from_int(2));
    FAIL("2 inverted in Z");
  } catch (const Error& e) {
    CHECK(e.reason() == Reason::non_unit);
  }
  CHECK(Z().inv(Z().from_int(-1)) == Z().from_int(-1));
}

TEST_CASE("rings: rationals stay reduced, parse and print round trip") {
  Ring Qr = Q();
  auto h = Qr.fraction(2, 4);
  CHECK(h == Qr.fraction(1, 2));
  CHECK(Qr.mul(h, Qr.from_int(2)) == Qr.one());
  CHECK(Qr.fraction(3, -6) == Qr.fraction(-1, 2));
  CHECK(Qr.to_string(Qr.fraction(-1, 2)) == "-1/2");
  CHECK_THROWS_AS(Qr.fraction(1, 0), Error);
  for (const Ring& R : {Z(), Zm(2), Zm(8), Q()})
    for (int n = -5; n <= 5; ++n) {
      auto x = R.contains_rationals() ? R.fraction(n, 3) : R.from_int(n);
      CHECK(R.parse(R.to_string(x)) == x);
    }
  BigInt big = 1;
  for (int i = 0; i < 40; ++i) big *= 10;
  CHECK(Z().parse(Z().to_string(Z().from_big(big))) == Z().from_big(big));
  CHECK_THROWS_AS(Z().parse("1/0"), Error);
  CHECK_THROWS_AS(Z().parse("abc"), Error);
}

TEST_CASE("permutations: composition, inverse, index, sign") {
  for (int r = 0; r <= 5; ++r) {
    auto all = all_permutations(r);
    CHECK(static_cast<std::int64_t>(all.size()) == factorial(r));
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(all[i].index() == static_cast<std::int64_t>(i));
      CHECK(Permutation::from_index(r, all[i].index()) == all[i]);
      CHECK(all[i].compose(all[i].inverse()).is_identity());
    }
    for (const auto& a : all)
      for (const auto& b : all) {
        auto ab = a.compose(b);
        for (int j = 0; j < r; ++j) CHECK(ab(j) == a(b(j)));
        CHECK(ab.parity() == (a.parity() ^ b.parity()));
        if (r > 3) break;
      }
  }
  CHECK_THROWS_AS(Permutation({0, 0}), Error);
  Permutation tau({1, 0});
  CHECK(koszul_sign(tau, std::vector<int>{1, 1}) == -1);
  CHECK(koszul_sign(tau, std::vector<int>{1, 2}) == 1);
  CHECK(koszul_sign(Permutation::identity(3), std::vector<int>{1, 1, 1}) == 1);
  // all odd: the sign is the parity
  for (const auto& s : all_permutations(4))
    CHECK(koszul_sign(s, std::vector<int>{1, 1, 1, 1}) == (s.parity() ? -1 : 1));
}

TEST_CASE("graded modules, linear maps, tensor products") {
  Ring R = Z();
  GradedModule V(R, {{"a", 0, 1}, {"b", 1, 2}});
  GradedModule W(R, {{"p", 0, 1}, {"q", 1, 1}, {"s", 2, 3}});
  CHECK_THROWS_AS(GradedModule(R, {{"a", 0, 1}, {"a", 1, 1}}), Error);
  auto id = LinearMap::identity(&V);
  auto x = vec(R, {{0, 2}, {1, -1}});
  CHECK(id.apply(x) == x);
  CHECK(LinearMap::zero(&V, &W, 1).apply(x).empty());
  LinearMap f(&V, &W, 1), g(&W, &W, 1);
  f.set(0, vec(R, {{1, 1}}));
  f.set(1, vec(R, {{2, 3}}));
  g.set(1, vec(R, {{2, 1}}));
  CHECK(g.compose(f).degree() == 2);
  CHECK(g.compose(f).apply(V.basis_vector(0)) == vec(R, {{2, 1}}));
  CHECK_THROWS_AS(f.set(0, vec(R, {{0, 1}})), Error);
  auto VW = tensor_basis({&V, &W});
  CHECK(VW.tuples.size() == 6);
  GradedModule A(R, {{"u", 0, 1}}), B(R, {{"t", 0, 2}});
  auto AB = tensor_basis({&A, &B});
  REQUIRE(AB.tuples.size() == 1);
  CHECK(AB.weights[0] == 3);
  GradedModule B2(R, {{"t", 0, 2}}), A1(R, {{"u", 0, 1}});
  CHECK(tensor_basis({&B2, &A1}, 2).tuples.empty());
}

TEST_CASE("symmetric action, norm and its inverse") {
  Ring R = Z();
  auto M = OrbitModule::free_on(2, {{"c", 0, 1}});
  CHECK(M.is_free());
  int c = M.index_of("c@[1,2]"), tc = M.index_of("c@[2,1]");
  GradedModule V(R, {{"v", 0, 1}, {"w", 0, 1}, {"o", 1, 1}});
  Permutation tau({1, 0});
  ClassKey x{2, c, {0, 1}};
  CHECK(act(M, V, Permutation::identity(2), x) == std::make_pair(x, 1));
  CHECK(act(M, V, tau, x) == std::make_pair(ClassKey{2, tc, {1, 0}}, 1));
  CHECK(act(M, V, tau, ClassKey{2, c, {2, 2}}) == std::make_pair(ClassKey{2, tc, {2, 2}}, -1));
  // Tr[c v w] = c v w + (tc) w v
  TensorElement want;
  want.add(R, x, R.one());
  want.add(R, {2, tc, {1, 0}}, R.one());
  CHECK(norm(M, V, x) == want);
  CHECK(norm(M, V, ClassKey{2, tc, {1, 0}}) == want);
  TensorElement cls;
  cls.add(R, x, R.one());
  CHECK(norm_inverse(M, V, want) == cls);
  TensorElement bad;
  bad.add(R, x, R.one());
  try {
    norm_inverse(M, V, bad);
    FAIL("non-invariant accepted");
  } catch (const Error& e) {
    CHECK(e.reason() == Reason::invariance);
  }
  CHECK(coinv_normalize(M, V, x) == std::make_pair(x, 1));
  CHECK(coinv_normalize(M, V, ClassKey{2, tc, {1, 0}}) == std::make_pair(x, 1));
  CHECK(coinv_normalize(M, V, ClassKey{2, tc, {2, 2}}) == std::make_pair(ClassKey{2, c, {2, 2}}, -1));
  // arity 1: the identity
  auto M1 = OrbitModule::free_on(1, {{"e", 0, 1}});
  ClassKey y{1, 0, {2}};
  TensorElement ty;
  ty.add(R, y, R.one());
  CHECK(norm(M1, V, y) == ty);
  // a non-free action is detected
  OrbitModule triv = OrbitModule::trivial(2, {"m", 0, 1}, NormMode::free_sum);
  CHECK_FALSE(triv.is_free());
  CHECK_FALSE(triv.freeness_witness().empty());
}
