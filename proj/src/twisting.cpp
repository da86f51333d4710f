#include "opmc/twisting.hpp"

#include "opmc/builders.hpp"
#include "opmc/error.hpp"

namespace opmc {

namespace {

void require_v_weights(const CofreeCoalgebra& F, int bound) {
  const auto& V = F.module();
  if (V.size() == 0) return;
  if (bound / V.min_weight() > F.cooperad().rmax)
    throw Error(Reason::truncation, "weight " + std::to_string(bound) + " reaches arity beyond R_max");
}

}  // namespace

std::pair<int, int> pair_of(const CofreeCoalgebra& F, int code) {
  int N = static_cast<int>(F.basis().size());
  return {code / N, code % N};
}

Decomposition pair_decompose(const CofreeCoalgebra& F, const HopfStructure& H, const TensorElement& x,
                             const TensorElement& y, int k) {
  const auto& C = F.cooperad();
  const Ring& R = F.ring();
  const auto& U = F.basis_module();
  const auto& Mk = C.at(k);
  int N = static_cast<int>(F.basis().size());
  auto pdeg = [&](int p) { return U.degree(p / N) + U.degree(p % N); };
  auto ex = norm(Mk, U, decompose(F, x, k));
  auto ey = norm(Mk, U, decompose(F, y, k));
  Decomposition out;
  for (const auto& [a, ca] : ex.terms)
    for (const auto& [b, cb] : ey.terms) {
      const auto& prod = H.product(k, a.c, b.c);
      if (prod.empty()) continue;
      // [a, X_1..X_k, a', Y_1..Y_k] -> [a, a', X_1, Y_1, ...]
      std::vector<int> deg{C.degree({k, a.c})}, order{0, k + 1};
      for (int u : a.v) deg.push_back(U.degree(u));
      deg.push_back(C.degree({k, b.c}));
      for (int u : b.v) deg.push_back(U.degree(u));
      for (int i = 0; i < k; ++i) {
        order.push_back(1 + i);
        order.push_back(k + 2 + i);
      }
      Scalar c = R.mul(ca, cb);
      if (reorder_sign(order, deg) < 0) c = R.neg(c);
      ClassKey key{k, 0, {}};
      for (int i = 0; i < k; ++i) key.v.push_back(a.v[i] * N + b.v[i]);
      for (const auto& [z, cz] : prod.terms) {
        key.c = z;
        Scalar v = R.mul(c, cz);
        if (Mk.mode() == NormMode::free_sum) {
          if (Mk.is_rep(z)) out.add(R, key, v);
        } else {
          auto [k2, s] = coinv_normalize_by(Mk, key, pdeg);
          if (s != 0) out.add(R, k2, s > 0 ? v : R.neg(v));
        }
      }
    }
  return out;
}

TensorElement shuffle(const CofreeCoalgebra& F, const HopfStructure& H, const TensorElement& x,
                      const TensorElement& y) {
  const auto& C = F.cooperad();
  const auto& V = F.module();
  const Ring& R = F.ring();
  TensorElement out;
  auto ex = F.expand(x);
  auto ey = F.expand(y);
  for (const auto& [s, cs] : ex.terms)
    for (const auto& [t, ct] : ey.terms) {
      if (F.weight(s) + F.weight(t) > F.wmax()) continue;
      Scalar c0 = R.mul(cs, ct);
      for (const auto& us : C.unit_insertions(s.arity, s.c))
        for (const auto& ut : C.unit_insertions(t.arity, t.c)) {
          if (us.k != ut.k) continue;
          int k = us.k;
          unsigned full = k >= 32 ? ~0u : ((1u << k) - 1);
          if ((us.mask & ut.mask) != 0 || (us.mask | ut.mask) != full) continue;
          const auto& prod = H.product(k, us.outer, ut.outer);
          if (prod.empty()) continue;
          // [a, X.., a', Y..] -> [a, a', X_1, Y_1, ...]; unit blocks have degree 0
          std::vector<int> deg{C.degree({k, us.outer})}, order{0, k + 1};
          ClassKey key{k, 0, std::vector<int>(k)};
          int ps = 0, pt = 0;
          std::vector<int> xd(k, 0), yd(k, 0);
          for (int i = 0; i < k; ++i) {
            if (us.mask >> i & 1u) {
              key.v[i] = s.v[ps++];
              xd[i] = V.degree(key.v[i]);
            } else {
              key.v[i] = t.v[pt++];
              yd[i] = V.degree(key.v[i]);
            }
          }
          for (int i = 0; i < k; ++i) deg.push_back(xd[i]);
          deg.push_back(C.degree({k, ut.outer}));
          for (int i = 0; i < k; ++i) deg.push_back(yd[i]);
          for (int i = 0; i < k; ++i) {
            order.push_back(1 + i);
            order.push_back(k + 2 + i);
          }
          Scalar c = R.mul(R.mul(c0, us.coeff), ut.coeff);
          if (reorder_sign(order, deg) < 0) c = R.neg(c);
          for (const auto& [z, cz] : prod.terms) {
            key.c = z;
            F.contract_add(key, R.mul(c, cz), out);
          }
        }
    }
  return out;
}

TensorElement one_param(const CofreeCoalgebra& F, const HopfStructure& H, const Element& v, const Scalar& lambda,
                        int weight_bound) {
  const auto& C = F.cooperad();
  const auto& V = F.module();
  const Ring& R = F.ring();
  if (weight_bound < 0) weight_bound = F.wmax();
  for (const auto& [i, c] : v.terms)
    if (V.degree(i) != 0) throw Error(Reason::precondition, "exp needs a degree 0 element");
  std::vector<std::pair<int, Scalar>> lv;
  int minw = 0;
  for (const auto& [i, c] : v.terms) {
    Scalar s = R.mul(lambda, c);
    if (!R.is_zero(s)) {
      lv.push_back({i, s});
      minw = minw ? std::min(minw, V.weight(i)) : V.weight(i);
    }
  }
  TensorElement out = F.unit();
  if (lv.empty()) return out;
  for (int r = 1; r * minw <= weight_bound; ++r) {
    if (r > C.rmax) throw Error(Reason::truncation, "exp reaches arity beyond R_max");
    TensorElement inv;
    std::vector<int> tup;
    auto rec = [&](auto&& self, int w, const Scalar& coef) -> void {
      if (static_cast<int>(tup.size()) == r) {
        for (const auto& [e, ce] : H.eta[r].terms) inv.add(R, ClassKey{r, e, tup}, R.mul(coef, ce));
        return;
      }
      for (const auto& [i, s] : lv) {
        if (w + V.weight(i) > weight_bound) continue;
        tup.push_back(i);
        self(self, w + V.weight(i), R.mul(coef, s));
        tup.pop_back();
      }
    };
    rec(rec, 0, R.one());
    out.add_all(R, norm_inverse(C.at(r), V, inv));
  }
  return out;
}

TensorElement exp(const CofreeCoalgebra& F, const HopfStructure& H, const Element& v, int weight_bound) {
  return one_param(F, H, v, F.ring().one(), weight_bound);
}

TensorElement twisted_apply(const CofreeCoalgebra& F, const HopfStructure& H, const Coderivation& Q,
                            const Element& v, const TensorElement& x) {
  const Ring& R = F.ring();
  auto ev = exp(F, H, v);
  auto emv = one_param(F, H, v, R.neg(R.one()));
  return shuffle(F, H, emv, coderivation_apply(F, Q, shuffle(F, H, ev, x)));
}

Coderivation twist(const CofreeCoalgebra& F, const HopfStructure& H, const Coderivation& Q, const Element& v,
                   Exec exec) {
  const auto& V = F.module();
  const Ring& R = F.ring();
  int mw = V.size() ? V.max_weight() : 0;
  if (F.wmax() < mw) throw Error(Reason::completeness, "twist needs W_max >= the largest weight in V");
  require_complete(F, Q, -1);
  auto ev = exp(F, H, v);
  auto emv = one_param(F, H, v, R.neg(R.one()));
  long n = static_cast<long>(F.basis().size());
  std::vector<Element> vals(n);
  std::vector<char> bad(n, 0);
  auto one = [&](long i) {
    const auto& k = F.basis()[i];
    if (F.weight(k) > mw) return;
    auto y = shuffle(F, H, ev, F.basis_element(static_cast<int>(i)));
    vals[i] = project(F, shuffle(F, H, emv, coderivation_apply(F, Q, y)));
    if (!(vals[i] == evaluate(F, Q, y))) bad[i] = 1;
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) one(i);
  } else {
    for (long i = 0; i < n; ++i) one(i);
  }
  Coderivation out;
  for (long i = 0; i < n; ++i) {
    if (bad[i]) throw Error(Reason::internal, "twist: operator and direct formula disagree at " + F.name(F.basis()[i]));
    if (!vals[i].empty()) out.values[F.basis()[i]] = std::move(vals[i]);
  }
  return out;
}

Element twisted_curvature(const CofreeCoalgebra& F, const HopfStructure& H, const Coderivation& Q,
                          const Element& v) {
  return project(F, twisted_apply(F, H, Q, v, F.unit()));
}

Element mc_residual(const CofreeCoalgebra& F, const HopfStructure& H, const Coderivation& Q, const Element& v) {
  int mw = F.module().size() ? F.module().max_weight() : 0;
  require_v_weights(F, mw);
  Element a = evaluate(F, Q, exp(F, H, v, mw));
  Element b = mc_residual_eta(F, H, Q, v);
  if (!(a == b)) throw Error(Reason::internal, "mc_residual: exp form and eta form disagree");
  return a;
}

Element mc_residual_eta(const CofreeCoalgebra& F, const HopfStructure& H, const Coderivation& Q, const Element& v) {
  const auto& V = F.module();
  const Ring& R = F.ring();
  int mw = V.size() ? V.max_weight() : 0;
  Element out = Q.value(F, CofreeCoalgebra::unit_key());
  std::vector<std::pair<int, Scalar>> lv(v.terms.begin(), v.terms.end());
  if (lv.empty()) return out;
  for (int r = 1; r <= F.cooperad().rmax; ++r) {
    std::vector<int> tup;
    auto rec = [&](auto&& self, int w, const Scalar& coef) -> void {
      if (static_cast<int>(tup.size()) == r) {
        for (const auto& [e, ce] : H.eta[r].terms)
          out.add_all(R, Q.on_term(F, ClassKey{r, e, tup}), R.mul(coef, ce));
        return;
      }
      for (const auto& [i, s] : lv) {
        if (w + V.weight(i) > mw) continue;
        tup.push_back(i);
        self(self, w + V.weight(i), R.mul(coef, s));
        tup.pop_back();
      }
    };
    rec(rec, 0, R.one());
  }
  return out;
}

bool is_mc(const CofreeCoalgebra& F, const HopfStructure& H, const Coderivation& Q, const Element& v) {
  return mc_residual(F, H, Q, v).empty();
}

std::vector<Element> degree_zero_elements(const GradedModule& V, long cap) {
  const Ring& R = V.ring();
  if (!R.is_finite()) throw Error(Reason::unsupported, "enumeration needs a finite ring");
  if (cap <= 0) cap = default_resource_cap();
  auto idx = V.indices_of_degree(0);
  long m = R.modulus(), total = 1;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    total *= m;
    if (total > cap) throw Error(Reason::resource_limit, "too many degree 0 elements to enumerate");
  }
  std::vector<Element> out;
  for (long n = 0; n < total; ++n) {
    Element e;
    long t = n;
    for (int i : idx) {
      e.add(R, i, R.from_int(static_cast<int>(t % m)));
      t /= m;
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Element> mc_enumerate(const CofreeCoalgebra& F, const HopfStructure& H, const Coderivation& Q,
                                  Exec exec, long cap) {
  auto cands = degree_zero_elements(F.module(), cap);
  long n = static_cast<long>(cands.size());
  std::vector<char> mc(n, 0), bad(n, 0);
  auto one = [&](long i) {
    mc[i] = is_mc(F, H, Q, cands[i]) ? 1 : 0;
    if (static_cast<bool>(mc[i]) != twisted_curvature(F, H, Q, cands[i]).empty()) bad[i] = 1;
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) one(i);
  } else {
    for (long i = 0; i < n; ++i) one(i);
  }
  std::vector<Element> out;
  for (long i = 0; i < n; ++i) {
    if (bad[i]) throw Error(Reason::internal, "flatness cross-check failed");
    if (mc[i]) out.push_back(cands[i]);
  }
  return out;
}

}  // namespace opmc
