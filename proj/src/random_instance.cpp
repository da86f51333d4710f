#include "opmc/random_instance.hpp"

#include "opmc/error.hpp"

namespace opmc {

Scalar InstanceRandom::scalar(const Ring& R) {
  if (R.is_finite()) return R.from_int(uniform(0, static_cast<int>(R.modulus()) - 1));
  if (R.contains_rationals()) return R.fraction(uniform(-3, 3), uniform(1, 3));
  return R.from_int(uniform(-2, 2));
}

Scalar InstanceRandom::nonzero_scalar(const Ring& R) {
  for (;;) {
    Scalar s = scalar(R);
    if (!R.is_zero(s)) return s;
  }
}

int InstanceRandom::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

bool InstanceRandom::coin(double p) { return std::bernoulli_distribution(p)(gen_); }

GradedModule InstanceRandom::module(const Ring& R, const RandomModuleSpec& spec) {
  std::vector<BasisElement> b;
  for (int i = 0; i < spec.size; ++i)
    b.push_back({"e" + std::to_string(i), uniform(spec.min_degree, spec.max_degree),
                 uniform(spec.min_weight, spec.max_weight)});
  return GradedModule(R, std::move(b));
}

Element InstanceRandom::degree_zero_element(const GradedModule& V) {
  Element v;
  for (int i : V.indices_of_degree(0)) v.add(V.ring(), i, scalar(V.ring()));
  return v;
}

Coderivation InstanceRandom::coderivation(const CofreeCoalgebra& F, double density, int max_arity) {
  const auto& V = F.module();
  const Ring& R = F.ring();
  Coderivation Q;
  int mw = V.size() ? V.max_weight() : 0;
  for (const auto& k : F.basis()) {
    if (F.weight(k) > mw || (max_arity >= 0 && k.arity > max_arity)) continue;
    Element val;
    for (int i = 0; i < V.size(); ++i)
      if (V.degree(i) == F.degree(k) - 1 && V.weight(i) >= F.weight(k) && coin(density))
        val.add(R, i, scalar(R));
    if (!val.empty()) Q.set(F, k, val);
  }
  return Q;
}

TensorElement unipotent_inverse_apply(const CofreeCoalgebra& F, const CoalgebraMorphismData& g,
                                      const TensorElement& y) {
  const Ring& R = F.ring();
  TensorElement out = y, term = y;
  // N = Phi - id strictly lowers arity, so the series stops.
  for (int j = 0; j <= F.cooperad().rmax + 1 && !term.empty(); ++j) {
    TensorElement next = morphism_apply(F, F, g, term);
    next.add_all(R, term, R.neg(R.one()));
    term = scaled(R, next, R.neg(R.one()));
    out.add_all(R, term);
  }
  if (!term.empty()) throw Error(Reason::internal, "unipotent inverse did not terminate");
  return out;
}

Coderivation InstanceRandom::square_zero(const CofreeCoalgebra& F, bool curved, double density) {
  const auto& V = F.module();
  const Ring& R = F.ring();
  int n = V.size();
  // d maps sources to targets, kills everything else.
  std::vector<int> role(n, 0);  // 1 source, 2 target
  for (int i = 0; i < n; ++i) role[i] = uniform(0, 2);
  Coderivation Q0;
  for (int i = 0; i < n; ++i) {
    if (role[i] != 1) continue;
    Element di;
    for (int j = 0; j < n; ++j)
      if (role[j] == 2 && V.degree(j) == V.degree(i) - 1 && V.weight(j) >= V.weight(i) && coin(density))
        di.add(R, j, scalar(R));
    if (!di.empty()) Q0.set(F, ClassKey{1, CooperadTruncation::counit_idx, {i}}, di);
  }
  if (curved) {
    Element rho;
    for (int j = 0; j < n; ++j)
      if (role[j] != 1 && V.degree(j) == -1 && coin(density)) rho.add(R, j, scalar(R));
    if (!rho.empty()) Q0.set(F, CofreeCoalgebra::unit_key(), rho);
  }
  CoalgebraMorphismData g;
  int mw = n ? V.max_weight() : 0;
  for (const auto& k : F.basis()) {
    if (k.arity == 1) {
      g.values[k] = Element{};
      g.values[k].add(R, k.v[0], R.one());
      continue;
    }
    if (k.arity < 2 || F.weight(k) > mw) continue;
    Element val;
    for (int i = 0; i < n; ++i)
      if (V.degree(i) == F.degree(k) && V.weight(i) >= F.weight(k) && coin(density)) val.add(R, i, scalar(R));
    if (!val.empty()) g.set(F, k, val);
  }
  auto op = [&](const TensorElement& x) {
    return unipotent_inverse_apply(F, g, coderivation_apply(F, Q0, morphism_apply(F, F, g, x)));
  };
  return corestriction(F, op, mw);
}

Coderivation InstanceRandom::two_step(const CofreeCoalgebra& F, const std::vector<char>& high, double density) {
  const auto& V = F.module();
  const auto& C = F.cooperad();
  const Ring& R = F.ring();
  Coderivation Q;
  int mw = V.size() ? V.max_weight() : 0;
  for (const auto& k : F.basis()) {
    if (k.arity < 1 || F.weight(k) > mw || C.degree({k.arity, k.c}) != 0) continue;
    bool low = true;
    for (int i : k.v) low = low && !high[i];
    if (!low) continue;
    Element val;
    for (int i = 0; i < V.size(); ++i)
      if (high[i] && V.degree(i) == F.degree(k) - 1 && V.weight(i) >= F.weight(k) && coin(density))
        val.add(R, i, nonzero_scalar(R));
    if (!val.empty()) Q.set(F, k, val);
  }
  return Q;
}

}  // namespace opmc
