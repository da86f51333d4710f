#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opmc/cooperad.hpp"
#include "opmc/exec.hpp"

namespace opmc {

// Normal form of a class whose tensor factors have degrees given by deg.
std::pair<ClassKey, int> coinv_normalize_by(const OrbitModule& M, const ClassKey& x,
                                            const std::function<int(int)>& deg);

// Weight-truncated uC(V).  Elements are TensorElements over normalized classes.
class CofreeCoalgebra {
public:
  CofreeCoalgebra(const CooperadTruncation& C, const GradedModule& V, int wmax, long cap = 0);

  const CooperadTruncation& cooperad() const { return *C_; }
  const GradedModule& module() const { return *V_; }
  const Ring& ring() const { return C_->ring; }
  int wmax() const { return wmax_; }

  // Index 0 is the unit class.
  const std::vector<ClassKey>& basis() const { return basis_; }
  const GradedModule& basis_module() const { return U_; }
  int index_of(const ClassKey& k) const;  // -1 when absent
  std::string name(const ClassKey& k) const;
  int degree(const ClassKey& k) const { return class_degree(C_->at(k.arity), *V_, k); }
  int weight(const ClassKey& k) const { return class_weight(*V_, k); }

  static ClassKey unit_key() { return ClassKey{0, CooperadTruncation::unit_idx, {}}; }
  TensorElement unit() const;
  TensorElement basis_element(int i) const;
  TensorElement generator(int v) const;
  TensorElement from_module(const Element& v) const;
  TensorElement truncate(const TensorElement& x) const;

  std::pair<ClassKey, int> normalize(const ClassKey& k) const { return coinv_normalize(C_->at(k.arity), *V_, k); }
  TensorElement normalize(const TensorElement& x) const;
  TensorElement expand(const TensorElement& x) const;
  // Tr^{-1} applied termwise to invariant expansions (linear on all tensors).
  void contract_add(const ClassKey& k, const Scalar& c, TensorElement& out) const;
  bool is_reduced(const TensorElement& x) const { return x.coeff(unit_key()) == Scalar{}; }

private:
  const CooperadTruncation* C_;
  const GradedModule* V_;
  int wmax_;
  std::vector<ClassKey> basis_;
  std::map<ClassKey, int> index_;
  GradedModule U_;
};

// Components of uC(k) (x) uC(V)^k: ClassKey{k, outer, indices into F.basis()},
// normalized over the blocks' degrees.
using Decomposition = Sparse<ClassKey>;
Decomposition decompose(const CofreeCoalgebra& F, const TensorElement& x, int k);

// Linear maps on classes, stored on normal forms.
struct ClassMap {
  std::map<ClassKey, Element> values;

  // Value on any key (normalized with sign).
  Element value(const CofreeCoalgebra& F, const ClassKey& k) const;
  // Value on one term of an invariant expansion.
  Element on_term(const CofreeCoalgebra& F, const ClassKey& k) const;
  void set(const CofreeCoalgebra& F, const ClassKey& k, const Element& v);
  bool operator==(const ClassMap& o) const;
};

// Q~_r : uC(r) (x) V^r -> V of degree -1.
struct Coderivation : ClassMap {};
// g_r : uC(r) (x) A^r -> B of degree 0.
struct CoalgebraMorphismData : ClassMap {};

Element evaluate(const CofreeCoalgebra& F, const ClassMap& f, const TensorElement& x);

// Q = d_C (x) id + extension of Q~ along infinitesimal cocompositions.
TensorElement coderivation_apply(const CofreeCoalgebra& F, const Coderivation& Q, const TensorElement& x);
TensorElement coderivation_apply(const CofreeCoalgebra& F, const Coderivation& Q, const TensorElement& x,
                                 bool include_cooperad_differential);

Element project(const CofreeCoalgebra& F, const TensorElement& x);
Element tangent(const CofreeCoalgebra& F, const TensorElement& x);
Element curvature(const CofreeCoalgebra& F, const Coderivation& Q);
bool is_flat(const CofreeCoalgebra& F, const Coderivation& Q);

struct SquareReport {
  bool ok = true;
  std::string witness;
  long checked = 0;
};
SquareReport square_check(const CofreeCoalgebra& F, const Coderivation& Q, Exec exec = Exec::parallel);

struct CompletenessReport {
  bool complete = true;
  std::string witness;
  std::optional<int> nilpotence;  // largest arity with a nonzero component
};
CompletenessReport completeness_check(const CofreeCoalgebra& F, const ClassMap& Q, int degree);
// Throws a completeness error naming the entry.
void require_complete(const CofreeCoalgebra& F, const ClassMap& Q, int degree);

TensorElement morphism_apply(const CofreeCoalgebra& A, const CofreeCoalgebra& B, const CoalgebraMorphismData& g,
                             const TensorElement& x);

// Cogenerator projection of a linear operator on the basis classes.
Coderivation corestriction(const CofreeCoalgebra& F, const std::function<TensorElement(const TensorElement&)>& op,
                           int max_weight);

}  // namespace opmc
