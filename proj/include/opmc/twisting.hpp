#pragma once

#include <vector>

#include "opmc/cofree.hpp"

namespace opmc {

// Components of uC(k) (x) (uC(V) (x) uC(V))^k.  Block j of a key is the pair
// (p / N, p % N) of indices into F.basis(), N = F.basis().size().
Decomposition pair_decompose(const CofreeCoalgebra& F, const HopfStructure& H, const TensorElement& x,
                             const TensorElement& y, int k);
std::pair<int, int> pair_of(const CofreeCoalgebra& F, int code);

TensorElement shuffle(const CofreeCoalgebra& F, const HopfStructure& H, const TensorElement& x,
                      const TensorElement& y);

// Sum over r of Tr^{-1}(eta_r (x) (lambda v)^r), weights up to the bound
// (F.wmax() when negative).
TensorElement one_param(const CofreeCoalgebra& F, const HopfStructure& H, const Element& v, const Scalar& lambda,
                        int weight_bound = -1);
TensorElement exp(const CofreeCoalgebra& F, const HopfStructure& H, const Element& v, int weight_bound = -1);

// Q~^v read off the operator x -> exp(-v) * Q(exp(v) * x); compared with Q~(exp(v) * x).
Coderivation twist(const CofreeCoalgebra& F, const HopfStructure& H, const Coderivation& Q, const Element& v,
                   Exec exec = Exec::parallel);
// The twisted operator itself on one element.
TensorElement twisted_apply(const CofreeCoalgebra& F, const HopfStructure& H, const Coderivation& Q,
                            const Element& v, const TensorElement& x);
Element twisted_curvature(const CofreeCoalgebra& F, const HopfStructure& H, const Coderivation& Q, const Element& v);

// Q~(exp v); the eta_r form is computed too and must agree.
Element mc_residual(const CofreeCoalgebra& F, const HopfStructure& H, const Coderivation& Q, const Element& v);
Element mc_residual_eta(const CofreeCoalgebra& F, const HopfStructure& H, const Coderivation& Q, const Element& v);
bool is_mc(const CofreeCoalgebra& F, const HopfStructure& H, const Coderivation& Q, const Element& v);

// All degree-0 elements over a finite ring; each candidate is cross-checked
// against the curvature of the twist.
std::vector<Element> degree_zero_elements(const GradedModule& V, long cap = 0);
std::vector<Element> mc_enumerate(const CofreeCoalgebra& F, const HopfStructure& H, const Coderivation& Q,
                                  Exec exec = Exec::parallel, long cap = 0);

}  // namespace opmc
