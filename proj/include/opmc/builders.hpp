#pragma once

#include <string>
#include <vector>

#include "opmc/cooperad.hpp"
#include "opmc/exec.hpp"

namespace opmc {

// Values are 1-based, no two adjacent entries equal.
struct Surjection {
  int arity = 0;
  std::vector<int> values;

  int degree() const { return static_cast<int>(values.size()) - arity; }
  auto operator<=>(const Surjection&) const = default;
};

std::string simplex_name(const BESimplex& s);
bool is_nondegenerate(const BESimplex& s);
int simplex_dim(const BESimplex& s);
// Largest pairwise count of order changes plus one; 1 for arity < 2.
int complexity(const BESimplex& s);
BESimplex relabel(const Permutation& sigma, const BESimplex& s);

// Sub-simplicial operad of the Barratt-Eccles operad: for each arity the
// non-degenerate simplices (closed under faces and relabelling).
struct SimplicialOperadTruncation {
  int rmax = 0;
  int dmax = 0;
  bool degree_complete = true;
  std::string family;
  int arity0_points = 1;
  std::vector<std::vector<BESimplex>> simplices;
};

// n = 0 means no complexity filter (E_infinity).
SimplicialOperadTruncation be_operad(int n, int rmax, int dmax, long cap = 0);
SimplicialOperadTruncation discrete_sigma_operad(int rmax);
Report validate_simplicial_operad(const SimplicialOperadTruncation& P);

// Word substitution; arity-0 blocks contribute nothing.
Permutation word_compose(const Permutation& a, const std::vector<const Permutation*>& bs);
// Levelwise composition of simplices pushed through the Eilenberg-Zilber shuffle map.
Sparse<BESimplex> ez_compose(const Ring& R, const BESimplex& a, const std::vector<const BESimplex*>& bs);
Sparse<BESimplex> be_differential(const Ring& R, const BESimplex& s);

struct CochainSigns {
  bool dual_includes_outer = false;  // pairing sign over (a, b_1..b_k) or over b's only
  bool cup_sign = true;              // (-1)^{pq} in the cup product
};

struct HopfCooperad {
  CooperadTruncation C;
  HopfStructure H;
};

HopfCooperad simplicial_cochain_cooperad(const Ring& R, const SimplicialOperadTruncation& P,
                                         Exec exec = Exec::parallel, CochainSigns signs = {});
HopfCooperad ass_cochains(const Ring& R, int rmax);
HopfCooperad com_cochains(const Ring& R, int rmax);
HopfCooperad barratt_eccles(const Ring& R, int n, int rmax, int dmax, long cap = 0);
CooperadMorphism einfty_to_en_morphism(const CooperadTruncation& einf, const CooperadTruncation& en);

Sparse<Surjection> table_reduction(const Ring& R, const BESimplex& s);
Sparse<Surjection> surjection_differential(const Ring& R, const Surjection& u);

long default_resource_cap();

}  // namespace opmc
