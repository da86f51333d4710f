#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "opmc/builders.hpp"

namespace opmc {

// Strictly increasing vertex list; e_I has degree |I| - 1.
using Face = std::vector<int>;
using Chain = Sparse<Face>;

struct SimplexChainComplex {
  int n = 0;
  std::vector<Face> basis;  // by degree, then lexicographic
  int degree(const Face& I) const { return static_cast<int>(I.size()) - 1; }
  int rank(int k) const;
};

SimplexChainComplex chains(int n);
Chain boundary(const Ring& R, const Face& I);
Chain boundary(const Ring& R, const Chain& x);
std::vector<Face> all_faces(int n);

// f is the list f(0..m), monotone, values in [0, n].
Chain induced_map(const Ring& R, const std::vector<int>& f, const Face& I);
Chain induced_map(const Ring& R, const std::vector<int>& f, const Chain& x);
std::vector<int> coface(int n, int i);       // [n-1] -> [n] skipping i
std::vector<int> codegeneracy(int n, int j); // [n+1] -> [n] hitting j twice

Scalar epsilon(const Ring& R, const Chain& x);
Chain contraction_p(const Ring& R, int k, const Scalar& s);
Chain contraction_h(const Ring& R, int k, const Face& I);
Chain contraction_h(const Ring& R, int k, const Chain& x);

// Interval-cut action; the result lists one face per value 1..r.
Sparse<std::vector<Face>> surjection_action(const Ring& R, const Surjection& u, const Face& I);
Sparse<std::vector<Face>> tensor_boundary(const Ring& R, const Sparse<std::vector<Face>>& x);

struct SimplexTerm {
  BESimplex s;
  std::vector<Face> faces;
  auto operator<=>(const SimplexTerm&) const = default;
};
struct CoalgebraTerm {
  int c = 0;  // basis index in C(r)
  std::vector<Face> faces;
  auto operator<=>(const CoalgebraTerm&) const = default;
};

Sparse<SimplexTerm> einfty_decompose(const Ring& R, const Face& I, int r, long cap = 0);
// (phi(r) (x) id) of the E_infinity decomposition; phi.source must carry simplex labels.
Sparse<CoalgebraTerm> c_coalgebra_decompose(const CooperadMorphism& phi, const Face& I, int r);
// Same with phi the restriction onto the labelled simplices of C.
Sparse<CoalgebraTerm> c_coalgebra_decompose(const CooperadTruncation& C, const Face& I, int r);

// Cached decompositions of e_{0..m} for m <= mmax, relabelled on demand.
class SimplexCoalgebra {
public:
  SimplexCoalgebra(const CooperadTruncation& C, int mmax);
  const CooperadTruncation& cooperad() const { return *C_; }
  int mmax() const { return mmax_; }
  Sparse<CoalgebraTerm> decompose(const Face& I, int r) const;

private:
  const CooperadTruncation* C_;
  int mmax_;
  std::vector<std::vector<Sparse<CoalgebraTerm>>> table_;  // [m][r]
};

}  // namespace opmc
