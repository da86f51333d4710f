#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opmc/cofree.hpp"
#include "opmc/exec.hpp"
#include "opmc/simplicial_chains.hpp"

namespace opmc {

// psi : N_*(Delta^n) -> V of degree d; psi(e_I) has degree |I| - 1 + d.
struct ConvolutionElement {
  int n = 0;
  int degree = 0;
  std::map<Face, Element> values;  // no zero entries

  const Element& at(const Face& I) const;
  void set(const Face& I, Element v);
  void add(const Ring& R, const Face& I, const Element& v, const Scalar& c);
  bool operator==(const ConvolutionElement& o) const { return n == o.n && values == o.values; }
};

// Faces of Delta^n except the top cell and the face opposite k.
struct HornData {
  int n = 0;
  int k = 0;
  ConvolutionElement phi;
};

struct McCheck {
  bool ok = false;
  ConvolutionElement residual;
  std::string witness;
};

struct HornFillResult {
  ConvolutionElement psi;
  int iterations = 0;
  std::vector<int> defect_min_weight;  // before each correction; -1 when the defect is 0
};

struct KanReport {
  int trials = 0;
  int filled = 0;
  int max_iterations = 0;
  std::vector<std::string> failures;
};

class McSpace {
public:
  // nmax bounds the simplex dimension.
  McSpace(const CofreeCoalgebra& F, const Coderivation& Q, int nmax);

  const CofreeCoalgebra& cofree() const { return *F_; }
  const Coderivation& coderivation() const { return *Q_; }
  const SimplexCoalgebra& coalgebra() const { return S_; }
  int nmax() const { return nmax_; }
  bool flat() const { return flat_; }

  void validate(const ConvolutionElement& psi) const;
  ConvolutionElement zero(int n, int degree = 0) const;

  ConvolutionElement conv_differential(const ConvolutionElement& psi) const;
  ConvolutionElement conv_mu(const std::vector<const ConvolutionElement*>& psis) const;
  ConvolutionElement star_iota(const ConvolutionElement& psi) const;
  Element residual_at(const ConvolutionElement& psi, const Face& I) const;
  McCheck mc_check(const ConvolutionElement& psi) const;

  ConvolutionElement face(int i, const ConvolutionElement& psi) const;
  ConvolutionElement degeneracy(int j, const ConvolutionElement& psi) const;
  std::vector<ConvolutionElement> mc_simplices(int n, long cap = 0) const;

  ConvolutionElement lift_E(int n, const Element& a) const;
  ConvolutionElement lift_P(int k, const ConvolutionElement& psi) const;
  ConvolutionElement lift_H(int k, const ConvolutionElement& psi) const;
  ConvolutionElement lift_R(int k, const ConvolutionElement& psi) const;

  HornData horn_of(const ConvolutionElement& psi, int k) const;
  HornFillResult horn_fill(const HornData& horn, const Element& top = {}) const;
  KanReport kan_spot_check(int trials, std::uint64_t seed, int nmax = 3, Exec exec = Exec::parallel) const;

private:
  const CofreeCoalgebra* F_;
  const Coderivation* Q_;
  int nmax_;
  SimplexCoalgebra S_;
  bool flat_;
  std::map<Face, std::vector<Sparse<CoalgebraTerm>>> by_face_;  // faces of Delta^nmax

  const Sparse<CoalgebraTerm>& decomposition(const Face& I, int r) const;

  void require_flat() const;
  Element apply_q1(const Element& v) const;
  void mu_at(const std::vector<const ConvolutionElement*>& psis, const Face& I, Element& out) const;
};

bool is_horn_face(int n, int k, const Face& I);

}  // namespace opmc
