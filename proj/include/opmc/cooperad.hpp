#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opmc/sym_action.hpp"

namespace opmc {

// Basis element idx of uC(arity).
struct CoopRef {
  int arity = 0;
  int idx = 0;
  auto operator<=>(const CoopRef&) const = default;
};

// Outer element of uC(k) and inner elements, inputs in standard block order.
struct DecompShape {
  int outer = 0;
  std::vector<CoopRef> inner;
  auto operator<=>(const DecompShape&) const = default;
};

struct CocompTerm {
  DecompShape shape;
  Scalar coeff;
};

// Exactly one inner factor is not the counit.
struct InfTerm {
  int k = 0;
  int outer = 0;
  int slot = 0;
  CoopRef inner;
  Scalar coeff;
};

// Inner factors all in {unit (arity 0), counit (arity 1)}; bit i of mask set
// when slot i is the counit.
struct UnitTerm {
  int k = 0;
  int outer = 0;
  unsigned mask = 0;
  Scalar coeff;
};

// Barratt-Eccles simplex: tuple of permutations of one arity.
using BESimplex = std::vector<Permutation>;

class CooperadTruncation {
public:
  Ring ring;
  int rmax = 0;
  int dmin = 0;  // most negative degree present
  int dmax = 0;  // 0 for cochain cooperads
  bool degree_complete = true;
  std::string family;
  std::vector<OrbitModule> comp;                          // 0..rmax
  std::vector<std::vector<std::vector<CocompTerm>>> cocomp;  // [r][c]
  std::vector<std::vector<BESimplex>> labels;             // optional, [r][c]
  std::vector<std::vector<Sparse<int>>> diff;             // optional, [r][c]; empty means d = 0

  static constexpr int unit_idx = 0;    // the element 1 of uC(0)
  static constexpr int counit_idx = 0;  // the element of uC(1)

  const OrbitModule& at(int r) const { return comp.at(r); }
  int degree(CoopRef x) const { return comp[x.arity].degree(x.idx); }
  std::string name(CoopRef x) const { return comp[x.arity].at(x.idx).name; }
  bool has_labels() const { return !labels.empty(); }
  bool has_differential() const { return !diff.empty(); }
  const Sparse<int>& differential(int r, int c) const;

  // Build derived indexes; call after filling comp/cocomp.
  void finalize();

  const std::vector<CocompTerm>& terms(int r, int c) const { return cocomp[r][c]; }
  Scalar coeff(int r, int c, const DecompShape& s) const;
  const std::vector<InfTerm>& infinitesimal(int r, int c) const { return inf_[r][c]; }
  const std::vector<UnitTerm>& unit_insertions(int r, int c) const { return unit_[r][c]; }

private:
  std::vector<std::vector<std::map<DecompShape, Scalar>>> index_;
  std::vector<std::vector<std::vector<InfTerm>>> inf_;
  std::vector<std::vector<std::vector<UnitTerm>>> unit_;
};

class HopfStructure {
public:
  // mu[r][(a, b)] as a sparse combination of basis indices of uC(r).
  std::vector<std::map<std::pair<int, int>, Sparse<int>>> mu;
  std::vector<Sparse<int>> eta;

  const Sparse<int>& product(int r, int a, int b) const;
};

struct CooperadMorphism {
  const CooperadTruncation* source = nullptr;
  const CooperadTruncation* target = nullptr;
  // maps[r][c] = image of basis element c of source(r)
  std::vector<std::vector<Sparse<int>>> maps;
};

struct Report {
  struct Check {
    std::string law;
    bool pass = true;
    std::string witness;
    std::string note;
  };
  std::vector<Check> checks;

  bool ok() const;
  void add(std::string law, bool pass, std::string witness = "", std::string note = "");
  const Check* first_failure() const;
  std::string summary() const;
};

std::string shape_str(const CooperadTruncation& C, int r, int c, const DecompShape& s);

Report validate_cooperad(const CooperadTruncation& C);
Report validate_hopf(const CooperadTruncation& C, const HopfStructure& H);
Report validate_morphism(const CooperadMorphism& phi);

// The cocommutative cooperad used only as a source of morphisms.
CooperadTruncation cocom_truncation(const Ring& ring, int rmax);
CooperadMorphism cocom_unit_morphism(const CooperadTruncation& cocom, const CooperadTruncation& C,
                                     const HopfStructure& H);

// All shapes (k; r_1..r_k) with k <= rmax and sum r_i = r.
std::vector<std::vector<int>> block_shapes(int r, int rmax);

}  // namespace opmc
