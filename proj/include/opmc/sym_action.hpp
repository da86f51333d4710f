#pragma once

#include <string>
#include <utility>
#include <vector>

#include "opmc/graded.hpp"
#include "opmc/permutation.hpp"
#include "opmc/sparse.hpp"

namespace opmc {

// Free: Tr = sum over S_r, coinvariants by orbit representatives.
// Rational: Tr = (1/r!) sum over S_r, any action; needs Q in the ring.
enum class NormMode { free_sum, rational_average };

class OrbitModule {
public:
  OrbitModule() = default;
  // action[p][b] = sigma_p . b where sigma_p = Permutation::from_index(arity, p).
  OrbitModule(int arity, std::vector<BasisElement> basis, std::vector<std::vector<int>> action,
              NormMode mode = NormMode::free_sum);
  // Free module generated by the given reps: basis element (sigma, rep) for
  // each sigma, named name(rep)+"@"+sigma.
  static OrbitModule free_on(int arity, const std::vector<BasisElement>& reps);
  // Trivial one-dimensional action.
  static OrbitModule trivial(int arity, const BasisElement& gen, NormMode mode);

  int arity() const { return arity_; }
  int size() const { return static_cast<int>(basis_.size()); }
  const BasisElement& at(int b) const { return basis_.at(b); }
  int degree(int b) const { return basis_[b].degree; }
  const std::vector<BasisElement>& basis() const { return basis_; }
  int index_of(const std::string& name) const;
  NormMode mode() const { return mode_; }

  int act(int perm_index, int b) const { return action_[perm_index][b]; }
  int act(const Permutation& s, int b) const { return action_[s.index()][b]; }
  const std::vector<std::vector<int>>& action_table() const { return action_; }

  bool is_group_action() const { return group_action_; }
  bool is_free() const { return free_; }
  std::string freeness_witness() const { return freeness_witness_; }

  const std::vector<int>& reps() const { return reps_; }
  bool is_rep(int b) const { return rep_of_[b] == b; }
  int rep_of(int b) const { return rep_of_[b]; }
  // sigma with sigma . rep_of(b) = b (free modules only).
  const Permutation& carrier(int b) const { return carrier_[b]; }

  const std::vector<Permutation>& perms() const { return perms_; }

private:
  void analyse();

  int arity_ = 0;
  std::vector<BasisElement> basis_;
  std::vector<std::vector<int>> action_;
  NormMode mode_ = NormMode::free_sum;
  std::vector<Permutation> perms_;
  bool group_action_ = true;
  bool free_ = true;
  std::string freeness_witness_;
  std::vector<int> reps_;
  std::vector<int> rep_of_;
  std::vector<Permutation> carrier_;
};

// A basis tensor c (x) v_1 ... v_r of uC(r) (x) V^r, with c an index into an
// OrbitModule and v_i indices into a GradedModule.
struct ClassKey {
  int arity = 0;
  int c = 0;
  std::vector<int> v;

  auto operator<=>(const ClassKey&) const = default;
};

using TensorElement = Sparse<ClassKey>;

int class_degree(const OrbitModule& M, const GradedModule& V, const ClassKey& k);
int class_weight(const GradedModule& V, const ClassKey& k);

// sigma . (c (x) v) = (sigma c) (x) v_{sigma^-1(1)} ... with Koszul sign.
std::pair<ClassKey, int> act(const OrbitModule& M, const GradedModule& V, const Permutation& sigma,
                             const ClassKey& x);
TensorElement act(const OrbitModule& M, const GradedModule& V, const Permutation& sigma, const TensorElement& x);

// Canonical representative of the coinvariant class; sign 0 means the class vanishes
// (only possible for non-free actions).
std::pair<ClassKey, int> coinv_normalize(const OrbitModule& M, const GradedModule& V, const ClassKey& x);

TensorElement norm(const OrbitModule& M, const GradedModule& V, const ClassKey& x);
TensorElement norm(const OrbitModule& M, const GradedModule& V, const TensorElement& x);
// Checked inverse: invariance and freeness errors as documented.
TensorElement norm_inverse(const OrbitModule& M, const GradedModule& V, const TensorElement& y);
bool is_invariant(const OrbitModule& M, const GradedModule& V, const TensorElement& y);

}  // namespace opmc
