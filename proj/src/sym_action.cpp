#include "opmc/sym_action.hpp"

#include <algorithm>

#include "opmc/error.hpp"

namespace opmc {

OrbitModule::OrbitModule(int arity, std::vector<BasisElement> basis, std::vector<std::vector<int>> action,
                         NormMode mode)
    : arity_(arity), basis_(std::move(basis)), action_(std::move(action)), mode_(mode) {
  perms_ = all_permutations(arity_);
  if (action_.size() != perms_.size()) throw Error(Reason::shape, "action table needs one row per permutation");
  for (const auto& row : action_) {
    if (row.size() != basis_.size()) throw Error(Reason::shape, "action row has wrong length");
    for (int b : row)
      if (b < 0 || b >= size()) throw Error(Reason::shape, "action table entry out of range");
  }
  analyse();
}

OrbitModule OrbitModule::free_on(int arity, const std::vector<BasisElement>& reps) {
  auto perms = all_permutations(arity);
  std::vector<BasisElement> basis;
  int n = static_cast<int>(perms.size());
  for (const auto& rep : reps)
    for (const auto& s : perms) basis.push_back({rep.name + "@" + s.str(), rep.degree, 1});
  std::vector<std::vector<int>> action(n, std::vector<int>(basis.size()));
  for (int p = 0; p < n; ++p)
    for (std::size_t r = 0; r < reps.size(); ++r)
      for (int q = 0; q < n; ++q) action[p][r * n + q] = static_cast<int>(r * n + perms[p].compose(perms[q]).index());
  return OrbitModule(arity, std::move(basis), std::move(action));
}

OrbitModule OrbitModule::trivial(int arity, const BasisElement& gen, NormMode mode) {
  std::vector<std::vector<int>> action(factorial(arity), std::vector<int>(1, 0));
  return OrbitModule(arity, {gen}, std::move(action), mode);
}

int OrbitModule::index_of(const std::string& name) const {
  for (int b = 0; b < size(); ++b)
    if (basis_[b].name == name) return b;
  throw Error(Reason::shape, "unknown cooperad basis element " + name);
}

void OrbitModule::analyse() {
  int n = static_cast<int>(perms_.size());
  // identity acts trivially, compatibility with composition
  for (int b = 0; b < size() && group_action_; ++b) {
    if (action_[0][b] != b) group_action_ = false;
    for (int p = 0; p < n && group_action_; ++p)
      for (int q = 0; q < n; ++q) {
        int pq = static_cast<int>(perms_[p].compose(perms_[q]).index());
        if (action_[pq][b] != action_[p][action_[q][b]]) {
          group_action_ = false;
          break;
        }
      }
  }
  for (int b = 0; b < size() && free_; ++b)
    for (int p = 1; p < n; ++p)
      if (action_[p][b] == b) {
        free_ = false;
        freeness_witness_ = perms_[p].str() + " fixes " + basis_[b].name;
        break;
      }
  rep_of_.assign(size(), -1);
  carrier_.assign(size(), Permutation::identity(arity_));
  for (int b = 0; b < size(); ++b) {
    if (rep_of_[b] >= 0) continue;
    reps_.push_back(b);
    for (int p = 0; p < n; ++p) {
      int t = action_[p][b];
      if (rep_of_[t] < 0) {
        rep_of_[t] = b;
        carrier_[t] = perms_[p];
      }
    }
  }
  for (int b = 0; b < size(); ++b)
    if (basis_[b].degree != basis_[rep_of_[b]].degree) group_action_ = false;
}

int class_degree(const OrbitModule& M, const GradedModule& V, const ClassKey& k) {
  int d = M.degree(k.c);
  for (int i : k.v) d += V.degree(i);
  return d;
}

int class_weight(const GradedModule& V, const ClassKey& k) {
  int w = 0;
  for (int i : k.v) w += V.weight(i);
  return w;
}

std::pair<ClassKey, int> act(const OrbitModule& M, const GradedModule& V, const Permutation& sigma,
                             const ClassKey& x) {
  if (sigma.arity() != x.arity || M.arity() != x.arity) throw Error(Reason::shape, "act: arity mismatch");
  ClassKey out{x.arity, M.act(sigma, x.c), std::vector<int>(x.arity)};
  std::vector<int> deg(x.arity);
  for (int j = 0; j < x.arity; ++j) {
    out.v[sigma(j)] = x.v[j];
    deg[j] = V.degree(x.v[j]);
  }
  return {std::move(out), koszul_sign(sigma, deg)};
}

TensorElement act(const OrbitModule& M, const GradedModule& V, const Permutation& sigma, const TensorElement& x) {
  const Ring& R = V.ring();
  TensorElement out;
  for (const auto& [k, c] : x.terms) {
    auto [k2, s] = act(M, V, sigma, k);
    out.add(R, k2, s > 0 ? c : R.neg(c));
  }
  return out;
}

std::pair<ClassKey, int> coinv_normalize(const OrbitModule& M, const GradedModule& V, const ClassKey& x) {
  if (M.mode() == NormMode::free_sum) {
    if (!M.is_free()) throw Error(Reason::freeness, "coinv_normalize on a non-free module");
    if (M.is_rep(x.c)) return {x, 1};
    return act(M, V, M.carrier(x.c).inverse(), x);
  }
  // Non-free: least image over the group; a stabilizer acting by -1 kills the class.
  std::optional<std::pair<ClassKey, int>> best;
  for (const auto& s : M.perms()) {
    auto cand = act(M, V, s, x);
    if (!best || cand.first < best->first) best = cand;
  }
  for (const auto& s : M.perms()) {
    auto cand = act(M, V, s, x);
    if (cand.first == best->first && cand.second != best->second) return {best->first, 0};
  }
  return *best;
}

TensorElement norm(const OrbitModule& M, const GradedModule& V, const ClassKey& x) {
  const Ring& R = V.ring();
  TensorElement out;
  Scalar unit = R.one();
  if (M.mode() == NormMode::rational_average) {
    if (!R.contains_rationals()) throw Error(Reason::ring_requirement, "averaged norm needs Q");
    unit = R.fraction(1, factorial(x.arity));
  }
  for (const auto& s : M.perms()) {
    auto [k, sg] = act(M, V, s, x);
    out.add(R, k, sg > 0 ? unit : R.neg(unit));
  }
  return out;
}

TensorElement norm(const OrbitModule& M, const GradedModule& V, const TensorElement& x) {
  const Ring& R = V.ring();
  TensorElement out;
  for (const auto& [k, c] : x.terms) out.add_all(R, norm(M, V, k), c);
  return out;
}

bool is_invariant(const OrbitModule& M, const GradedModule& V, const TensorElement& y) {
  for (int i = 0; i + 1 < M.arity(); ++i) {
    std::vector<int> im(M.arity());
    for (int j = 0; j < M.arity(); ++j) im[j] = j;
    std::swap(im[i], im[i + 1]);
    if (!(act(M, V, Permutation(im), y) == y)) return false;
  }
  return true;
}

TensorElement norm_inverse(const OrbitModule& M, const GradedModule& V, const TensorElement& y) {
  const Ring& R = V.ring();
  if (!is_invariant(M, V, y)) throw Error(Reason::invariance, "norm_inverse: element is not invariant");
  TensorElement out;
  if (M.mode() == NormMode::free_sum) {
    for (const auto& [k, c] : y.terms)
      if (M.is_rep(k.c)) out.add(R, k, c);
  } else {
    for (const auto& [k, c] : y.terms) {
      auto [k2, s] = coinv_normalize(M, V, k);
      if (s != 0) out.add(R, k2, s > 0 ? c : R.neg(c));
    }
  }
  if (!(norm(M, V, out) == y)) throw Error(Reason::freeness, "norm_inverse: norm of the result differs from input");
  return out;
}

}  // namespace opmc
