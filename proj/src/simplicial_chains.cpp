#include "opmc/simplicial_chains.hpp"

#include <algorithm>

#include "opmc/error.hpp"

namespace opmc {

int SimplexChainComplex::rank(int k) const {
  int c = 0;
  for (const auto& I : basis) c += degree(I) == k;
  return c;
}

std::vector<Face> all_faces(int n) {
  std::vector<Face> out;
  for (unsigned m = 1; m < (1u << (n + 1)); ++m) {
    Face I;
    for (int i = 0; i <= n; ++i)
      if (m >> i & 1u) I.push_back(i);
    out.push_back(std::move(I));
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

SimplexChainComplex chains(int n) {
  if (n < 0) throw Error(Reason::shape, "chains: n must be >= 0");
  return {n, all_faces(n)};
}

Chain boundary(const Ring& R, const Face& I) {
  Chain out;
  if (I.size() < 2) return out;
  for (std::size_t j = 0; j < I.size(); ++j) {
    Face J = I;
    J.erase(J.begin() + j);
    out.add(R, J, j % 2 ? R.neg(R.one()) : R.one());
  }
  return out;
}

Chain boundary(const Ring& R, const Chain& x) {
  Chain out;
  for (const auto& [I, c] : x.terms) out.add_all(R, boundary(R, I), c);
  return out;
}

Chain induced_map(const Ring& R, const std::vector<int>& f, const Face& I) {
  for (std::size_t i = 0; i + 1 < f.size(); ++i)
    if (f[i] > f[i + 1]) throw Error(Reason::shape, "induced_map: map is not monotone");
  Chain out;
  Face J;
  for (int i : I) {
    if (i < 0 || i >= static_cast<int>(f.size())) throw Error(Reason::shape, "induced_map: vertex out of range");
    if (!J.empty() && J.back() == f[i]) return out;
    J.push_back(f[i]);
  }
  out.add(R, J, R.one());
  return out;
}

Chain induced_map(const Ring& R, const std::vector<int>& f, const Chain& x) {
  Chain out;
  for (const auto& [I, c] : x.terms) out.add_all(R, induced_map(R, f, I), c);
  return out;
}

std::vector<int> coface(int n, int i) {
  std::vector<int> f;
  for (int j = 0; j < n; ++j) f.push_back(j < i ? j : j + 1);
  return f;
}

std::vector<int> codegeneracy(int n, int j) {
  std::vector<int> f;
  for (int i = 0; i <= n + 1; ++i) f.push_back(i <= j ? i : i - 1);
  return f;
}

Scalar epsilon(const Ring& R, const Chain& x) {
  Scalar s = R.zero();
  for (const auto& [I, c] : x.terms)
    if (I.size() == 1) s = R.add(s, c);
  return s;
}

Chain contraction_p(const Ring& R, int k, const Scalar& s) {
  Chain out;
  out.add(R, Face{k}, s);
  return out;
}

Chain contraction_h(const Ring& R, int k, const Face& I) {
  Chain out;
  if (std::find(I.begin(), I.end(), k) != I.end()) return out;
  int s = 0;
  for (int i : I) s += i < k;
  Face J = I;
  J.insert(J.begin() + s, k);
  out.add(R, J, s % 2 ? R.neg(R.one()) : R.one());
  return out;
}

Chain contraction_h(const Ring& R, int k, const Chain& x) {
  Chain out;
  for (const auto& [I, c] : x.terms) out.add_all(R, contraction_h(R, k, I), c);
  return out;
}

Sparse<std::vector<Face>> surjection_action(const Ring& R, const Surjection& u, const Face& I) {
  Sparse<std::vector<Face>> out;
  int L = static_cast<int>(u.values.size());
  int r = u.arity;
  int m = static_cast<int>(I.size()) - 1;
  if (L == 0 || m < 0) return out;
  std::vector<int> last(r + 1, -1);
  for (int j = 0; j < L; ++j) last[u.values[j]] = j;
  std::vector<int> cut(L + 1, 0);
  cut[L] = m;
  auto emit = [&]() {
    std::vector<std::vector<int>> parts(r + 1);
    std::vector<int> deg(L), order(L);
    int extra = 0;
    for (int j = 0; j < L; ++j) {
      int a = cut[j], b = cut[j + 1], v = u.values[j];
      if (!parts[v].empty() && parts[v].back() == a) return;
      for (int p = a; p <= b; ++p) parts[v].push_back(p);
      bool inner = last[v] != j;
      deg[j] = b - a + (inner ? 1 : 0);
      if (inner) extra += b;
    }
    // regroup intervals from position order to value order
    for (int j = 0; j < L; ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return u.values[a] < u.values[b]; });
    int s = reorder_sign(order, deg);
    if (extra % 2) s = -s;
    std::vector<Face> faces(r);
    for (int v = 1; v <= r; ++v)
      for (int p : parts[v]) faces[v - 1].push_back(I[p]);
    out.add(R, faces, s > 0 ? R.one() : R.neg(R.one()));
  };
  auto rec = [&](auto&& self, int j) -> void {
    if (j == L) {
      emit();
      return;
    }
    for (int v = cut[j - 1]; v <= m; ++v) {
      cut[j] = v;
      self(self, j + 1);
    }
  };
  if (L == 1) {
    emit();
  } else {
    rec(rec, 1);
  }
  return out;
}

Sparse<std::vector<Face>> tensor_boundary(const Ring& R, const Sparse<std::vector<Face>>& x) {
  Sparse<std::vector<Face>> out;
  for (const auto& [t, c] : x.terms) {
    int pre = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (const auto& [J, cj] : boundary(R, t[i]).terms) {
        auto t2 = t;
        t2[i] = J;
        Scalar v = R.mul(c, cj);
        out.add(R, t2, pre % 2 ? R.neg(v) : v);
      }
      pre += static_cast<int>(t[i].size()) - 1;
    }
  }
  return out;
}

namespace {

// Sum over the given simplices of s^ (x) TR(s).e_I, keyed by position in the list.
template <class Emit>
void decompose_over(const Ring& R, const std::vector<BESimplex>& simplices, const Face& I, int r, Emit&& emit) {
  if (r == 0) {
    // counit: vertices go to the arity-0 point
    if (I.size() == 1)
      for (std::size_t i = 0; i < simplices.size(); ++i) emit(static_cast<int>(i), std::vector<Face>{}, R.one());
    return;
  }
  int m = static_cast<int>(I.size()) - 1;
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    const auto& s = simplices[i];
    if (simplex_dim(s) > (r - 1) * m) continue;
    for (const auto& [u, cu] : table_reduction(R, s).terms)
      for (const auto& [faces, cf] : surjection_action(R, u, I).terms) emit(static_cast<int>(i), faces, R.mul(cu, cf));
  }
}

}  // namespace

Sparse<SimplexTerm> einfty_decompose(const Ring& R, const Face& I, int r, long cap) {
  if (I.empty()) throw Error(Reason::shape, "einfty_decompose: empty face");
  int m = static_cast<int>(I.size()) - 1;
  int D = std::max(0, (r - 1) * m);
  auto P = be_operad(0, std::max(r, 1), D, cap);
  const auto& list = P.simplices[r];
  Sparse<SimplexTerm> out;
  decompose_over(R, list, I, r, [&](int i, std::vector<Face> f, const Scalar& c) {
    out.add(R, SimplexTerm{list[i], std::move(f)}, c);
  });
  return out;
}

Sparse<CoalgebraTerm> c_coalgebra_decompose(const CooperadMorphism& phi, const Face& I, int r) {
  const auto& E = *phi.source;
  const auto& C = *phi.target;
  if (!E.has_labels()) throw Error(Reason::shape, "c_coalgebra_decompose: source carries no simplex labels");
  if (r > E.rmax || r > C.rmax) throw Error(Reason::truncation, "arity beyond R_max");
  int m = static_cast<int>(I.size()) - 1;
  if (!E.degree_complete && C.dmin < E.dmin && (r - 1) * m > -E.dmin)
    throw Error(Reason::shape, "c_coalgebra_decompose: source truncation misses simplices the target needs");
  const Ring& R = C.ring;
  Sparse<CoalgebraTerm> out;
  decompose_over(R, E.labels[r], I, r, [&](int i, const std::vector<Face>& f, const Scalar& c) {
    for (const auto& [t, ct] : phi.maps[r][i].terms) out.add(R, CoalgebraTerm{t, f}, R.mul(c, ct));
  });
  return out;
}

Sparse<CoalgebraTerm> c_coalgebra_decompose(const CooperadTruncation& C, const Face& I, int r) {
  if (!C.has_labels()) throw Error(Reason::unsupported, "cooperad basis carries no simplex labels");
  if (r > C.rmax) throw Error(Reason::truncation, "arity beyond R_max");
  int m = static_cast<int>(I.size()) - 1;
  if (!C.degree_complete && (r - 1) * m > -C.dmin)
    throw Error(Reason::truncation, "simplex decomposition needs simplices beyond D_max");
  Sparse<CoalgebraTerm> out;
  decompose_over(C.ring, C.labels[r], I, r, [&](int i, std::vector<Face> f, const Scalar& c) {
    out.add(C.ring, CoalgebraTerm{i, std::move(f)}, c);
  });
  return out;
}

SimplexCoalgebra::SimplexCoalgebra(const CooperadTruncation& C, int mmax) : C_(&C), mmax_(mmax) {
  table_.resize(mmax + 1);
  for (int m = 0; m <= mmax; ++m) {
    Face I;
    for (int i = 0; i <= m; ++i) I.push_back(i);
    for (int r = 0; r <= C.rmax; ++r) table_[m].push_back(c_coalgebra_decompose(C, I, r));
  }
}

Sparse<CoalgebraTerm> SimplexCoalgebra::decompose(const Face& I, int r) const {
  int m = static_cast<int>(I.size()) - 1;
  if (m < 0 || m > mmax_) throw Error(Reason::shape, "SimplexCoalgebra: face dimension out of range");
  if (r < 0 || r > C_->rmax) throw Error(Reason::truncation, "arity beyond R_max");
  Sparse<CoalgebraTerm> out;
  for (const auto& [t, c] : table_[m][r].terms) {
    CoalgebraTerm t2{t.c, t.faces};
    for (auto& f : t2.faces)
      for (auto& v : f) v = I[v];
    out.terms.emplace(std::move(t2), c);
  }
  return out;
}

}  // namespace opmc
