#include "opmc/cofree.hpp"

#include <algorithm>
#include <set>

#include "opmc/builders.hpp"
#include "opmc/error.hpp"

namespace opmc {

namespace {

std::pair<ClassKey, int> act_by(const OrbitModule& M, const Permutation& sigma, const ClassKey& x,
                                const std::function<int(int)>& deg) {
  ClassKey out{x.arity, M.act(sigma, x.c), std::vector<int>(x.arity)};
  std::vector<int> d(x.arity);
  for (int j = 0; j < x.arity; ++j) {
    out.v[sigma(j)] = x.v[j];
    d[j] = deg(x.v[j]);
  }
  return {std::move(out), koszul_sign(sigma, d)};
}

Scalar with_sign(const Ring& R, const Scalar& c, int sign) { return sign > 0 ? c : R.neg(c); }

}  // namespace

std::pair<ClassKey, int> coinv_normalize_by(const OrbitModule& M, const ClassKey& x,
                                            const std::function<int(int)>& deg) {
  if (M.mode() == NormMode::free_sum) {
    if (M.is_rep(x.c)) return {x, 1};
    return act_by(M, M.carrier(x.c).inverse(), x, deg);
  }
  std::optional<std::pair<ClassKey, int>> best;
  std::vector<std::pair<ClassKey, int>> images;
  for (const auto& s : M.perms()) {
    images.push_back(act_by(M, s, x, deg));
    if (!best || images.back().first < best->first) best = images.back();
  }
  for (const auto& cand : images)
    if (cand.first == best->first && cand.second != best->second) return {best->first, 0};
  return *best;
}

CofreeCoalgebra::CofreeCoalgebra(const CooperadTruncation& C, const GradedModule& V, int wmax, long cap)
    : C_(&C), V_(&V), wmax_(wmax) {
  if (cap <= 0) cap = default_resource_cap();
  if (wmax < 0) throw Error(Reason::shape, "W_max must be non-negative");
  if (V.size() > 0) {
    int minw = V.min_weight();
    if (minw < 1) throw Error(Reason::truncation, "generator weights must be at least 1");
    if (wmax / minw > C.rmax)
      throw Error(Reason::truncation, "classes of weight <= " + std::to_string(wmax) + " reach arity " +
                                          std::to_string(wmax / minw) + " > R_max = " + std::to_string(C.rmax));
  }
  std::set<ClassKey> found;
  found.insert(unit_key());
  long count = 0;
  for (int r = 1; r <= C.rmax; ++r) {
    const auto& M = C.at(r);
    std::vector<int> cs;
    if (M.mode() == NormMode::free_sum) cs = M.reps();
    else
      for (int c = 0; c < M.size(); ++c) cs.push_back(c);
    std::vector<int> v;
    auto rec = [&](auto&& self, int w) -> void {
      if (static_cast<int>(v.size()) == r) {
        for (int c : cs) {
          if (++count > cap) throw Error(Reason::resource_limit, "cofree basis exceeds cap");
          auto [k, s] = coinv_normalize(M, V, ClassKey{r, c, v});
          if (s != 0) found.insert(k);
        }
        return;
      }
      for (int i = 0; i < V.size(); ++i) {
        if (w + V.weight(i) > wmax) continue;
        v.push_back(i);
        self(self, w + V.weight(i));
        v.pop_back();
      }
    };
    rec(rec, 0);
  }
  basis_.assign(found.begin(), found.end());
  std::vector<BasisElement> ub;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    index_[basis_[i]] = static_cast<int>(i);
    ub.push_back({name(basis_[i]), degree(basis_[i]), weight(basis_[i])});
  }
  U_ = GradedModule(C.ring, std::move(ub));
}

int CofreeCoalgebra::index_of(const ClassKey& k) const {
  auto it = index_.find(k);
  return it == index_.end() ? -1 : it->second;
}

std::string CofreeCoalgebra::name(const ClassKey& k) const {
  if (k.arity == 0) return "1";
  std::string s = C_->name({k.arity, k.c}) + "(";
  for (std::size_t i = 0; i < k.v.size(); ++i) s += (i ? "," : "") + V_->at(k.v[i]).name;
  return s + ")";
}

TensorElement CofreeCoalgebra::unit() const {
  TensorElement e;
  e.add(ring(), unit_key(), ring().one());
  return e;
}

TensorElement CofreeCoalgebra::basis_element(int i) const {
  TensorElement e;
  e.add(ring(), basis_.at(i), ring().one());
  return e;
}

TensorElement CofreeCoalgebra::generator(int v) const {
  TensorElement e;
  e.add(ring(), ClassKey{1, CooperadTruncation::counit_idx, {v}}, ring().one());
  return e;
}

TensorElement CofreeCoalgebra::from_module(const Element& v) const {
  TensorElement e;
  for (const auto& [i, c] : v.terms) e.add(ring(), ClassKey{1, CooperadTruncation::counit_idx, {i}}, c);
  return e;
}

TensorElement CofreeCoalgebra::truncate(const TensorElement& x) const {
  TensorElement out;
  for (const auto& [k, c] : x.terms)
    if (weight(k) <= wmax_) out.terms.emplace(k, c);
  return out;
}

TensorElement CofreeCoalgebra::normalize(const TensorElement& x) const {
  TensorElement out;
  for (const auto& [k, c] : x.terms) {
    auto [k2, s] = normalize(k);
    if (s != 0) out.add(ring(), k2, with_sign(ring(), c, s));
  }
  return out;
}

TensorElement CofreeCoalgebra::expand(const TensorElement& x) const {
  TensorElement out;
  for (const auto& [k, c] : x.terms) out.add_all(ring(), norm(C_->at(k.arity), *V_, k), c);
  return out;
}

void CofreeCoalgebra::contract_add(const ClassKey& k, const Scalar& c, TensorElement& out) const {
  const auto& M = C_->at(k.arity);
  if (M.mode() == NormMode::free_sum) {
    if (M.is_rep(k.c)) out.add(ring(), k, c);
    return;
  }
  auto [k2, s] = coinv_normalize(M, *V_, k);
  if (s != 0) out.add(ring(), k2, with_sign(ring(), c, s));
}

Decomposition decompose(const CofreeCoalgebra& F, const TensorElement& x, int k) {
  const auto& C = F.cooperad();
  const auto& V = F.module();
  const Ring& R = F.ring();
  if (k < 0 || k > C.rmax) throw Error(Reason::shape, "decompose: k out of range");
  const auto& Mk = C.at(k);
  const auto& U = F.basis_module();
  auto udeg = [&](int i) { return U.degree(i); };
  Decomposition out;
  for (const auto& [key, cx] : x.terms) {
    int r = key.arity;
    for (const auto& [t, ct] : norm(C.at(r), V, key).terms) {
      Scalar e = R.mul(cx, ct);
      for (const auto& term : C.terms(r, t.c)) {
        if (static_cast<int>(term.shape.inner.size()) != k) continue;
        int a = term.shape.outer;
        if (Mk.mode() == NormMode::free_sum && !Mk.is_rep(a)) continue;
        std::vector<int> deg, order;
        for (const auto& b : term.shape.inner) deg.push_back(C.degree(b));
        for (int v : t.v) deg.push_back(V.degree(v));
        Scalar coeff = R.mul(e, term.coeff);
        ClassKey outk{k, a, {}};
        int pos = 0;
        bool dead = false;
        for (int i = 0; i < k && !dead; ++i) {
          const auto& b = term.shape.inner[i];
          order.push_back(i);
          ClassKey bk{b.arity, b.idx, {}};
          for (int j = 0; j < b.arity; ++j) {
            order.push_back(k + pos);
            bk.v.push_back(t.v[pos++]);
          }
          const auto& Mb = C.at(b.arity);
          if (Mb.mode() == NormMode::free_sum) {
            if (!Mb.is_rep(bk.c)) dead = true;
          } else {
            auto [nk, s] = coinv_normalize(Mb, V, bk);
            if (s == 0) dead = true;
            bk = nk;
            if (s < 0) coeff = R.neg(coeff);
          }
          if (dead) break;
          int idx = F.index_of(bk);
          if (idx < 0) {
            if (F.weight(bk) > F.wmax()) dead = true;
            else throw Error(Reason::internal, "decompose: block class missing from basis");
          }
          outk.v.push_back(idx);
        }
        if (dead) continue;
        if (reorder_sign(order, deg) < 0) coeff = R.neg(coeff);
        if (Mk.mode() == NormMode::free_sum) {
          out.add(R, outk, coeff);
        } else {
          auto [nk, s] = coinv_normalize_by(Mk, outk, udeg);
          if (s != 0) out.add(R, nk, with_sign(R, coeff, s));
        }
      }
    }
  }
  return out;
}

Element ClassMap::value(const CofreeCoalgebra& F, const ClassKey& k) const {
  auto [k2, s] = F.normalize(k);
  if (s == 0) return {};
  auto it = values.find(k2);
  if (it == values.end()) return {};
  return s > 0 ? it->second : scaled(F.ring(), it->second, F.ring().neg(F.ring().one()));
}

Element ClassMap::on_term(const CofreeCoalgebra& F, const ClassKey& k) const {
  const auto& M = F.cooperad().at(k.arity);
  if (M.mode() == NormMode::free_sum) {
    if (!M.is_rep(k.c)) return {};
    auto it = values.find(k);
    return it == values.end() ? Element{} : it->second;
  }
  return value(F, k);
}

void ClassMap::set(const CofreeCoalgebra& F, const ClassKey& k, const Element& v) {
  auto [k2, s] = F.normalize(k);
  if (s == 0) {
    if (!v.empty()) throw Error(Reason::invariance, "nonzero value on a vanishing class " + F.name(k));
    return;
  }
  if (v.empty()) values.erase(k2);
  else values[k2] = s > 0 ? v : scaled(F.ring(), v, F.ring().neg(F.ring().one()));
}

bool ClassMap::operator==(const ClassMap& o) const {
  auto strip = [](const std::map<ClassKey, Element>& m) {
    std::map<ClassKey, Element> out;
    for (const auto& [k, v] : m)
      if (!v.empty()) out.emplace(k, v);
    return out;
  };
  return strip(values) == strip(o.values);
}

Element evaluate(const CofreeCoalgebra& F, const ClassMap& f, const TensorElement& x) {
  Element out;
  for (const auto& [k, c] : x.terms) out.add_all(F.ring(), f.value(F, k), c);
  return out;
}

TensorElement coderivation_apply(const CofreeCoalgebra& F, const Coderivation& Q, const TensorElement& x) {
  return coderivation_apply(F, Q, x, true);
}

TensorElement coderivation_apply(const CofreeCoalgebra& F, const Coderivation& Q, const TensorElement& x,
                                 bool include_cooperad_differential) {
  const auto& C = F.cooperad();
  const auto& V = F.module();
  const Ring& R = F.ring();
  TensorElement out;
  for (const auto& [key, cx] : x.terms) {
    int r = key.arity;
    for (const auto& [t, ct] : norm(C.at(r), V, key).terms) {
      Scalar e = R.mul(cx, ct);
      if (include_cooperad_differential)
        for (const auto& [c2, cd] : C.differential(r, t.c).terms) F.contract_add({r, c2, t.v}, R.mul(e, cd), out);
      std::vector<int> prefix(r + 1, 0);
      for (int j = 0; j < r; ++j) prefix[j + 1] = prefix[j] + V.degree(t.v[j]);
      for (const auto& inf : C.infinitesimal(r, t.c)) {
        const auto& Mk = C.at(inf.k);
        if (Mk.mode() == NormMode::free_sum && !Mk.is_rep(inf.outer)) continue;
        int m = inf.inner.arity;
        int slot = inf.slot;
        ClassKey bk{m, inf.inner.idx, std::vector<int>(t.v.begin() + slot, t.v.begin() + slot + m)};
        Element y = Q.on_term(F, bk);
        if (y.empty()) continue;
        int P = prefix[slot];
        int ex = C.degree(inf.inner) * P + C.degree({inf.k, inf.outer}) + P;
        Scalar coeff = R.mul(e, inf.coeff);
        if (ex & 1) coeff = R.neg(coeff);
        ClassKey outk{inf.k, inf.outer, {}};
        outk.v.assign(t.v.begin(), t.v.begin() + slot);
        outk.v.push_back(0);
        outk.v.insert(outk.v.end(), t.v.begin() + slot + m, t.v.end());
        for (const auto& [w, cw] : y.terms) {
          outk.v[slot] = w;
          F.contract_add(outk, R.mul(coeff, cw), out);
        }
      }
    }
  }
  return F.truncate(out);
}

Element project(const CofreeCoalgebra& F, const TensorElement& x) {
  Element out;
  for (const auto& [k, c] : x.terms)
    if (k.arity == 1) out.add(F.ring(), k.v[0], c);
  return out;
}

Element tangent(const CofreeCoalgebra& F, const TensorElement& x) { return project(F, x); }

Element curvature(const CofreeCoalgebra& F, const Coderivation& Q) { return Q.value(F, CofreeCoalgebra::unit_key()); }

bool is_flat(const CofreeCoalgebra& F, const Coderivation& Q) { return curvature(F, Q).empty(); }

SquareReport square_check(const CofreeCoalgebra& F, const Coderivation& Q, Exec exec) {
  long n = static_cast<long>(F.basis().size());
  std::vector<char> bad(n, 0);
  auto one = [&](long i) {
    auto e = F.basis_element(static_cast<int>(i));
    if (!coderivation_apply(F, Q, coderivation_apply(F, Q, e)).empty()) bad[i] = 1;
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) one(i);
  } else {
    for (long i = 0; i < n; ++i) one(i);
  }
  SquareReport rep;
  rep.checked = n;
  for (long i = 0; i < n; ++i)
    if (bad[i]) {
      rep.ok = false;
      rep.witness = "Q^2 " + F.name(F.basis()[i]) + " != 0";
      break;
    }
  return rep;
}

CompletenessReport completeness_check(const CofreeCoalgebra& F, const ClassMap& Q, int degree) {
  CompletenessReport rep;
  const auto& V = F.module();
  for (const auto& [k, val] : Q.values) {
    if (val.empty()) continue;
    rep.nilpotence = std::max(rep.nilpotence.value_or(0), k.arity);
    for (const auto& [i, c] : val.terms) {
      if (!rep.complete) break;
      if (V.weight(i) < F.weight(k)) {
        rep.complete = false;
        rep.witness = F.name(k) + " -> " + V.at(i).name + " lowers weight";
      } else if (V.degree(i) != F.degree(k) + degree) {
        rep.complete = false;
        rep.witness = F.name(k) + " -> " + V.at(i).name + " has the wrong degree";
      }
    }
  }
  return rep;
}

void require_complete(const CofreeCoalgebra& F, const ClassMap& Q, int degree) {
  auto rep = completeness_check(F, Q, degree);
  if (!rep.complete) throw Error(Reason::completeness, rep.witness);
}

TensorElement morphism_apply(const CofreeCoalgebra& A, const CofreeCoalgebra& B, const CoalgebraMorphismData& g,
                             const TensorElement& x) {
  if (&A.cooperad() != &B.cooperad()) throw Error(Reason::shape, "morphism_apply: cooperads differ");
  const auto& C = A.cooperad();
  const auto& VA = A.module();
  const Ring& R = A.ring();
  TensorElement out;
  for (const auto& [key, cx] : x.terms) {
    int r = key.arity;
    for (const auto& [t, ct] : norm(C.at(r), VA, key).terms) {
      Scalar e = R.mul(cx, ct);
      for (const auto& term : C.terms(r, t.c)) {
        int k = static_cast<int>(term.shape.inner.size());
        const auto& Mk = C.at(k);
        if (Mk.mode() == NormMode::free_sum && !Mk.is_rep(term.shape.outer)) continue;
        std::vector<int> deg, order;
        for (const auto& b : term.shape.inner) deg.push_back(C.degree(b));
        for (int v : t.v) deg.push_back(VA.degree(v));
        std::vector<Element> vals;
        int pos = 0;
        bool dead = false;
        for (int i = 0; i < k; ++i) {
          const auto& b = term.shape.inner[i];
          order.push_back(i);
          ClassKey bk{b.arity, b.idx, {}};
          for (int j = 0; j < b.arity; ++j) {
            order.push_back(k + pos);
            bk.v.push_back(t.v[pos++]);
          }
          vals.push_back(g.on_term(A, bk));
          if (vals.back().empty()) {
            dead = true;
            break;
          }
        }
        if (dead) continue;
        Scalar coeff = R.mul(e, term.coeff);
        if (reorder_sign(order, deg) < 0) coeff = R.neg(coeff);
        std::vector<std::pair<std::vector<int>, Scalar>> acc{{{}, coeff}};
        for (const auto& v : vals) {
          std::vector<std::pair<std::vector<int>, Scalar>> next;
          for (const auto& [w, cw] : acc)
            for (const auto& [i, ci] : v.terms) {
              auto w2 = w;
              w2.push_back(i);
              next.push_back({std::move(w2), R.mul(cw, ci)});
            }
          acc = std::move(next);
        }
        for (auto& [w, cw] : acc) B.contract_add(ClassKey{k, term.shape.outer, std::move(w)}, cw, out);
      }
    }
  }
  return B.truncate(out);
}

Coderivation corestriction(const CofreeCoalgebra& F, const std::function<TensorElement(const TensorElement&)>& op,
                           int max_weight) {
  Coderivation Q;
  for (std::size_t i = 0; i < F.basis().size(); ++i) {
    const auto& k = F.basis()[i];
    if (F.weight(k) > max_weight) continue;
    Element v = project(F, op(F.basis_element(static_cast<int>(i))));
    if (!v.empty()) Q.values[k] = std::move(v);
  }
  return Q;
}

}  // namespace opmc
