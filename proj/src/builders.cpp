#include "opmc/builders.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "opmc/error.hpp"

namespace opmc {

long default_resource_cap() {
  if (const char* env = std::getenv("OPMC_RESOURCE_CAP")) {
    long v = std::atol(env);
    if (v > 0) return v;
  }
  return 2'000'000;
}

std::string simplex_name(const BESimplex& s) {
  if (s.empty()) return "?";
  int r = s.front().arity();
  if (r == 0) return "unit";
  if (r == 1) return "id";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += "|";
    for (int v : s[i].images()) out += std::to_string(v + 1);
  }
  return out;
}

bool is_nondegenerate(const BESimplex& s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i] == s[i + 1]) return false;
  return true;
}

int simplex_dim(const BESimplex& s) { return static_cast<int>(s.size()) - 1; }

namespace {

bool before(const Permutation& w, int i, int j) {
  // w as a word: w_p = w(p); is value i listed before value j?
  for (int p = 0; p < w.arity(); ++p) {
    if (w(p) == i) return true;
    if (w(p) == j) return false;
  }
  return false;
}

int pair_changes(const BESimplex& s, int i, int j) {
  int ch = 0;
  for (std::size_t t = 0; t + 1 < s.size(); ++t)
    if (before(s[t], i, j) != before(s[t + 1], i, j)) ++ch;
  return ch;
}

}  // namespace

int complexity(const BESimplex& s) {
  if (s.empty() || s.front().arity() < 2) return 1;
  int r = s.front().arity();
  int best = 0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) best = std::max(best, pair_changes(s, i, j));
  return best + 1;
}

BESimplex relabel(const Permutation& sigma, const BESimplex& s) {
  BESimplex out;
  out.reserve(s.size());
  for (const auto& w : s) out.push_back(sigma.compose(w));
  return out;
}

SimplicialOperadTruncation be_operad(int n, int rmax, int dmax, long cap) {
  if (cap <= 0) cap = default_resource_cap();
  SimplicialOperadTruncation P;
  P.rmax = rmax;
  P.dmax = dmax;
  P.family = n == 0 ? "be-inf" : "be-" + std::to_string(n);
  P.degree_complete = n != 0 ? true : false;
  long total = 0;
  for (int r = 0; r <= rmax; ++r) {
    auto perms = all_permutations(r);
    std::vector<BESimplex> list;
    int dim_cap = dmax;
    if (n != 0) {
      int natural = (n - 1) * r * (r - 1) / 2;
      if (r < 2) natural = 0;
      if (natural <= dmax) dim_cap = natural;
      else P.degree_complete = false;
    }
    if (r < 2) dim_cap = 0;
    BESimplex cur;
    auto rec = [&](auto&& self) -> void {
      if (!cur.empty()) {
        if (++total > cap) throw Error(Reason::resource_limit, "Barratt-Eccles enumeration exceeds cap");
        list.push_back(cur);
      }
      if (simplex_dim(cur) >= dim_cap) return;
      for (const auto& p : perms) {
        if (!cur.empty() && cur.back() == p) continue;
        cur.push_back(p);
        if (n == 0 || complexity(cur) <= n) self(self);
        cur.pop_back();
      }
    };
    rec(rec);
    std::stable_sort(list.begin(), list.end(),
                     [](const BESimplex& a, const BESimplex& b) { return a.size() < b.size(); });
    P.simplices.push_back(std::move(list));
  }
  return P;
}

SimplicialOperadTruncation discrete_sigma_operad(int rmax) { 
  SimplicialOperadTruncation P;
  P.rmax = rmax;
  P.dmax = 0;
  P.family = "ass";
  for (int r = 0; r <= rmax; ++r) {
    std::vector<BESimplex> list;
    for (const auto& p : all_permutations(r)) list.push_back({p});
    P.simplices.push_back(std::move(list));
  }
  return P;
}

Report validate_simplicial_operad(const SimplicialOperadTruncation& P) {
  Report rep;
  rep.add("unitary", P.arity0_points == 1 && !P.simplices.empty() && P.simplices[0].size() == 1,
          P.arity0_points == 1 ? "" : "arity 0 has " + std::to_string(P.arity0_points) + " points");
  std::string face_w, act_w, free_w;
  for (int r = 0; r <= P.rmax && r < static_cast<int>(P.simplices.size()); ++r) {
    std::set<BESimplex> all(P.simplices[r].begin(), P.simplices[r].end());
    for (const auto& s : P.simplices[r]) {
      if (!is_nondegenerate(s) && face_w.empty()) face_w = simplex_name(s) + " is degenerate";
      for (std::size_t i = 0; i < s.size() && s.size() > 1; ++i) {
        BESimplex f = s;
        f.erase(f.begin() + i);
        if (is_nondegenerate(f) && !all.count(f) && face_w.empty())
          face_w = "face of " + simplex_name(s) + " missing";
      }
      if (r >= 2)
        for (const auto& p : all_permutations(r)) {
          if (p.is_identity()) continue;
          BESimplex t = relabel(p, s);
          if (!all.count(t) && act_w.empty()) act_w = simplex_name(s) + " not closed under " + p.str();
          if (t == s && free_w.empty()) free_w = p.str() + " fixes " + simplex_name(s);
        }
    }
  }
  rep.add("simplicial", face_w.empty(), face_w);
  rep.add("action", act_w.empty(), act_w);
  rep.add("freeness", free_w.empty(), free_w);
  return rep;
}

Permutation word_compose(const Permutation& a, const std::vector<const Permutation*>& bs) {
  int k = a.arity();
  if (static_cast<int>(bs.size()) != k) throw Error(Reason::shape, "word_compose: block count");
  std::vector<int> off(k + 1, 0);
  for (int i = 0; i < k; ++i) off[i + 1] = off[i] + bs[i]->arity();
  std::vector<int> w;
  w.reserve(off[k]);
  for (int p = 0; p < k; ++p) {
    int blk = a(p);
    for (int t = 0; t < bs[blk]->arity(); ++t) w.push_back(off[blk] + (*bs[blk])(t));
  }
  return Permutation(w);
}

Sparse<BESimplex> ez_compose(const Ring& R, const BESimplex& a, const std::vector<const BESimplex*>& bs) {
  int k = static_cast<int>(bs.size());
  // factor 0 is a, factor i+1 is b_i; shuffle sign counted in the order (b_1..b_k, a).
  std::vector<int> dims{simplex_dim(a)};
  for (const auto* b : bs) dims.push_back(simplex_dim(*b));
  std::vector<int> steps;
  for (int f = 0; f <= k; ++f)
    for (int t = 0; t < dims[f]; ++t) steps.push_back(f);
  Sparse<BESimplex> out;
  std::vector<int> idx(k + 1);
  std::vector<const Permutation*> blocks(k);
  auto current = [&]() {
    for (int i = 0; i < k; ++i) blocks[i] = &(*bs[i])[idx[i + 1]];
    return word_compose(a[idx[0]], blocks);
  };
  std::sort(steps.begin(), steps.end());
  do {
    std::fill(idx.begin(), idx.end(), 0);
    BESimplex seq{current()};
    bool degenerate = false;
    for (int st : steps) {
      ++idx[st];
      seq.push_back(current());
      if (seq.back() == seq[seq.size() - 2]) {
        degenerate = true;
        break;
      }
    }
    if (degenerate) continue;
    int inv = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      int qi = steps[i] == 0 ? k : steps[i] - 1;
      for (std::size_t j = i + 1; j < steps.size(); ++j) {
        int qj = steps[j] == 0 ? k : steps[j] - 1;
        if (qi > qj) ++inv;
      }
    }
    out.add(R, seq, R.signed_one(inv & 1 ? -1 : 1));
  } while (std::next_permutation(steps.begin(), steps.end()));
  return out;
}

Sparse<BESimplex> be_differential(const Ring& R, const BESimplex& s) {
  Sparse<BESimplex> out;
  if (s.size() <= 1) return out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    BESimplex f = s;
    f.erase(f.begin() + i);
    if (!is_nondegenerate(f)) continue;
    out.add(R, f, R.signed_one(i & 1 ? -1 : 1));
  }
  return out;
}

Sparse<Surjection> table_reduction(const Ring& R, const BESimplex& s) {
  Sparse<Surjection> out;
  if (s.empty()) return out;
  int r = s.front().arity();
  int d = simplex_dim(s);
  std::vector<char> finished(r, 0);
  std::vector<int> seq;
  auto rec = [&](auto&& self, int row, int nfinished) -> void {
    std::vector<int> rem;
    for (int p = 0; p < r; ++p) {
      int v = s[row](p);
      if (!finished[v]) rem.push_back(v);
    }
    if (row == d) {
      std::size_t mark = seq.size();
      for (int v : rem) seq.push_back(v);
      bool ok = true;
      for (std::size_t j = 0; j + 1 < seq.size(); ++j)
        if (seq[j] == seq[j + 1]) ok = false;
      if (ok) {
        Surjection u{r, {}};
        for (int v : seq) u.values.push_back(v + 1);
        out.add(R, u, R.one());
      }
      seq.resize(mark);
      return;
    }
    for (std::size_t take = 1; take <= rem.size(); ++take) {
      // all but the last taken value become finished
      if (nfinished + static_cast<int>(take) - 1 == r) continue;
      std::size_t mark = seq.size();
      for (std::size_t t = 0; t < take; ++t) seq.push_back(rem[t]);
      for (std::size_t t = 0; t + 1 < take; ++t) finished[rem[t]] = 1;
      self(self, row + 1, nfinished + static_cast<int>(take) - 1);
      for (std::size_t t = 0; t + 1 < take; ++t) finished[rem[t]] = 0;
      seq.resize(mark);
    }
  };
  rec(rec, 0, 0);
  return out;
}

Sparse<Surjection> surjection_differential(const Ring& R, const Surjection& u) {
  Sparse<Surjection> out;
  int L = static_cast<int>(u.values.size());
  std::vector<int> last(u.arity + 1, -1);
  for (int j = 0; j < L; ++j) last[u.values[j]] = j;
  std::vector<int> caes_before(L + 1, 0);
  for (int j = 0; j < L; ++j) caes_before[j + 1] = caes_before[j] + (last[u.values[j]] != j ? 1 : 0);
  for (int j = 0; j < L; ++j) {
    int v = u.values[j];
    int count = 0, prev = -1;
    for (int i = 0; i < L; ++i)
      if (u.values[i] == v) {
        ++count;
        if (i < j) prev = i;
      }
    if (count < 2) continue;
    if (j > 0 && j + 1 < L && u.values[j - 1] == u.values[j + 1]) continue;
    Surjection w{u.arity, u.values};
    w.values.erase(w.values.begin() + j);
    int e = last[v] != j ? caes_before[j] : 1 + caes_before[prev];
    out.add(R, w, R.signed_one(e & 1 ? -1 : 1));
  }
  return out;
}

namespace {

struct Job {
  int r;
  std::vector<int> shape;
  int a;
};

}  // namespace

HopfCooperad simplicial_cochain_cooperad(const Ring& R, const SimplicialOperadTruncation& P, Exec exec,
                                         CochainSigns signs) {
  Report pv = validate_simplicial_operad(P);
  if (!pv.ok()) {
    const auto* f = pv.first_failure();
    Reason why = f->law == "freeness" || f->law == "action" ? Reason::freeness : Reason::shape;
    throw Error(why, "simplicial operad rejected: " + f->law + ": " + f->witness);
  }
  int RM = P.rmax;
  HopfCooperad out;
  CooperadTruncation& C = out.C;
  C.ring = R;
  C.rmax = RM;
  C.family = P.family;
  C.degree_complete = P.degree_complete;
  C.dmax = 0;
  C.dmin = 0;
  std::vector<std::map<BESimplex, int>> where(RM + 1);
  for (int r = 0; r <= RM; ++r) {
    const auto& list = P.simplices[r];
    std::vector<BasisElement> basis;
    for (std::size_t i = 0; i < list.size(); ++i) {
      where[r][list[i]] = static_cast<int>(i);
      basis.push_back({simplex_name(list[i]), -simplex_dim(list[i]), 1});
      C.dmin = std::min(C.dmin, -simplex_dim(list[i]));
    }
    auto perms = all_permutations(r);
    std::vector<std::vector<int>> action(perms.size(), std::vector<int>(list.size()));
    for (std::size_t p = 0; p < perms.size(); ++p)
      for (std::size_t i = 0; i < list.size(); ++i) action[p][i] = where[r].at(relabel(perms[p], list[i]));
    C.comp.emplace_back(r, std::move(basis), std::move(action));
    C.labels.push_back(list);
  }
  if (!C.degree_complete) C.dmin = -P.dmax;

  // Cocomposition: dual of the EZ composition.
  std::vector<Job> jobs;
  for (int r = 0; r <= RM; ++r)
    for (const auto& sh : block_shapes(r, RM)) {
      int k = static_cast<int>(sh.size());
      for (int a = 0; a < static_cast<int>(P.simplices[k].size()); ++a) jobs.push_back({r, sh, a});
    }
  std::vector<std::vector<std::pair<int, CocompTerm>>> results(jobs.size());
  auto run = [&](std::size_t j) {
    const Job& job = jobs[j];
    int k = static_cast<int>(job.shape.size());
    const BESimplex& a = P.simplices[k][job.a];
    int da = simplex_dim(a);
    std::vector<int> pick(k, 0);
    auto rec = [&](auto&& self, int i, int dsum) -> void {
      if (dsum > P.dmax && !P.degree_complete) return;
      if (i == k) {
        std::vector<const BESimplex*> bs(k);
        for (int t = 0; t < k; ++t) bs[t] = &P.simplices[job.shape[t]][pick[t]];
        auto comp = ez_compose(R, a, bs);
        // pairing sign
        int sgn_exp = 0;
        std::vector<int> dims;
        if (signs.dual_includes_outer) dims.push_back(da);
        for (int t = 0; t < k; ++t) dims.push_back(simplex_dim(*bs[t]));
        for (std::size_t x = 0; x < dims.size(); ++x)
          for (std::size_t y = x + 1; y < dims.size(); ++y) sgn_exp += dims[x] * dims[y];
        for (const auto& [w, c] : comp.terms) {
          auto it = where[job.r].find(w);
          if (it == where[job.r].end()) {
            if (simplex_dim(w) > P.dmax || !P.degree_complete) continue;
            throw Error(Reason::shape, "composite " + simplex_name(w) + " not in the operad");
          }
          DecompShape s{job.a, {}};
          for (int t = 0; t < k; ++t) s.inner.push_back({job.shape[t], pick[t]});
          results[j].push_back({it->second, CocompTerm{std::move(s), (sgn_exp & 1) ? R.neg(c) : c}});
        }
        return;
      }
      const auto& list = P.simplices[job.shape[i]];
      for (int b = 0; b < static_cast<int>(list.size()); ++b) {
        pick[i] = b;
        self(self, i + 1, dsum + simplex_dim(list[b]));
      }
    };
    rec(rec, 0, da);
  };
  long njobs = static_cast<long>(jobs.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long j = 0; j < njobs; ++j) run(j);
  } else {
    for (long j = 0; j < njobs; ++j) run(j);
  }
  C.cocomp.assign(RM + 1, {});
  for (int r = 0; r <= RM; ++r) C.cocomp[r].assign(C.comp[r].size(), {});
  for (std::size_t j = 0; j < jobs.size(); ++j)
    for (auto& [c, t] : results[j]) C.cocomp[jobs[j].r][c].push_back(std::move(t));
  for (auto& per_r : C.cocomp)
    for (auto& list : per_r)
      std::sort(list.begin(), list.end(), [](const CocompTerm& x, const CocompTerm& y) { return x.shape < y.shape; });

  // Coboundary: d(t^) = (-1)^{dim t} sum_s [ds : t] s^.
  C.diff.assign(RM + 1, {});
  for (int r = 0; r <= RM; ++r) {
    C.diff[r].assign(P.simplices[r].size(), {});
    for (std::size_t i = 0; i < P.simplices[r].size(); ++i) {
      const auto& s = P.simplices[r][i];
      for (const auto& [t, c] : be_differential(R, s).terms) {
        int j = where[r].at(t);
        C.diff[r][j].add(R, static_cast<int>(i), simplex_dim(t) & 1 ? R.neg(c) : c);
      }
    }
  }
  C.finalize();

  // Cup product by front and back faces; units are the vertex duals.
  HopfStructure& H = out.H;
  H.mu.assign(RM + 1, {});
  H.eta.assign(RM + 1, {});
  for (int r = 0; r <= RM; ++r) {
    const auto& list = P.simplices[r];
    for (std::size_t f = 0; f < list.size(); ++f) {
      if (list[f].size() == 1) H.eta[r].add(R, static_cast<int>(f), R.one());
      for (std::size_t g = 0; g < list.size(); ++g) {
        if (!(list[f].back() == list[g].front())) continue;
        BESimplex w = list[f];
        w.insert(w.end(), list[g].begin() + 1, list[g].end());
        auto it = where[r].find(w);
        if (it == where[r].end()) continue;
        int p = simplex_dim(list[f]), q = simplex_dim(list[g]);
        Sparse<int> v;
        v.add(R, it->second, signs.cup_sign && (p * q) % 2 ? R.neg(R.one()) : R.one());
        H.mu[r][{static_cast<int>(f), static_cast<int>(g)}] = std::move(v);
      }
    }
  }
  return out;
}

HopfCooperad ass_cochains(const Ring& R, int rmax) {
  if (rmax < 2) throw Error(Reason::shape, "ass_cochains needs R_max >= 2");
  return simplicial_cochain_cooperad(R, discrete_sigma_operad(rmax));
}

HopfCooperad barratt_eccles(const Ring& R, int n, int rmax, int dmax, long cap) {
  auto P = be_operad(n, rmax, dmax, cap);
  auto out = simplicial_cochain_cooperad(R, P);
  if (n == 1) out.C.family = "ass";
  return out;
}

HopfCooperad com_cochains(const Ring& R, int rmax) {
  if (!R.contains_rationals()) throw Error(Reason::ring_requirement, "com_cochains requires the rationals");
  HopfCooperad out;
  out.C = cocom_truncation(R, rmax);
  out.C.family = "com";
  for (int r = 2; r <= rmax; ++r) {
    auto gen = out.C.comp[r].at(0);
    gen.name = "mu" + std::to_string(r);
    out.C.comp[r] = OrbitModule::trivial(r, gen, NormMode::rational_average);
  }
  out.C.finalize();
  out.H.mu.assign(rmax + 1, {});
  out.H.eta.assign(rmax + 1, {});
  for (int r = 0; r <= rmax; ++r) {
    Sparse<int> one;
    one.add(R, 0, R.one());
    out.H.mu[r][{0, 0}] = one;
    out.H.eta[r] = one;
  }
  return out;
}

CooperadMorphism einfty_to_en_morphism(const CooperadTruncation& einf, const CooperadTruncation& en) {
  if (einf.rmax != en.rmax || !einf.has_labels() || !en.has_labels() || einf.dmin > en.dmin)
    throw Error(Reason::shape, "einfty_to_en_morphism: mismatched truncations");
  CooperadMorphism phi{&einf, &en, {}};
  for (int r = 0; r <= einf.rmax; ++r) {
    std::map<BESimplex, int> where;
    for (std::size_t i = 0; i < en.labels[r].size(); ++i) where[en.labels[r][i]] = static_cast<int>(i);
    std::vector<Sparse<int>> col;
    for (const auto& s : einf.labels[r]) {
      Sparse<int> v;
      auto it = where.find(s);
      if (it != where.end()) v.add(en.ring, it->second, en.ring.one());
      col.push_back(std::move(v));
    }
    phi.maps.push_back(std::move(col));
  }
  return phi;
}

}  // namespace opmc
