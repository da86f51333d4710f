#include "opmc/cooperad.hpp"

#include <sstream>

#include "opmc/error.hpp"

namespace opmc {

namespace {

void shapes_rec(int left, int k_left, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (left == 0) out.push_back(cur);
  if (k_left == 0) return;
  for (int a = 0; a <= left; ++a) {
    cur.push_back(a);
    shapes_rec(left - a, k_left - 1, cur, out);
    cur.pop_back();
  }
}

bool is_counit(const CoopRef& x) { return x.arity == 1 && x.idx == CooperadTruncation::counit_idx; }

// Permutation of S_r moving whole blocks: block i (size sizes[i]) goes to block position pi(i).
Permutation block_permutation(const Permutation& pi, const std::vector<int>& sizes) {
  int k = static_cast<int>(sizes.size());
  std::vector<int> old_off(k + 1, 0), new_sizes(k), new_off(k + 1, 0);
  for (int i = 0; i < k; ++i) old_off[i + 1] = old_off[i] + sizes[i];
  for (int i = 0; i < k; ++i) new_sizes[pi(i)] = sizes[i];
  for (int p = 0; p < k; ++p) new_off[p + 1] = new_off[p] + new_sizes[p];
  std::vector<int> im(old_off[k]);
  for (int i = 0; i < k; ++i)
    for (int t = 0; t < sizes[i]; ++t) im[old_off[i] + t] = new_off[pi(i)] + t;
  return Permutation(im);
}

Permutation block_diagonal(const std::vector<int>& sizes, int which, const Permutation& tau) {
  int total = 0;
  for (int s : sizes) total += s;
  std::vector<int> im(total);
  int off = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    for (int t = 0; t < sizes[i]; ++t) im[off + t] = off + (static_cast<int>(i) == which ? tau(t) : t);
    off += sizes[i];
  }
  return Permutation(im);
}

Permutation adjacent_swap(int n, int i) {
  std::vector<int> im(n);
  for (int j = 0; j < n; ++j) im[j] = j;
  std::swap(im[i], im[i + 1]);
  return Permutation(im);
}

// Two-level tree: outer, middle blocks, leaves, in canonical order.
struct Tree {
  int outer;
  std::vector<CoopRef> mid;
  std::vector<CoopRef> leaves;
  std::vector<int> leaf_counts;
  auto operator<=>(const Tree&) const = default;
};

}  // namespace

std::vector<std::vector<int>> block_shapes(int r, int rmax) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  shapes_rec(r, rmax, cur, out);
  return out;
}

void CooperadTruncation::finalize() {
  int R = rmax;
  index_.assign(R + 1, {});
  inf_.assign(R + 1, {});
  unit_.assign(R + 1, {});
  for (int r = 0; r <= R; ++r) {
    int n = comp[r].size();
    index_[r].assign(n, {});
    inf_[r].assign(n, {});
    unit_[r].assign(n, {});
    for (int c = 0; c < n; ++c) {
      for (const auto& t : cocomp[r][c]) {
        index_[r][c][t.shape] = t.coeff;
        int k = static_cast<int>(t.shape.inner.size());
        int nontrivial = 0, slot = -1;
        bool units_only = true;
        unsigned mask = 0;
        for (int i = 0; i < k; ++i) {
          const auto& b = t.shape.inner[i];
          if (!is_counit(b)) {
            ++nontrivial;
            slot = i;
          } else {
            mask |= 1u << i;
          }
          if (!(is_counit(b) || b.arity == 0)) units_only = false;
        }
        if (nontrivial == 1) inf_[r][c].push_back({k, t.shape.outer, slot, t.shape.inner[slot], t.coeff});
        if (nontrivial == 0)
          for (int i = 0; i < k; ++i) inf_[r][c].push_back({k, t.shape.outer, i, t.shape.inner[i], t.coeff});
        if (units_only) unit_[r][c].push_back({k, t.shape.outer, mask, t.coeff});
      }
    }
  }
}

Scalar CooperadTruncation::coeff(int r, int c, const DecompShape& s) const {
  const auto& m = index_.at(r).at(c);
  auto it = m.find(s);
  return it == m.end() ? Scalar{} : it->second;
}

const Sparse<int>& CooperadTruncation::differential(int r, int c) const {
  static const Sparse<int> zero;
  if (diff.empty()) return zero;
  return diff.at(r).at(c);
}

const Sparse<int>& HopfStructure::product(int r, int a, int b) const {
  static const Sparse<int> zero;
  auto it = mu.at(r).find({a, b});
  return it == mu[r].end() ? zero : it->second;
}

bool Report::ok() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void Report::add(std::string law, bool pass, std::string witness, std::string note) {
  checks.push_back({std::move(law), pass, std::move(witness), std::move(note)});
}

const Report::Check* Report::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return &c;
  return nullptr;
}

std::string Report::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "pass " : "FAIL ") << c.law;
    if (!c.witness.empty()) os << " : " << c.witness;
    if (!c.note.empty()) os << " (" << c.note << ")";
    os << "\n";
  }
  return os.str();
}

std::string shape_str(const CooperadTruncation& C, int r, int c, const DecompShape& s) {
  std::ostringstream os;
  os << C.name({r, c}) << " -> " << C.name({static_cast<int>(s.inner.size()), s.outer}) << " ; ";
  for (std::size_t i = 0; i < s.inner.size(); ++i) os << (i ? ", " : "") << C.name(s.inner[i]);
  return os.str();
}

Report validate_cooperad(const CooperadTruncation& C) {
  Report rep;
  const Ring& R = C.ring;
  int RM = C.rmax;

  {
    bool ok = static_cast<int>(C.comp.size()) == RM + 1 && C.comp[0].size() == 1 && C.comp[1].size() == 1 &&
              C.comp[0].degree(0) == 0 && C.comp[1].degree(0) == 0;
    rep.add("unitary-reduced", ok, ok ? "" : "arity 0 and 1 must be one-dimensional in degree 0");
  }
  {
    std::string w;
    for (int r = 0; r <= RM && w.empty(); ++r)
      if (!C.comp[r].is_group_action()) w = "arity " + std::to_string(r) + " action table is not a group action";
    rep.add("group-action", w.empty(), w);
  }
  {
    std::string w;
    for (int r = 2; r <= RM && w.empty(); ++r) {
      const auto& M = C.comp[r];
      if (M.mode() == NormMode::free_sum && !M.is_free()) w = M.freeness_witness();
      if (M.mode() == NormMode::rational_average && !R.contains_rationals())
        w = "non-free arity " + std::to_string(r) + " component needs Q";
    }
    rep.add("freeness", w.empty(), w);
  }
  {
    std::string w;
    for (int r = 0; r <= RM && w.empty(); ++r)
      for (int c = 0; c < C.comp[r].size() && w.empty(); ++c)
        for (const auto& t : C.cocomp[r][c]) {
          int k = static_cast<int>(t.shape.inner.size());
          int d = C.degree({k, t.shape.outer});
          int ar = 0;
          for (const auto& b : t.shape.inner) d += C.degree(b), ar += b.arity;
          if (d != C.degree({r, c}) || ar != r || k > RM) {
            w = shape_str(C, r, c, t.shape);
            break;
          }
        }
    rep.add("degree", w.empty(), w);
  }
  {
    std::string w;
    for (int r = 0; r <= RM && w.empty(); ++r)
      for (int c = 0; c < C.comp[r].size() && w.empty(); ++c) {
        Sparse<DecompShape> left, right;
        for (const auto& t : C.cocomp[r][c]) {
          int k = static_cast<int>(t.shape.inner.size());
          if (k == 1) left.add(R, t.shape, t.coeff);
          bool all_counit = true;
          for (const auto& b : t.shape.inner) all_counit = all_counit && is_counit(b);
          if (all_counit) right.add(R, t.shape, t.coeff);
        }
        Sparse<DecompShape> want_left, want_right;
        want_left.add(R, DecompShape{CooperadTruncation::counit_idx, {CoopRef{r, c}}}, R.one());
        want_right.add(R, DecompShape{c, std::vector<CoopRef>(r, CoopRef{1, CooperadTruncation::counit_idx})},
                       R.one());
        if (!(left == want_left)) w = "left counit law at " + C.name({r, c});
        else if (!(right == want_right)) w = "right counit law at " + C.name({r, c});
      }
    rep.add("counit", w.empty(), w);
  }
  {
    // Inner: Delta((+tau) c) contains (a; .. tau b_i ..) with the same coefficient.
    // Outer: Delta(pi_block c) contains (pi a; b swapped) up to the Koszul sign of the b's.
    std::string w;
    for (int r = 0; r <= RM && w.empty(); ++r)
      for (int c = 0; c < C.comp[r].size() && w.empty(); ++c)
        for (const auto& t : C.cocomp[r][c]) {
          int k = static_cast<int>(t.shape.inner.size());
          std::vector<int> sizes;
          for (const auto& b : t.shape.inner) sizes.push_back(b.arity);
          for (int i = 0; i < k && w.empty(); ++i) {
            int ri = sizes[i];
            for (int j = 0; j + 1 < ri; ++j) {
              Permutation tau = adjacent_swap(ri, j);
              DecompShape s2 = t.shape;
              s2.inner[i].idx = C.comp[ri].act(tau, s2.inner[i].idx);
              int c2 = C.comp[r].act(block_diagonal(sizes, i, tau), c);
              if (!(C.coeff(r, c2, s2) == t.coeff)) {
                w = "inner " + shape_str(C, r, c, t.shape);
                break;
              }
            }
          }
          for (int i = 0; i + 1 < k && w.empty(); ++i) {
            Permutation pi = adjacent_swap(k, i);
            DecompShape s2 = t.shape;
            s2.outer = C.comp[k].act(pi, t.shape.outer);
            std::swap(s2.inner[i], s2.inner[i + 1]);
            int c2 = C.comp[r].act(block_permutation(pi, sizes), c);
            int sg = ((C.degree(t.shape.inner[i]) & 1) && (C.degree(t.shape.inner[i + 1]) & 1)) ? -1 : 1;
            Scalar want = sg > 0 ? t.coeff : R.neg(t.coeff);
            if (!(C.coeff(r, c2, s2) == want)) w = "outer " + shape_str(C, r, c, t.shape);
          }
        }
    rep.add("equivariance", w.empty(), w);
  }
  if (C.has_differential()) {
    // degree -1, square zero, equivariant, coderivation of the cocomposition.
    std::string w;
    long skipped = 0;
    auto dterms = [&](int r, const Sparse<int>& x) {
      Sparse<int> out;
      for (const auto& [i, ci] : x.terms) out.add_all(R, C.differential(r, i), ci);
      return out;
    };
    for (int r = 0; r <= RM && w.empty(); ++r) {
      const auto& M = C.comp[r];
      for (int c = 0; c < M.size() && w.empty(); ++c) {
        const auto& dc = C.differential(r, c);
        for (const auto& [i, ci] : dc.terms)
          if (M.degree(i) != M.degree(c) - 1) w = "degree of d at " + C.name({r, c});
        if (w.empty() && !dterms(r, dc).empty()) w = "d^2 != 0 at " + C.name({r, c});
        for (int j = 0; j + 1 < r && w.empty(); ++j) {
          Permutation s = adjacent_swap(r, j);
          Sparse<int> lhs, rhs;
          for (const auto& [i, ci] : dc.terms) lhs.add(R, M.act(s, i), ci);
          rhs = C.differential(r, M.act(s, c));
          if (!(lhs == rhs)) w = "d not equivariant at " + C.name({r, c});
        }
        if (!w.empty()) break;
        if (!C.degree_complete && M.degree(c) - 1 < C.dmin) {
          ++skipped;
          continue;
        }
        Sparse<DecompShape> lhs, rhs;
        for (const auto& [i, ci] : dc.terms)
          for (const auto& t : C.cocomp[r][i]) lhs.add(R, t.shape, R.mul(ci, t.coeff));
        for (const auto& t : C.cocomp[r][c]) {
          int k = static_cast<int>(t.shape.inner.size());
          for (const auto& [o, co] : C.differential(k, t.shape.outer).terms) {
            DecompShape s2 = t.shape;
            s2.outer = o;
            rhs.add(R, s2, R.mul(co, t.coeff));
          }
          int pre = C.degree({k, t.shape.outer});
          for (int i = 0; i < k; ++i) {
            const auto& b = t.shape.inner[i];
            Scalar sc = (pre & 1) ? R.neg(t.coeff) : t.coeff;
            for (const auto& [o, co] : C.differential(b.arity, b.idx).terms) {
              DecompShape s2 = t.shape;
              s2.inner[i].idx = o;
              rhs.add(R, s2, R.mul(co, sc));
            }
            pre += C.degree(b);
          }
        }
        if (!C.degree_complete) {
          // terms leaving the degree window are not represented
          auto drop = [&](Sparse<DecompShape>& x) {
            for (auto it = x.terms.begin(); it != x.terms.end();) {
              int d = C.degree({static_cast<int>(it->first.inner.size()), it->first.outer});
              for (const auto& b : it->first.inner) d += C.degree(b);
              it = d < C.dmin ? x.terms.erase(it) : std::next(it);
            }
          };
          drop(lhs);
          drop(rhs);
        }
        if (!(lhs == rhs)) w = "d is not a coderivation at " + C.name({r, c});
      }
    }
    rep.add("differential", w.empty(), w,
            skipped ? std::to_string(skipped) + " elements at the degree window skipped" : "");
  }
  {
    std::string w;
    for (int r = 0; r <= RM && w.empty(); ++r)
      for (int c = 0; c < C.comp[r].size() && w.empty(); ++c) {
        Sparse<Tree> A, B;
        // A: decompose, then decompose the outer factor.
        for (const auto& t : C.cocomp[r][c]) {
          int m = static_cast<int>(t.shape.inner.size());
          std::vector<int> ldeg;
          for (const auto& x : t.shape.inner) ldeg.push_back(C.degree(x));
          for (const auto& u : C.cocomp[m][t.shape.outer]) {
            int k = static_cast<int>(u.shape.inner.size());
            Tree tr{u.shape.outer, u.shape.inner, t.shape.inner, {}};
            // reorder b_1..b_k, leaves -> b_1 leaves_1 b_2 leaves_2 ...
            std::vector<int> deg, order;
            for (const auto& b : u.shape.inner) deg.push_back(C.degree(b));
            for (int d : ldeg) deg.push_back(d);
            int pos = 0;
            for (int i = 0; i < k; ++i) {
              order.push_back(i);
              tr.leaf_counts.push_back(u.shape.inner[i].arity);
              for (int j = 0; j < u.shape.inner[i].arity; ++j) order.push_back(k + pos++);
            }
            int sg = reorder_sign(order, deg);
            Scalar v = R.mul(t.coeff, u.coeff);
            A.add(R, tr, sg > 0 ? v : R.neg(v));
          }
        }
        // B: decompose, then decompose each inner factor (depth first, leaf budget RM).
        for (const auto& t : C.cocomp[r][c]) {
          int k = static_cast<int>(t.shape.inner.size());
          std::vector<const CocompTerm*> pick(k);
          auto rec = [&](auto&& self, int i, int leaves, const Scalar& v) -> void {
            if (i == k) {
              Tree tr{t.shape.outer, {}, {}, {}};
              for (int j = 0; j < k; ++j) {
                int n = static_cast<int>(pick[j]->shape.inner.size());
                tr.mid.push_back({n, pick[j]->shape.outer});
                tr.leaf_counts.push_back(n);
                for (const auto& x : pick[j]->shape.inner) tr.leaves.push_back(x);
              }
              B.add(R, tr, v);
              return;
            }
            const auto& d = t.shape.inner[i];
            for (const auto& u : C.cocomp[d.arity][d.idx]) {
              int n = static_cast<int>(u.shape.inner.size());
              if (leaves + n > RM) continue;
              pick[i] = &u;
              self(self, i + 1, leaves + n, R.mul(v, u.coeff));
            }
          };
          rec(rec, 0, 0, t.coeff);
        }
        if (!(A == B)) {
          auto diff = difference(R, A, B);
          const Tree& t = diff.terms.begin()->first;
          std::ostringstream os;
          os << C.name({r, c}) << " via outer " << C.name({static_cast<int>(t.mid.size()), t.outer});
          for (const auto& m : t.mid) os << " | " << C.name(m);
          w = os.str();
        }
      }
    rep.add("coassociativity", w.empty(), w, "all shapes with arities <= " + std::to_string(RM));
  }
  return rep;
}

Report validate_hopf(const CooperadTruncation& C, const HopfStructure& H) {
  Report rep;
  const Ring& R = C.ring;
  int RM = C.rmax;
  auto mul = [&](int r, const Sparse<int>& x, const Sparse<int>& y) {
    Sparse<int> out;
    for (const auto& [a, ca] : x.terms)
      for (const auto& [b, cb] : y.terms) out.add_all(R, H.product(r, a, b), R.mul(ca, cb));
    return out;
  };
  auto basis = [&](int r, int i) {
    Sparse<int> e;
    e.add(R, i, R.one());
    return e;
  };
  if (static_cast<int>(H.mu.size()) != RM + 1 || static_cast<int>(H.eta.size()) != RM + 1) {
    rep.add("shape", false, "products/units missing for some arity");
    return rep;
  }
  {
    std::string w;
    for (int r = 0; r <= RM && w.empty(); ++r) {
      for (const auto& [i, c] : H.eta[r].terms)
        if (C.comp[r].degree(i) != 0) w = "eta_" + std::to_string(r) + " not in degree 0";
      for (const auto& [ab, v] : H.mu[r])
        for (const auto& [i, c] : v.terms)
          if (C.comp[r].degree(i) != C.comp[r].degree(ab.first) + C.comp[r].degree(ab.second))
            w = "mu_" + std::to_string(r) + " not degree additive";
    }
    rep.add("degree", w.empty(), w);
  }
  if (C.has_differential()) {
    std::string w;
    auto d = [&](int r, const Sparse<int>& x) {
      Sparse<int> out;
      for (const auto& [i, ci] : x.terms) out.add_all(R, C.differential(r, i), ci);
      return out;
    };
    for (int r = 0; r <= RM && w.empty(); ++r) {
      if (!d(r, H.eta[r]).empty()) {
        w = "d(eta_" + std::to_string(r) + ") != 0";
        break;
      }
      int n = C.comp[r].size();
      for (int a = 0; a < n && w.empty(); ++a)
        for (int b = 0; b < n && w.empty(); ++b) {
          int deg = C.degree({r, a}) + C.degree({r, b});
          if (!C.degree_complete && deg - 1 < C.dmin) continue;
          auto lhs = d(r, H.product(r, a, b));
          auto rhs = mul(r, d(r, basis(r, a)), basis(r, b));
          auto t2 = mul(r, basis(r, a), d(r, basis(r, b)));
          rhs.add_all(R, t2, R.signed_one(C.degree({r, a}) & 1 ? -1 : 1));
          if (!(lhs == rhs)) w = "d(" + C.name({r, a}) + " * " + C.name({r, b}) + ")";
        }
    }
    rep.add("leibniz", w.empty(), w);
  }
  {
    std::string w;
    for (int r = 0; r <= RM && w.empty(); ++r) {
      if (H.eta[r].empty()) {
        w = "eta_" + std::to_string(r) + " missing";
        break;
      }
      for (int x = 0; x < C.comp[r].size(); ++x) {
        auto e = basis(r, x);
        if (!(mul(r, H.eta[r], e) == e) || !(mul(r, e, H.eta[r]) == e)) {
          w = "unit law fails at " + C.name({r, x});
          break;
        }
      }
    }
    rep.add("unit", w.empty(), w);
  }
  {
    std::string w;
    for (int r = 0; r <= RM && w.empty(); ++r) {
      int n = C.comp[r].size();
      for (int a = 0; a < n && w.empty(); ++a)
        for (int b = 0; b < n && w.empty(); ++b) {
          const auto& ab = H.product(r, a, b);
          for (int c = 0; c < n; ++c) {
            auto lhs = mul(r, ab, basis(r, c));
            auto rhs = mul(r, basis(r, a), H.product(r, b, c));
            if (!(lhs == rhs)) {
              w = C.name({r, a}) + " * " + C.name({r, b}) + " * " + C.name({r, c});
              break;
            }
          }
        }
    }
    rep.add("associativity", w.empty(), w);
  }
  {
    std::string w;
    for (int r = 2; r <= RM && w.empty(); ++r) {
      const auto& M = C.comp[r];
      auto act_el = [&](const Permutation& s, const Sparse<int>& x) {
        Sparse<int> out;
        for (const auto& [i, c] : x.terms) out.add(R, M.act(s, i), c);
        return out;
      };
      for (int j = 0; j + 1 < r && w.empty(); ++j) {
        Permutation s = adjacent_swap(r, j);
        if (!(act_el(s, H.eta[r]) == H.eta[r])) {
          w = "eta_" + std::to_string(r) + " not invariant";
          break;
        }
        for (int a = 0; a < M.size() && w.empty(); ++a)
          for (int b = 0; b < M.size(); ++b)
            if (!(H.product(r, M.act(s, a), M.act(s, b)) == act_el(s, H.product(r, a, b)))) {
              w = "mu_" + std::to_string(r) + " at " + C.name({r, a}) + ", " + C.name({r, b});
              break;
            }
      }
    }
    rep.add("equivariance", w.empty(), w);
  }
  {
    std::string w;
    long skipped = 0;
    for (int r = 0; r <= RM && w.empty(); ++r) {
      int n = C.comp[r].size();
      for (int x = 0; x < n && w.empty(); ++x)
        for (int y = 0; y < n && w.empty(); ++y) {
          if (!C.degree_complete && C.degree({r, x}) + C.degree({r, y}) < C.dmin) {
            ++skipped;
            continue;
          }
          Sparse<DecompShape> lhs, rhs;
          for (const auto& [z, cz] : H.product(r, x, y).terms)
            for (const auto& t : C.cocomp[r][z]) lhs.add(R, t.shape, R.mul(cz, t.coeff));
          std::map<std::vector<int>, std::vector<const CocompTerm*>> by_profile;
          for (const auto& t : C.cocomp[r][y]) {
            std::vector<int> prof;
            for (const auto& b : t.shape.inner) prof.push_back(b.arity);
            by_profile[prof].push_back(&t);
          }
          for (const auto& t : C.cocomp[r][x]) {
            std::vector<int> prof;
            for (const auto& b : t.shape.inner) prof.push_back(b.arity);
            auto it = by_profile.find(prof);
            if (it == by_profile.end()) continue;
            int k = static_cast<int>(prof.size());
            for (const CocompTerm* u : it->second) {
              // [a, b_1..b_k, a', b'_1..b'_k] -> [a, a', b_1, b'_1, ...]
              std::vector<int> deg{C.degree({k, t.shape.outer})};
              for (const auto& b : t.shape.inner) deg.push_back(C.degree(b));
              deg.push_back(C.degree({k, u->shape.outer}));
              for (const auto& b : u->shape.inner) deg.push_back(C.degree(b));
              std::vector<int> order{0, k + 1};
              for (int i = 0; i < k; ++i) {
                order.push_back(1 + i);
                order.push_back(k + 2 + i);
              }
              int sg = reorder_sign(order, deg);
              std::vector<std::pair<DecompShape, Scalar>> acc{
                  {DecompShape{0, {}}, sg > 0 ? R.mul(t.coeff, u->coeff) : R.neg(R.mul(t.coeff, u->coeff))}};
              auto expand = [&](int ar, int a1, int a2, bool outer) {
                std::vector<std::pair<DecompShape, Scalar>> next;
                for (const auto& [s, v] : acc)
                  for (const auto& [z, cz] : H.product(ar, a1, a2).terms) {
                    DecompShape s2 = s;
                    if (outer) s2.outer = z;
                    else s2.inner.push_back({ar, z});
                    next.push_back({std::move(s2), R.mul(v, cz)});
                  }
                acc = std::move(next);
              };
              expand(k, t.shape.outer, u->shape.outer, true);
              for (int i = 0; i < k; ++i) expand(prof[i], t.shape.inner[i].idx, u->shape.inner[i].idx, false);
              for (auto& [s, v] : acc) rhs.add(R, s, v);
            }
          }
          if (!(lhs == rhs)) w = "Delta(" + C.name({r, x}) + " * " + C.name({r, y}) + ")";
        }
    }
    rep.add("compatibility", w.empty(), w,
            skipped ? std::to_string(skipped) + " pairs beyond the degree window skipped" : "");
  }
  return rep;
}

Report validate_morphism(const CooperadMorphism& phi) {
  Report rep;
  const auto& S = *phi.source;
  const auto& T = *phi.target;
  const Ring& R = T.ring;
  if (S.rmax != T.rmax || static_cast<int>(phi.maps.size()) != S.rmax + 1) {
    rep.add("shape", false, "truncations differ");
    return rep;
  }
  {
    std::string w;
    for (int r = 0; r <= S.rmax && w.empty(); ++r)
      for (int c = 0; c < S.comp[r].size() && w.empty(); ++c)
        for (const auto& [i, v] : phi.maps[r][c].terms)
          if (T.degree({r, i}) != S.degree({r, c})) {
            w = S.name({r, c}) + " -> " + T.name({r, i});
            break;
          }
    rep.add("degree", w.empty(), w);
  }
  {
    bool ok = phi.maps[0][0].terms.size() == 1 && phi.maps[0][0].coeff(0) == R.one() &&
              phi.maps[1][0].terms.size() == 1 && phi.maps[1][0].coeff(0) == R.one();
    rep.add("counit", ok, ok ? "" : "unit or counit not preserved");
  }
  {
    std::string w;
    for (int r = 2; r <= S.rmax && w.empty(); ++r)
      for (int j = 0; j + 1 < r && w.empty(); ++j) {
        Permutation s = adjacent_swap(r, j);
        for (int c = 0; c < S.comp[r].size(); ++c) {
          Sparse<int> lhs;
          for (const auto& [i, v] : phi.maps[r][c].terms) lhs.add(R, T.comp[r].act(s, i), v);
          if (!(lhs == phi.maps[r][S.comp[r].act(s, c)])) {
            w = S.name({r, c});
            break;
          }
        }
      }
    rep.add("equivariance", w.empty(), w);
  }
  {
    std::string w;
    for (int r = 0; r <= S.rmax && w.empty(); ++r)
      for (int c = 0; c < S.comp[r].size() && w.empty(); ++c) {
        Sparse<DecompShape> lhs, rhs;
        for (const auto& [i, v] : phi.maps[r][c].terms)
          for (const auto& t : T.cocomp[r][i]) lhs.add(R, t.shape, R.mul(v, t.coeff));
        for (const auto& t : S.cocomp[r][c]) {
          int k = static_cast<int>(t.shape.inner.size());
          std::vector<std::pair<DecompShape, Scalar>> acc;
          for (const auto& [o, v] : phi.maps[k][t.shape.outer].terms)
            acc.push_back({DecompShape{o, {}}, R.mul(v, t.coeff)});
          for (const auto& b : t.shape.inner) {
            std::vector<std::pair<DecompShape, Scalar>> next;
            for (const auto& [s, v] : acc)
              for (const auto& [i, cv] : phi.maps[b.arity][b.idx].terms) {
                DecompShape s2 = s;
                s2.inner.push_back({b.arity, i});
                next.push_back({std::move(s2), R.mul(v, cv)});
              }
            acc = std::move(next);
          }
          for (auto& [s, v] : acc) rhs.add(R, s, v);
        }
        if (!(lhs == rhs)) w = "cocomposition at " + S.name({r, c});
      }
    rep.add("cocomposition", w.empty(), w);
  }
  if (S.has_differential() || T.has_differential()) {
    std::string w;
    for (int r = 0; r <= S.rmax && w.empty(); ++r)
      for (int c = 0; c < S.comp[r].size() && w.empty(); ++c) {
        if (!S.degree_complete && S.degree({r, c}) - 1 < S.dmin) continue;
        Sparse<int> lhs, rhs;
        for (const auto& [i, v] : S.differential(r, c).terms) lhs.add_all(R, phi.maps[r][i], v);
        for (const auto& [i, v] : phi.maps[r][c].terms) rhs.add_all(R, T.differential(r, i), v);
        if (!(lhs == rhs)) w = "d at " + S.name({r, c});
      }
    rep.add("differential", w.empty(), w);
  }
  return rep;
}

CooperadTruncation cocom_truncation(const Ring& ring, int rmax) {
  CooperadTruncation C;
  C.ring = ring;
  C.rmax = rmax;
  C.family = "cocom";
  for (int r = 0; r <= rmax; ++r) {
    std::string nm = r == 0 ? "unit" : r == 1 ? "id" : "g" + std::to_string(r);
    C.comp.push_back(OrbitModule::trivial(r, {nm, 0, 1}, NormMode::rational_average));
  }
  C.cocomp.assign(rmax + 1, {});
  for (int r = 0; r <= rmax; ++r) {
    C.cocomp[r].assign(1, {});
    for (const auto& sh : block_shapes(r, rmax)) {
      DecompShape s{0, {}};
      for (int a : sh) s.inner.push_back({a, 0});
      C.cocomp[r][0].push_back({s, ring.one()});
    }
  }
  C.finalize();
  return C;
}

CooperadMorphism cocom_unit_morphism(const CooperadTruncation& cocom, const CooperadTruncation& C,
                                     const HopfStructure& H) {
  if (cocom.rmax != C.rmax) throw Error(Reason::shape, "cocom_unit_morphism: truncations differ");
  CooperadMorphism phi{&cocom, &C, {}};
  for (int r = 0; r <= C.rmax; ++r) phi.maps.push_back({H.eta.at(r)});
  Report rep = validate_morphism(phi);
  if (!rep.ok()) throw Error(Reason::incompatible_units, "units do not form a cooperad morphism: " + rep.first_failure()->witness);
  return phi;
}

}  // namespace opmc
