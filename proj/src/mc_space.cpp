#include "opmc/mc_space.hpp"

#include <algorithm>
#include <random>

#include "opmc/builders.hpp"
#include "opmc/error.hpp"

namespace opmc {

namespace {

const Element kEmpty{};

int face_dim(const Face& I) { return static_cast<int>(I.size()) - 1; }

Face top_face(int n) {
  Face I;
  for (int i = 0; i <= n; ++i) I.push_back(i);
  return I;
}

Face opposite(int n, int k) {
  Face I;
  for (int i = 0; i <= n; ++i)
    if (i != k) I.push_back(i);
  return I;
}

std::optional<Face> image(const std::vector<int>& f, const Face& I) {
  Face J;
  for (int i : I) {
    if (!J.empty() && J.back() == f[i]) return std::nullopt;
    J.push_back(f[i]);
  }
  return J;
}

}  // namespace

const Element& ConvolutionElement::at(const Face& I) const {
  auto it = values.find(I);
  return it == values.end() ? kEmpty : it->second;
}

void ConvolutionElement::set(const Face& I, Element v) {
  if (v.empty())
    values.erase(I);
  else
    values[I] = std::move(v);
}

void ConvolutionElement::add(const Ring& R, const Face& I, const Element& v, const Scalar& c) {
  Element x = at(I);
  x.add_all(R, v, c);
  set(I, std::move(x));
}

bool is_horn_face(int n, int k, const Face& I) {
  return I != top_face(n) && I != opposite(n, k);
}

McSpace::McSpace(const CofreeCoalgebra& F, const Coderivation& Q, int nmax)
    : F_(&F), Q_(&Q), nmax_(nmax), S_(F.cooperad(), nmax) {
  flat_ = is_flat(F, Q);
  for (const auto& I : all_faces(nmax))
    for (int r = 0; r <= F.cooperad().rmax; ++r) by_face_[I].push_back(S_.decompose(I, r));
}

const Sparse<CoalgebraTerm>& McSpace::decomposition(const Face& I, int r) const {
  auto it = by_face_.find(I);
  if (it == by_face_.end()) throw Error(Reason::shape, "face beyond the prepared simplex dimension");
  return it->second.at(r);
}

void McSpace::require_flat() const {
  if (!flat_) throw Error(Reason::convention, "the coderivation is curved; only flat algebras are supported here");
}

void McSpace::validate(const ConvolutionElement& psi) const {
  const auto& V = F_->module();
  for (const auto& [I, v] : psi.values) {
    if (I.empty() || I.back() > psi.n) throw Error(Reason::shape, "convolution element: face out of range");
    for (const auto& [i, c] : v.terms)
      if (V.degree(i) != face_dim(I) + psi.degree)
        throw Error(Reason::shape, "convolution element: value of wrong degree");
  }
}

ConvolutionElement McSpace::zero(int n, int degree) const { return ConvolutionElement{n, degree, {}}; }

Element McSpace::apply_q1(const Element& v) const {
  const Ring& R = F_->ring();
  Element out;
  for (const auto& [i, c] : v.terms)
    out.add_all(R, Q_->on_term(*F_, ClassKey{1, CooperadTruncation::counit_idx, {i}}), c);
  return out;
}

ConvolutionElement McSpace::conv_differential(const ConvolutionElement& psi) const {
  const Ring& R = F_->ring();
  ConvolutionElement out = zero(psi.n, psi.degree - 1);
  Scalar s = psi.degree % 2 ? R.one() : R.neg(R.one());  // -(-1)^{|psi|}
  for (const auto& I : all_faces(psi.n)) {
    Element v = apply_q1(psi.at(I));
    for (const auto& [J, c] : boundary(R, I).terms) v.add_all(R, psi.at(J), R.mul(s, c));
    out.set(I, std::move(v));
  }
  return out;
}

void McSpace::mu_at(const std::vector<const ConvolutionElement*>& psis, const Face& I, Element& out) const {
  const Ring& R = F_->ring();
  const auto& C = F_->cooperad();
  int r = static_cast<int>(psis.size());
  for (const auto& [t, c] : decomposition(I, r).terms) {
    // (psi_1 (x) .. (x) psi_r) passes c and the earlier faces
    int e = 0, pre = C.degree({r, t.c});
    for (int j = 0; j < r; ++j) {
      e += psis[j]->degree * pre;
      pre += face_dim(t.faces[j]);
    }
    Scalar c0 = e % 2 ? R.neg(c) : c;
    std::vector<const Element*> vals;
    bool zero = false;
    for (int j = 0; j < r; ++j) {
      vals.push_back(&psis[j]->at(t.faces[j]));
      if (vals.back()->empty()) zero = true;
    }
    if (zero) continue;
    ClassKey key{r, t.c, std::vector<int>(r)};
    auto rec = [&](auto&& self, int j, const Scalar& coef) -> void {
      if (j == r) {
        out.add_all(R, Q_->on_term(*F_, key), coef);
        return;
      }
      for (const auto& [i, ci] : vals[j]->terms) {
        key.v[j] = i;
        self(self, j + 1, R.mul(coef, ci));
      }
    };
    rec(rec, 0, c0);
  }
}

ConvolutionElement McSpace::conv_mu(const std::vector<const ConvolutionElement*>& psis) const {
  if (psis.empty()) throw Error(Reason::shape, "conv_mu needs at least one argument");
  int r = static_cast<int>(psis.size());
  if (r > F_->cooperad().rmax) throw Error(Reason::truncation, "arity beyond R_max");
  int n = psis[0]->n, d = -1;
  for (const auto* p : psis) {
    if (p->n != n) throw Error(Reason::shape, "conv_mu: simplex dimensions differ");
    d += p->degree;
  }
  ConvolutionElement out = zero(n, d);
  for (const auto& I : all_faces(n)) {
    Element v;
    mu_at(psis, I, v);
    out.set(I, std::move(v));
  }
  return out;
}

ConvolutionElement McSpace::star_iota(const ConvolutionElement& psi) const {
  require_flat();
  const Ring& R = F_->ring();
  ConvolutionElement out = zero(psi.n, psi.degree - 1);
  for (int r = 2; r <= F_->cooperad().rmax; ++r) {
    std::vector<const ConvolutionElement*> args(r, &psi);
    for (const auto& [I, v] : conv_mu(args).values) out.add(R, I, v, R.one());
  }
  return out;
}

Element McSpace::residual_at(const ConvolutionElement& psi, const Face& I) const {
  require_flat();
  const Ring& R = F_->ring();
  Scalar s = psi.degree % 2 ? R.one() : R.neg(R.one());
  Element v = apply_q1(psi.at(I));
  for (const auto& [J, c] : boundary(R, I).terms) v.add_all(R, psi.at(J), R.mul(s, c));
  for (int r = 2; r <= F_->cooperad().rmax; ++r) {
    std::vector<const ConvolutionElement*> args(r, &psi);
    mu_at(args, I, v);
  }
  return v;
}

McCheck McSpace::mc_check(const ConvolutionElement& psi) const {
  require_flat();
  if (psi.degree != 0) throw Error(Reason::precondition, "mc_check needs a degree 0 element");
  McCheck out;
  out.residual = zero(psi.n, -1);
  for (const auto& I : all_faces(psi.n)) {
    auto v = residual_at(psi, I);
    if (!v.empty() && out.witness.empty()) {
      std::string w = "e_";
      for (int i : I) w += std::to_string(i);
      out.witness = w;
    }
    out.residual.set(I, std::move(v));
  }
  out.ok = out.residual.values.empty();
  return out;
}

ConvolutionElement McSpace::face(int i, const ConvolutionElement& psi) const {
  if (psi.n < 1 || i < 0 || i > psi.n) throw Error(Reason::shape, "face index out of range");
  auto f = coface(psi.n, i);
  ConvolutionElement out = zero(psi.n - 1, psi.degree);
  for (const auto& J : all_faces(psi.n - 1)) out.set(J, psi.at(*image(f, J)));
  if (flat_ && psi.degree == 0 && psi.n <= nmax_ && mc_check(psi).ok && !mc_check(out).ok)
    throw Error(Reason::internal, "face map broke the MC equation");
  return out;
}

ConvolutionElement McSpace::degeneracy(int j, const ConvolutionElement& psi) const {
  if (j < 0 || j > psi.n) throw Error(Reason::shape, "degeneracy index out of range");
  auto f = codegeneracy(psi.n, j);
  ConvolutionElement out = zero(psi.n + 1, psi.degree);
  for (const auto& J : all_faces(psi.n + 1))
    if (auto I = image(f, J)) out.set(J, psi.at(*I));
  if (flat_ && psi.degree == 0 && psi.n + 1 <= nmax_ && mc_check(psi).ok && !mc_check(out).ok)
    throw Error(Reason::internal, "degeneracy map broke the MC equation");
  return out;
}

std::vector<ConvolutionElement> McSpace::mc_simplices(int n, long cap) const {
  require_flat();
  const Ring& R = F_->ring();
  const auto& V = F_->module();
  if (!R.is_finite() || R.modulus() > 4) throw Error(Reason::unsupported, "MC enumeration needs Z/m with m <= 4");
  if (n > nmax_) throw Error(Reason::shape, "simplex dimension beyond the prepared range");
  if (cap <= 0) cap = default_resource_cap();
  auto faces = all_faces(n);
  std::vector<std::vector<Element>> choices;
  double total = 1;
  for (const auto& I : faces) {
    auto idx = V.indices_of_degree(face_dim(I));
    if (idx.size() > 3) throw Error(Reason::unsupported, "MC enumeration allows at most 3 basis values per face");
    std::vector<Element> opts;
    long m = R.modulus(), cnt = 1;
    for (std::size_t i = 0; i < idx.size(); ++i) cnt *= m;
    for (long t = 0; t < cnt; ++t) {
      Element e;
      long u = t;
      for (int i : idx) {
        e.add(R, i, R.from_int(static_cast<int>(u % m)));
        u /= m;
      }
      opts.push_back(std::move(e));
    }
    total *= static_cast<double>(opts.size());
    choices.push_back(std::move(opts));
  }
  if (total > static_cast<double>(cap)) throw Error(Reason::unsupported, "MC enumeration exceeds the cap");
  std::vector<ConvolutionElement> out;
  ConvolutionElement psi = zero(n, 0);
  // faces are ordered by size, so each residual is decided once its face is set
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == faces.size()) {
      out.push_back(psi);
      return;
    }
    for (const auto& e : choices[j]) {
      psi.set(faces[j], e);
      if (residual_at(psi, faces[j]).empty()) self(self, j + 1);
    }
    psi.set(faces[j], {});
  };
  rec(rec, 0);
  return out;
}

ConvolutionElement McSpace::lift_E(int n, const Element& a) const {
  ConvolutionElement out = zero(n, 0);
  auto d = F_->module().degree_of(a);
  out.degree = d ? *d : 0;
  for (int i = 0; i <= n; ++i) out.set({i}, a);
  return out;
}

ConvolutionElement McSpace::lift_P(int k, const ConvolutionElement& psi) const {
  if (k < 0 || k > psi.n) throw Error(Reason::shape, "k out of range");
  ConvolutionElement out = zero(psi.n, psi.degree);
  for (int i = 0; i <= psi.n; ++i) out.set({i}, psi.at({k}));
  return out;
}

ConvolutionElement McSpace::lift_H(int k, const ConvolutionElement& psi) const {
  if (k < 0 || k > psi.n) throw Error(Reason::shape, "k out of range");
  const Ring& R = F_->ring();
  ConvolutionElement out = zero(psi.n, psi.degree + 1);
  // Koszul: H(psi) = (-1)^{|psi|} psi o h
  Scalar s = psi.degree % 2 ? R.neg(R.one()) : R.one();
  for (const auto& I : all_faces(psi.n))
    for (const auto& [J, c] : contraction_h(R, k, I).terms) out.add(R, I, psi.at(J), R.mul(s, c));
  return out;
}

ConvolutionElement McSpace::lift_R(int k, const ConvolutionElement& psi) const {
  return conv_differential(lift_H(k, psi));
}

HornData McSpace::horn_of(const ConvolutionElement& psi, int k) const {
  if (psi.n < 1 || k < 0 || k > psi.n) throw Error(Reason::shape, "horn index out of range");
  HornData h{psi.n, k, zero(psi.n, psi.degree)};
  for (const auto& [I, v] : psi.values)
    if (is_horn_face(psi.n, k, I)) h.phi.set(I, v);
  return h;
}

HornFillResult McSpace::horn_fill(const HornData& horn, const Element& top) const {
  require_flat();
  const Ring& R = F_->ring();
  const auto& V = F_->module();
  int n = horn.n, k = horn.k;
  if (n < 1 || k < 0 || k > n) throw Error(Reason::shape, "horn index out of range");
  if (n > nmax_) throw Error(Reason::shape, "horn dimension beyond the prepared range");
  if (horn.phi.degree != 0 || horn.phi.n != n) throw Error(Reason::shape, "horn data has wrong shape");
  validate(horn.phi);
  Face T = top_face(n), J = opposite(n, k);
  for (const auto& [I, v] : horn.phi.values)
    if (!is_horn_face(n, k, I)) throw Error(Reason::shape, "horn data has a value off the horn");
  for (const auto& I : all_faces(n))
    if (is_horn_face(n, k, I) && !residual_at(horn.phi, I).empty())
      throw Error(Reason::precondition, "horn is not Maurer-Cartan on every face");
  for (const auto& [i, c] : top.terms)
    if (V.degree(i) != n) throw Error(Reason::shape, "top value has wrong degree");

  // psi_1: extend by the top value and solve the missing face from the linear
  // part of the top constraint; its coefficient (-1)^{k+1} is a unit.
  ConvolutionElement psi = horn.phi;
  psi.set(T, top);
  Element rhs = apply_q1(top);
  for (const auto& [I, c] : boundary(R, T).terms)
    if (I != J) rhs.add_all(R, psi.at(I), R.neg(c));
  Element a;
  a.add_all(R, rhs, k % 2 ? R.neg(R.one()) : R.one());
  psi.set(J, std::move(a));

  HornFillResult res;
  int limit = (V.size() ? V.max_weight() : 0) + 1;
  for (;;) {
    ConvolutionElement defect = zero(n, -1);
    for (const auto& I : all_faces(n)) defect.set(I, residual_at(psi, I));
    int mw = -1;
    for (const auto& [I, v] : defect.values) {
      int w = *V.min_weight_of(v);
      mw = mw < 0 ? w : std::min(mw, w);
    }
    res.defect_min_weight.push_back(mw);
    auto gamma = lift_H(k, defect);
    if (gamma.values.empty()) break;
    if (res.iterations >= limit) throw Error(Reason::internal, "horn filling did not stabilize within W_max corrections");
    for (const auto& [I, v] : gamma.values) psi.add(R, I, v, R.neg(R.one()));
    ++res.iterations;
  }
  auto chk = mc_check(psi);
  if (!chk.ok) throw Error(Reason::internal, "horn filler fails the MC equation at " + chk.witness);
  for (const auto& I : all_faces(n))
    if (is_horn_face(n, k, I) && !(psi.at(I) == horn.phi.at(I)))
      throw Error(Reason::internal, "horn filler changed a horn value");
  res.psi = std::move(psi);
  return res;
}

KanReport McSpace::kan_spot_check(int trials, std::uint64_t seed, int nmax, Exec exec) const {
  require_flat();
  const Ring& R = F_->ring();
  const auto& V = F_->module();
  nmax = std::min(nmax, nmax_);
  if (nmax < 1) throw Error(Reason::shape, "kan_spot_check needs n >= 1");
  // Pools of MC simplices: full enumeration where it is small, else built up
  // from the pool below by degeneracy and a fill with a random top value.
  std::vector<std::vector<ConvolutionElement>> pool(nmax + 1);
  pool[0].push_back(zero(0));
  for (int d = 0; d <= std::min(nmax, 2); ++d) {
    try {
      auto all = mc_simplices(d);
      if (all.empty()) break;
      pool[d] = std::move(all);
    } catch (const Error&) {
      break;
    }
  }
  KanReport rep;
  rep.trials = trials;
  std::vector<std::string> fail(trials);
  std::vector<int> iters(trials, -1);
  auto one = [&](int t) {
    std::mt19937_64 gen(seed * 1000003u + static_cast<std::uint64_t>(t));
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
    auto random_value = [&](int deg) {
      Element e;
      for (int i : V.indices_of_degree(deg)) {
        Scalar s = R.is_finite() ? R.from_int(pick(0, static_cast<int>(R.modulus()) - 1)) : R.from_int(pick(-2, 2));
        e.add(R, i, s);
      }
      return e;
    };
    int n = 1 + t % nmax;
    int k = (t / nmax) % (n + 1);
    try {
      int base = n;
      while (pool[base].empty()) --base;
      ConvolutionElement psi = pool[base][pick(0, static_cast<int>(pool[base].size()) - 1)];
      for (int d = base + 1; d <= n; ++d) {
        auto deg = degeneracy(pick(0, d - 1), psi);
        psi = horn_fill(horn_of(deg, pick(0, d)), random_value(d)).psi;
      }
      auto horn = horn_of(psi, k);
      auto res = horn_fill(horn);
      iters[t] = res.iterations;
    } catch (const Error& e) {
      fail[t] = "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + e.what();
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) one(t);
  } else {
    for (int t = 0; t < trials; ++t) one(t);
  }
  for (int t = 0; t < trials; ++t) {
    if (fail[t].empty()) {
      ++rep.filled;
      rep.max_iterations = std::max(rep.max_iterations, iters[t]);
    } else {
      rep.failures.push_back(fail[t]);
    }
  }
  return rep;
}

}  // namespace opmc
