#include "opmc/graded.hpp"

#include <algorithm>

#include "opmc/error.hpp"

namespace opmc {

GradedModule::GradedModule(Ring ring, std::vector<BasisElement> basis)
    : ring_(std::move(ring)), basis_(std::move(basis)) {
  for (int i = 0; i < size(); ++i) {
    if (basis_[i].weight < 0) throw Error(Reason::shape, "weight of " + basis_[i].name + " must be >= 0");
    if (!names_.emplace(basis_[i].name, i).second)
      throw Error(Reason::shape, "duplicate basis name " + basis_[i].name);
  }
}

int GradedModule::index_of(const std::string& name) const {
  auto it = names_.find(name);
  if (it == names_.end()) throw Error(Reason::shape, "unknown basis element " + name);
  return it->second;
}

int GradedModule::max_weight() const {
  int w = 0;
  for (const auto& b : basis_) w = std::max(w, b.weight);
  return w;
}

int GradedModule::min_weight() const {
  int w = 0;
  for (const auto& b : basis_) w = w == 0 ? b.weight : std::min(w, b.weight);
  return w;
}

std::vector<int> GradedModule::indices_of_degree(int d) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (basis_[i].degree == d) out.push_back(i);
  return out;
}

std::optional<int> GradedModule::min_weight_of(const Element& x) const {
  std::optional<int> w;
  for (const auto& [i, c] : x.terms) w = w ? std::min(*w, basis_[i].weight) : basis_[i].weight;
  return w;
}

std::optional<int> GradedModule::degree_of(const Element& x) const {
  std::optional<int> d;
  for (const auto& [i, c] : x.terms) {
    if (d && *d != basis_[i].degree) throw Error(Reason::shape, "element is not homogeneous");
    d = basis_[i].degree;
  }
  return d;
}

Element GradedModule::basis_vector(int i) const {
  Element e;
  e.add(ring_, i, ring_.one());
  return e;
}

std::map<std::string, Scalar> GradedModule::named(const Element& x) const {
  std::map<std::string, Scalar> out;
  for (const auto& [i, c] : x.terms) out[basis_[i].name] = c;
  return out;
}

LinearMap::LinearMap(const GradedModule* source, const GradedModule* target, int degree)
    : source_(source), target_(target), degree_(degree), cols_(source->size()) {}

LinearMap LinearMap::identity(const GradedModule* m) {
  LinearMap f(m, m, 0);
  for (int i = 0; i < m->size(); ++i) f.cols_[i] = m->basis_vector(i);
  return f;
}

LinearMap LinearMap::zero(const GradedModule* s, const GradedModule* t, int degree) {
  return LinearMap(s, t, degree);
}

void LinearMap::set(int src, const Element& value) {
  for (const auto& [j, c] : value.terms)
    if (target_->degree(j) != source_->degree(src) + degree_)
      throw Error(Reason::shape, "entry " + source_->at(src).name + " -> " + target_->at(j).name +
                                     " breaks degree " + std::to_string(degree_));
  cols_.at(src) = value;
}

const Element& LinearMap::column(int src) const { return cols_.at(src); }

Element LinearMap::apply(const Element& x) const {
  const Ring& R = source_->ring();
  Element out;
  for (const auto& [i, c] : x.terms) out.add_all(R, cols_.at(i), c);
  return out;
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
  if (inner.target_ != source_ && !(inner.target_->basis() == source_->basis()))
    throw Error(Reason::shape, "compose: module mismatch");
  LinearMap out(inner.source_, target_, degree_ + inner.degree_);
  for (int i = 0; i < inner.source_->size(); ++i) out.cols_[i] = apply(inner.cols_[i]);
  return out;
}

LinearMap LinearMap::plus(const LinearMap& o) const {
  if (o.source_->basis() != source_->basis() || o.target_->basis() != target_->basis() || o.degree_ != degree_)
    throw Error(Reason::shape, "add: module mismatch");
  LinearMap out = *this;
  const Ring& R = source_->ring();
  for (int i = 0; i < source_->size(); ++i) out.cols_[i].add_all(R, o.cols_[i]);
  return out;
}

LinearMap LinearMap::scale(const Scalar& c) const {
  LinearMap out(source_, target_, degree_);
  for (int i = 0; i < source_->size(); ++i) out.cols_[i] = scaled(source_->ring(), cols_[i], c);
  return out;
}

bool LinearMap::operator==(const LinearMap& o) const { return degree_ == o.degree_ && cols_ == o.cols_; }

TensorBasis tensor_basis(const std::vector<const GradedModule*>& factors, std::optional<int> weight_bound) {
  TensorBasis tb;
  std::vector<int> cur;
  auto rec = [&](auto&& self, std::size_t pos, int deg, int wt) -> void {
    if (weight_bound && wt > *weight_bound) return;
    if (pos == factors.size()) {
      tb.tuples.push_back(cur);
      tb.degrees.push_back(deg);
      tb.weights.push_back(wt);
      return;
    }
    for (int i = 0; i < factors[pos]->size(); ++i) {
      cur.push_back(i);
      self(self, pos + 1, deg + factors[pos]->degree(i), wt + factors[pos]->weight(i));
      cur.pop_back();
    }
  };
  for (const auto* f : factors)
    if (!(f->ring() == factors.front()->ring())) throw Error(Reason::shape, "tensor_module: ring mismatch");
  rec(rec, 0, 0, 0);
  return tb;
}

GradedModule tensor_module(const std::vector<const GradedModule*>& factors, std::optional<int> weight_bound) {
  TensorBasis tb = tensor_basis(factors, weight_bound);
  std::vector<BasisElement> basis;
  for (std::size_t t = 0; t < tb.tuples.size(); ++t) {
    std::string name;
    for (std::size_t p = 0; p < tb.tuples[t].size(); ++p) {
      if (p) name += "|";
      name += factors[p]->at(tb.tuples[t][p]).name;
    }
    basis.push_back({name, tb.degrees[t], std::max(1, tb.weights[t])});
  }
  Ring R = factors.empty() ? Ring() : factors.front()->ring();
  return GradedModule(R, std::move(basis));
}

}  // namespace opmc
