#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opmc/permutation.hpp"
#include "opmc/scalars.hpp"
#include "opmc/sparse.hpp"

namespace opmc {

struct BasisElement {
  std::string name;
  int degree = 0;
  int weight = 1;

  bool operator==(const BasisElement&) const = default;
};

// Elements of a module are sparse over basis indices.
using Element = Sparse<int>;

class GradedModule {
public:
  GradedModule() = default;
  GradedModule(Ring ring, std::vector<BasisElement> basis);

  const Ring& ring() const { return ring_; }
  const std::vector<BasisElement>& basis() const { return basis_; }
  int size() const { return static_cast<int>(basis_.size()); }
  const BasisElement& at(int i) const { return basis_.at(i); }
  int degree(int i) const { return basis_[i].degree; }
  int weight(int i) const { return basis_[i].weight; }
  int index_of(const std::string& name) const;
  bool has(const std::string& name) const { return names_.count(name) > 0; }

  int max_weight() const;
  int min_weight() const;
  std::vector<int> indices_of_degree(int d) const;

  // Smallest weight among the terms; nullopt for zero.
  std::optional<int> min_weight_of(const Element& x) const;
  std::optional<int> degree_of(const Element& x) const;  // throws if not homogeneous

  Element basis_vector(int i) const;
  std::map<std::string, Scalar> named(const Element& x) const;

private:
  Ring ring_;
  std::vector<BasisElement> basis_;
  std::map<std::string, int> names_;
};

class LinearMap {
public:
  LinearMap(const GradedModule* source, const GradedModule* target, int degree);

  static LinearMap identity(const GradedModule* m);
  static LinearMap zero(const GradedModule* s, const GradedModule* t, int degree);

  void set(int src, const Element& value);
  const Element& column(int src) const;

  Element apply(const Element& x) const;
  LinearMap compose(const LinearMap& inner) const;  // this o inner
  LinearMap plus(const LinearMap& o) const;
  LinearMap scale(const Scalar& c) const;
  bool operator==(const LinearMap& o) const;

  int degree() const { return degree_; }
  const GradedModule* source() const { return source_; }
  const GradedModule* target() const { return target_; }

private:
  const GradedModule* source_;
  const GradedModule* target_;
  int degree_;
  std::vector<Element> cols_;
};

// Basis of a tensor product: tuples of factor indices.
struct TensorBasis {
  std::vector<std::vector<int>> tuples;
  std::vector<int> degrees;
  std::vector<int> weights;
};

TensorBasis tensor_basis(const std::vector<const GradedModule*>& factors,
                         std::optional<int> weight_bound = std::nullopt);
GradedModule tensor_module(const std::vector<const GradedModule*>& factors,
                           std::optional<int> weight_bound = std::nullopt);

}  // namespace opmc
