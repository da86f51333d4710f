#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace opmc {

// sigma on {0..r-1}; images[i] = sigma(i).  Printed 1-based.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int r);
  static Permutation from_index(int r, std::int64_t index);

  int arity() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  // (this o other)(i) = this(other(i))
  Permutation compose(const Permutation& other) const;
  bool is_identity() const;
  // Rank in lexicographic order of image sequences.
  std::int64_t index() const;
  int parity() const;
  std::string str() const;

  bool operator==(const Permutation&) const = default;
  bool operator<(const Permutation& o) const { return images_ < o.images_; }

private:
  std::vector<int> images_;
};

std::int64_t factorial(int n);
std::vector<Permutation> all_permutations(int r);

// Sign for moving the item at position i to position sigma(i), under the
// Koszul rule on the given degrees.
int koszul_sign(const Permutation& sigma, std::span<const int> degrees);

// Sign for listing items in the order new_to_old[0], new_to_old[1], ...
int reorder_sign(std::span<const int> new_to_old, std::span<const int> degrees);

}  // namespace opmc
