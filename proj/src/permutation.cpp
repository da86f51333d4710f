#include "opmc/permutation.hpp"

#include <algorithm>
#include <numeric>

#include "opmc/error.hpp"

namespace opmc {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= static_cast<int>(images_.size()) || seen[v])
      throw Error(Reason::shape, "not a permutation");
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int r) {
  std::vector<int> im(r);
  std::iota(im.begin(), im.end(), 0);
  Permutation p;
  p.images_ = std::move(im);
  return p;
}

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Permutation Permutation::from_index(int r, std::int64_t index) {
  std::vector<int> pool(r);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> im;
  for (int i = r; i >= 1; --i) {
    std::int64_t f = factorial(i - 1);
    std::int64_t q = index / f;
    index %= f;
    im.push_back(pool[q]);
    pool.erase(pool.begin() + q);
  }
  Permutation p;
  p.images_ = std::move(im);
  return p;
}

std::int64_t Permutation::index() const {
  std::int64_t idx = 0;
  int r = arity();
  for (int i = 0; i < r; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < r; ++j)
      if (images_[j] < images_[i]) ++smaller;
    idx += smaller * factorial(r - 1 - i);
  }
  return idx;
}

Permutation Permutation::inverse() const {
  std::vector<int> im(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) im[images_[i]] = static_cast<int>(i);
  Permutation p;
  p.images_ = std::move(im);
  return p;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.arity() != arity()) throw Error(Reason::shape, "arity mismatch in compose");
  std::vector<int> im(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) im[i] = images_[other.images_[i]];
  Permutation p;
  p.images_ = std::move(im);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

int Permutation::parity() const {
  int inv = 0;
  for (std::size_t i = 0; i < images_.size(); ++i)
    for (std::size_t j = i + 1; j < images_.size(); ++j)
      if (images_[i] > images_[j]) ++inv;
  return inv & 1;
}

std::string Permutation::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(images_[i] + 1);
  }
  return s + "]";
}

std::vector<Permutation> all_permutations(int r) {
  std::vector<Permutation> out;
  std::int64_t n = factorial(r);
  out.reserve(n);
  for (std::int64_t i = 0; i < n; ++i) out.push_back(Permutation::from_index(r, i));
  return out;
}

int koszul_sign(const Permutation& sigma, std::span<const int> degrees) {
  if (static_cast<std::size_t>(sigma.arity()) != degrees.size())
    throw Error(Reason::shape, "koszul_sign: length mismatch");
  int odd = 0;
  int r = sigma.arity();
  for (int i = 0; i < r; ++i) {
    if (!(degrees[i] & 1)) continue;
    for (int j = i + 1; j < r; ++j)
      if ((degrees[j] & 1) && sigma(i) > sigma(j)) odd ^= 1;
  }
  return odd ? -1 : 1;
}

int reorder_sign(std::span<const int> new_to_old, std::span<const int> degrees) {
  int odd = 0;
  std::size_t n = new_to_old.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (!(degrees[new_to_old[a]] & 1)) continue;
    for (std::size_t b = a + 1; b < n; ++b)
      if ((degrees[new_to_old[b]] & 1) && new_to_old[a] > new_to_old[b]) odd ^= 1;
  }
  return odd ? -1 : 1;
}

}  // namespace opmc
