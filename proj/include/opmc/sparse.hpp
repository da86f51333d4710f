#pragma once

#include <map>

#include "opmc/scalars.hpp"

namespace opmc {

// Finite formal sum over keys of type K.  Zero coefficients are never stored.
template <class K>
struct Sparse {
  std::map<K, Scalar> terms;

  bool empty() const { return terms.empty(); }
  std::size_t size() const { return terms.size(); }

  void add(const Ring& R, const K& k, const Scalar& c) {
    if (R.is_zero(c)) return;
    auto [it, fresh] = terms.try_emplace(k, c);
    if (!fresh) {
      it->second = R.add(it->second, c);
      if (R.is_zero(it->second)) terms.erase(it);
    }
  }

  void add_all(const Ring& R, const Sparse& o, const Scalar& c) {
    if (R.is_zero(c)) return;
    bool unit = c == R.one();
    for (const auto& [k, v] : o.terms) add(R, k, unit ? v : R.mul(c, v));
  }

  void add_all(const Ring& R, const Sparse& o) {
    for (const auto& [k, v] : o.terms) add(R, k, v);
  }

  Scalar coeff(const K& k) const {
    auto it = terms.find(k);
    return it == terms.end() ? Scalar{} : it->second;
  }

  bool operator==(const Sparse& o) const { return terms == o.terms; }
};

template <class K>
Sparse<K> scaled(const Ring& R, const Sparse<K>& x, const Scalar& c) {
  Sparse<K> out;
  out.add_all(R, x, c);
  return out;
}

template <class K>
Sparse<K> difference(const Ring& R, const Sparse<K>& a, const Sparse<K>& b) {
  Sparse<K> out = a;
  out.add_all(R, b, R.neg(R.one()));
  return out;
}

}  // namespace opmc
