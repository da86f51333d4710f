#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "opmc/error.hpp"

namespace opmc {

using BigInt = boost::multiprecision::cpp_int;

enum class RingKind { integers, integers_mod, rationals };

struct RingSpec {
  RingKind kind = RingKind::integers;
  std::int64_t modulus = 0;

  bool operator==(const RingSpec&) const = default;
};

// A ring element.  `den` is 1 unless the ring is Q.
struct Scalar {
  BigInt num = 0;
  BigInt den = 1;

  bool operator==(const Scalar& o) const { return num == o.num && den == o.den; }
  bool operator<(const Scalar& o) const {
    if (num != o.num) return num < o.num;
    return den < o.den;
  }
};

class Ring {
public:
  Ring() = default;
  explicit Ring(RingSpec spec);

  const RingSpec& spec() const { return spec_; }
  bool contains_rationals() const { return spec_.kind == RingKind::rationals; }
  bool is_finite() const { return spec_.kind == RingKind::integers_mod; }
  std::int64_t modulus() const { return spec_.modulus; }

  Scalar zero() const { return Scalar{}; }
  Scalar one() const { return from_int(1); }
  Scalar from_int(std::int64_t v) const;
  Scalar from_big(const BigInt& v) const;
  Scalar fraction(const BigInt& n, const BigInt& d) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  bool is_unit(const Scalar& a) const;
  bool is_zero(const Scalar& a) const { return a.num == 0; }
  bool eq(const Scalar& a, const Scalar& b) const { return a == b; }
  Scalar signed_one(int sign) const { return sign > 0 ? one() : neg(one()); }

  std::string to_string(const Scalar& a) const;
  Scalar parse(const std::string& s) const;

  // Elements of Z/m in canonical order 0..m-1; used by enumerators.
  Scalar residue(std::int64_t i) const { return from_int(i); }

  bool operator==(const Ring& o) const { return spec_ == o.spec_; }

private:
  Scalar normalize(BigInt n, BigInt d) const;

  RingSpec spec_{};
  BigInt mod_ = 0;
};

Ring ring_make(const RingSpec& spec);
std::string ring_name(const RingSpec& spec);

}  // namespace opmc
