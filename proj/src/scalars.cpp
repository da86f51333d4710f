#include "opmc/scalars.hpp"

#include <boost/integer/common_factor_rt.hpp>

namespace opmc {

const char* reason_name(Reason r) {
  switch (r) {
    case Reason::invalid_ring: return "invalid-ring";
    case Reason::non_unit: return "non-unit";
    case Reason::shape: return "shape";
    case Reason::invariance: return "invariance";
    case Reason::freeness: return "freeness-violation";
    case Reason::ring_requirement: return "ring-requirement";
    case Reason::resource_limit: return "resource-limit";
    case Reason::completeness: return "completeness";
    case Reason::truncation: return "truncation";
    case Reason::convention: return "convention";
    case Reason::precondition: return "precondition";
    case Reason::incompatible_units: return "incompatible-units";
    case Reason::unsupported: return "unsupported";
    case Reason::internal: return "internal";
    case Reason::parse: return "parse";
    case Reason::validation: return "validation";
  }
  return "unknown";
}

Ring::Ring(RingSpec spec) : spec_(spec) {
  if (spec_.kind == RingKind::integers_mod) {
    if (spec_.modulus < 2) throw Error(Reason::invalid_ring, "modulus must be >= 2");
    mod_ = spec_.modulus;
  } else {
    spec_.modulus = 0;
  }
}

Ring ring_make(const RingSpec& spec) { return Ring(spec); }

std::string ring_name(const RingSpec& spec) {
  switch (spec.kind) {
    case RingKind::integers: return "Z";
    case RingKind::rationals: return "Q";
    case RingKind::integers_mod: return "Z/" + std::to_string(spec.modulus);
  }
  return "?";
}

Scalar Ring::normalize(BigInt n, BigInt d) const {
  switch (spec_.kind) {
    case RingKind::integers:
      return Scalar{std::move(n), 1};
    case RingKind::integers_mod: {
      n %= mod_;
      if (n < 0) n += mod_;
      return Scalar{std::move(n), 1};
    }
    case RingKind::rationals: {
      if (d < 0) {
        n = -n;
        d = -d;
      }
      if (n == 0) return Scalar{};
      BigInt g = boost::multiprecision::gcd(n, d);
      if (g != 1) {
        n /= g;
        d /= g;
      }
      return Scalar{std::move(n), std::move(d)};
    }
  }
  return Scalar{};
}

Scalar Ring::from_int(std::int64_t v) const { return normalize(BigInt(v), 1); }
Scalar Ring::from_big(const BigInt& v) const { return normalize(v, 1); }

Scalar Ring::fraction(const BigInt& n, const BigInt& d) const {
  if (d == 0) throw Error(Reason::non_unit, "zero denominator");
  if (spec_.kind == RingKind::rationals) return normalize(n, d);
  return mul(from_big(n), inv(from_big(d)));
}

Scalar Ring::add(const Scalar& a, const Scalar& b) const {
  if (spec_.kind == RingKind::rationals) {
    if (a.den == 1 && b.den == 1) return Scalar{a.num + b.num, 1};
    return normalize(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  return normalize(a.num + b.num, 1);
}

Scalar Ring::sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

Scalar Ring::mul(const Scalar& a, const Scalar& b) const {
  if (spec_.kind == RingKind::rationals) {
    if (a.den == 1 && b.den == 1) return Scalar{a.num * b.num, 1};
    return normalize(a.num * b.num, a.den * b.den);
  }
  return normalize(a.num * b.num, 1);
}

Scalar Ring::neg(const Scalar& a) const {
  if (spec_.kind == RingKind::integers_mod) return normalize(-a.num, 1);
  return Scalar{-a.num, a.den};
}

bool Ring::is_unit(const Scalar& a) const {
  switch (spec_.kind) {
    case RingKind::integers: return a.num == 1 || a.num == -1;
    case RingKind::rationals: return a.num != 0;
    case RingKind::integers_mod: return a.num != 0 && boost::multiprecision::gcd(a.num, mod_) == 1;
  }
  return false;
}

namespace {

// x with a*x = g (mod m), via extended Euclid.
BigInt ext_gcd_inverse(const BigInt& a, const BigInt& m) {
  BigInt r0 = m, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return s0;
}

}  // namespace

Scalar Ring::inv(const Scalar& a) const {
  if (!is_unit(a)) throw Error(Reason::non_unit, to_string(a) + " is not a unit in " + ring_name(spec_));
  switch (spec_.kind) {
    case RingKind::integers: return a;
    case RingKind::rationals: return normalize(a.den, a.num);
    case RingKind::integers_mod: return normalize(ext_gcd_inverse(a.num, mod_), 1);
  }
  return a;
}

std::string Ring::to_string(const Scalar& a) const {
  if (a.den == 1) return a.num.str();
  return a.num.str() + "/" + a.den.str();
}

Scalar Ring::parse(const std::string& s) const {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return from_big(BigInt(s));
    return fraction(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(Reason::parse, "bad scalar '" + s + "'");
  }
}

}  // namespace opmc
