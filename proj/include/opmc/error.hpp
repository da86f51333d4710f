#pragma once

#include <stdexcept>
#include <string>

namespace opmc {

// Machine-readable reason codes; the CLI prints them verbatim.
enum class Reason {
  invalid_ring,
  non_unit,
  shape,
  invariance,
  freeness,
  ring_requirement,
  resource_limit,
  completeness,
  truncation,
  convention,
  precondition,
  incompatible_units,
  unsupported,
  internal,
  parse,
  validation,
};

const char* reason_name(Reason r);

class Error : public std::runtime_error {
public:
  Error(Reason r, const std::string& msg) : std::runtime_error(msg), reason_(r) {}
  Reason reason() const { return reason_; }

private:
  Reason reason_;
};

}  // namespace opmc
