#pragma once

#include <cstdint>
#include <random>

#include "opmc/cofree.hpp"

namespace opmc {

struct RandomModuleSpec {
  int size = 2;
  int min_degree = -1;
  int max_degree = 0;
  int min_weight = 1;
  int max_weight = 2;
};

class InstanceRandom {
public:
  explicit InstanceRandom(std::uint64_t seed) : gen_(seed) {}

  Scalar scalar(const Ring& R);
  Scalar nonzero_scalar(const Ring& R);
  int uniform(int lo, int hi);
  bool coin(double p = 0.5);

  GradedModule module(const Ring& R, const RandomModuleSpec& spec);
  // Any degree -1 weight-respecting components on classes of weight <= max weight of V.
  Coderivation coderivation(const CofreeCoalgebra& F, double density = 0.5, int max_arity = -1);
  // Square-zero, weight-respecting; flat when curved is false.
  Coderivation square_zero(const CofreeCoalgebra& F, bool curved, double density = 0.5);
  // Two-step nilpotent: components on degree-0 cooperad elements with inputs in
  // "low" generators and outputs in "high" ones, so Q~ o Q = 0 and Q~ o d_C = 0.
  Coderivation two_step(const CofreeCoalgebra& F, const std::vector<char>& high, double density = 0.5);
  Element degree_zero_element(const GradedModule& V);

  std::mt19937_64& engine() { return gen_; }

private:
  std::mt19937_64 gen_;
};

// Phi^{-1} for a coalgebra map whose corestriction is the identity on generators.
TensorElement unipotent_inverse_apply(const CofreeCoalgebra& F, const CoalgebraMorphismData& g,
                                      const TensorElement& y);

}  // namespace opmc
