#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "opmc/builders.hpp"
#include "opmc/cofree.hpp"
#include "opmc/mc_space.hpp"

namespace opmc {

using Json = nlohmann::json;

inline constexpr const char* kInstanceSchema = "opmc-instance/1";
inline constexpr const char* kSimplexSchema = "opmc-simplex/1";

// Everything an instance file describes.  Not movable: F points into hc.
struct Instance {
  Ring ring;
  Json cooperad_spec;  // builder parameters, or null for explicit tables
  HopfCooperad hc;
  GradedModule V;
  int wmax = 0;
  std::unique_ptr<CofreeCoalgebra> F;
  Coderivation Q;

  Instance() = default;
  Instance(const Instance&) = delete;
  Instance& operator=(const Instance&) = delete;
};

Ring ring_from_json(const Json& j);
Json ring_to_json(const Ring& R);

HopfCooperad cooperad_from_builder(const Ring& R, const Json& spec);
Json cooperad_tables_to_json(const HopfCooperad& hc);
HopfCooperad cooperad_from_tables(const Ring& R, const Json& j);

Element element_from_json(const GradedModule& V, const Json& j, const std::string& where);
Json element_to_json(const GradedModule& V, const Element& x);
// "0", "x", "x+2y"-free form: comma separated name[:coeff] items.
Element element_from_text(const GradedModule& V, const std::string& s);

// Parses without validating.  Throws Error(parse) on syntax or reference errors.
std::unique_ptr<Instance> instance_from_json(const Json& j);
std::unique_ptr<Instance> load_instance(const std::string& path);
// explicit_tables writes the cooperad as tables even if it came from a builder.
Json instance_to_json(const Instance& I, bool explicit_tables = false);

// Cooperad, Hopf, labels/morphism, completeness, square-zero.
Report validate_instance(const Instance& I, bool check_morphism = true);

Json simplex_to_json(const GradedModule& V, const ConvolutionElement& psi);
ConvolutionElement simplex_from_json(const GradedModule& V, const Json& j);
Json horn_to_json(const GradedModule& V, const HornData& h);
HornData horn_from_json(const GradedModule& V, const Json& j);

Json read_json_file(const std::string& path);
std::string dump_canonical(const Json& j);

}  // namespace opmc
