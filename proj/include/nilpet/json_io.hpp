#pragma once

#include "nilpet/averaging.hpp"
#include "nilpet/pet.hpp"
#include "nilpet/zariski.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace nilpet {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// {"dim", "labels", "step", "layers", "brackets": [[i, j, [[k, "p/q"], ...]], ...]}
Json algebra_to_json(const LieAlgebra& g);
/// A builtin name such as "heisenberg(3)" or a full algebra document. The
/// document is checked with verify_algebra.
AlgebraPtr algebra_from_json(const Json& j);

/// Polynomial over `vars`, either as [{"exp": [...], "coef": "p/q"}, ...] or
/// as an expression string like "t^2 - 3/2*t*h".
MultiPoly poly_from_json(const Json& j, const std::vector<std::string>& vars);
Json poly_to_json(const MultiPoly& p);
MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars);

/// {"algebra": ref, "vars": [...], "coords": [...]}. A missing "algebra" or
/// "vars" falls back to the given defaults. Does not check normalization.
PolyMap polymap_from_json(const Json& j, const AlgebraPtr& default_algebra,
                          const std::vector<std::string>& default_vars);
Json polymap_to_json(const PolyMap& phi, const Json& algebra_ref);

Rational rational_from_json(const Json& j);
RationalVector rational_vector_from_json(const Json& j);
Json to_json(const RationalVector& v);

/// {"kind": "torus", "dim": d} or {"kind": "heisenberg3"}, optionally with
/// "acting": {"algebra": ref, "matrix": [[...], ...]}.
NilSystem system_from_json(const Json& j);
/// {"kind": "torus" | "heis_abelian" | "heis_vertical" | "one", "freq": [...], "part": "cos" | "sin"}
TestFunction function_from_json(const Json& j);
Json to_json(const TestFunction& f);

JoiningSpec::Kind joining_kind_from_string(const std::string& s);

Json weight_assignment_to_json(const WeightAssignment& a);
/// Certificate document for a PET trace; `algebra_ref` is stored with every map.
Json trace_to_json(const PetTrace& trace, const Json& algebra_ref);

/// Shortest round-trip decimal, so reports are byte-stable.
std::string format_double(double x);

}  // namespace nilpet
