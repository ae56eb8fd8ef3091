#pragma once

#include "nilpet/poly_map.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nilpet {

/// Common zero set of its generators, polynomials in the parameters
/// h_1..h_r (positions 0..r-1).
struct Variety {
  std::vector<MultiPoly> generators;
};

/// Finite union of proper varieties.
struct MeagreSet {
  std::vector<Variety> varieties;
};

/// Coefficients p_0..p_d of p = sum_i t^i p_i, where t is variable `t_var`.
/// The coefficients live on the remaining variables, renumbered so that the
/// variable after t takes t's position. The zero polynomial gives [0].
std::vector<MultiPoly> t_coefficients(const MultiPoly& p, int t_var = 0);

/// {h : l(log phi(t,h)) = 0 for all t}, with l given by its coordinates in
/// the algebra's basis.
Variety vanishing_variety(const PolyMap& phi, const RationalVector& functional);

bool is_proper(const Variety& v);

bool contains(const Variety& v, std::span<const Rational> point);
bool membership(const MeagreSet& m, std::span<const Rational> point);

/// Pullback of v along s -> base + s * direction; a variety in one variable.
Variety restrict_to_line(const Variety& v, const RationalVector& base, const RationalVector& direction);

struct SampleOptions {
  std::int64_t initial_box = 4;  // first box is [-B, B]^r
  int max_attempts = 64;
};

/// An integer point in R^dim outside every variety of m. Draws uniformly from
/// [-B, B]^dim, doubling B after every rejected draw. Deterministic given the
/// seed. Throws std::invalid_argument for an improper variety and
/// SamplingExhausted when the attempts run out.
RationalVector generic_sample(const MeagreSet& m, int dim, std::uint64_t seed, const SampleOptions& options = {});

/// Generators joined with ", " inside brackets, e.g. "[h1 - h2]".
std::string to_string(const Variety& v, std::span<const std::string> names);

}  // namespace nilpet
