#pragma once

#include "nilpet/bch.hpp"
#include "nilpet/multipoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilpet {

/// Polynomial map R x R^r -> G written as exp(Phi), Phi given by one
/// polynomial per exponential coordinate. Variable 0 is the time t.
class PolyMap {
 public:
  PolyMap(AlgebraPtr algebra, std::vector<std::string> vars, PolyVector coords);

  /// exp(0) for every input.
  static PolyMap identity(AlgebraPtr algebra, std::vector<std::string> vars);
  /// exp(p * e_index)
  static PolyMap along(AlgebraPtr algebra, std::vector<std::string> vars, int index,
                       const MultiPoly& p);

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<std::string>& vars() const { return vars_; }
  int num_vars() const { return static_cast<int>(vars_.size()); }
  const PolyVector& coords() const { return coords_; }
  const MultiPoly& coord(int i) const { return coords_[i]; }
  int var_index(const std::string& name) const;

  bool is_identity() const { return is_zero(coords_); }

  bool operator==(const PolyMap& other) const;

 private:
  AlgebraPtr algebra_;
  std::vector<std::string> vars_;
  PolyVector coords_;
};

GroupElement eval(const PolyMap& phi, std::span<const Rational> point);

PolyMap pointwise_product(const PolyMap& phi, const PolyMap& psi,
                          const BchTable& table = default_bch_table());
PolyMap pointwise_inverse(const PolyMap& phi);

/// Moves phi onto `new_vars`. Each old variable named in `assignment` is
/// replaced by its affine image (a polynomial over new_vars of total degree
/// at most 1); the others are matched to a new variable of the same name.
PolyMap substitute(const PolyMap& phi, const std::vector<std::string>& new_vars,
                   const std::vector<std::pair<std::string, MultiPoly>>& assignment);

/// Same map on a variable list extended at the end.
PolyMap extend_vars(const PolyMap& phi, const std::vector<std::string>& extra);

/// g -> phi(g - h) phi(g)^{-1}; shift[i] is the i-th component of h,
/// expressed over phi's variables. Components past the end of `shift` are 0.
PolyMap difference(const PolyMap& phi, std::span<const MultiPoly> shift,
                   const BchTable& table = default_bch_table());
PolyMap difference(const PolyMap& phi, const RationalVector& shift,
                   const BchTable& table = default_bch_table());
/// Difference in the first `domain_arity` variables along a fresh symbolic
/// shift appended to the variable list.
PolyMap symbolic_difference(const PolyMap& phi, int domain_arity,
                            const BchTable& table = default_bch_table());

/// Least m such that m symbolic differences (in all of phi's variables)
/// reduce phi to the identity.
int annihilation_order(const PolyMap& phi, int cap = 64,
                       const BchTable& table = default_bch_table());
/// Degree of phi as a polynomial map: 0 for constants, otherwise
/// annihilation_order - 1 (so exp(tX) has degree 1).
int polynomial_degree(const PolyMap& phi, int cap = 64,
                      const BchTable& table = default_bch_table());

int internal_class(const PolyMap& phi);

struct LeadingTerm {
  int internal_class = 0;
  int leading_degree = 0;
  std::vector<int> layer_indices;  // coordinates spanning layer c
  PolyVector coefficient;          // t^d coefficients, one per layer index

  bool operator==(const LeadingTerm& other) const;
};

LeadingTerm leading_term(const PolyMap& phi);

/// First coordinate that does not vanish identically at t = 0, if any.
std::optional<int> normalization_violation(const PolyMap& phi);

std::string to_string(const PolyMap& phi);

}  // namespace nilpet
