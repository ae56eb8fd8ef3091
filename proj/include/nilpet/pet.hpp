#pragma once

#include "nilpet/poly_map.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nilpet {

using PolyFamily = std::vector<PolyMap>;

/// (internal class, leading degree). The default comparison is plain
/// lexicographic and only serves as a container key; the PET order is
/// weight_less.
struct Weight {
  int c = 0;
  int d = 0;
  auto operator<=>(const Weight&) const = default;
};

/// (c,d) < (c',d') in the PET sense: c > c', or c = c' and d < d'.
bool weight_less(const Weight& a, const Weight& b);

Weight weight(const PolyMap& phi);

/// Same internal class and identical leading term. Both maps must be
/// nonconstant and live on the same variables.
bool lt_equivalent(const PolyMap& phi, const PolyMap& psi);

using WeightAssignment = std::map<Weight, int>;

struct LtClass {
  Weight weight;
  std::vector<int> members;  // indices into the family, increasing
  std::uint64_t size = 0;    // number of maps, counting multiplicity
};

struct FamilyAnalysis {
  std::vector<int> dropped;      // constant-identity members
  std::vector<LtClass> classes;  // in order of first member
  WeightAssignment assignment;
};

/// Partition into leading-term classes. `multiplicity`, when given, says how
/// many copies of each map the tuple holds.
FamilyAnalysis analyze_family(const PolyFamily& family,
                              std::span<const std::uint64_t> multiplicity = {});
WeightAssignment weight_assignment(const PolyFamily& family);

/// f < g: at the PET-largest weight where they differ, f is smaller.
bool assignment_precedes(const WeightAssignment& f, const WeightAssignment& g);

struct Descent {
  enum class Clause { Assignment, Matching };
  Clause clause;
  /// Assignment clause: the weight where the assignments first differ.
  /// Matching clause: a weight whose matched classes shrink.
  Weight witness;
};

/// Certificate that `f` strictly precedes `g`, if it does. The matching
/// clause compares, weight by weight, the class sizes sorted in decreasing
/// order; a weight-preserving size-dominating bijection exists iff these
/// sorted lists dominate pointwise.
std::optional<Descent> family_precedes_certificate(const PolyFamily& f, const PolyFamily& g);
bool family_precedes(const PolyFamily& f, const PolyFamily& g);
std::optional<Descent> precedes_certificate(const FamilyAnalysis& f, const FamilyAnalysis& g);

/// Index of the first member of PET-minimal weight. Throws ConstantMapError
/// when every member is the identity.
int pivot(const PolyFamily& family);

/// The 2k-1 maps on (vars..., k): phi_j phi_i^{-1} for j != i, then
/// phi_j(k)^{-1} phi_j(t+k) phi_i^{-1} for every j.
PolyFamily derived_family(const PolyFamily& family, int i,
                          const BchTable& table = default_bch_table());

/// Throws std::invalid_argument when members disagree on algebra or
/// variables, or when some member is not the identity at t = 0.
void check_family(const PolyFamily& family);

/// A tuple stored as its distinct maps with multiplicities. Every quantity
/// in the PET ordering depends on the tuple only up to permutation, and equal
/// maps have equal derived maps, so this loses nothing.
struct MapMultiset {
  PolyFamily maps;
  std::vector<std::uint64_t> multiplicity;

  void add(PolyMap phi, std::uint64_t count);
  std::uint64_t total() const;
  PolyFamily expand() const;
};

struct PetStep {
  MapMultiset family;  // constant members already removed
  std::vector<LtClass> classes;
  WeightAssignment assignment;
  int pivot = -1;      // index into family.maps
  MapMultiset derived;
  std::uint64_t derived_dropped = 0;  // constant members of the derived tuple
  Descent certificate;
};

struct PetTrace {
  enum class Status { Complete, Truncated, DescentViolation };
  Status status = Status::Complete;
  std::vector<PetStep> steps;
  MapMultiset final_family;  // base case: at most one nonconstant map
  int initial_dropped = 0;
  std::string message;

  int depth() const { return static_cast<int>(steps.size()); }
};

struct PetOptions {
  int max_depth = 64;
  /// Cap on distinct maps in a family.
  std::size_t max_family_size = 4096;
};

PetTrace pet_trace(const PolyFamily& family, const PetOptions& options = {},
                   const BchTable& table = default_bch_table());

std::string to_string(PetTrace::Status status);

}  // namespace nilpet
