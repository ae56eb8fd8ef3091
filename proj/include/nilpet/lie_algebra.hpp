#pragma once

#include "nilpet/errors.hpp"
#include "nilpet/rational.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nilpet {

inline bool is_zero_scalar(const Rational& r) { return r == 0; }

/// A nilpotent Lie algebra in a fixed basis: structure constants
/// [e_i, e_j] = sum_k c(i,j,k) e_k and a layer grading. Layer l spans
/// g^l modulo g^{l+1} for the lower central series g = g^1 > g^2 > ... > g^s.
///
/// Construction only checks shapes; the algebraic invariants (antisymmetry,
/// Jacobi, grading) are reported by verify_algebra().
class LieAlgebra {
 public:
  struct Term {
    int index;
    Rational coef;
    bool operator==(const Term&) const = default;
  };

  struct Entry {
    int i;
    int j;
    std::vector<Term> terms;
  };

  /// Entries give [e_i, e_j]. When an entry (i, j) is present but (j, i) is
  /// not, the table is completed by antisymmetry.
  LieAlgebra(std::vector<std::string> labels, std::vector<int> layers, int step,
             const std::vector<Entry>& entries);

  int dim() const { return dim_; }
  int step() const { return step_; }
  int layer(int i) const { return layers_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& layers() const { return layers_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::span<const Term> bracket_terms(int i, int j) const {
    return table_[static_cast<std::size_t>(i * dim_ + j)];
  }
  /// Coordinates whose layer equals `layer`.
  std::vector<int> layer_indices(int layer) const;

  /// Same dimension, layers and structure constants (labels ignored).
  bool same_structure(const LieAlgebra& other) const;

 private:
  int dim_;
  int step_;
  std::vector<std::string> labels_;
  std::vector<int> layers_;
  std::vector<std::vector<Term>> table_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

/// Bracket of coordinate vectors over any commutative ring that accepts
/// rational scalars (Rational, MultiPoly).
template <class Scalar>
Vector<Scalar> bracket(const LieAlgebra& g, const Vector<Scalar>& x, const Vector<Scalar>& y) {
  const int n = g.dim();
  Vector<Scalar> out(n);
  for (int k = 0; k < n; ++k) out[k] = Scalar(0);
  for (int i = 0; i < n; ++i) {
    if (is_zero_scalar(x[i])) continue;
    for (int j = 0; j < n; ++j) {
      auto terms = g.bracket_terms(i, j);
      if (terms.empty() || is_zero_scalar(y[j])) continue;
      Scalar p = x[i] * y[j];
      for (const auto& t : terms) out[t.index] += p * t.coef;
    }
  }
  return out;
}

struct Violation {
  enum class Kind { Shape, Antisymmetry, Jacobi, Grading, Layers, LowerCentralSeries };
  Kind kind;
  std::vector<int> indices;
  std::string message;
};

std::string to_string(Violation::Kind kind);

/// Exhaustive check of the LieAlgebra invariants; empty result means valid.
std::vector<Violation> verify_algebra(const LieAlgebra& g);

// Builtin algebras -----------------------------------------------------------

struct BuiltinLimits {
  int max_matrix_size = 6;
  int max_step = 6;
  int max_generators = 4;
  int max_dim = 64;
};

AlgebraPtr abelian(int d, const BuiltinLimits& limits = {});
/// Heisenberg algebra of dimension 2m+1: [X_i, Y_i] = Z.
AlgebraPtr heisenberg(int dim, const BuiltinLimits& limits = {});
/// Strictly upper triangular n x n matrices, basis E_ij ordered by (j-i, i).
AlgebraPtr strictly_upper_triangular(int n, const BuiltinLimits& limits = {});
/// Free nilpotent algebra on `generators` letters of the given step, in the
/// Lyndon-word Hall basis ordered by (degree, lexicographic).
AlgebraPtr free_nilpotent(int generators, int step, const BuiltinLimits& limits = {});

/// kind in {"abelian", "heisenberg", "strictly_upper_triangular", "free_nilpotent"}.
AlgebraPtr make_builtin(std::string_view kind, std::span<const int> params,
                        const BuiltinLimits& limits = {});

/// Parses names like "heisenberg(3)" or "free_nilpotent(2,3)".
AlgebraPtr builtin_from_name(std::string_view name, const BuiltinLimits& limits = {});

/// Lyndon words over {0..letters-1} of length <= max_length in (length, lex) order.
std::vector<std::vector<int>> lyndon_words(int letters, int max_length);

/// Rank over the rationals.
int rank(std::vector<RationalVector> rows);

}  // namespace nilpet
