#pragma once

#include "nilpet/lie_algebra.hpp"

#include <string>
#include <vector>

namespace nilpet {

/// Dynkin form of log(exp(X) exp(Y)) in the free Lie algebra on {X, Y},
/// truncated at a fixed order: the sum over words w of coef(w) times the
/// left-normed bracket [[..[w1, w2], ..], wn]. Coefficients are exact.
class BchTable {
 public:
  explicit BchTable(int max_order);

  int max_order() const { return max_order_; }
  /// Word letters: 0 = X, 1 = Y.
  const Rational& coefficient(const std::vector<int>& word) const;
  /// True when some word having this prefix carries a nonzero coefficient.
  bool prefix_needed(const std::vector<int>& prefix) const;

 private:
  static std::size_t slot(const std::vector<int>& word);

  int max_order_;
  std::vector<Rational> coef_;    // indexed by slot(word)
  std::vector<bool> needed_;
};

/// Table up to order 6, built once.
const BchTable& default_bch_table();

namespace detail {

template <class Scalar>
void bch_accumulate(const LieAlgebra& g, const BchTable& table, const Vector<Scalar>& x,
                    const Vector<Scalar>& y, std::vector<int>& word,
                    const Vector<Scalar>& value, Vector<Scalar>& acc) {
  for (int letter = 0; letter < 2; ++letter) {
    word.push_back(letter);
    if (table.prefix_needed(word)) {
      const Vector<Scalar>& gen = letter == 0 ? x : y;
      Vector<Scalar> next = word.size() == 1 ? gen : bracket(g, value, gen);
      bool zero = true;
      for (Eigen::Index i = 0; i < next.size() && zero; ++i) zero = is_zero_scalar(next[i]);
      if (!zero) {
        const Rational& c = table.coefficient(word);
        if (c != 0) {
          for (Eigen::Index i = 0; i < next.size(); ++i) {
            if (!is_zero_scalar(next[i])) acc[i] += next[i] * c;
          }
        }
        if (static_cast<int>(word.size()) < g.step()) {
          bch_accumulate(g, table, x, y, word, next, acc);
        }
      }
    }
    word.pop_back();
  }
}

}  // namespace detail

/// Exponential coordinates of exp(x) exp(y), truncated at the algebra's step.
template <class Scalar>
Vector<Scalar> bch(const LieAlgebra& g, const Vector<Scalar>& x, const Vector<Scalar>& y,
                   const BchTable& table = default_bch_table()) {
  if (g.step() > table.max_order()) throw StepBoundExceeded(g.step(), table.max_order());
  if (x.size() != g.dim() || y.size() != g.dim()) throw AlgebraMismatch();
  Vector<Scalar> acc(g.dim());
  for (int i = 0; i < g.dim(); ++i) acc[i] = Scalar(0);
  std::vector<int> word;
  detail::bch_accumulate(g, table, x, y, word, acc, acc);
  return acc;
}

// Strong coordinate types --------------------------------------------------

template <class Tag>
class CoordinateElement {
 public:
  CoordinateElement(AlgebraPtr algebra, RationalVector coords)
      : algebra_(std::move(algebra)), coords_(std::move(coords)) {
    if (!algebra_ || coords_.size() != algebra_->dim())
      throw std::invalid_argument("coordinate vector length differs from algebra dimension");
  }

  static CoordinateElement zero(AlgebraPtr algebra) {
    RationalVector c = zero_vector(algebra->dim());
    return CoordinateElement(std::move(algebra), std::move(c));
  }

  const AlgebraPtr& algebra() const { return algebra_; }
  const RationalVector& coords() const { return coords_; }
  int dim() const { return algebra_->dim(); }
  bool is_zero() const { return nilpet::is_zero(coords_); }

  bool operator==(const CoordinateElement& other) const {
    return same_algebra(algebra_, other.algebra_) && coords_ == other.coords_;
  }

 private:
  AlgebraPtr algebra_;
  RationalVector coords_;
};

struct LieTag {};
struct GroupTag {};

/// Element of the Lie algebra.
using LieElement = CoordinateElement<LieTag>;
/// exp(X) for X the coordinate vector; identity is the zero vector.
using GroupElement = CoordinateElement<GroupTag>;

LieElement bracket(const LieElement& x, const LieElement& y);
GroupElement bch_product(const GroupElement& x, const GroupElement& y,
                         const BchTable& table = default_bch_table());
GroupElement group_inverse(const GroupElement& x);
/// g h g^{-1}
GroupElement conjugate(const GroupElement& g, const GroupElement& h,
                       const BchTable& table = default_bch_table());

}  // namespace nilpet
