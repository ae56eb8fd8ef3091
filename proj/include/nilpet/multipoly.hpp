#pragma once

#include "nilpet/rational.hpp"

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace nilpet {

/// Sparse multivariate polynomial with rational coefficients. Variables are
/// positional; their names live in the owning PolyMap. Exponent vectors are
/// stored with trailing zeros trimmed, so a polynomial does not carry a fixed
/// arity and can be moved into a larger variable list for free.
class MultiPoly {
 public:
  using Exponent = std::vector<int>;
  using Terms = std::map<Exponent, Rational>;

  MultiPoly() = default;
  MultiPoly(int value) : MultiPoly(Rational(value)) {}  // NOLINT: Eigen needs Scalar(0)
  MultiPoly(const Rational& value);                     // NOLINT

  static MultiPoly variable(int index);
  static MultiPoly monomial(Exponent exponent, const Rational& coef);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero exponent).
  Rational constant_term() const;
  int degree_in(int var) const;
  int total_degree() const;
  /// One past the largest variable index that occurs.
  int arity() const;

  /// Coefficient of var^power, as a polynomial with that variable removed.
  MultiPoly coefficient_in(int var, int power) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  /// Simultaneous substitution x_i -> images[i]; variables past the end of
  /// `images` are left unchanged.
  MultiPoly compose(std::span<const MultiPoly> images) const;

  MultiPoly pow(int exponent) const;

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& scale);
  MultiPoly operator-() const;

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }
  friend MultiPoly operator*(MultiPoly a, int s) { return a *= Rational(s); }
  friend MultiPoly operator*(int s, MultiPoly a) { return a *= Rational(s); }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

  /// Terms in map order, e.g. "3/2*t^2*h1 - k + 1".
  std::string to_string(std::span<const std::string> names) const;

 private:
  void add_term(const Exponent& e, const Rational& c);

  Terms terms_;
};

inline bool is_zero_scalar(const MultiPoly& p) { return p.is_zero(); }

/// Prints with positional names x0, x1, ...
std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

using PolyVector = Vector<MultiPoly>;

bool is_zero(const PolyVector& v);

}  // namespace nilpet

namespace Eigen {
template <>
struct NumTraits<nilpet::MultiPoly> : GenericNumTraits<nilpet::MultiPoly> {
  using Real = nilpet::MultiPoly;
  using NonInteger = nilpet::MultiPoly;
  using Nested = nilpet::MultiPoly;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 100,
    MulCost = 1000
  };
  static int digits10() { return 0; }
};
}  // namespace Eigen
