#pragma once

// Independent oracles used only by the tests.

#include "nilpet/lie_algebra.hpp"

#include <random>

namespace oracle {

using nilpet::Rational;
using nilpet::RationalMatrix;
using nilpet::RationalVector;

// Unitriangular exp/log are finite sums because N = U - I is nilpotent.
inline RationalMatrix exp_nilpotent(const RationalMatrix& n) {
  const auto size = n.rows();
  RationalMatrix out = RationalMatrix::Identity(size, size);
  RationalMatrix term = RationalMatrix::Identity(size, size);
  for (int k = 1; k < size; ++k) {
    term = (term * n).eval();
    term /= Rational(k);
    out += term;
  }
  return out;
}

inline RationalMatrix log_unipotent(const RationalMatrix& u) {
  const auto size = u.rows();
  RationalMatrix n = u - RationalMatrix::Identity(size, size);
  RationalMatrix out = RationalMatrix::Zero(size, size);
  RationalMatrix power = RationalMatrix::Identity(size, size);
  for (int k = 1; k < size; ++k) {
    power = (power * n).eval();
    out += power * Rational(k % 2 == 1 ? 1 : -1, k);
  }
  return out;
}

// Coordinates on E_ij (i < j) ordered by (j - i, i), matching
// strictly_upper_triangular(n); heisenberg(3) is the n = 3 case with
// X = E12, Y = E23, Z = E13.
inline RationalMatrix to_matrix(const RationalVector& x, int n) {
  RationalMatrix m = RationalMatrix::Zero(n, n);
  int k = 0;
  for (int l = 1; l < n; ++l)
    for (int i = 0; i + l < n; ++i) m(i, i + l) = x[k++];
  return m;
}

inline RationalVector from_matrix(const RationalMatrix& m) {
  const int n = static_cast<int>(m.rows());
  RationalVector x(n * (n - 1) / 2);
  int k = 0;
  for (int l = 1; l < n; ++l)
    for (int i = 0; i + l < n; ++i) x[k++] = m(i, i + l);
  return x;
}

inline RationalVector matrix_bch(const RationalVector& x, const RationalVector& y, int n) {
  return from_matrix(log_unipotent(exp_nilpotent(to_matrix(x, n)) * exp_nilpotent(to_matrix(y, n))));
}

inline Rational small_rational(std::mt19937_64& rng, int num = 5, int den = 4) {
  std::uniform_int_distribution<int> p(-num, num), q(1, den);
  int a = p(rng), b = q(rng);
  return Rational(a, b);
}

inline RationalVector random_vector(std::mt19937_64& rng, int dim) {
  RationalVector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = small_rational(rng);
  return v;
}

// Witt's formula: number of degree-n basis elements of the free Lie algebra on g letters.
inline int witt(int g, int n) {
  auto mobius = [](int m) {
    int result = 1;
    for (int p = 2; p * p <= m; ++p) {
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) return 0;
        result = -result;
      }
    }
    if (m > 1) result = -result;
    return result;
  };
  long total = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    long pw = 1;
    for (int i = 0; i < n / d; ++i) pw *= g;
    total += mobius(d) * pw;
  }
  return static_cast<int>(total / n);
}

}  // namespace oracle
