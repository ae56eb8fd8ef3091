#pragma once

#include "nilpet/bch.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace nilpet {

constexpr int kMaxPointDim = 8;

/// Point of the nilmanifold in fundamental-domain coordinates, each in [0,1).
using NilPoint = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxPointDim, 1>;

/// The torus R^d / Z^d, or the Heisenberg nilmanifold G / Gamma with G the
/// upper unitriangular 3x3 real matrices and Gamma the integer ones.
///
/// Heisenberg points are cosets m Gamma with m = [[1, x, z], [0, 1, y], [0, 0, 1]]
/// and x, y, z in [0,1): Mal'cev coordinates of the second kind. G acts on the
/// left. A group element with exponential coordinates (a, b, c) is the matrix
/// with entries (a, b, c + ab/2).
///
/// An optional homomorphism lets a different group act: its exponential
/// coordinates are mapped linearly into the system's algebra first.
class NilSystem {
 public:
  enum class Kind { Torus, Heisenberg3 };

  static NilSystem torus(int d);
  static NilSystem heisenberg3();

  /// Same manifold, acted on by `source` through the linear map `matrix`
  /// (system dim x source dim), which must be a Lie algebra homomorphism.
  NilSystem via(AlgebraPtr source, RationalMatrix matrix) const;

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  /// The algebra of the system's own group.
  const AlgebraPtr& algebra() const { return algebra_; }
  /// The algebra of the group that acts (the source of the homomorphism, if any).
  const AlgebraPtr& acting_algebra() const { return source_ ? source_ : algebra_; }
  bool same_manifold(const NilSystem& other) const { return kind_ == other.kind_ && dim_ == other.dim_; }
  std::string name() const;

  /// Exponential coordinates in the system's own algebra.
  RationalVector to_system(const GroupElement& g) const;

 private:
  NilSystem(Kind kind, int dim, AlgebraPtr algebra) : kind_(kind), dim_(dim), algebra_(std::move(algebra)) {}

  Kind kind_;
  int dim_;
  AlgebraPtr algebra_;
  AlgebraPtr source_;
  std::optional<RationalMatrix> hom_;
};

/// Left translation by a fixed group element, reduced once so that applying
/// it is a handful of floating-point operations.
struct Translation {
  // Torus: shift[i] = frac(g_i). Heisenberg: shift = (frac x, frac y,
  // frac(z - x * y_int)) with (x, y, z) the matrix entries of g, and
  // x_int, y_int the integer parts of x and y.
  std::array<double, kMaxPointDim> shift{};
  double x_int = 0;
  double y_int = 0;
};

Translation prepare(const NilSystem& sys, const GroupElement& g);
NilPoint apply(const NilSystem& sys, const Translation& tr, const NilPoint& x);
NilPoint act(const NilSystem& sys, const GroupElement& g, const NilPoint& x);

/// Fundamental-domain representative of a point given in arbitrary lifted
/// coordinates. Idempotent on reduced points.
NilPoint reduce(const NilSystem& sys, const NilPoint& x);

/// Size of the lattice-adjusted difference of two points, 0 when they are
/// the same point of the manifold.
double domain_distance(const NilSystem& sys, const NilPoint& x, const NilPoint& y);

/// Uniform double in [0,1) from the top 53 bits.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

NilPoint sample_haar(const NilSystem& sys, std::mt19937_64& rng);
std::vector<NilPoint> sample_haar(const NilSystem& sys, std::uint64_t seed, std::size_t n);

/// Real or imaginary part of a character, bounded by 1.
///   Torus:        e(k . x), freq = k (length d)
///   HeisAbelian:  e(k1 x + k2 y), freq = (k1, k2)
///   HeisVertical: e(k1 x + k2 y + m z), freq = (k1, k2, m)
///   One:          the constant 1
struct TestFunction {
  enum class Kind { Torus, HeisAbelian, HeisVertical, One };
  enum class Part { Cos, Sin };
  Kind kind = Kind::One;
  std::vector<int> freq;
  Part part = Part::Cos;

  bool is_constant_one() const;
  /// True when the integral over the manifold vanishes.
  bool mean_zero() const;
};

/// Throws std::invalid_argument when f does not fit the system.
void check_function(const NilSystem& sys, const TestFunction& f);
double eval_fn(const TestFunction& f, const NilPoint& x);

std::string to_string(TestFunction::Kind kind);
std::string to_string(TestFunction::Part part);

}  // namespace nilpet
