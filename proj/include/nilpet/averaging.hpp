#pragma once

#include "nilpet/dynamics.hpp"
#include "nilpet/pet.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace nilpet {

/// How the k+1 points (x_0, ..., x_k) are drawn.
///   Diagonal: one Haar point copied to every factor (identical manifolds).
///   Product:  independent Haar points.
///   Graph:    a diagonal point pushed by fixed elements, x_i = g_i x. Not
///             invariant under the diagonal action unless the g_i agree.
struct JoiningSpec {
  enum class Kind { Diagonal, Product, Graph };
  Kind kind = Kind::Diagonal;
  std::vector<NilSystem> systems;
  std::vector<GroupElement> graph;  // Graph kind only, one per system

  int k() const { return static_cast<int>(systems.size()) - 1; }
  bool diagonal_invariant() const { return kind != Kind::Graph; }
};

struct AverageOptions {
  Rational dt = Rational(1, 20);
  std::size_t n_samples = 10000;
  std::uint64_t seed = 0;
  /// Worker threads; 0 means hardware concurrency. Results do not depend on it.
  int threads = 0;
  /// Draws per block. Block b uses seed + b.
  std::size_t block_size = 1024;
};

struct Estimate {
  double value = 0;
  double std_error = 0;
};

struct AverageReport {
  std::vector<double> T;
  std::vector<double> estimates;
  std::vector<double> std_errors;
  double cauchy_gap = 0;
  double dt = 0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Monte Carlo estimate of the integral of f_0 (x) ... (x) f_k against
/// lambda_T: each draw contributes the composite-midpoint time average
/// f_0(x_0) (1/T) sum_j prod_i f_i(phi_i(t_j, h) x_i) dt over t_j = (j + 1/2) dt.
/// `family` has k maps and `fns` has k + 1 functions.
Estimate joining_average(const JoiningSpec& joining, const PolyFamily& family, const RationalVector& h,
                         const std::vector<TestFunction>& fns, const Rational& T,
                         const AverageOptions& options = {});

/// joining_average at every horizon of an increasing grid, from one pass over
/// shared draws.
AverageReport convergence_scan(const JoiningSpec& joining, const PolyFamily& family, const RationalVector& h,
                               const std::vector<TestFunction>& fns, const std::vector<Rational>& T_grid,
                               const AverageOptions& options = {});

/// max |e_i - e_j| over the last max(2, ceil(n/4)) entries.
double cauchy_gap(std::span<const double> estimates);

/// For each tuple (g_0, ..., g_k): |E_lambda_T[F] - E_lambda_T[F o u^g]| with
/// F = f_0 (x) ... (x) f_k, estimated on shared draws. When the joining is
/// diagonal-invariant the moved integrand is transported by u_Delta^{g_0^{-1}},
/// so factor i sees g_i phi_i(t) g_0^{-1} (computed exactly), and invariance
/// of lambda_T under a diagonal tuple shows up as an exact zero.
std::vector<Estimate> invariance_check(const JoiningSpec& joining, const PolyFamily& family,
                                       const RationalVector& h, const std::vector<TestFunction>& fns,
                                       const Rational& T, const std::vector<std::vector<GroupElement>>& tuples,
                                       const AverageOptions& options = {});

struct VdcResult {
  double lhs_norm = 0;  // |(1/T) int_0^T a|
  double rhs_corr = 0;  // (1/S) int_0^S (1/T) int_0^T a(t+s) a(t) dt ds
};

/// Trapezoid rules on a trajectory sampled at step `step` from t = 0. The
/// double integral is rewritten as int_0^T a(t) (A(t+S) - A(t)) dt with A
/// the running integral, so the cost is linear. S and T must be multiples
/// of the step; throws std::invalid_argument when the grid is too short.
VdcResult vdc_check(std::span<const double> a, double step, double S, double T);

/// a(j step) = f(phi(j step, h) x0) for j = 0..count-1.
std::vector<double> orbit_trajectory(const NilSystem& sys, const PolyMap& phi, const RationalVector& h,
                                     const TestFunction& f, const NilPoint& x0, const Rational& step,
                                     std::size_t count);

struct MeanErgodicReport {
  /// estimates[i] = || A_T f ||_2 over Haar draws, A_T f(x) = (1/T) int_0^T f(phi(t,h) x) dt.
  AverageReport norms;
  /// || A_T f - f ||_2 per horizon.
  std::vector<double> distance_to_f;
  std::vector<double> distance_std_errors;
  enum class Limit { Vanishing, Invariant, Undetermined };
  /// At the largest horizon: norm or distance below `tolerance`.
  Limit limit = Limit::Undetermined;
};

MeanErgodicReport mean_ergodic_base(const NilSystem& sys, const PolyMap& phi, const RationalVector& h,
                                    const TestFunction& f, const std::vector<Rational>& T_grid,
                                    const AverageOptions& options = {}, double tolerance = 0.05);

std::string to_string(JoiningSpec::Kind kind);
std::string to_string(MeanErgodicReport::Limit limit);

}  // namespace nilpet
