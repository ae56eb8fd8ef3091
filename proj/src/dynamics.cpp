#include "nilpet/dynamics.hpp"

#include <cmath>
#include <numbers>

namespace nilpet {

namespace {

double wrap(double v) {
  double r = v - std::floor(v);
  return r >= 1.0 ? 0.0 : r;  // v a tiny negative number
}

double to_nearest_int(double v) { return std::abs(v - std::nearbyint(v)); }

double frac_double(const Rational& v) { return to_double(frac(v)); }

}  // namespace

NilSystem NilSystem::torus(int d) {
  if (d < 1 || d > kMaxPointDim)
    throw std::invalid_argument("torus dimension must be in 1.." + std::to_string(kMaxPointDim));
  return NilSystem(Kind::Torus, d, abelian(d));
}

NilSystem NilSystem::heisenberg3() { return NilSystem(Kind::Heisenberg3, 3, heisenberg(3)); }

NilSystem NilSystem::via(AlgebraPtr source, RationalMatrix matrix) const {
  if (!source) throw std::invalid_argument("missing source algebra");
  if (matrix.rows() != dim_ || matrix.cols() != source->dim())
    throw std::invalid_argument("homomorphism matrix must be " + std::to_string(dim_) + " x " +
                                std::to_string(source->dim()));
  for (int i = 0; i < source->dim(); ++i) {
    for (int j = i + 1; j < source->dim(); ++j) {
      RationalVector ei = zero_vector(source->dim()), ej = zero_vector(source->dim());
      ei[i] = 1;
      ej[j] = 1;
      RationalVector lhs = matrix * bracket(*source, ei, ej);
      RationalVector rhs = bracket(*algebra_, RationalVector(matrix.col(i)), RationalVector(matrix.col(j)));
      if (lhs != rhs)
        throw std::invalid_argument("linear map does not preserve the bracket of basis elements " +
                                    std::to_string(i) + ", " + std::to_string(j));
    }
  }
  NilSystem out = *this;
  out.source_ = std::move(source);
  out.hom_ = std::move(matrix);
  return out;
}

std::string NilSystem::name() const {
  return kind_ == Kind::Torus ? "torus(" + std::to_string(dim_) + ")" : "heisenberg3";
}

RationalVector NilSystem::to_system(const GroupElement& g) const {
  if (!same_algebra(g.algebra(), acting_algebra())) throw AlgebraMismatch();
  return hom_ ? RationalVector(*hom_ * g.coords()) : g.coords();
}

Translation prepare(const NilSystem& sys, const GroupElement& g) {
  RationalVector c = sys.to_system(g);
  Translation tr;
  if (sys.kind() == NilSystem::Kind::Torus) {
    for (int i = 0; i < sys.dim(); ++i) tr.shift[static_cast<std::size_t>(i)] = frac_double(c[i]);
    return tr;
  }
  // matrix entries of exp(aX + bY + cZ)
  const Rational x = c[0], y = c[1], z = c[2] + c[0] * c[1] / 2;
  const Integer xi = floor(x), yi = floor(y);
  tr.shift[0] = to_double(x - Rational(xi));
  tr.shift[1] = to_double(y - Rational(yi));
  tr.shift[2] = frac_double(z - x * Rational(yi));
  tr.x_int = xi.convert_to<double>();
  tr.y_int = yi.convert_to<double>();
  return tr;
}

NilPoint apply(const NilSystem& sys, const Translation& tr, const NilPoint& p) {
  NilPoint out(sys.dim());
  if (sys.kind() == NilSystem::Kind::Torus) {
    for (int i = 0; i < sys.dim(); ++i) out[i] = wrap(p[i] + tr.shift[static_cast<std::size_t>(i)]);
    return out;
  }
  // g m = (X + a, Y + b, c + X b + Z); right-multiply by the integer matrix
  // clearing floor(X + a) and floor(Y + b). Integer multiples of the unit
  // are dropped before they reach floating point.
  const double a = p[0], b = p[1], c = p[2];
  const double alpha = tr.shift[0], beta = tr.shift[1], kappa = tr.shift[2];
  const double b1 = beta + b;
  const double f = b1 >= 1.0 ? 1.0 : 0.0;
  out[0] = wrap(alpha + a);
  out[1] = wrap(b1 - f);
  out[2] = wrap(c + kappa + wrap(tr.x_int * b) + alpha * (b - f) - wrap(a * tr.y_int) - a * f);
  return out;
}

NilPoint act(const NilSystem& sys, const GroupElement& g, const NilPoint& x) {
  return apply(sys, prepare(sys, g), x);
}

NilPoint reduce(const NilSystem& sys, const NilPoint& x) {
  NilPoint out(sys.dim());
  if (sys.kind() == NilSystem::Kind::Torus) {
    for (int i = 0; i < sys.dim(); ++i) out[i] = wrap(x[i]);
    return out;
  }
  // y first, then x, then the central coordinate with the correction from y
  const double fb = std::floor(x[1]);
  out[1] = wrap(x[1]);
  out[0] = wrap(x[0]);
  out[2] = wrap(x[2] - x[0] * fb);
  return out;
}

double domain_distance(const NilSystem& sys, const NilPoint& x, const NilPoint& y) {
  double d = 0;
  if (sys.kind() == NilSystem::Kind::Torus) {
    for (int i = 0; i < sys.dim(); ++i) d = std::max(d, to_nearest_int(x[i] - y[i]));
    return d;
  }
  // entries of m_x^{-1} m_y, which is near an integer matrix iff the cosets are close
  const double da = y[0] - x[0], db = y[1] - x[1];
  const double dc = y[2] - x[2] - x[0] * db;
  return std::max({to_nearest_int(da), to_nearest_int(db), to_nearest_int(dc)});
}

NilPoint sample_haar(const NilSystem& sys, std::mt19937_64& rng) {
  NilPoint p(sys.dim());
  for (int i = 0; i < sys.dim(); ++i) p[i] = unit_uniform(rng);
  return p;
}

std::vector<NilPoint> sample_haar(const NilSystem& sys, std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::vector<NilPoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_haar(sys, rng));
  return out;
}

bool TestFunction::is_constant_one() const {
  if (kind == Kind::One) return true;
  if (part == Part::Sin) return false;
  for (int k : freq)
    if (k != 0) return false;
  return true;
}

bool TestFunction::mean_zero() const {
  if (kind == Kind::One) return false;
  if (part == Part::Sin) return true;
  return !is_constant_one();
}

void check_function(const NilSystem& sys, const TestFunction& f) {
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("test function " + to_string(f.kind) + ": " + what);
  };
  switch (f.kind) {
    case TestFunction::Kind::One:
      need(f.freq.empty(), "takes no frequencies");
      return;
    case TestFunction::Kind::Torus:
      need(sys.kind() == NilSystem::Kind::Torus, "needs a torus system");
      need(static_cast<int>(f.freq.size()) == sys.dim(), "needs one frequency per torus coordinate");
      return;
    case TestFunction::Kind::HeisAbelian:
      need(sys.kind() == NilSystem::Kind::Heisenberg3, "needs the Heisenberg system");
      need(f.freq.size() == 2, "needs frequencies (k1, k2)");
      return;
    case TestFunction::Kind::HeisVertical:
      need(sys.kind() == NilSystem::Kind::Heisenberg3, "needs the Heisenberg system");
      need(f.freq.size() == 3, "needs frequencies (k1, k2, m)");
      return;
  }
}

double eval_fn(const TestFunction& f, const NilPoint& x) {
  if (f.kind == TestFunction::Kind::One) return 1.0;
  double phase = 0;
  for (std::size_t i = 0; i < f.freq.size(); ++i) phase += f.freq[i] * x[static_cast<Eigen::Index>(i)];
  phase = 2 * std::numbers::pi * wrap(phase);
  return f.part == TestFunction::Part::Cos ? std::cos(phase) : std::sin(phase);
}

std::string to_string(TestFunction::Kind kind) {
  switch (kind) {
    case TestFunction::Kind::Torus: return "torus";
    case TestFunction::Kind::HeisAbelian: return "heis_abelian";
    case TestFunction::Kind::HeisVertical: return "heis_vertical";
    case TestFunction::Kind::One: return "one";
  }
  return "unknown";
}

std::string to_string(TestFunction::Part part) { return part == TestFunction::Part::Cos ? "cos" : "sin"; }

}  // namespace nilpet
