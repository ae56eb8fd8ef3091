#include "nilpet/dynamics.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace nilpet;

namespace {

NilPoint point(std::initializer_list<double> xs) {
  NilPoint p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

GroupElement element(const AlgebraPtr& g, std::initializer_list<Rational> xs) {
  RationalVector c(g->dim());
  int i = 0;
  for (const auto& x : xs) c[i++] = x;
  return GroupElement(g, c);
}

// g m computed as a long double matrix product, not reduced.
NilPoint matrix_action(const GroupElement& g, const NilPoint& m) {
  long double a = to_double(g.coords()[0]), b = to_double(g.coords()[1]);
  long double c = to_double(g.coords()[2] + g.coords()[0] * g.coords()[1] / 2);
  NilPoint out(3);
  out[0] = static_cast<double>(a + m[0]);
  out[1] = static_cast<double>(b + m[1]);
  out[2] = static_cast<double>(m[2] + a * m[1] + c);
  return out;
}

bool in_domain(const NilPoint& p) {
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (!(p[i] >= 0.0 && p[i] < 1.0)) return false;
  return true;
}

}  // namespace

TEST_CASE("torus action") {
  auto sys = NilSystem::torus(1);
  auto g = element(sys.algebra(), {Rational(1, 4)});
  CHECK(act(sys, g, point({0.9}))[0] == doctest::Approx(0.15).epsilon(1e-14));
  CHECK(act(sys, GroupElement::zero(sys.algebra()), point({0.9}))[0] == 0.9);
  CHECK(act(sys, element(sys.algebra(), {Rational(-7, 2)}), point({0.25}))[0] == doctest::Approx(0.75));
  CHECK_THROWS_AS(act(sys, GroupElement::zero(heisenberg(3)), point({0.5})), AlgebraMismatch);
}

TEST_CASE("heisenberg action") {
  auto sys = NilSystem::heisenberg3();
  auto h = sys.algebra();
  std::mt19937_64 rng(3);
  CHECK(act(sys, GroupElement::zero(h), point({0.1, 0.2, 0.3})) == point({0.1, 0.2, 0.3}));

  double worst_law = 0, worst_matrix = 0;
  for (int trial = 0; trial < 500; ++trial) {
    // include large translations, as at long flow times
    Rational scale = trial % 5 == 0 ? Rational(1000) : Rational(1);
    auto g = GroupElement(h, RationalVector(oracle::random_vector(rng, 3) * scale));
    auto k = GroupElement(h, oracle::random_vector(rng, 3));
    NilPoint x = sample_haar(sys, rng);
    NilPoint lhs = act(sys, bch_product(g, k), x);
    NilPoint rhs = act(sys, g, act(sys, k, x));
    CHECK(in_domain(lhs));
    CHECK(in_domain(rhs));
    worst_law = std::max(worst_law, domain_distance(sys, lhs, rhs));
    worst_matrix = std::max(worst_matrix, domain_distance(sys, act(sys, k, x), matrix_action(k, x)));
  }
  CHECK(worst_law <= 1e-10);
  CHECK(worst_matrix <= 1e-12);

  auto x_gen = element(h, {1, 0, 0}), y_gen = element(h, {0, 1, 0});
  NilPoint x = point({0.3, 0.6, 0.2});
  CHECK(domain_distance(sys, act(sys, x_gen, act(sys, y_gen, x)), act(sys, bch_product(x_gen, y_gen), x)) <= 1e-12);
}

TEST_CASE("reduction") {
  auto sys = NilSystem::heisenberg3();
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    NilPoint x = sample_haar(sys, rng);
    CHECK(reduce(sys, x) == x);
    NilPoint r = reduce(sys, reduce(sys, point({x[0] + 3, x[1] - 2, x[2] + 5})));
    CHECK(reduce(sys, r) == r);
    // right multiplication by an integer matrix (p, q, r)
    const double p = trial % 7 - 3, q = trial % 5 - 2, s = trial % 3 - 1;
    NilPoint lifted = point({x[0] + p, x[1] + q, x[2] + x[0] * q + s});
    NilPoint back = reduce(sys, lifted);
    CHECK(domain_distance(sys, back, x) <= 1e-12);
    CHECK((back - x).cwiseAbs().maxCoeff() <= 1e-12);
  }
  auto torus = NilSystem::torus(2);
  CHECK(reduce(torus, point({-0.25, 3.5})) == point({0.75, 0.5}));
  CHECK(reduce(torus, point({-1e-18, 0}))[0] == 0.0);
}

TEST_CASE("haar sampling") {
  auto torus = NilSystem::torus(2);
  CHECK(sample_haar(torus, 1, 0).empty());
  CHECK(sample_haar(torus, 5, 10) == sample_haar(torus, 5, 10));

  const std::size_t n = 100000;
  const double bound = 4 / std::sqrt(static_cast<double>(n));
  TestFunction e1{TestFunction::Kind::Torus, {1, 0}, TestFunction::Part::Cos};
  double mean = 0;
  for (const auto& x : sample_haar(torus, 17, n)) mean += eval_fn(e1, x);
  CHECK(std::abs(mean / n) <= bound);

  auto heis = NilSystem::heisenberg3();
  TestFunction v{TestFunction::Kind::HeisVertical, {0, 1, 1}, TestFunction::Part::Cos};
  auto g = element(heis.algebra(), {Rational(1, 3), Rational(2, 7), Rational(5, 2)});
  auto tr = prepare(heis, g);
  double plain = 0, moved = 0;
  for (const auto& x : sample_haar(heis, 23, n)) {
    plain += eval_fn(v, x);
    moved += eval_fn(v, apply(heis, tr, x));
  }
  CHECK(std::abs(plain / n) <= bound);
  CHECK(std::abs(moved / n - plain / n) <= bound);
}

TEST_CASE("test functions") {
  auto t1 = NilSystem::torus(1), t2 = NilSystem::torus(2);
  TestFunction zero{TestFunction::Kind::Torus, {0}, TestFunction::Part::Cos};
  CHECK(eval_fn(zero, point({0.37})) == 1.0);
  CHECK(zero.is_constant_one());
  CHECK(!zero.mean_zero());
  TestFunction k1{TestFunction::Kind::Torus, {1}, TestFunction::Part::Cos};
  CHECK(eval_fn(k1, point({0.25})) == doctest::Approx(0.0));
  TestFunction k23{TestFunction::Kind::Torus, {2, 3}, TestFunction::Part::Cos};
  CHECK(eval_fn(k23, point({0.5, 0.5})) == doctest::Approx(-1.0));
  TestFunction s{TestFunction::Kind::Torus, {1}, TestFunction::Part::Sin};
  CHECK(eval_fn(s, point({0.25})) == doctest::Approx(1.0));
  CHECK(s.mean_zero());
  CHECK(eval_fn(TestFunction{}, point({0.1, 0.2, 0.3})) == 1.0);

  check_function(t1, k1);
  CHECK_THROWS_AS(check_function(t2, k1), std::invalid_argument);
  CHECK_THROWS_AS(check_function(t1, TestFunction{TestFunction::Kind::HeisAbelian, {1, 0}}), std::invalid_argument);
  check_function(NilSystem::heisenberg3(), TestFunction{TestFunction::Kind::HeisVertical, {0, 0, 1}});
  TestFunction vert{TestFunction::Kind::HeisVertical, {1, 0, 2}, TestFunction::Part::Cos};
  CHECK(eval_fn(vert, point({0.25, 0.9, 0.5})) == doctest::Approx(std::cos(2 * std::numbers::pi * 1.25)));
}

TEST_CASE("acting through a homomorphism") {
  auto heis = heisenberg(3);
  RationalMatrix proj(2, 3);
  proj << 1, 0, 0, 0, 1, 0;
  auto sys = NilSystem::torus(2).via(heis, proj);
  CHECK(same_algebra(sys.acting_algebra(), heis));
  NilPoint x = point({0.1, 0.2});
  NilPoint y = act(sys, element(heis, {Rational(1, 2), Rational(1, 4), 7}), x);
  CHECK(y[0] == doctest::Approx(0.6));
  CHECK(y[1] == doctest::Approx(0.45));

  RationalMatrix embed(3, 2);
  embed << 1, 0, 0, 1, 0, 0;
  CHECK_THROWS_AS(NilSystem::heisenberg3().via(abelian(2), embed), std::invalid_argument);
  CHECK_THROWS_AS(NilSystem::torus(2).via(heis, RationalMatrix(3, 3)), std::invalid_argument);
}
