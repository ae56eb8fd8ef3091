#include "nilpet/poly_map.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace nilpet;

namespace {

const std::vector<std::string> T = {"t"};
const std::vector<std::string> TH = {"t", "h1"};

MultiPoly var(int i) { return MultiPoly::variable(i); }
MultiPoly t() { return var(0); }

RationalVector vec(std::initializer_list<Rational> xs) {
  RationalVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("multipoly arithmetic") {
  MultiPoly a = t() * t() * var(1) + Rational(3);
  MultiPoly b = a - a;
  CHECK(b.is_zero());
  CHECK(a.degree_in(0) == 2);
  CHECK(a.total_degree() == 3);
  CHECK(a.coefficient_in(0, 2) == var(1));
  CHECK(a.coefficient_in(0, 0) == MultiPoly(3));
  CHECK(a.coefficient_in(0, 1).is_zero());
  std::vector<Rational> pt = {Rational(2), Rational(1, 2)};
  CHECK(a.evaluate(pt) == Rational(5));
  CHECK((t() + 1).pow(3) == t().pow(3) + 3 * t().pow(2) + 3 * t() + 1);
  std::vector<MultiPoly> images = {t() + var(1)};
  CHECK(t().pow(2).compose(images) == t().pow(2) + 2 * t() * var(1) + var(1).pow(2));
  std::vector<std::string> names = {"t", "h1"};
  CHECK(a.to_string(names) == "3 + t^2*h1");
}

TEST_CASE("eval") {
  auto h3 = heisenberg(3);
  auto phi = PolyMap::along(h3, T, 0, t() * t());
  std::vector<Rational> two = {Rational(2)};
  CHECK(eval(phi, two).coords() == vec({4, 0, 0}));
  std::vector<Rational> zero = {Rational(0)};
  CHECK(eval(phi, zero).is_zero());
  std::vector<Rational> bad = {Rational(0), Rational(1)};
  CHECK_THROWS_AS(eval(phi, bad), ArityMismatch);

  auto prod = pointwise_product(PolyMap::along(h3, T, 0, t()), PolyMap::along(h3, T, 1, t()));
  std::vector<Rational> one = {Rational(1)};
  CHECK(eval(prod, one).coords() == vec({1, 1, Rational(1, 2)}));
}

TEST_CASE("pointwise product and inverse") {
  auto h3 = heisenberg(3);
  auto x = PolyMap::along(h3, T, 0, t());
  auto y = PolyMap::along(h3, T, 1, t());
  auto p = pointwise_product(x, y);
  CHECK(p.coord(0) == t());
  CHECK(p.coord(1) == t());
  CHECK(p.coord(2) == Rational(1, 2) * t() * t());
  for (int k = -2; k <= 2; ++k) {
    Rational s(k, 3);
    std::vector<Rational> pt = {s};
    CHECK(eval(p, pt).coords() == oracle::matrix_bch(vec({s, 0, 0}), vec({0, s, 0}), 3));
  }
  CHECK(pointwise_product(p, pointwise_inverse(p)).is_identity());

  auto a2 = abelian(2);
  PolyVector c1(2), c2(2);
  c1 << t(), t() * t();
  c2 << 3 * t(), -t();
  auto s = pointwise_product(PolyMap(a2, T, c1), PolyMap(a2, T, c2));
  CHECK(s.coord(0) == 4 * t());
  CHECK(s.coord(1) == t() * t() - t());

  // eval commutes with the product on random points
  std::mt19937_64 rng(5);
  auto f = free_nilpotent(2, 3);
  PolyVector u(f->dim()), v(f->dim());
  for (int i = 0; i < f->dim(); ++i) {
    u[i] = oracle::small_rational(rng) * t().pow(i % 3 + 1) + oracle::small_rational(rng) * t() * var(1);
    v[i] = oracle::small_rational(rng) * t().pow((i + 1) % 4 + 1);
  }
  PolyMap pu(f, TH, u), pv(f, TH, v);
  auto puv = pointwise_product(pu, pv);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Rational> pt = {oracle::small_rational(rng), oracle::small_rational(rng)};
    CHECK(eval(puv, pt) == bch_product(eval(pu, pt), eval(pv, pt)));
  }
}

TEST_CASE("substitute") {
  auto h3 = heisenberg(3);
  auto phi = PolyMap::along(h3, T, 0, t() * t());
  std::vector<std::string> tk = {"t", "k"};
  auto shifted = substitute(phi, tk, {{"t", var(0) + var(1)}});
  CHECK(shifted.coord(0) == t() * t() + 2 * t() * var(1) + var(1) * var(1));
  CHECK(substitute(phi, T, {}) == phi);
  CHECK(substitute(phi, T, {{"t", MultiPoly()}}).is_identity());
  CHECK_THROWS_AS(substitute(phi, T, {{"q", t()}}), UnknownVariable);
  CHECK_THROWS_AS(substitute(phi, {"s"}, {}), UnknownVariable);
  CHECK_THROWS(substitute(phi, T, {{"t", t() * t()}}));
}

TEST_CASE("difference") {
  auto h3 = heisenberg(3);
  auto e = PolyMap::identity(h3, T);
  CHECK(symbolic_difference(e, 1).is_identity());

  auto a2 = abelian(2);
  PolyVector c(2);
  c << 2 * t(), -t();
  auto lin = PolyMap(a2, T, c);
  auto d = difference(lin, vec({Rational(1, 3)}));
  CHECK(d.coord(0) == MultiPoly(Rational(-2, 3)));
  CHECK(d.coord(1) == MultiPoly(Rational(1, 3)));

  auto sq = PolyMap::along(h3, T, 0, t() * t());
  auto d1 = symbolic_difference(sq, 1);
  CHECK(d1.coord(0).degree_in(0) == 1);
  auto d2 = symbolic_difference(d1, 1);
  CHECK(!d2.is_identity());
  CHECK(d2.coord(0).degree_in(0) == 0);
  CHECK(symbolic_difference(d2, 1).is_identity());
}

TEST_CASE("polynomial degree") {
  auto h3 = heisenberg(3);
  CHECK(polynomial_degree(PolyMap::identity(h3, T)) == 0);
  CHECK(polynomial_degree(PolyMap::along(h3, T, 0, t())) == 1);
  auto p = pointwise_product(PolyMap::along(h3, T, 0, t()), PolyMap::along(h3, T, 1, t() * t()));
  CHECK(polynomial_degree(p) == 3);
  CHECK(annihilation_order(p) == 4);
  CHECK(polynomial_degree(PolyMap::along(h3, TH, 2, t() * var(1))) == 2);
  CHECK_THROWS_AS(annihilation_order(p, 2), IterationCapExceeded);
}

TEST_CASE("internal class and leading term") {
  auto h3 = heisenberg(3);
  CHECK(internal_class(PolyMap::along(h3, T, 2, t())) == 2);
  CHECK(internal_class(PolyMap::along(h3, T, 0, t())) == 1);
  auto u4 = strictly_upper_triangular(4);
  CHECK(internal_class(PolyMap::along(u4, T, 5, t())) == 3);
  CHECK_THROWS_AS(internal_class(PolyMap::identity(h3, T)), ConstantMapError);
  CHECK_THROWS_AS(leading_term(PolyMap::identity(h3, T)), ConstantMapError);

  auto lt = leading_term(PolyMap::along(h3, T, 0, t() * t() + t()));
  CHECK(lt.internal_class == 1);
  CHECK(lt.leading_degree == 2);
  CHECK(lt.coefficient[0] == MultiPoly(1));
  CHECK(lt.coefficient[1].is_zero());

  auto lz = leading_term(PolyMap::along(h3, TH, 2, t() * var(1)));
  CHECK(lz.internal_class == 2);
  CHECK(lz.leading_degree == 1);
  CHECK(lz.coefficient[0] == var(1));

  PolyVector c(3);
  c << -t(), t().pow(3), MultiPoly();
  auto q = pointwise_product(PolyMap::along(h3, T, 0, t()), PolyMap(h3, T, c));
  auto lq = leading_term(q);
  CHECK(lq.internal_class == 1);
  CHECK(lq.leading_degree == 3);
  CHECK(lq.coefficient[0].is_zero());
  CHECK(lq.coefficient[1] == MultiPoly(1));

  auto inv = leading_term(pointwise_inverse(q));
  CHECK(inv.internal_class == lq.internal_class);
  CHECK(inv.coefficient[1] == -lq.coefficient[1]);
}

TEST_CASE("normalization") {
  auto h3 = heisenberg(3);
  CHECK(!normalization_violation(PolyMap::along(h3, TH, 1, t() * var(1))));
  auto bad = PolyMap::along(h3, TH, 1, t() + var(1));
  REQUIRE(normalization_violation(bad));
  CHECK(*normalization_violation(bad) == 1);
}
