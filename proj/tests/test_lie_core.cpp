#include "nilpet/bch.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace nilpet;

namespace {

RationalVector vec(std::initializer_list<Rational> xs) {
  RationalVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v[i++] = x;
  return v;
}

GroupElement group(const AlgebraPtr& g, RationalVector v) { return GroupElement(g, std::move(v)); }

}  // namespace

TEST_CASE("heisenberg bracket from structure constants") {
  auto h3 = heisenberg(3);
  LieElement x(h3, vec({1, 0, 0})), y(h3, vec({0, 1, 0}));
  CHECK(bracket(x, y).coords() == vec({0, 0, 1}));
  CHECK(bracket(x, x).is_zero());
  CHECK(bracket(y, x).coords() == vec({0, 0, -1}));

  auto a3 = abelian(3);
  CHECK(bracket(LieElement(a3, vec({1, 0, 0})), LieElement(a3, vec({0, 1, 0}))).is_zero());
  CHECK_THROWS_AS(bracket(x, LieElement(a3, vec({1, 0, 0}))), AlgebraMismatch);
}

TEST_CASE("bch product examples") {
  auto h3 = heisenberg(3);
  auto p = bch_product(group(h3, vec({1, 0, 0})), group(h3, vec({0, 1, 0})));
  CHECK(p.coords() == vec({1, 1, Rational(1, 2)}));
  CHECK(p.coords() == oracle::matrix_bch(vec({1, 0, 0}), vec({0, 1, 0}), 3));
  CHECK(group_inverse(p).coords() == vec({-1, -1, Rational(-1, 2)}));

  auto a4 = abelian(4);
  auto x = group(a4, vec({1, 2, 3, 4})), y = group(a4, vec({Rational(1, 3), 0, -1, 5}));
  CHECK(bch_product(x, y).coords() == RationalVector(x.coords() + y.coords()));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto z = group(h3, oracle::random_vector(rng, 3));
    CHECK(bch_product(z, group_inverse(z)).is_zero());
    CHECK(bch_product(group_inverse(z), z).is_zero());
    CHECK(bch_product(z, GroupElement::zero(h3)) == z);
    CHECK(bch_product(GroupElement::zero(h3), z) == z);
  }
}

TEST_CASE("bch agrees with the unitriangular matrix model") {
  std::mt19937_64 rng(11);
  for (int n = 3; n <= 5; ++n) {
    auto g = strictly_upper_triangular(n);
    for (int trial = 0; trial < 30; ++trial) {
      RationalVector x = oracle::random_vector(rng, g->dim());
      RationalVector y = oracle::random_vector(rng, g->dim());
      CHECK(bch(*g, x, y) == oracle::matrix_bch(x, y, n));
    }
  }
}

TEST_CASE("bch is associative on random rational triples") {
  std::mt19937_64 rng(3);
  for (auto g : {heisenberg(5), strictly_upper_triangular(5), free_nilpotent(2, 4), free_nilpotent(3, 3)}) {
    for (int trial = 0; trial < 5; ++trial) {
      auto x = group(g, oracle::random_vector(rng, g->dim()));
      auto y = group(g, oracle::random_vector(rng, g->dim()));
      auto z = group(g, oracle::random_vector(rng, g->dim()));
      CHECK(bch_product(bch_product(x, y), z) == bch_product(x, bch_product(y, z)));
    }
  }
}

TEST_CASE("bch table bound") {
  BchTable small(3);
  auto g = strictly_upper_triangular(5);
  RationalVector x = zero_vector(g->dim());
  CHECK_THROWS_AS(bch(*g, x, x, small), StepBoundExceeded);
  auto h = heisenberg(3);
  CHECK(bch(*h, vec({1, 0, 0}), vec({0, 1, 0}), small) == vec({1, 1, Rational(1, 2)}));
}

TEST_CASE("conjugation in h3 shifts the centre by the commutator") {
  auto h3 = heisenberg(3);
  auto g = group(h3, vec({1, 0, 0})), h = group(h3, vec({0, 1, 0}));
  // exp(X) exp(Y) exp(-X) = exp(Y + [X, Y])
  CHECK(conjugate(g, h).coords() == vec({0, 1, 1}));
}

TEST_CASE("builtin algebras") {
  auto h3 = heisenberg(3);
  CHECK(h3->dim() == 3);
  CHECK(h3->step() == 2);
  CHECK(h3->layers() == std::vector<int>{1, 1, 2});
  CHECK(verify_algebra(*h3).empty());

  auto u4 = strictly_upper_triangular(4);
  CHECK(u4->dim() == 6);
  CHECK(u4->step() == 3);
  CHECK(verify_algebra(*u4).empty());
  CHECK(u4->layer(5) == 3);

  auto f22 = free_nilpotent(2, 2);
  CHECK(f22->dim() == 3);
  CHECK(verify_algebra(*f22).empty());

  for (int g = 2; g <= 4; ++g) {
    for (int s = 1; s <= (g == 4 ? 4 : 5); ++s) {
      auto f = free_nilpotent(g, s);
      for (int l = 1; l <= s; ++l) {
        CAPTURE(g);
        CAPTURE(s);
        CHECK(static_cast<int>(f->layer_indices(l).size()) == oracle::witt(g, l));
      }
    }
  }
  CHECK(verify_algebra(*free_nilpotent(3, 3)).empty());
  CHECK(verify_algebra(*free_nilpotent(2, 5)).empty());
  CHECK(verify_algebra(*heisenberg(7)).empty());
  CHECK(verify_algebra(*abelian(4)).empty());

  CHECK(builtin_from_name("free_nilpotent(2, 3)")->dim() == 5);
  CHECK_THROWS_AS(strictly_upper_triangular(7), UnsupportedSize);
  CHECK_THROWS_AS(free_nilpotent(5, 2), UnsupportedSize);
  CHECK_THROWS_AS(free_nilpotent(2, 7), UnsupportedSize);
  CHECK_THROWS_AS(heisenberg(4), UnsupportedSize);
}

TEST_CASE("verify_algebra reports constructed violations") {
  // Both orientations given with the same sign.
  std::vector<LieAlgebra::Entry> entries = {{0, 1, {{2, Rational(1)}}}, {1, 0, {{2, Rational(1)}}}};
  LieAlgebra bad({"a", "b", "c"}, {1, 1, 2}, 2, entries);
  auto v = verify_algebra(bad);
  REQUIRE(!v.empty());
  bool found = false;
  for (const auto& x : v)
    found = found || (x.kind == Violation::Kind::Antisymmetry && x.indices == std::vector<int>{0, 1, 2});
  CHECK(found);

  // [a, b] lands in layer 1: grading violation.
  LieAlgebra skew({"a", "b", "c"}, {1, 1, 1}, 1, {{0, 1, {{2, Rational(1)}}}});
  bool grading = false;
  for (const auto& x : verify_algebra(skew)) grading = grading || x.kind == Violation::Kind::Grading;
  CHECK(grading);

  // Layers claim step 2 but the algebra is abelian.
  LieAlgebra flat({"a", "b", "c"}, {1, 1, 2}, 2, {});
  bool lcs = false;
  for (const auto& x : verify_algebra(flat)) lcs = lcs || x.kind == Violation::Kind::LowerCentralSeries;
  CHECK(lcs);

  // [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 3w
  LieAlgebra jac({"a", "b", "c", "e", "f", "g", "w"}, {1, 1, 1, 2, 2, 2, 3}, 3,
                 {{0, 1, {{3, Rational(1)}}},
                  {1, 2, {{4, Rational(1)}}},
                  {2, 0, {{5, Rational(1)}}},
                  {0, 4, {{6, Rational(1)}}},
                  {1, 5, {{6, Rational(1)}}},
                  {2, 3, {{6, Rational(1)}}}});
  auto jv = verify_algebra(jac);
  REQUIRE(jv.size() == 1);
  CHECK(jv[0].kind == Violation::Kind::Jacobi);
  CHECK(jv[0].indices == std::vector<int>{0, 1, 2});
}
