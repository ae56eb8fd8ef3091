#include "nilpet/pet.hpp"
#include "pet_pool.hpp"

#include <doctest.h>

using namespace nilpet;
using pool::map;
using pool::t;

namespace {

bool multiset_precedes(const MapMultiset& f, const MapMultiset& g) {
  return precedes_certificate(analyze_family(f.maps, f.multiplicity), analyze_family(g.maps, g.multiplicity))
      .has_value();
}

}  // namespace

TEST_CASE("weight order") {
  CHECK(weight_less({2, 5}, {1, 1}));
  CHECK(weight_less({1, 1}, {1, 2}));
  CHECK(!weight_less({1, 2}, {1, 2}));
  CHECK(!weight_less({1, 1}, {2, 5}));
  CHECK_THROWS_AS(weight(PolyMap::identity(heisenberg(3), {"t"})), ConstantMapError);
}

TEST_CASE("leading-term equivalence") {
  auto h = heisenberg(3);
  auto x = map(h, {t(), 0, 0});
  CHECK(lt_equivalent(x, pointwise_product(x, map(h, {0, 0, t()}))));
  CHECK(!lt_equivalent(x, map(h, {2 * t(), 0, 0})));
  CHECK(!lt_equivalent(x, map(h, {t(2), 0, 0})));
  CHECK_THROWS_AS(lt_equivalent(x, PolyMap::identity(h, {"t"})), ConstantMapError);
}

TEST_CASE("weight assignment") {
  auto h = heisenberg(3);
  auto x = map(h, {t(), 0, 0}), x2 = map(h, {t(2), 0, 0});
  CHECK(weight_assignment({x, x2}) == WeightAssignment{{{1, 1}, 1}, {{1, 2}, 1}});
  auto same = analyze_family({x, x});
  CHECK(same.assignment == WeightAssignment{{{1, 1}, 1}});
  REQUIRE(same.classes.size() == 1);
  CHECK(same.classes[0].members.size() == 2);
  CHECK(weight_assignment({}).empty());
  auto with_const = analyze_family({PolyMap::identity(h, {"t"}), x});
  CHECK(with_const.dropped == std::vector<int>{0});
}

TEST_CASE("family ordering examples") {
  auto h = heisenberg(3);
  auto x = map(h, {t(), 0, 0}), x2 = map(h, {t(2), 0, 0}), y = map(h, {0, t(), 0});
  auto cert = family_precedes_certificate({x}, {x2});
  REQUIRE(cert);
  CHECK(cert->clause == Descent::Clause::Assignment);
  CHECK(cert->witness == Weight{1, 2});
  CHECK(!family_precedes({x2}, {x}));
  CHECK(!family_precedes({x, y}, {x, y}));

  // Dropping a member of a class of size two: matching clause.
  auto m = family_precedes_certificate({x, y}, {x, x, y});
  REQUIRE(m);
  CHECK(m->clause == Descent::Clause::Matching);
  CHECK(m->witness == Weight{1, 1});
  CHECK(!family_precedes({x, x, y}, {x, y, y}));
}

TEST_CASE("pivot") {
  auto h = heisenberg(3);
  auto x = map(h, {t(), 0, 0}), x2 = map(h, {t(2), 0, 0}), z = map(h, {0, 0, t()});
  CHECK(pivot({x2, x}) == 1);
  CHECK(pivot({z, x}) == 0);
  CHECK(pivot({x2}) == 0);
  CHECK(pivot({x, z, z}) == 1);
  CHECK_THROWS_AS(pivot({PolyMap::identity(h, {"t"})}), ConstantMapError);
}

TEST_CASE("derived family") {
  auto h = heisenberg(3);
  auto x = map(h, {t(), 0, 0});
  auto single = derived_family({x}, 0);
  REQUIRE(single.size() == 1);
  CHECK(single[0].is_identity());
  CHECK(single[0].vars() == std::vector<std::string>{"t", "k"});

  auto d = derived_family({x, map(h, {2 * t(), 0, 0})}, 0);
  REQUIRE(d.size() == 3);
  CHECK(d[0].coords() == map(h, {t(), 0, 0}).coords());

  auto e = derived_family({x, map(h, {t(2), 0, 0})}, 0);
  REQUIRE(e.size() == 3);
  MultiPoly k = MultiPoly::variable(1);
  CHECK(e[2].coord(0) == t(2) + 2 * k * t() - t());
  CHECK(e[0].coord(0) == t(2) - t());
  CHECK(lt_equivalent(e[0], e[2]));

  for (const auto& phi : derived_family({x, map(h, {t(2), t(), t(3)}), map(h, {0, 0, t()})}, 2))
    CHECK(!normalization_violation(phi));
  CHECK_THROWS_AS(derived_family({x}, 1), std::out_of_range);
}

TEST_CASE("pet trace examples") {
  auto h = heisenberg(3);
  auto x = map(h, {t(), 0, 0});
  auto base = pet_trace({x});
  CHECK(base.status == PetTrace::Status::Complete);
  CHECK(base.depth() == 0);

  auto two = pet_trace({x, map(h, {2 * t(), 0, 0})});
  CHECK(two.status == PetTrace::Status::Complete);
  CHECK(two.depth() >= 1);
  for (const auto& s : two.steps) CHECK(multiset_precedes(s.derived, s.family));

  auto three = pet_trace({x, map(h, {t(2), 0, 0}), map(h, {0, t(), 0})});
  CHECK(three.status == PetTrace::Status::Complete);
  for (const auto& s : three.steps) {
    CHECK(multiset_precedes(s.derived, s.family));
    CHECK(s.certificate.clause == Descent::Clause::Assignment);
  }
  CHECK(three.final_family.total() <= 1);

  PetOptions none;
  none.max_depth = 0;
  CHECK(pet_trace({x, map(h, {t(2), 0, 0})}, none).status == PetTrace::Status::Truncated);

  auto bad = PolyMap(h, {"t"}, map(h, {t() + 1, 0, 0}).coords());
  CHECK_THROWS(pet_trace({bad}));
}

TEST_CASE("ordering axioms on generated families") {
  for (const auto& base : {pool::abelian_pool(), pool::heisenberg_pool()}) {
    auto fams = pool::families(std::vector<PolyMap>(base.begin(), base.begin() + 4), 3);
    std::vector<FamilyAnalysis> an;
    for (const auto& f : fams) an.push_back(analyze_family(f));
    const std::size_t n = fams.size();
    std::vector<std::vector<char>> rel(n, std::vector<char>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rel[i][j] = precedes_certificate(an[i], an[j]).has_value();
    int mismatches = 0, irreflexive = 0, transitive = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (rel[i][i]) ++irreflexive;
      for (std::size_t j = 0; j < n; ++j) {
        if (rel[i][j] != pool::precedes_by_search(fams[i], fams[j])) ++mismatches;
        if (!rel[i][j]) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (rel[j][k] && !rel[i][k]) ++transitive;
      }
    }
    CHECK(mismatches == 0);
    CHECK(irreflexive == 0);
    CHECK(transitive == 0);
  }
}

TEST_CASE("lt equivalence is an equivalence relation on the pools") {
  for (const auto& base : {pool::abelian_pool(), pool::heisenberg_pool()}) {
    std::vector<PolyMap> maps = base;
    // Add perturbations that keep the leading term.
    for (const auto& phi : base) {
      PolyVector c = phi.coords();
      int last = phi.algebra()->dim() - 1;
      c[last] += t();
      maps.emplace_back(phi.algebra(), phi.vars(), c);
    }
    const std::size_t n = maps.size();
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(lt_equivalent(maps[i], maps[i]));
      for (std::size_t j = 0; j < n; ++j) {
        bool ij = lt_equivalent(maps[i], maps[j]);
        CHECK(ij == lt_equivalent(maps[j], maps[i]));
        if (!ij) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (lt_equivalent(maps[j], maps[k])) CHECK(lt_equivalent(maps[i], maps[k]));
      }
    }
  }
}

TEST_CASE("descent lemma on the pools") {
  for (const auto& base : {pool::abelian_pool(), pool::heisenberg_pool()}) {
    for (const auto& f : pool::families(base, 2)) {
      int p = pivot(f);
      CHECK(family_precedes(derived_family(f, p), f));
      if (f.size() >= 2) {
        PolyFamily rest(f.begin() + 1, f.end());
        CHECK(family_precedes(rest, f));
      }
    }
  }
}
