#include <doctest.h>

#include "geomkit/error.hpp"
#include "geomkit/morphisms.hpp"

using namespace geomkit;

TEST_CASE("node budget is enforced") {
  auto P = projective_space(field_parse("2"), 2);
  SearchOptions tight{.budget = 50, .workers = 1};
  try {
    enumerate_morphisms(P, P, MorphismFilter::All, tight);
    FAIL("expected SearchBudgetExceeded");
  } catch (const GeomError& e) {
    CHECK(e.kind() == ErrorKind::SearchBudgetExceeded);
  }
}

TEST_CASE("results do not depend on the worker count") {
  auto P = projective_space(field_parse("2"), 2);
  SearchStats s1, s4;
  auto one = enumerate_morphisms(P, P, MorphismFilter::ImageNotInLine, {.workers = 1}, &s1);
  auto four = enumerate_morphisms(P, P, MorphismFilter::ImageNotInLine, {.workers = 4}, &s4);
  REQUIRE(one.size() == 168);
  REQUIRE(four.size() == one.size());
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i].images == four[i].images);
  CHECK(s1.nodes > 0);
}

TEST_CASE("plain search problems") {
  auto L = projective_space(field_parse("3"), 1);  // 4 points on a line
  SearchProblem inj;
  inj.domain_size = 3;
  inj.codomain = L;
  inj.injective = true;
  auto all = run_search(inj, {});
  CHECK(all.size() == 4 * 3 * 2);
  CHECK(std::is_sorted(all.begin(), all.end()));

  SearchProblem eq = inj;
  eq.injective = false;
  eq.constraints.push_back({ConstraintKind::Equal, kNoPoint, {0, 2}});
  eq.candidates = {{1, 2}, {}, {}};
  auto res = run_search(eq, {});
  CHECK(res.size() == 2 * 4);
  for (const auto& a : res) CHECK(a[0] == a[2]);

  SearchProblem acc = inj;
  acc.accept = [](std::span<const PointId> a) { return a[0] < a[1]; };
  CHECK(run_search(acc, {}).size() == 12);
}

TEST_CASE("morphism constraints characterize morphisms") {
  // Every map passing the constraints is a morphism, on a domain generated by
  // lines and on one that needs planes.
  for (const auto& X : {projective_space(field_parse("2"), 2), affine_space(field_parse("2"), 3)}) {
    auto Y = projective_space(field_parse("2"), 2);
    SearchProblem p;
    p.domain_size = X->size();
    p.codomain = Y;
    p.constraints = morphism_constraints(*X);
    auto found = run_search(p, {});
    CHECK_FALSE(found.empty());
    std::size_t bad = 0;
    for (const auto& a : found) bad += !is_morphism(GeoMap{X, Y, a}).is_morphism;
    CHECK(bad == 0);
    CHECK(found.size() == enumerate_morphisms(X, Y, MorphismFilter::All).size());
  }
}
