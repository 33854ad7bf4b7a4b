#include <doctest.h>

#include "generators.hpp"
#include "geomkit/error.hpp"
#include "geomkit/serialization.hpp"

using namespace geomkit;

namespace {

GeometryPtr reload(const Geometry& g) { return geometry_from_json(Json::parse(geometry_to_json(g).dump())); }

ErrorKind kind_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const GeomError& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::NotFound;
}

}  // namespace

TEST_CASE("geometries round trip") {
  auto P = projective_space(field_parse("2"), 3);
  PointSet E = P->flat(P->flats_of_dim(0).front());
  const std::vector<GeometryPtr> gs = {affine_space(field_parse("9"), 2), P, truncate(P, 2),
                                       subgeometry(P, std::vector<PointId>{0, 1, 2, 3, 4}),
                                       Geometry::make_quotient(P, E),
                                       Geometry::make_explicit({"a", "b", "c"}, {{}, {0}, {1}, {2}})};
  for (const auto& g : gs) {
    auto back = reload(*g);
    CHECK(back->size() == g->size());
    CHECK(same_flats(*back, *g));
  }
  CHECK(geometry_to_json(*P).dump() == R"({"kind":"projective","q":"2","dim":3})");
  CHECK(reload(*Geometry::make_quotient(P, E))->backend() == Backend::Quotient);
}

TEST_CASE("maps and partial maps round trip") {
  auto rng = testgen::rng_for(61);
  auto A = affine_space(field_parse("3"), 2);
  auto P = projective_space(field_parse("3"), 2);
  auto f = testgen::random_map(rng, A, P);
  auto g = map_from_json(Json::parse(map_to_json(f).dump()));
  CHECK(g.images == f.images);
  CHECK(describe(*g.codomain) == "PG(2,3)");

  auto K = P->field();
  auto part = projectivize_map(P, P, SemilinearMap{Matrix::from_rows(K, {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}),
                                                   field_identity(K)});
  auto j = partial_map_to_json(part);
  CHECK(j["images"].size() == P->size() - 1);
  auto back = partial_map_from_json(j);
  CHECK(back.images == part.images);
  CHECK(back.exceptional == part.exceptional);
}

TEST_CASE("algebraic maps round trip") {
  auto rng = testgen::rng_for(62);
  auto K = field_parse("4"), K2 = field_parse("16");
  auto s = random_semiaffine(rng, K, K2, 2, 3);
  auto s2 = semiaffine_from_json(Json::parse(semiaffine_to_json(s).dump()));
  CHECK(s2.differential.matrix == s.differential.matrix);
  CHECK(s2.sigma() == s.sigma());
  CHECK(s2.translation == s.translation);
  auto d = random_fractional(rng, K, K2, 2, 2);
  auto d2 = fractional_from_json(fractional_to_json(d));
  CHECK(d2.psi.matrix == d.psi.matrix);
  CHECK(d2.omega.matrix == d.omega.matrix);
  auto lin = semilinear_from_json(Json::parse(R"({"matrix":[[1,2],[0,1]],"source":"5"})"));
  CHECK(lin.sigma.is_identity());
  CHECK(lin.matrix.field()->order() == 5);
}

TEST_CASE("malformed input is rejected") {
  CHECK(kind_of([] { geometry_from_json(Json::parse(R"({"kind":"affine","q":6,"dim":2})")); }) ==
        ErrorKind::NotPrimePower);
  CHECK(kind_of([] { geometry_from_json(Json::parse(R"({"kind":"sphere"})")); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { geometry_from_json(Json::parse(R"({"kind":"affine","q":3})")); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { semilinear_from_json(Json::parse(R"({"matrix":[[1,7]],"source":"5"})")); }) ==
        ErrorKind::InvalidInput);
  CHECK(kind_of([] { semilinear_from_json(Json::parse(R"({"matrix":[[1],[2,3]],"source":"5"})")); }) ==
        ErrorKind::InvalidInput);
  const char* short_table =
      R"({"domain":{"kind":"projective","q":2,"dim":1},"codomain":{"kind":"projective","q":2,"dim":1},"images":[0]})";
  CHECK(kind_of([&] { map_from_json(Json::parse(short_table)); }) == ErrorKind::UnknownPoint);
  CHECK(kind_of([] { synthetic_from_json(Json::parse(R"({"points":2,"lines":[[0,5]],"parallel_class":[0]})")); }) ==
        ErrorKind::UnknownPoint);
}

TEST_CASE("synthetic incidence round trip") {
  auto s = synthetic_from_affine(*affine_space(field_parse("3"), 2));
  auto t = synthetic_from_json(synthetic_to_json(s));
  CHECK(t.lines == s.lines);
  CHECK(t.parallel_class == s.parallel_class);
  CHECK(synthetic_affine_check(t).all_pass());
}

TEST_CASE("reports") {
  auto rep = make_report(Json{{"q", "2"}}, axiom_report_to_json(check_axioms(*projective_space(field_parse("2"), 2))));
  CHECK(rep.begin().key() == "tool");
  CHECK(rep["tool"] == "geomkit");
  CHECK(rep["version"] == GEOMKIT_VERSION);
  CHECK(rep["result"]["all_pass"] == true);
  auto text = render_text(rep);
  CHECK(text.find("tool: \"geomkit\"") != std::string::npos);
  CHECK(text.find("all_pass: true") != std::string::npos);

  auto o = counterexample_octagon(7);
  auto ej = extension_to_json(o.extension);
  CHECK(ej["success"] == false);
  REQUIRE(ej.contains("witness"));
  CHECK(ej["witness"]["direction_coords"][0] == 0);
  CHECK_FALSE(ej["witness"]["reason"].get<std::string>().empty());

  auto mr = morphism_report_to_json(is_morphism(constant_map(projective_space(field_parse("2"), 1),
                                                             projective_space(field_parse("2"), 1), 0)));
  CHECK(mr["is_morphism"] == true);
  CHECK_FALSE(mr.contains("witness"));
}
