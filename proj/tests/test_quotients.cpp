#include <doctest.h>

#include "generators.hpp"
#include "geomkit/error.hpp"
#include "geomkit/quotients.hpp"

using namespace geomkit;

TEST_CASE("Fano plane modulo a point is a projective line") {
  auto F = projective_space(field_parse("2"), 2);
  for (PointId e = 0; e < F->size(); ++e) {
    PointSet E(F->size());
    E.set(e);
    auto q = quotient(F, E);
    CHECK(q.quotient->size() == 3);
    CHECK(find_isomorphism(q.quotient, projective_space(field_parse("2"), 1)).has_value());
    CHECK(is_partial_morphism(q.projection).holds);
  }
}

TEST_CASE("quotient flats correspond to flats over E") {
  auto P = projective_space(field_parse("3"), 3);
  PointSet E = P->flat(P->flats_of_dim(1).front());
  auto q = quotient(P, E);
  CHECK(q.quotient->size() == 4);
  CHECK(check_axioms(*q.quotient).all_pass());
  std::size_t over = 0;
  for (FlatId f = 0; f < P->flat_count(); ++f) {
    if (!E.is_subset_of(P->flat(f))) continue;
    ++over;
    PointSet T = project_flat(*q.quotient, P->flat(f));
    CHECK(q.quotient->is_flat(T));
    CHECK(lift_flat(*q.quotient, T) == P->flat(f));
  }
  CHECK(over == q.quotient->flat_count());
  try {
    quotient(P, to_set(P->size(), std::vector<PointId>{0, 1}));
    FAIL("expected NotAFlat");
  } catch (const GeomError& e) {
    CHECK(e.kind() == ErrorKind::NotAFlat);
  }
}

TEST_CASE("projective quotient isomorphisms") {
  auto K3 = field_parse("3"), K2 = field_parse("2");
  auto r1 = quotient_projective_iso(K3, 3, {{1, 2, 0}});
  CHECK(r1.ok());
  CHECK(r1.quotient->size() == 4);
  auto r2 = quotient_projective_iso(K2, 4, {{1, 0, 1, 0}, {0, 1, 1, 1}});
  CHECK(r2.ok());
  CHECK(r2.target->size() == 3);
  auto r3 = quotient_projective_iso(K3, 3, {});
  CHECK(r3.ok());
  CHECK(r3.quotient->size() == 13);
  auto r4 = quotient_projective_iso(K3, 3, {{1, 0, 0}, {0, 1, 0}});
  CHECK(r4.ok());
  CHECK(r4.quotient->size() == 1);
  CHECK_THROWS_AS(quotient_projective_iso(K3, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), GeomError);
  CHECK_THROWS_AS(quotient_projective_iso(K3, 3, {{1, 0}}), GeomError);
}

TEST_CASE("quotient sections split the projection") {
  auto rng = testgen::rng_for(41);
  auto K = field_parse("5");
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 2 + static_cast<int>(testgen::below(rng, 3));
    Matrix W = random_matrix(rng, K, 1 + testgen::below(rng, dim - 1), dim);
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < W.rows(); ++r) rows.push_back(W.row(r));
    if (mat_rank(W) == 0) continue;
    auto s = quotient_section(K, dim, rows);
    const auto m = static_cast<std::size_t>(dim) - mat_rank(W);
    CHECK(s.gamma.rows() == m);
    CHECK(mat_mul(s.gamma, s.delta) == Matrix::identity(K, m));
    for (const auto& w : rows) CHECK(is_zero(mat_vec(s.gamma, w)));
  }
}

TEST_CASE("universal property round trips over PG(2,3)") {
  auto P = projective_space(field_parse("3"), 2);
  PointSet E(P->size());
  E.set(0);
  auto q = quotient(P, E);
  auto parts = enumerate_partial_morphisms(P, E, P);
  auto ms = enumerate_morphisms(q.quotient, P, MorphismFilter::All);
  CHECK(parts.size() == ms.size());
  std::size_t there = 0, back = 0;
  for (const auto& f : parts) there += compose(factor_through_quotient(f, q.quotient), q.projection).images == f.images;
  for (const auto& g : ms) back += factor_through_quotient(compose(g, q.projection), q.quotient).images == g.images;
  CHECK(there == parts.size());
  CHECK(back == ms.size());
  auto pr = is_partial_morphism(q.projection);
  CHECK(pr.holds);
  CHECK(pr.b1b2_agrees.value_or(false));
}

TEST_CASE("factorization preconditions") {
  auto P = projective_space(field_parse("3"), 2);
  PointSet E(P->size());
  E.set(0);
  auto q = quotient(P, E);
  auto f = q.projection;
  // Break class constancy on one class.
  for (PointId x = 1; x < P->size(); ++x)
    if (f.images[x] == 0) {
      f.images[x] = 1;
      break;
    }
  CHECK_FALSE(is_partial_morphism(f).holds);
  try {
    factor_through_quotient(f, q.quotient);
    FAIL("expected NotPartialMorphism");
  } catch (const GeomError& e) {
    CHECK(e.kind() == ErrorKind::NotPartialMorphism);
  }
  // Lines of two points need the experimental switch.
  auto A = affine_space(field_parse("2"), 2);
  PointSet e0(A->size());
  e0.set(0);
  auto qa = quotient(A, e0);
  try {
    factor_through_quotient(qa.projection, qa.quotient);
    FAIL("expected LinesTooShort");
  } catch (const GeomError& e) {
    CHECK(e.kind() == ErrorKind::LinesTooShort);
  }
  CHECK(factor_through_quotient(qa.projection, qa.quotient, true).images.size() == qa.quotient->size());
}

TEST_CASE("trivial and total quotients") {
  auto P = projective_space(field_parse("3"), 2);
  auto q0 = quotient(P, P->empty_set());
  CHECK(q0.quotient->size() == P->size());
  CHECK(same_flats(*q0.quotient, *P));
  CHECK(q0.projection.images == identity_map(P).images);
  auto f = as_partial(identity_map(P));
  CHECK(factor_through_quotient(f, q0.quotient).images == identity_map(P).images);

  auto ql = quotient(P, P->flat(P->flats_of_dim(1).front()));
  CHECK(ql.quotient->size() == 1);
  auto back = factor_through_quotient(q0.projection, q0.quotient);
  CHECK(back.images == identity_map(q0.quotient).images);
}

TEST_CASE("the projection factors as the identity") {
  auto P = projective_space(field_parse("3"), 3);
  PointSet E = P->flat(P->flats_of_dim(0).front());
  auto q = quotient(P, E);
  CHECK(factor_through_quotient(q.projection, q.quotient).images == identity_map(q.quotient).images);
}

TEST_CASE("a rank-2 map factors through the induced map on V/ker") {
  auto K = field_parse("3");
  Matrix M = Matrix::from_rows(K, {{1, 2, 0}, {0, 1, 1}, {1, 0, 1}});
  REQUIRE(mat_rank(M) == 2);
  auto ker = kernel_basis(M);
  auto iso = quotient_projective_iso(K, 3, ker);
  REQUIRE(iso.ok());
  auto f = projectivize_map(iso.space, iso.space, SemilinearMap{M, field_identity(K)});
  CHECK(f.exceptional == iso.exceptional);
  auto tilde = factor_through_quotient(f, iso.quotient);
  CHECK(is_morphism(tilde).is_morphism);
  auto sec = quotient_section(K, 3, ker);
  auto induced = projectivize_map(iso.target, iso.space, SemilinearMap{mat_mul(M, sec.delta), field_identity(K)});
  REQUIRE(induced.exceptional.none());
  for (PointId c = 0; c < iso.quotient->size(); ++c) CHECK(tilde(c) == induced.images[iso.forward(c)]);
}

TEST_CASE("quotients satisfy the axioms and the lattice correspondence") {
  for (const char* qs : {"2", "3", "4"}) {
    auto P = projective_space(field_parse(qs), 2);
    for (int d : {0, 1}) {
      PointSet E = P->flat(P->flats_of_dim(d).front());
      auto q = quotient(P, E);
      CHECK(check_axioms(*q.quotient).all_pass());
      for (FlatId f = 0; f < P->flat_count(); ++f)
        for (FlatId g = 0; g < P->flat_count(); ++g) {
          const PointSet &F = P->flat(f), &G = P->flat(g);
          if (!E.is_subset_of(F) || !E.is_subset_of(G)) continue;
          CHECK(F.is_subset_of(G) == project_flat(*q.quotient, F).is_subset_of(project_flat(*q.quotient, G)));
        }
      for (FlatId t = 0; t < q.quotient->flat_count(); ++t)
        CHECK(project_flat(*q.quotient, lift_flat(*q.quotient, q.quotient->flat(t))) == q.quotient->flat(t));
    }
  }
}

TEST_CASE("the projection does not extend over its exceptional point") {
  auto P = projective_space(field_parse("3"), 2);
  const PointId e = 0;
  PointSet E(P->size());
  E.set(e);
  auto q = quotient(P, E);
  for (PointId c = 0; c < q.quotient->size(); ++c) {
    GeoMap ext{P, q.quotient, q.projection.images};
    ext.images[e] = c;
    CHECK_FALSE(is_morphism(ext).is_morphism);
  }
  // Off E the projection is a surjective morphism and cannot raise dimension.
  auto rest = to_ids(~E);
  auto S = subgeometry(P, rest);
  GeoMap pi{S, q.quotient, {}};
  for (PointId x : rest) pi.images.push_back(q.projection.images[x]);
  auto s = check_surjective_morphism(pi);
  CHECK(s.domain_dim == 2);
  CHECK(s.codomain_dim == 1);
  CHECK(s.dimension_inequality);
}
