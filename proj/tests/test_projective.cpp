#include <doctest.h>

#include "generators.hpp"
#include "geomkit/error.hpp"
#include "geomkit/quotients.hpp"

using namespace geomkit;

TEST_CASE("projectivized linear maps") {
  auto K = field_parse("3");
  auto P = projective_space(K, 2);
  auto id = projectivize_map(P, P, SemilinearMap{Matrix::identity(K, 3), field_identity(K)});
  CHECK(id.exceptional.none());
  CHECK(id.images == identity_map(P).images);
  // Rank 2: E is the point spanned by the kernel.
  auto sing = projectivize_map(P, P, SemilinearMap{Matrix::from_rows(K, {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}),
                                                   field_identity(K)});
  CHECK(to_ids(sing.exceptional) == std::vector<PointId>{P->point_of(Vec{0, 0, 1})});
  CHECK(is_partial_morphism(sing).holds);
  CHECK(check_b1_b2(sing).holds());
  try {
    projectivize_map(P, P, SemilinearMap{Matrix(K, 3, 3), field_identity(K)});
    FAIL("expected ZeroMap");
  } catch (const GeomError& e) {
    CHECK(e.kind() == ErrorKind::ZeroMap);
  }
}

TEST_CASE("semilinear models are recovered up to scalar") {
  auto rng = testgen::rng_for(31);
  struct Pair {
    const char *k, *k2;
    int n, n2;
  };
  for (auto [k, k2, n, n2] : {Pair{"4", "4", 2, 2}, Pair{"9", "9", 2, 2}, Pair{"2", "4", 2, 2}, Pair{"3", "3", 2, 3},
                              Pair{"8", "8", 2, 2}, Pair{"5", "5", 3, 3}}) {
    auto K = field_parse(k), K2 = field_parse(k2);
    auto P = projective_space(K, n), P2 = projective_space(K2, n2);
    for (int trial = 0; trial < 8; ++trial) {
      SemilinearMap phi{random_matrix_of_rank(rng, K2, n2 + 1, n + 1, n + 1), random_field_morphism(rng, K, K2)};
      auto f = as_total(projectivize_map(P, P2, phi));
      REQUIRE(f);
      CHECK(morphism_fast(*f));
      if (P->size() <= 21) CHECK(is_morphism(*f).is_morphism);
      auto model = recover_semilinear(*f);
      CHECK(proportional(model, phi));
      CHECK(as_total(projectivize_map(P, P2, model))->images == f->images);
    }
  }
}

TEST_CASE("frames") {
  auto P = projective_space(field_parse("4"), 3);
  auto fr = standard_frame(*P);
  CHECK(fr.points.size() == 5);
  CHECK(is_frame(*P, fr));
  CHECK(P->coords(fr.points.back()) == Vec{1, 1, 1, 1});
  ProjFrame bad = fr;
  bad.points.back() = P->point_of(Vec{1, 1, 0, 0});
  CHECK_FALSE(is_frame(*P, bad));
}

TEST_CASE("recovery fails without a model") {
  auto P = projective_space(field_parse("3"), 2);
  auto swap = identity_map(P);
  std::swap(swap.images[0], swap.images[1]);
  try {
    recover_semilinear(swap);
    FAIL("expected an error");
  } catch (const GeomError& e) {
    CHECK(e.kind() == ErrorKind::NoSemilinearModel);
  }
  try {
    recover_semilinear(constant_map(P, P, 0));
    FAIL("expected an error");
  } catch (const GeomError& e) {
    CHECK(e.kind() == ErrorKind::DegenerateImage);
  }
}

TEST_CASE("projective verifier on the line and small planes") {
  auto F = projective_space(field_parse("2"), 2);
  auto r = ft_projective_verify(F, F);
  CHECK(r.sets_equal);
  CHECK(r.enumerated == 168);
  auto into4 = ft_projective_verify(F, projective_space(field_parse("4"), 2));
  CHECK(into4.sets_equal);
  CHECK(into4.enumerated == into4.constructed);
}

TEST_CASE("Veblen-Young axioms") {
  auto F = projective_space(field_parse("2"), 2);
  std::vector<std::vector<PointId>> lines;
  for (FlatId l : F->flats_of_dim(1)) lines.push_back(F->flat_points(l));
  CHECK(veblen_young_check(F->size(), lines).all_pass());
  auto A = affine_space(field_parse("3"), 2);
  std::vector<std::vector<PointId>> alines;
  for (FlatId l : A->flats_of_dim(1)) alines.push_back(A->flat_points(l));
  CHECK_FALSE(veblen_young_check(A->size(), alines).all_pass());
  auto P3 = projective_space(field_parse("3"), 3);
  std::vector<std::vector<PointId>> l3;
  for (FlatId l : P3->flats_of_dim(1)) l3.push_back(P3->flat_points(l));
  CHECK(veblen_young_check(P3->size(), l3).all_pass());
}

TEST_CASE("b1 and b2 agree with the partial-morphism definition") {
  auto rng = testgen::rng_for(32);
  auto K = field_parse("3");
  auto P = projective_space(K, 2);
  for (int trial = 0; trial < 40; ++trial) {
    SemilinearMap phi{random_matrix_of_rank(rng, K, 3, 3, 1), field_identity(K)};
    if (is_zero(phi.matrix.data())) continue;
    auto f = projectivize_map(P, P, phi);
    auto rep = is_partial_morphism(f);
    CHECK(rep.holds);
    CHECK(check_b1_b2(f).holds());
    // Move one defined image: the verdicts must still match each other.
    for (PointId x = 0; x < P->size(); ++x)
      if (f.defined(x)) {
        f.images[x] = static_cast<PointId>(testgen::below(rng, P->size()));
        break;
      }
    CHECK(is_partial_morphism(f).holds == check_b1_b2(f).holds());
  }
}

TEST_CASE("projectivization examples") {
  auto K2 = field_parse("2");
  auto F = projective_space(K2, 2);
  auto id = as_total(projectivize_map(F, F, SemilinearMap{Matrix::identity(K2, 3), field_identity(K2)}));
  REQUIRE(id);
  CHECK(recover_semilinear(*id).matrix == Matrix::identity(K2, 3));

  auto K4 = field_parse("4");
  auto P4 = projective_space(K4, 2);
  auto frob = field_morphisms(K4, K4)[1];
  auto c = as_total(projectivize_map(P4, P4, SemilinearMap{Matrix::from_rows(K4, {{1, 2, 0}, {0, 1, 3}, {0, 0, 1}}), frob}));
  REQUIRE(c);
  CHECK(is_collineation(*c));
  CHECK(recover_semilinear(*c).sigma == frob);
}

TEST_CASE("models from different frames are proportional") {
  auto rng = testgen::rng_for(33);
  auto K = field_parse("4");
  auto P = projective_space(K, 2);
  for (int trial = 0; trial < 10; ++trial) {
    SemilinearMap phi{random_invertible(rng, K, 3), random_field_morphism(rng, K, K)};
    auto f = *as_total(projectivize_map(P, P, phi));
    // Another frame: the standard one moved by a random collineation.
    auto g = *as_total(projectivize_map(P, P, SemilinearMap{random_invertible(rng, K, 3), field_identity(K)}));
    ProjFrame moved;
    for (PointId x : standard_frame(*P).points) moved.points.push_back(g(x));
    REQUIRE(is_frame(*P, moved));
    CHECK(proportional(recover_semilinear(f), recover_semilinear(f, moved)));
  }
}

TEST_CASE("projectivization respects composition where defined") {
  auto rng = testgen::rng_for(34);
  auto K = field_parse("3");
  auto P = projective_space(K, 2);
  for (int trial = 0; trial < 30; ++trial) {
    SemilinearMap a{random_matrix_of_rank(rng, K, 3, 3, 1), field_identity(K)};
    SemilinearMap b{random_matrix_of_rank(rng, K, 3, 3, 1), field_identity(K)};
    auto ba = b.after(a);
    if (is_zero(ba.matrix.data())) continue;
    auto fa = projectivize_map(P, P, a), fb = projectivize_map(P, P, b), fba = projectivize_map(P, P, ba);
    for (PointId x = 0; x < P->size(); ++x) {
      if (!fa.defined(x) || !fb.defined(fa.images[x])) continue;
      CHECK(fba.defined(x));
      CHECK(fba.images[x] == fb.images[fa.images[x]]);
    }
  }
}

TEST_CASE("point counts of projective spaces") {
  for (auto q : {2u, 3u, 4u, 5u, 7u, 8u, 9u})
    for (int n : {1, 2, 3}) {
      std::size_t expected = 0, qp = 1;
      for (int i = 0; i <= n; ++i, qp *= q) expected += qp;
      CHECK(projective_space(field_parse(std::to_string(q)), n)->size() == expected);
    }
}

TEST_CASE("projective verifier edge cases") {
  auto F = projective_space(field_parse("2"), 2);
  auto r = ft_projective_verify(F, projective_space(field_parse("2"), 1));
  CHECK(r.sets_equal);
  CHECK(r.enumerated == 0);
  CHECK(r.constructed == 0);
}

TEST_CASE("Veblen-Young on a single line") {
  CHECK(veblen_young_check(3, {{0, 1, 2}}).all_pass());
  auto A = affine_space(field_parse("3"), 2);
  std::vector<std::vector<PointId>> lines;
  for (FlatId l : A->flats_of_dim(1)) lines.push_back(A->flat_points(l));
  auto rep = veblen_young_check(A->size(), lines);
  REQUIRE(rep.find("P3"));
  CHECK_FALSE(rep.find("P3")->pass);
  CHECK_FALSE(rep.find("P3")->witness.empty());
}

TEST_CASE("b2 catches a corrupted class") {
  auto K = field_parse("3");
  auto P = projective_space(K, 2);
  auto f = projectivize_map(P, P, SemilinearMap{Matrix::from_rows(K, {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}),
                                                field_identity(K)});
  REQUIRE(check_b1_b2(f).holds());
  // Points (0,1,0) and (0,1,1) share a class through E = <(0,0,1)>.
  const PointId x = P->point_of(Vec{0, 1, 1});
  f.images[x] = P->point_of(Vec{1, 1, 1});
  auto rep = check_b1_b2(f);
  CHECK_FALSE(rep.b2);
  CHECK(rep.b2_witness.size() == 2);
  CHECK_FALSE(is_partial_morphism(f).holds);

  auto total = as_partial(identity_map(P));
  auto tr = check_b1_b2(total);
  CHECK(tr.b2);
  CHECK(tr.b1);
}
