#include <doctest.h>

#include <set>

#include "generators.hpp"
#include "geomkit/error.hpp"

using namespace geomkit;

namespace {

ErrorKind kind_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const GeomError& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("affine flats and parallelism") {
  auto A = affine_space(field_parse("3"), 3);
  PointId o = A->point_of(Vec{0, 0, 0}), a = A->point_of(Vec{1, 2, 0}), b = A->point_of(Vec{0, 1, 1});
  PointId t = A->point_of(Vec{2, 2, 2});
  PointSet l1 = A->flat(A->line_through(o, a));
  PointSet l2 = A->flat(A->line_through(t, A->affine_add(t, a)));
  PointSet l3 = A->flat(A->line_through(o, b));
  CHECK(parallel(*A, l1, l2));
  CHECK_FALSE(parallel(*A, l1, l3));
  auto f = affine_flat(*A, l1);
  CHECK(f.dimension() == 1);
  CHECK(f.direction.row(0) == Vec{1, 2, 0});
  CHECK(kind_of([&] { affine_flat(*A, A->empty_set()); }) == ErrorKind::EmptyFlat);
  CHECK(kind_of([&] { affine_flat(*A, to_set(A->size(), std::vector<PointId>{o, a})); }) == ErrorKind::NotAFlat);
  // Each parallel class of lines partitions the space.
  std::size_t in_class = 0;
  for (FlatId l : A->flats_of_dim(1)) in_class += parallel(*A, l1, A->flat(l));
  CHECK(in_class == 9);
}

TEST_CASE("semiaffine maps decompose and rebuild") {
  auto rng = testgen::rng_for(21);
  struct Pair {
    const char *k, *k2;
    int n, n2;
  };
  for (auto [k, k2, n, n2] : {Pair{"5", "5", 2, 2}, Pair{"4", "4", 2, 3}, Pair{"2", "4", 2, 2}, Pair{"9", "9", 2, 2},
                              Pair{"3", "3", 3, 2}}) {
    auto K = field_parse(k), K2 = field_parse(k2);
    auto A = affine_space(K, n), B = affine_space(K2, n2);
    for (int trial = 0; trial < 15; ++trial) {
      auto d = random_semiaffine(rng, K, K2, n, n2);
      auto f = semiaffine_map(A, B, d);
      CHECK(is_morphism(f).is_morphism);
      auto rep = is_parallel_morphism(f);
      CHECK(rep.is_parallel);
      CHECK(rep.oracle_agrees.value_or(true));
      auto e = semiaffine_extract(f);
      CHECK(semiaffine_map(A, B, e).images == f.images);
      CHECK(e.translation == d.translation);
      if (K->degree() == 1) CHECK(e.differential.matrix == d.differential.matrix);
    }
  }
}

TEST_CASE("extraction errors") {
  auto A = affine_space(field_parse("3"), 2);
  auto swap = identity_map(A);
  std::swap(swap.images[1], swap.images[2]);
  CHECK(kind_of([&] { semiaffine_extract(swap); }) == ErrorKind::NotSemiaffine);
  CHECK_FALSE(is_parallel_morphism(swap).is_parallel);
  CHECK_FALSE(is_parallel_morphism_raw(swap));
  CHECK(kind_of([&] { semiaffine_extract(constant_map(A, A, 3)); }) == ErrorKind::DegenerateImage);
}

TEST_CASE("parallel check agrees with the quadruple definition on random maps") {
  auto rng = testgen::rng_for(22);
  auto A = affine_space(field_parse("3"), 2), B = affine_space(field_parse("2"), 2);
  for (int trial = 0; trial < 200; ++trial) {
    auto f = trial % 2 ? testgen::random_map(rng, A, B) : testgen::small_image_map(rng, A, A, 2);
    auto rep = is_parallel_morphism(f);
    CHECK(rep.is_parallel == is_parallel_morphism_raw(f));
  }
}

TEST_CASE("affine verifier on small planes") {
  auto A2 = affine_space(field_parse("2"), 2);
  auto r = ft_affine_verify(A2, A2);
  CHECK(r.sets_equal);
  CHECK(r.constructed == 24);
  auto A4 = affine_space(field_parse("4"), 2);
  auto cross = ft_affine_verify(A2, A4);
  CHECK(cross.sets_equal);
}

TEST_CASE("classical check on bijections") {
  auto rng = testgen::rng_for(23);
  auto K = field_parse("4");
  auto A = affine_space(K, 2);
  for (int trial = 0; trial < 10; ++trial) {
    SemiaffineDecomposition d{SemilinearMap{random_invertible(rng, K, 2), random_field_morphism(rng, K, K)},
                              testgen::random_vec(rng, *K, 2)};
    auto rep = classical_ft_check(semiaffine_map(A, A, d));
    CHECK(rep.collineation);
    CHECK(rep.semiaffinity);
    CHECK(rep.agree);
  }
  auto swap = identity_map(A);
  std::swap(swap.images[1], swap.images[2]);
  auto rep = classical_ft_check(swap);
  CHECK_FALSE(rep.collineation);
  CHECK_FALSE(rep.semiaffinity);
  CHECK(rep.agree);
  auto A2 = affine_space(field_parse("2"), 2);
  CHECK(kind_of([&] { classical_ft_check(identity_map(A2)); }) == ErrorKind::HypothesisViolated);
}

TEST_CASE("line-closed sets through the origin are subspaces") {
  auto A = affine_space(field_parse("3"), 3);
  auto rng = testgen::rng_for(24);
  for (int trial = 0; trial < 50; ++trial) {
    PointSet W = testgen::random_subset(rng, A->size(), 0.15);
    W.set(0);
    auto rep = subspace_criterion(*A, W);
    CHECK(rep.line_closed == rep.vector_subspace);
  }
  for (FlatId f : A->flats_of_dim(2)) {
    if (!A->flat(f).test(0)) continue;
    auto rep = subspace_criterion(*A, A->flat(f));
    CHECK(rep.line_closed);
    CHECK(rep.vector_subspace);
  }
  auto A2 = affine_space(field_parse("2"), 2);
  CHECK(kind_of([&] { subspace_criterion(*A2, A2->full_set()); }) == ErrorKind::FieldTooSmall);
}

TEST_CASE("synthetic affine axioms") {
  for (const char* q : {"2", "3", "4"}) {
    auto s = synthetic_from_affine(*affine_space(field_parse(q), 2));
    CHECK(synthetic_affine_check(s).all_pass());
  }
  auto s = synthetic_from_affine(*affine_space(field_parse("3"), 2));
  s.lines.pop_back();
  s.parallel_class.pop_back();
  CHECK_FALSE(synthetic_affine_check(s).all_pass());
  auto t = synthetic_from_affine(*affine_space(field_parse("3"), 2));
  std::swap(t.parallel_class.front(), t.parallel_class.back());
  CHECK_FALSE(synthetic_affine_check(t).all_pass());
}

TEST_CASE("affine space axioms on AG(2,3)") {
  auto A = affine_space(field_parse("3"), 2);
  const std::size_t n = A->size();
  bool ok = true;
  for (PointId p = 0; p < n; ++p)
    for (PointId v = 0; v < n; ++v) {
      ok &= (A->affine_add(p, v) == p) == (v == 0);
      for (PointId w = 0; w < n; ++w) ok &= A->affine_add(A->affine_add(p, v), w) == A->affine_add(p, A->affine_add(v, w));
    }
  for (PointId p = 0; p < n; ++p)
    for (PointId q = 0; q < n; ++q) {
      std::size_t diffs = 0;
      for (PointId v = 0; v < n; ++v) diffs += A->affine_add(p, v) == q;
      ok &= diffs == 1;
    }
  CHECK(ok);
}

TEST_CASE("parallelism examples and equivalence") {
  auto A = affine_space(field_parse("3"), 2);
  auto pts = [&](std::vector<Vec> vs) {
    PointSet s(A->size());
    for (const auto& v : vs) s.set(A->point_of(v));
    return s;
  };
  PointSet x0 = pts({{0, 0}, {1, 0}, {2, 0}}), x1 = pts({{0, 1}, {1, 1}, {2, 1}}), y0 = pts({{0, 0}, {0, 1}, {0, 2}});
  CHECK(parallel(*A, x0, x1));
  CHECK(parallel(*A, x0, x0));
  CHECK_FALSE(parallel(*A, x0, y0));
  // Points are parallel to points, never to lines.
  CHECK(parallel(*A, pts({{1, 1}}), pts({{2, 0}})));
  CHECK_FALSE(parallel(*A, pts({{1, 1}}), x0));
  const auto& lines = A->flats_of_dim(1);
  for (FlatId a : lines)
    for (FlatId b : lines) {
      CHECK(parallel(*A, A->flat(a), A->flat(b)) == parallel(*A, A->flat(b), A->flat(a)));
      for (FlatId c : lines)
        if (parallel(*A, A->flat(a), A->flat(b)) && parallel(*A, A->flat(b), A->flat(c)))
          CHECK(parallel(*A, A->flat(a), A->flat(c)));
    }
}

TEST_CASE("translations and semiaffine maps are parallel morphisms") {
  auto A = affine_space(field_parse("3"), 2);
  for (PointId a = 0; a < A->size(); ++a) {
    GeoMap t{A, A, {}};
    for (PointId x = 0; x < A->size(); ++x) t.images.push_back(A->affine_add(x, a));
    CHECK(is_parallel_morphism(t).is_parallel);
  }
  auto K = A->field();
  auto id = field_identity(K);
  std::size_t all = 0, parallel_ok = 0;
  for_each_matrix(2, 2, K, [&](const Matrix& M) {
    for (PointId a = 0; a < A->size(); ++a) {
      SemiaffineDecomposition d{SemilinearMap{M, id}, A->coords(a)};
      auto f = semiaffine_map(A, A, d);
      ++all;
      parallel_ok += is_parallel_morphism(f).is_parallel;
      // phi(p + v) = phi(p) + dphi(v)
      for (PointId p = 0; p < A->size(); p += 4)
        for (PointId v = 0; v < A->size(); ++v)
          CHECK(f(A->affine_add(p, v)) == A->affine_add(f(p), A->point_of(d.differential(A->coords(v)))));
    }
    return true;
  });
  CHECK(all == 81 * 9);
  CHECK(parallel_ok == all);
}

TEST_CASE("enumerated parallel morphisms of AG(2,3) extract exactly") {
  auto A = affine_space(field_parse("3"), 2);
  auto maps = enumerate_morphisms(A, A, MorphismFilter::ImageNotInLine);
  std::size_t parallel_count = 0;
  for (const auto& f : maps) {
    if (!is_parallel_morphism(f).is_parallel) continue;
    ++parallel_count;
    // On each line: constant or injective.
    for (FlatId l : A->flats_of_dim(1)) {
      std::set<PointId> img;
      for (PointId x : A->flat_points(l)) img.insert(f(x));
      CHECK((img.size() == 1 || img.size() == 3));
    }
    auto d = semiaffine_extract(f);
    auto again = semiaffine_extract(f);
    CHECK(d.differential.matrix == again.differential.matrix);
    CHECK(d.sigma().is_identity());
    CHECK(semiaffine_map(A, A, d).images == f.images);
  }
  CHECK(parallel_count == 432);
}

TEST_CASE("extraction examples") {
  auto K3 = field_parse("3");
  auto A3 = affine_space(K3, 2);
  SemiaffineDecomposition d{SemilinearMap{Matrix::from_rows(K3, {{2, 1}, {0, 1}}), field_identity(K3)}, {1, 2}};
  auto e = semiaffine_extract(semiaffine_map(A3, A3, d));
  CHECK(e.differential.matrix == d.differential.matrix);
  CHECK(e.translation == d.translation);
  CHECK(e.sigma().is_identity());

  auto K4 = field_parse("4");
  auto A4 = affine_space(K4, 2);
  GeoMap frob{A4, A4, {}};
  for (PointId x = 0; x < A4->size(); ++x) {
    Vec v = A4->coords(x);
    frob.images.push_back(A4->point_of(Vec{K4->mul(v[0], v[0]), K4->mul(v[1], v[1])}));
  }
  auto ef = semiaffine_extract(frob);
  CHECK(ef.differential.matrix == Matrix::identity(K4, 2));
  CHECK(ef.sigma().frobenius_index() == 1);
  CHECK(is_zero(ef.translation));
  auto cf = classical_ft_check(frob);
  CHECK(cf.collineation);
  CHECK(cf.semiaffinity);

  GeoMap sq{A3, A3, {}};
  for (PointId x = 0; x < A3->size(); ++x) {
    Vec v = A3->coords(x);
    sq.images.push_back(A3->point_of(Vec{K3->mul(v[0], v[0]), v[1]}));
  }
  CHECK(kind_of([&] { semiaffine_extract(sq); }) == ErrorKind::NotSemiaffine);
  auto pr = is_parallel_morphism(sq);
  CHECK_FALSE(pr.is_parallel);
  CHECK(pr.witness.size() == 4);
}

TEST_CASE("affine verifier with no field morphism") {
  auto r = ft_affine_verify(affine_space(field_parse("2"), 3), affine_space(field_parse("7"), 2));
  CHECK(r.sets_equal);
  CHECK(r.enumerated == 0);
  CHECK(r.constructed == 0);
}

TEST_CASE("subspace criterion examples and exhaustive agreement on GF(3)^2") {
  auto A = affine_space(field_parse("3"), 2);
  auto pts = [&](std::vector<Vec> vs) {
    PointSet s(A->size());
    for (const auto& v : vs) s.set(A->point_of(v));
    return s;
  };
  auto axis = subspace_criterion(*A, pts({{0, 0}, {1, 0}, {2, 0}}));
  CHECK(axis.line_closed);
  CHECK(axis.vector_subspace);
  auto pair = subspace_criterion(*A, pts({{0, 0}, {1, 0}}));
  CHECK_FALSE(pair.line_closed);
  CHECK_FALSE(pair.vector_subspace);
  std::size_t subspaces = 0;
  for (std::uint32_t mask = 0; mask < 512; ++mask) {
    PointSet W(9, mask);
    if (!W.test(0)) continue;
    auto rep = subspace_criterion(*A, W);
    CHECK(rep.line_closed == rep.vector_subspace);
    subspaces += rep.vector_subspace;
  }
  CHECK(subspaces == 1 + 4 + 1);
}

TEST_CASE("Fano lines with trivial parallelism fail A3") {
  auto F = projective_space(field_parse("2"), 2);
  SyntheticIncidence s;
  for (PointId x = 0; x < F->size(); ++x) s.labels.push_back(std::to_string(x));
  int cls = 0;
  for (FlatId l : F->flats_of_dim(1)) {
    s.lines.push_back(F->flat_points(l));
    s.parallel_class.push_back(cls++);
  }
  auto rep = synthetic_affine_check(s);
  REQUIRE(rep.find("A3"));
  CHECK_FALSE(rep.find("A3")->pass);
  CHECK_FALSE(rep.find("A3")->witness.empty());

  auto t = synthetic_from_affine(*affine_space(field_parse("3"), 2));
  t.lines.erase(t.lines.begin());
  t.parallel_class.erase(t.parallel_class.begin());
  CHECK_FALSE(synthetic_affine_check(t).find("A3")->pass);
}
