#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "geomkit/error.hpp"

using namespace geomkit;

namespace {

const std::vector<std::uint32_t> kOrders = {2, 3, 4, 5, 7, 8, 9, 16, 25, 27};

}  // namespace

TEST_CASE("GF(4) tables match hand computation") {
  auto K = field_parse("4");
  CHECK(K->characteristic() == 2);
  CHECK(K->modulus() == std::vector<std::uint32_t>{1, 1, 1});  // x^2 + x + 1
  // Elements 0, 1, x = 2, x + 1 = 3; addition is xor of coefficient bits.
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) CHECK(K->add(a, b) == (a ^ b));
  const Elem mul[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) CHECK(K->mul(a, b) == mul[a][b]);
  CHECK(K->inv(2) == 3);
  CHECK(K->frobenius(2) == 3);
}

TEST_CASE("GF(9) arithmetic matches hand computation") {
  auto K = field_parse("3^2");
  CHECK(K->modulus() == std::vector<std::uint32_t>{1, 0, 1});  // x^2 + 1
  const Elem x = 3;
  CHECK(K->mul(x, x) == 2);           // x^2 = -1
  CHECK(K->mul(4, 4) == 6);           // (1+x)^2 = 2x
  CHECK(K->inv(x) == 6);              // x^-1 = -x
  CHECK(K->add(5, 7) == 0);           // (2+x) + (1+2x)
  CHECK(K->neg(4) == 8);              // -(1+x) = 2+2x
  CHECK(K->frobenius(x) == 6);        // x^3 = -x
  CHECK(K->pow(K->primitive(), 4) != 1);
  CHECK(K->pow(K->primitive(), 8) == 1);
}

TEST_CASE("field_parse accepts prime powers only") {
  CHECK(field_parse("2^3")->order() == 8);
  CHECK(field_parse("49")->degree() == 2);
  CHECK(field_parse("7") == field_make(7, 1));
  for (const char* bad : {"6", "1", "0", "12", "abc", "2^0"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(field_parse(bad), GeomError);
  }
  try {
    field_parse("6");
  } catch (const GeomError& e) {
    CHECK(e.kind() == ErrorKind::NotPrimePower);
  }
  CHECK_THROWS_AS(field_make(2, 20, 1024), GeomError);
}

TEST_CASE("field axioms hold exhaustively") {
  for (auto q : kOrders) {
    CAPTURE(q);
    auto F = field_parse(std::to_string(q));
    const auto& K = *F;
    bool ok = true;
    for (Elem a = 0; a < q; ++a) {
      ok &= K.add(a, 0) == a && K.mul(a, 1) == a && K.add(a, K.neg(a)) == 0;
      if (a != 0) ok &= K.mul(a, K.inv(a)) == 1;
      for (Elem b = 0; b < q; ++b) {
        ok &= K.add(a, b) == K.add(b, a) && K.mul(a, b) == K.mul(b, a);
        for (Elem c = 0; c < q; ++c) {
          ok &= K.add(K.add(a, b), c) == K.add(a, K.add(b, c));
          ok &= K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c));
          ok &= K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c));
        }
      }
    }
    CHECK(ok);
    // The primitive element has order exactly q - 1.
    std::size_t order = 1;
    for (Elem g = K.primitive(); g != 1; g = K.mul(g, K.primitive())) ++order;
    CHECK(order == q - 1);
    CHECK_THROWS_AS(K.inv(0), GeomError);
  }
}

TEST_CASE("field morphism counts and properties") {
  struct Case {
    const char *k, *k2;
    std::size_t count;
  };
  for (auto [k, k2, count] : {Case{"2", "4", 1}, Case{"4", "4", 2}, Case{"9", "9", 2}, Case{"3", "9", 1},
                              Case{"4", "16", 2}, Case{"4", "8", 0}, Case{"8", "8", 3}, Case{"5", "7", 0}}) {
    CAPTURE(k);
    CAPTURE(k2);
    auto K = field_parse(k), K2 = field_parse(k2);
    auto ms = field_morphisms(K, K2);
    REQUIRE(ms.size() == count);
    for (const auto& s : ms) {
      bool ok = s(0) == 0 && s(1) == 1;
      for (Elem a = 0; a < K->order(); ++a)
        for (Elem b = 0; b < K->order(); ++b)
          ok &= s(K->add(a, b)) == K2->add(s(a), s(b)) && s(K->mul(a, b)) == K2->mul(s(a), s(b));
      CHECK(ok);
      CHECK(field_morphism_by_name(K, K2, s.name()) == s);
    }
  }
  CHECK(field_identity(field_parse("9")).is_identity());
  CHECK_FALSE(field_morphisms(field_parse("9"), field_parse("9"))[1].is_identity());
}

TEST_CASE("matrix inverse, rank and kernel agree") {
  auto rng = testgen::rng_for(11);
  for (auto q : {2u, 3u, 4u, 5u, 9u}) {
    auto K = field_parse(std::to_string(q));
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 1 + testgen::below(rng, 4), c = 1 + testgen::below(rng, 4);
      Matrix m = random_matrix(rng, K, r, c);
      const auto rank = mat_rank(m);
      const auto ker = kernel_basis(m);
      CHECK(ker.size() == c - rank);
      for (const auto& v : ker) CHECK(is_zero(mat_vec(m, v)));
      CHECK(mat_rank(transpose(m)) == rank);
      Vec x = testgen::random_vec(rng, *K, c);
      auto sol = solve(m, mat_vec(m, x));
      REQUIRE(sol);
      CHECK(mat_vec(m, *sol) == mat_vec(m, x));
    }
    for (int trial = 0; trial < 20; ++trial) {
      Matrix a = random_invertible(rng, K, 3);
      Matrix inv = mat_inverse(a);
      CHECK(mat_mul(a, inv) == Matrix::identity(K, 3));
      CHECK(mat_mul(inv, a) == Matrix::identity(K, 3));
    }
  }
  auto K5 = field_parse("5");
  Matrix singular = Matrix::from_rows(K5, {{1, 2}, {3, 1}});  // det = 1 - 6 = 0 mod 5
  CHECK(mat_rank(singular) == 1);
  CHECK_FALSE(try_inverse(singular));
  CHECK_THROWS_AS(mat_inverse(singular), GeomError);
  CHECK_FALSE(solve(singular, Vec{1, 0}));
}

TEST_CASE("general linear group orders") {
  auto count = [](std::size_t n, const char* q) {
    std::size_t c = 0;
    for_each_invertible(n, field_parse(q), [&](const Matrix&) { return ++c, true; });
    return c;
  };
  CHECK(count(2, "2") == 6);
  CHECK(count(2, "3") == 48);
  CHECK(count(3, "2") == 168);
  CHECK(count(2, "4") == 180);
  std::size_t all = 0;
  for_each_matrix(2, 2, field_parse("3"), [&](const Matrix&) { return ++all, true; });
  CHECK(all == 81);
}

TEST_CASE("semilinear composition evaluates pointwise") {
  auto rng = testgen::rng_for(5);
  auto K4 = field_parse("4"), K16 = field_parse("16");
  for (int trial = 0; trial < 50; ++trial) {
    SemilinearMap f{random_matrix(rng, K16, 3, 2), random_field_morphism(rng, K4, K16)};
    SemilinearMap g{random_matrix(rng, K16, 2, 3), random_field_morphism(rng, K16, K16)};
    auto gf = g.after(f);
    CHECK(gf.sigma.source() == K4);
    for (int i = 0; i < 5; ++i) {
      Vec v = testgen::random_vec(rng, *K4, 2);
      CHECK(gf(v) == g(f(v)));
    }
    // semilinearity: f(t v) = sigma(t) f(v)
    Elem t = random_elem(rng, *K4);
    Vec v = testgen::random_vec(rng, *K4, 2);
    CHECK(f(vec_scale(*K4, t, v)) == vec_scale(*K16, f.sigma(t), f(v)));
  }
}

TEST_CASE("proportional semilinear maps") {
  auto K9 = field_parse("9");
  auto sigmas = field_morphisms(K9, K9);
  SemilinearMap a{Matrix::from_rows(K9, {{1, 3}, {0, 4}}), sigmas[0]};
  SemilinearMap b{mat_scale(5, a.matrix), sigmas[0]};
  SemilinearMap c{a.matrix, sigmas[1]};
  SemilinearMap d{Matrix::from_rows(K9, {{1, 3}, {0, 5}}), sigmas[0]};
  CHECK(proportional(a, b));
  CHECK_FALSE(proportional(a, c));
  CHECK_FALSE(proportional(a, d));
  CHECK_FALSE(proportional(a, SemilinearMap{mat_scale(0, a.matrix), sigmas[0]}));
}

TEST_CASE("projective normalization and codes") {
  auto K5 = field_parse("5");
  CHECK(normalize_projective(*K5, Vec{0, 3, 1}) == Vec{0, 1, 2});
  CHECK(normalize_projective(*K5, Vec{0, 0}) == Vec{0, 0});
  CHECK(vec_code(Vec{1, 2, 3}, 5) == 25 + 10 + 3);
}

TEST_CASE("small field constructions") {
  auto F2 = field_make(2, 1);
  CHECK(F2->order() == 2);
  auto F9 = field_make(3, 2);
  CHECK(F9->order() == 9);
  CHECK(F9->characteristic() == 3);
  try {
    field_make(6, 1);
    FAIL("expected NotPrimePower");
  } catch (const GeomError& e) {
    CHECK(e.kind() == ErrorKind::NotPrimePower);
  }
  try {
    field_make(2, 14);
    FAIL("expected BoundExceeded");
  } catch (const GeomError& e) {
    CHECK(e.kind() == ErrorKind::BoundExceeded);
  }
}

TEST_CASE("inverses exist exhaustively up to order 49") {
  for (auto q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 17u, 19u, 23u, 25u, 27u, 29u, 31u, 32u, 37u, 41u, 43u,
                 47u, 49u}) {
    auto K = field_parse(std::to_string(q));
    bool ok = true;
    for (Elem a = 1; a < q; ++a) ok &= K->mul(a, K->inv(a)) == 1 && K->inv(a) < q;
    for (Elem a = 0; a < q; ++a)
      for (Elem b = 0; b < q; ++b) ok &= K->add(a, b) < q && K->mul(a, b) < q;
    CAPTURE(q);
    CHECK(ok);
    // Frobenius is a bijection.
    std::vector<bool> hit(q);
    for (Elem a = 0; a < q; ++a) hit[K->frobenius(a)] = true;
    CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
  }
}

TEST_CASE("morphisms out of prime fields and across characteristics") {
  CHECK(field_morphisms(field_parse("3"), field_parse("7")).empty());
  for (const char* p : {"2", "3", "5", "7", "11"}) {
    auto ms = field_morphisms(field_parse(p), field_parse(p));
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].is_identity());
  }
  // Brute force every map GF(4) -> GF(4) against the ring axioms.
  auto K = field_parse("4");
  std::size_t ring_maps = 0;
  for (std::uint32_t code = 0; code < 256; ++code) {
    Elem t[4] = {code & 3, (code >> 2) & 3, (code >> 4) & 3, (code >> 6) & 3};
    bool ok = t[0] == 0 && t[1] == 1;
    for (Elem a = 0; a < 4 && ok; ++a)
      for (Elem b = 0; b < 4 && ok; ++b) ok = t[K->add(a, b)] == K->add(t[a], t[b]) && t[K->mul(a, b)] == K->mul(t[a], t[b]);
    ring_maps += ok;
  }
  CHECK(ring_maps == field_morphisms(K, K).size());
}

TEST_CASE("identity and zero matrices") {
  auto K = field_parse("2");
  auto I = Matrix::identity(K, 3);
  CHECK(mat_rank(I) == 3);
  CHECK(mat_inverse(I) == I);
  Matrix Z(K, 2, 2);
  CHECK(mat_rank(Z) == 0);
  try {
    mat_inverse(Z);
    FAIL("expected NoInverse");
  } catch (const GeomError& e) {
    CHECK(e.kind() == ErrorKind::NoInverse);
  }
  // Rank-3 count over all 512 matrices.
  std::size_t full = 0;
  for_each_matrix(3, 3, K, [&](const Matrix& m) { return full += mat_rank(m) == 3, true; });
  CHECK(full == 168);
  auto rng = testgen::rng_for(13);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix m = random_matrix(rng, field_parse("3"), 1 + testgen::below(rng, 4), 1 + testgen::below(rng, 4));
    CHECK(mat_rank(m) <= std::min(m.rows(), m.cols()));
    if (m.rows() == m.cols()) CHECK(try_inverse(m).has_value() == (mat_rank(m) == m.rows()));
  }
}

TEST_CASE("semilinear maps are additive and sigma-homogeneous exhaustively") {
  auto K4 = field_parse("4");
  auto rng = testgen::rng_for(14);
  for (const auto& sigma : field_morphisms(K4, K4)) {
    SemilinearMap f{random_matrix(rng, K4, 2, 2), sigma};
    bool ok = true;
    for (std::uint32_t a = 0; a < 16; ++a)
      for (std::uint32_t b = 0; b < 16; ++b) {
        Vec u{a / 4, a % 4}, v{b / 4, b % 4};
        ok &= f(vec_add(*K4, u, v)) == vec_add(*K4, f(u), f(v));
      }
    for (Elem t = 0; t < 4; ++t)
      for (std::uint32_t a = 0; a < 16; ++a) {
        Vec u{a / 4, a % 4};
        ok &= f(vec_scale(*K4, t, u)) == vec_scale(*K4, sigma(t), f(u));
      }
    CHECK(ok);
  }
}
