#include "geomkit/random.hpp"

namespace geomkit {

Elem random_elem(Rng& rng, const FiniteField& K) {
  return std::uniform_int_distribution<Elem>(0, K.order() - 1)(rng);
}

Matrix random_matrix(Rng& rng, const Field& K, std::size_t rows, std::size_t cols) {
  Matrix m(K, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_elem(rng, *K);
  return m;
}

Matrix random_matrix_of_rank(Rng& rng, const Field& K, std::size_t rows, std::size_t cols, std::size_t min_rank) {
  while (true) {
    Matrix m = random_matrix(rng, K, rows, cols);
    if (mat_rank(m) >= min_rank) return m;
  }
}

Matrix random_invertible(Rng& rng, const Field& K, std::size_t n) { return random_matrix_of_rank(rng, K, n, n, n); }

FieldMorphism random_field_morphism(Rng& rng, const Field& K, const Field& K2) {
  auto all = field_morphisms(K, K2);
  return all.at(std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng));
}

SemiaffineDecomposition random_semiaffine(Rng& rng, const Field& K, const Field& K2, std::size_t n, std::size_t n2) {
  SemilinearMap d{random_matrix_of_rank(rng, K2, n2, n, 2), random_field_morphism(rng, K, K2)};
  Vec a(n2);
  for (auto& e : a) e = random_elem(rng, *K2);
  return {std::move(d), std::move(a)};
}

bool has_pole(const FractionalDecomposition& d, const Field& K) {
  const auto n = d.omega.matrix.cols();
  const FiniteField& K2 = *d.omega.matrix.field();
  Vec v(n, 0);
  while (true) {
    if (K2.add(1, d.omega(v)[0]) == 0) return true;
    std::size_t i = 0;
    while (i < n && v[i] == K->order() - 1) v[i++] = 0;
    if (i == n) return false;
    ++v[i];
  }
}

FractionalDecomposition random_fractional(Rng& rng, const Field& K, const Field& K2, std::size_t n, std::size_t n2,
                                          int tries) {
  const auto sigma = random_field_morphism(rng, K, K2);
  FractionalDecomposition d{SemilinearMap{random_matrix_of_rank(rng, K2, n2, n, 2), sigma},
                            SemilinearMap{Matrix(K2, 1, n), sigma}};
  for (int t = 0; t < tries; ++t) {
    FractionalDecomposition cand = d;
    cand.omega.matrix = random_matrix(rng, K2, 1, n);
    if (!has_pole(cand, K)) return cand;
  }
  return d;
}

}  // namespace geomkit
