/// @file random.hpp
/// Seeded generators for matrices, semiaffine and fractional semilinear maps.
#pragma once

#include <random>

#include "geomkit/closure_ext.hpp"

namespace geomkit {

using Rng = std::mt19937_64;

Elem random_elem(Rng& rng, const FiniteField& K);
Matrix random_matrix(Rng& rng, const Field& K, std::size_t rows, std::size_t cols);
/// Uniform over matrices of rank at least min_rank, by rejection.
Matrix random_matrix_of_rank(Rng& rng, const Field& K, std::size_t rows, std::size_t cols, std::size_t min_rank);
Matrix random_invertible(Rng& rng, const Field& K, std::size_t n);
FieldMorphism random_field_morphism(Rng& rng, const Field& K, const Field& K2);

/// v -> M sigma(v) + a with rank M >= 2, so the image is not in a line.
SemiaffineDecomposition random_semiaffine(Rng& rng, const Field& K, const Field& K2, std::size_t n, std::size_t n2);

/// A pole-free fractional map K^n -> K2^n2 with rank psi >= 2. Omega is
/// redrawn while it has a pole and falls back to zero after the given tries.
FractionalDecomposition random_fractional(Rng& rng, const Field& K, const Field& K2, std::size_t n, std::size_t n2,
                                          int tries = 64);

/// Whether 1 + omega(v) vanishes for some v in K^n.
bool has_pole(const FractionalDecomposition& d, const Field& K);

}  // namespace geomkit
