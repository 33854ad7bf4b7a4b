// Hand-rolled generators shared by the property tests.
#pragma once

#include <random>
#include <vector>

#include "geomkit/random.hpp"

namespace geomkit::testgen {

inline Rng rng_for(std::uint64_t seed) { return Rng(seed); }

inline std::size_t below(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

inline Vec random_vec(Rng& rng, const FiniteField& K, std::size_t n) {
  Vec v(n);
  for (auto& e : v) e = random_elem(rng, K);
  return v;
}

inline Vec random_nonzero_vec(Rng& rng, const FiniteField& K, std::size_t n) {
  for (;;) {
    Vec v = random_vec(rng, K, n);
    if (!is_zero(v)) return v;
  }
}

/// Uniform point map.
inline GeoMap random_map(Rng& rng, const GeometryPtr& X, const GeometryPtr& Y) {
  GeoMap f{X, Y, std::vector<PointId>(X->size())};
  for (auto& y : f.images) y = static_cast<PointId>(below(rng, Y->size()));
  return f;
}

/// Images drawn from a small random subset of Y, so collinearity is common.
inline GeoMap small_image_map(Rng& rng, const GeometryPtr& X, const GeometryPtr& Y, std::size_t k) {
  std::vector<PointId> pool(k);
  for (auto& p : pool) p = static_cast<PointId>(below(rng, Y->size()));
  GeoMap f{X, Y, std::vector<PointId>(X->size())};
  for (auto& y : f.images) y = pool[below(rng, k)];
  return f;
}

/// A morphism with one image changed.
inline GeoMap perturb(Rng& rng, GeoMap f) {
  f.images[below(rng, f.images.size())] = static_cast<PointId>(below(rng, f.codomain->size()));
  return f;
}

/// Random subset with roughly the given density.
inline PointSet random_subset(Rng& rng, std::size_t n, double density) {
  PointSet s(n);
  std::bernoulli_distribution coin(density);
  for (std::size_t i = 0; i < n; ++i)
    if (coin(rng)) s.set(i);
  return s;
}

}  // namespace geomkit::testgen
