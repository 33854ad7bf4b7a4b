/// @file affine.hpp
/// Affine flats, parallelism, semiaffine maps and the affine theorem verifier.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geomkit/geometry.hpp"
#include "geomkit/morphisms.hpp"

namespace geomkit {

/// A coset p + W. The direction is stored as a reduced row echelon basis.
struct AffineFlat {
  Vec base;
  Matrix direction;

  int dimension() const { return static_cast<int>(direction.rows()); }
};

/// Throws EmptyFlat on an empty set and NotAFlat when S is not closed.
AffineFlat affine_flat(const Geometry& A, const PointSet& S);
/// Equal directions. Throws EmptyFlat for empty inputs.
bool parallel(const AffineFlat& s1, const AffineFlat& s2);
bool parallel(const Geometry& A, const PointSet& s1, const PointSet& s2);

struct ParallelReport {
  bool is_parallel = true;
  /// a, b, c, d with (a v b) parallel to (c v d) but the images not parallel.
  std::vector<PointId> witness;
  /// Set when the quadruple oracle ran (small domains only).
  std::optional<bool> oracle_agrees;
};

/// Checked per parallel class of lines. For domains of at most 49 points the
/// quadruple definition is evaluated as well.
ParallelReport is_parallel_morphism(const GeoMap& f);
/// The quadruple definition alone.
bool is_parallel_morphism_raw(const GeoMap& f);

struct SemiaffineDecomposition {
  SemilinearMap differential;
  Vec translation;

  const FieldMorphism& sigma() const { return differential.sigma; }
  Vec operator()(std::span<const Elem> v) const;
};

/// Recovers (M, sigma, a) with f(v) = M sigma(v) + a.
/// Throws DegenerateImage when the image lies in a line, NotSemiaffine otherwise.
SemiaffineDecomposition semiaffine_extract(const GeoMap& f);
/// The point map of a decomposition between the given affine spaces.
GeoMap semiaffine_map(const GeometryPtr& A, const GeometryPtr& B, const SemiaffineDecomposition& d);

/// Enumerated parallel morphisms vs constructed semiaffine maps, image not in a line.
VerificationReport ft_affine_verify(const GeometryPtr& A, const GeometryPtr& B, const SearchOptions& options = {});

struct ClassicalReport {
  bool collineation = false;
  bool semiaffinity = false;
  bool agree = false;
};

/// Bijections between affine spaces of dimension >= 2 over fields with more
/// than two elements. Throws HypothesisViolated otherwise.
ClassicalReport classical_ft_check(const GeoMap& f);

struct SubspaceReport {
  bool line_closed = false;
  bool vector_subspace = false;
};

/// W as a point set of AG(n,K) = K^n. Throws FieldTooSmall when |K| = 2.
SubspaceReport subspace_criterion(const Geometry& A, const PointSet& W);

/// Points, lines and a parallel-class id per line.
struct SyntheticIncidence {
  std::vector<std::string> labels;
  std::vector<std::vector<PointId>> lines;
  std::vector<int> parallel_class;

  std::size_t size() const { return labels.size(); }
};

SyntheticIncidence synthetic_from_affine(const Geometry& A);
/// A1 to A4, plus a consistency check of the two subspace conditions.
AxiomReport synthetic_affine_check(const SyntheticIncidence& s);

}  // namespace geomkit
