/// @file quotients.hpp
/// Quotient geometries X/E, partial morphisms and the factorization through X/E.
#pragma once

#include <optional>
#include <vector>

#include "geomkit/geometry.hpp"
#include "geomkit/morphisms.hpp"

namespace geomkit {

struct QuotientResult {
  GeometryPtr quotient;
  /// x -> [x] off E.
  PartialGeoMap projection;
};

/// Throws NotAFlat when E is not a flat of g.
QuotientResult quotient(const GeometryPtr& g, const PointSet& E);

/// S -> S/E for a flat S containing E.
PointSet project_flat(const Geometry& Q, const PointSet& S);
/// T -> E together with every class in T.
PointSet lift_flat(const Geometry& Q, const PointSet& T);

struct PartialReport {
  bool holds = true;
  bool exceptional_is_flat = true;
  bool morphism_off_exceptional = true;
  bool class_constant = true;
  /// x1, x2 with x1 v E = x2 v E and different images.
  std::vector<PointId> witness;
  /// Projective domains: whether conditions (b1), (b2) give the same verdict.
  std::optional<bool> b1b2_agrees;
};

PartialReport is_partial_morphism(const PartialGeoMap& f);

/// The unique map on X/E with f = result after projection. Requires lines of
/// at least three points (LinesTooShort) unless experimental is set, and a
/// partial morphism (NotPartialMorphism). When quotient is null, X/E is built.
GeoMap factor_through_quotient(const PartialGeoMap& f, const GeometryPtr& quotient = nullptr,
                               bool experimental = false);

/// g after f, defined off the exceptional flat of f.
PartialGeoMap compose(const GeoMap& g, const PartialGeoMap& f);

/// Partial morphisms X -> Y with exceptional flat exactly E, by direct search.
std::vector<PartialGeoMap> enumerate_partial_morphisms(const GeometryPtr& X, const PointSet& E, const GeometryPtr& Y,
                                                       const SearchOptions& options = {});

/// Gamma: V -> V/W and a linear section Delta, with V/W coordinatized by the
/// non-pivot coordinates of the reduced basis of W.
struct QuotientSection {
  Matrix gamma;
  Matrix delta;
};

/// Throws InvalidInput unless W is a proper subspace of K^dim.
QuotientSection quotient_section(const Field& K, int dim, const std::vector<Vec>& w_basis);

struct QuotientIsoReport {
  GeometryPtr space;       // P(V)
  PointSet exceptional;    // P(W)
  GeometryPtr quotient;    // P(V)/P(W)
  GeometryPtr target;      // P(V/W)
  GeoMap forward;          // [<v>] -> <[v]>
  GeoMap backward;         // pi after delta
  bool composites_identity = false;
  bool both_morphisms = false;

  bool ok() const { return composites_identity && both_morphisms; }
};

/// P(V)/P(W) -> P(V/W) for V = K^dim and W spanned by the given rows.
QuotientIsoReport quotient_projective_iso(const Field& K, int dim, const std::vector<Vec>& w_basis);

}  // namespace geomkit
