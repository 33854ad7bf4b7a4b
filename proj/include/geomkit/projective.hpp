/// @file projective.hpp
/// Projective morphisms induced by semilinear maps, semilinear recovery,
/// the Veblen-Young axioms and the projective theorem verifier.
#pragma once

#include <optional>
#include <vector>

#include "geomkit/geometry.hpp"
#include "geomkit/morphisms.hpp"

namespace geomkit {

/// <v> -> <Phi v> off E = P(ker Phi). Throws ZeroMap for the zero matrix.
PartialGeoMap projectivize_map(const GeometryPtr& P, const GeometryPtr& P2, const SemilinearMap& phi);

/// n+2 points of PG(n,K), every n+1 of them independent.
struct ProjFrame {
  std::vector<PointId> points;
};

/// The coordinate points e_0..e_n followed by (1,...,1).
ProjFrame standard_frame(const Geometry& P);
bool is_frame(const Geometry& P, const ProjFrame& f);

/// A semilinear model of f, scaled so the image vector of the first frame
/// point is normalized. Throws DegenerateImage when the image lies in a line
/// and NoSemilinearModel when no model exists.
SemilinearMap recover_semilinear(const GeoMap& f, const std::optional<ProjFrame>& frame = std::nullopt);

/// Enumerated morphisms vs projectivized injective semilinear maps, image not in a line.
VerificationReport ft_projective_verify(const GeometryPtr& P, const GeometryPtr& P2, const SearchOptions& options = {});

/// P1 to P3 for a point set with lines.
AxiomReport veblen_young_check(std::size_t points, const std::vector<std::vector<PointId>>& lines);

struct B1B2Report {
  bool b1 = true;
  bool b2 = true;
  /// x0, x1, x2 with x0 on x1 v x2 but f(x0) off f(x1) v f(x2).
  std::vector<PointId> b1_witness;
  /// x1, x2 whose line meets E but whose images differ.
  std::vector<PointId> b2_witness;

  bool holds() const { return b1 && b2; }
};

/// Requires a projective domain.
B1B2Report check_b1_b2(const PartialGeoMap& f);

}  // namespace geomkit
