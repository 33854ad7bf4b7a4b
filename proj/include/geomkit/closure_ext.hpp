/// @file closure_ext.hpp
/// Projective closure of an affine space, extension of morphisms A -> P' to
/// the closure, fractional semilinear maps and the two non-extendable examples.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "geomkit/affine.hpp"
#include "geomkit/projective.hpp"

namespace geomkit {

/// E = K p0 + V with j(x) = (1, x - p0).
struct VectorialExtension {
  GeometryPtr affine;
  PointId origin = 0;
  std::vector<Vec> embedding;
};

/// Throws InvalidInput unless A is an affine space.
VectorialExtension vectorial_extension(const GeometryPtr& A, PointId origin = 0);

/// The linear Phi with b.j = Phi after a.j, when one exists.
std::optional<Matrix> extension_isomorphism(const VectorialExtension& a, const VectorialExtension& b);

/// PG(n,K) over K x K^n: x -> <(1,x)>, directions <v> -> <(0,v)>.
struct ProjectiveClosure {
  GeometryPtr affine;
  GeometryPtr projective;
  PointSet hyperplane;
  std::vector<PointId> embed;      // affine id -> projective id
  std::vector<PointId> affine_of;  // projective id -> affine id or kNoPoint
};

ProjectiveClosure projective_closure(const GeometryPtr& A);

/// <(0,v)> for a direction v of L. Throws NotALine.
PointId point_at_infinity(const ProjectiveClosure& C, const PointSet& L);

struct ExtensionWitness {
  /// Point of H whose parallel family fails.
  PointId direction = kNoPoint;
  /// Affine lines of the family, as affine ids.
  std::vector<std::vector<PointId>> lines;
  std::string reason;
};

struct ExtensionResult {
  ProjectiveClosure closure;
  /// |K| >= 4, or |K| = 3 = char K'.
  bool hypothesis = false;
  std::optional<PartialGeoMap> extension;
  std::optional<ExtensionWitness> witness;
  bool exceptional_is_flat = false;
  bool restriction_ok = false;
  B1B2Report b1b2;
  /// No other value at a single point of H - E passes (b1), (b2).
  bool unique = false;

  bool success() const { return extension && exceptional_is_flat && restriction_ok && b1b2.holds(); }
};

struct ExtensionOptions {
  unsigned workers = 1;
  bool check_uniqueness = true;
};

/// Throws NotAMorphism and DegenerateImage. Runs regardless of the field hypothesis.
ExtensionResult extend_to_closure(const GeoMap& phi, const ExtensionOptions& options = {});

/// The point map A -> P' of a map into the affine part of P'.
GeoMap into_closure(const GeoMap& phi, const ProjectiveClosure& target);

/// v -> (1 + omega(v))^-1 psi(v) with psi, omega sharing sigma.
struct FractionalDecomposition {
  SemilinearMap psi;
  /// A 1 x n matrix.
  SemilinearMap omega;

  const FieldMorphism& sigma() const { return psi.sigma; }
};

/// Requires affine spaces, phi(0) = 0 and an image not in a line (InvalidInput,
/// DegenerateImage). Throws HypothesisViolated and DecompositionFailed.
FractionalDecomposition fractional_decompose(const GeoMap& phi, const ExtensionOptions& options = {});

/// Throws PoleHit when 1 + omega(v) = 0.
Vec eval_fractional(const FractionalDecomposition& d, std::span<const Elem> v);
/// The point map between affine spaces. Throws PoleHit.
GeoMap fractional_map(const GeometryPtr& A, const GeometryPtr& B, const FractionalDecomposition& d);
bool is_fractional_morphism(const GeometryPtr& A, const GeometryPtr& B, const FractionalDecomposition& d);

struct OctagonResult {
  GeoMap map;  // AG(3,2) -> PG(2,q)
  std::vector<PointId> conic;
  /// Three parallel domain lines whose image lines are not concurrent.
  std::array<std::vector<PointId>, 3> sides;
  bool is_morphism = false;
  ExtensionResult extension;
};

/// Octagon on x0^2 = x1 x2. Throws SelectionFailed when the conic has fewer than 8 points.
OctagonResult counterexample_octagon(std::uint32_t q);

struct HesseResult {
  GeoMap embedding;  // AG(2,3) -> PG(2,q)
  bool is_embedding = false;
  bool no_field_morphism = false;
  ExtensionResult extension;

  bool certified() const { return is_embedding && no_field_morphism && !extension.success(); }
};

/// Nine points of PG(2,q) with every joining line holding a third. Throws
/// NotFound when char q = 3 or when no configuration exists.
HesseResult counterexample_hesse(std::uint32_t q);

/// Frame coordinates of the rhombus around a square of AG(2,3) embedded in a plane.
struct Char3Report {
  /// Square A, C, B, U in cyclic order; frame A = e0, B = e1, C = e2, U = (1,1,1).
  std::array<PointId, 4> square{};
  /// Rhombus vertices (1,0,a), (0,1,b), (1,1+c,1), (1+d,1,1).
  Elem a = 0, b = 0, c = 0, d = 0;
  bool rhombus_shape = false;
  /// Frame coordinates of the meet of the images of the class of A v C.
  Vec concurrency;
  PointId concurrency_point = kNoPoint;
  bool concurrent = false;
  /// Target coordinates to frame coordinates.
  Matrix to_frame;
};

Char3Report char3_frame_coordinates(const GeoMap& phi, const std::array<PointId, 4>& square);

struct Char3Check {
  Char3Report base;
  /// (a, b, c, d) in GF(9) solving the incidence conditions with nonzero entries.
  std::vector<std::array<Elem, 4>> solutions;
  bool twist_agrees = false;
  bool symmetries_agree = false;

  bool holds() const;
};

Char3Check concurrency_char3_check();

}  // namespace geomkit
