/// @file morphisms.hpp
/// Maps between geometries and the morphism predicates.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geomkit/geometry.hpp"
#include "geomkit/search.hpp"

namespace geomkit {

struct GeoMap {
  GeometryPtr domain;
  GeometryPtr codomain;
  std::vector<PointId> images;

  PointId operator()(PointId x) const { return images[x]; }
};

/// A map defined off an exceptional flat E; images on E are kNoPoint.
struct PartialGeoMap {
  GeometryPtr domain;
  GeometryPtr codomain;
  PointSet exceptional;
  std::vector<PointId> images;

  bool defined(PointId x) const { return !exceptional.test(x); }
};

/// Throws UnknownPoint unless the table matches E and the images are valid.
void validate(const PartialGeoMap& f);
/// The same map with E empty.
PartialGeoMap as_partial(const GeoMap& f);
/// The total map when E is empty.
std::optional<GeoMap> as_total(const PartialGeoMap& f);

/// Throws UnknownPoint unless the table is total with valid images.
void validate(const GeoMap& f);
GeoMap identity_map(const GeometryPtr& X);
GeoMap constant_map(const GeometryPtr& X, const GeometryPtr& Y, PointId y);
/// g after f.
GeoMap compose(const GeoMap& g, const GeoMap& f);
bool is_injective(const GeoMap& f);
bool is_surjective(const GeoMap& f);
bool is_bijective(const GeoMap& f);
std::optional<GeoMap> inverse_map(const GeoMap& f);
PointSet image_set(const GeoMap& f);
/// Dimension of the closure of the image.
int image_dimension(const GeoMap& f);
bool image_not_in_line(const GeoMap& f);

struct CriterionVerdict {
  std::string criterion;
  bool holds;
};

struct MorphismReport {
  bool is_morphism = true;
  std::string criterion;
  /// x0 followed by x1..xr with x0 in the join of x1..xr but image(x0)
  /// outside the join of their images. Empty when is_morphism.
  std::vector<PointId> witness;
  std::vector<CriterionVerdict> verdicts;
  bool criteria_agree = true;
};

/// Every codomain flat pulls back to a flat.
bool preimage_criterion(const GeoMap& f);
/// First x0, B with x0 in cl(B) and f(x0) outside cl(f(B)), over chains B.
std::optional<std::vector<PointId>> closure_violation(const GeoMap& f);
/// Collinear triples; meaningful when the domain is generated by lines.
std::optional<std::vector<PointId>> collinear_violation(const GeoMap& f);
/// Triples and their planes; meaningful when generated by lines and planes.
std::optional<std::vector<PointId>> coplanar_violation(const GeoMap& f);

/// Evaluates the preimage criterion and the closure criterion, plus the
/// line and plane criteria when the domain qualifies, and reports whether
/// they agree. The verdict is the preimage criterion.
MorphismReport is_morphism(const GeoMap& f);
/// Fast verdict: collinear (or coplanar) criterion when applicable, else preimage.
bool morphism_fast(const GeoMap& f);

/// Preconditions: f is a morphism, else NotAMorphism.
bool is_isomorphism(const GeoMap& f);
bool is_embedding(const GeoMap& f);
bool is_collineation(const GeoMap& f);
/// Bijective with every line mapped onto a line and every line hit; no
/// morphism precondition.
bool maps_lines_onto_lines(const GeoMap& f);

struct SurjectionReport {
  int domain_dim = 0;
  int codomain_dim = 0;
  bool dimension_inequality = false;
  bool equal_dimensions = false;
  /// Set when dimensions are equal.
  std::optional<bool> isomorphism;
};

/// Requires a surjective morphism (NotSurjective, NotAMorphism).
SurjectionReport check_surjective_morphism(const GeoMap& f);

enum class MorphismFilter { All, ImageNotInLine, Bijective, Constant };
std::string_view to_string(MorphismFilter f);
MorphismFilter parse_filter(const std::string& s);

std::vector<GeoMap> enumerate_morphisms(const GeometryPtr& X, const GeometryPtr& Y, MorphismFilter filter,
                                        const SearchOptions& options = {}, SearchStats* stats = nullptr);

/// Outcome of comparing an enumerated family of maps with a constructed one.
struct VerificationReport {
  std::string theorem;
  std::string domain;
  std::string codomain;
  std::size_t enumerated = 0;
  std::size_t constructed = 0;
  bool sets_equal = false;
  /// Up to ten maps found by only one side.
  std::vector<std::vector<PointId>> only_enumerated;
  std::vector<std::vector<PointId>> only_constructed;
  SearchStats search;
  double construct_seconds = 0.0;
};

/// Fills counts, equality and difference samples from two sorted, duplicate-free lists.
void compare_families(VerificationReport& r, const std::vector<std::vector<PointId>>& enumerated,
                      const std::vector<std::vector<PointId>>& constructed);

/// "AG(n,q)" or "PG(n,q)" style name for algebraic spaces, else the backend name.
std::string describe(const Geometry& g);

/// An isomorphism X -> Y if one exists.
std::optional<GeoMap> find_isomorphism(const GeometryPtr& X, const GeometryPtr& Y, const SearchOptions& options = {});

}  // namespace geomkit
