/// @file geometry.hpp
/// Finite closure spaces and their flat lattices.
///
/// A Geometry is immutable. Its lattice of flats, the join table
/// (flat, point) -> flat and the per-flat dimensions are built lazily on
/// first use, once, and then shared read-only between threads.
#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geomkit/scalars.hpp"

namespace geomkit {

using PointId = std::uint32_t;
using PointSet = boost::dynamic_bitset<std::uint64_t>;
inline constexpr PointId kNoPoint = 0xffffffffu;
using FlatId = std::uint32_t;

std::vector<PointId> to_ids(const PointSet& s);
PointSet to_set(std::size_t n, std::span<const PointId> ids);

struct PointSetHash {
  std::size_t operator()(const PointSet& s) const;
};

enum class Backend { Explicit, Affine, Projective, Subgeometry, Truncation, Quotient };
std::string_view to_string(Backend b);

class Geometry;
using GeometryPtr = std::shared_ptr<const Geometry>;

/// Largest point count for which pairwise tables are built.
inline constexpr std::size_t kMaxTabulatedPoints = 4096;

class Geometry {
 public:
  struct Lattice;

  /// Flats are given as id lists; closure is the intersection of listed flats
  /// containing a set, together with the whole point set.
  static GeometryPtr make_explicit(std::vector<std::string> labels, std::vector<std::vector<PointId>> flats);
  /// AG(n, K): points are K^n in lexicographic order.
  static GeometryPtr make_affine(Field K, int n);
  /// PG(n, K): points are normalized vectors of K^{n+1} in lexicographic order.
  static GeometryPtr make_projective(Field K, int n);
  /// Subgeometry on a subset, with flats F intersected with the subset.
  static GeometryPtr make_subgeometry(GeometryPtr parent, std::span<const PointId> subset);
  /// Same points; flats of dimension < m plus the whole set. Requires 0 <= m < dim.
  static GeometryPtr make_truncation(GeometryPtr parent, int m);
  /// X/E for a flat E of the parent. Points are classes x v E, ordered by
  /// their minimum parent id.
  static GeometryPtr make_quotient(GeometryPtr parent, const PointSet& E);

  ~Geometry();
  Geometry(const Geometry&) = delete;
  Geometry& operator=(const Geometry&) = delete;

  std::size_t size() const { return n_; }
  Backend backend() const { return backend_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(PointId x) const { return labels_.at(x); }
  PointSet empty_set() const { return PointSet(n_); }
  PointSet full_set() const;
  void require_point(PointId x) const;

  // Algebraic backends.
  bool is_algebraic() const { return backend_ == Backend::Affine || backend_ == Backend::Projective; }
  const Field& field() const { return field_; }
  /// n for AG(n,q) and PG(n,q).
  int space_dim() const { return space_dim_; }
  /// Affine: n coordinates. Projective: normalized n+1 coordinates.
  const Vec& coords(PointId x) const { return coords_.at(x); }
  /// Affine: exact lookup. Projective: normalizes first; throws on the zero vector.
  PointId point_of(std::span<const Elem> v) const;
  /// Affine sum of point vectors (the zero vector is point 0).
  PointId affine_add(PointId a, PointId b) const;
  PointId affine_scale(Elem t, PointId a) const;

  // Derived backends.
  const GeometryPtr& parent() const { return parent_; }
  /// Subgeometry: local id -> parent id. Quotient: class representative (minimum parent id).
  const std::vector<PointId>& parent_ids() const { return parent_ids_; }
  /// Quotient: parent id -> class, kNoPoint on E.
  const std::vector<PointId>& class_of() const { return class_of_; }
  /// Quotient: the exceptional flat in the parent. Explicit: unused.
  const PointSet& exceptional() const { return exceptional_; }
  int truncation_rank() const { return trunc_m_; }
  const std::vector<PointSet>& declared_flats() const { return declared_; }

  // Closure.
  PointSet closure(const PointSet& A) const;
  PointSet closure(std::span<const PointId> A) const;
  bool is_flat(const PointSet& A) const;
  int dimension() const;

  // Lattice access. Flats are sorted by dimension, then by sorted id list.
  std::size_t flat_count() const;
  const PointSet& flat(FlatId f) const;
  const std::vector<PointId>& flat_points(FlatId f) const;
  int flat_dim(FlatId f) const;
  const std::vector<PointId>& flat_basis(FlatId f) const;
  std::optional<FlatId> flat_index(const PointSet& s) const;
  FlatId join_index(FlatId f, PointId x) const;
  FlatId closure_index(std::span<const PointId> A) const;
  FlatId empty_closure_index() const;
  FlatId whole_index() const;
  /// Flat indices of all flats of the given dimension.
  const std::vector<FlatId>& flats_of_dim(int d) const;
  /// The line through two distinct points (undefined for a == b).
  FlatId line_through(PointId a, PointId b) const;

  /// Cached exhaustive answers; see generated_by_lines() below.
  bool lines_generate() const;
  bool lines_and_planes_generate() const;

  /// Lattice if already built, else nullptr.
  const Lattice* lattice_if_built() const;

 private:
  Geometry() = default;
  const Lattice& lattice() const;
  void build_lattice() const;
  PointSet raw_closure(const PointSet& A) const;
  PointSet raw_join(const PointSet& F, PointId x) const;
  void build_projective_lines();

  Backend backend_ = Backend::Explicit;
  std::size_t n_ = 0;
  std::vector<std::string> labels_;

  Field field_;
  int space_dim_ = 0;
  std::vector<Vec> coords_;
  std::vector<PointId> code_to_id_;
  std::vector<PointId> add_;    // n*n, affine
  std::vector<PointId> scale_;  // q*n, affine
  std::vector<std::uint32_t> pair_line_;  // n*n, projective
  std::vector<PointSet> proj_lines_;

  GeometryPtr parent_;
  std::vector<PointId> parent_ids_;
  std::vector<PointId> class_of_;
  PointSet exceptional_;
  FlatId exceptional_flat_ = 0;
  int trunc_m_ = -1;
  std::vector<PointSet> declared_;

  mutable std::once_flag lattice_once_;
  mutable std::unique_ptr<Lattice> lattice_;
  mutable std::once_flag lines_once_, lp_once_;
  mutable bool lines_generate_ = false, lp_generate_ = false;
};

/// A flat together with its cached dimension and a basis.
struct Flat {
  std::vector<PointId> points;
  std::vector<PointId> basis;
  int dimension = -1;
  PointSet set;
};

Flat make_flat(const Geometry& g, const PointSet& closed);
Flat closure(const Geometry& g, std::span<const PointId> A);
bool independent(const Geometry& g, std::span<const PointId> A);
/// Greedy basis, extended from the empty set in increasing id order.
std::vector<PointId> basis_of(const Geometry& g, const PointSet& flat);
/// |basis| - 1.
int dimension(const Geometry& g, const PointSet& flat);
Flat join(const Geometry& g, const PointSet& f1, const PointSet& f2);
Flat meet(const Geometry& g, const PointSet& f1, const PointSet& f2);

/// True iff the flats coincide with the sets closed under joining lines.
bool generated_by_lines(const Geometry& g);
/// Same, with closure under lines and 3-point planes.
bool generated_by_lines_and_planes(const Geometry& g);
/// The smallest superset of A containing every line through two of its points
/// (and, when with_planes, every plane through three).
PointSet line_closure(const Geometry& g, const PointSet& A, bool with_planes);

GeometryPtr truncate(const GeometryPtr& g, int m);
GeometryPtr subgeometry(const GeometryPtr& g, std::span<const PointId> A);
GeometryPtr affine_space(Field K, int n);
GeometryPtr projective_space(Field K, int n);

/// Flat-for-flat equality on the same number of points.
bool same_flats(const Geometry& a, const Geometry& b);

struct AxiomResult {
  std::string axiom;
  bool pass = true;
  std::string detail;
  /// Groups of ids forming the witness, e.g. {S, {x}, {y}} for exchange.
  std::vector<std::vector<PointId>> witness;
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool all_pass() const;
  const AxiomResult* find(std::string_view axiom) const;
};

/// G1 to G4 with a witness for the first failure of each axiom.
AxiomReport check_axioms(const Geometry& g);

}  // namespace geomkit
