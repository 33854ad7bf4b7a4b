/// @file search.hpp
/// Backtracking search for point maps X -> X' subject to incidence constraints.
///
/// Points of X are assigned images one at a time. Each constraint is checked
/// as soon as its last point receives an image. The first assigned point's
/// candidate images are split between worker threads; the merged result is
/// sorted, so output does not depend on the worker count.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "geomkit/geometry.hpp"

namespace geomkit {

struct SearchOptions {
  std::uint64_t budget = 1'000'000'000;  // node expansions
  unsigned workers = 1;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

enum class ConstraintKind : std::uint8_t {
  /// image(target) lies in the closure of the images of points.
  Closure,
  /// image(points[0]) == image(points[1]).
  Equal,
  /// (image a v image b) parallel to (image c v image d) in an affine codomain.
  ParallelPairs,
};

struct Constraint {
  ConstraintKind kind;
  PointId target = kNoPoint;
  std::vector<PointId> points;
};

struct SearchProblem {
  std::size_t domain_size = 0;
  GeometryPtr codomain;
  std::vector<Constraint> constraints;
  bool injective = false;
  /// Per domain point; an empty list means every codomain point.
  std::vector<std::vector<PointId>> candidates;
  /// Called on each complete assignment (indexed by domain id).
  std::function<bool(std::span<const PointId>)> accept;
};

/// All accepted assignments, lexicographically sorted.
/// Throws SearchBudgetExceeded when the node budget runs out.
std::vector<std::vector<PointId>> run_search(const SearchProblem& problem, const SearchOptions& options,
                                             SearchStats* stats = nullptr);

/// Constraints equivalent to being a morphism out of X: collinear triples when
/// X is generated by lines, plus coplanar quadruples when generated by lines
/// and planes, otherwise closure conditions over free generating chains.
std::vector<Constraint> morphism_constraints(const Geometry& X);

}  // namespace geomkit
