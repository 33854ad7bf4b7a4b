#include "geomkit/quotients.hpp"

#include "geomkit/error.hpp"
#include "geomkit/projective.hpp"

namespace geomkit {

namespace {

bool lines_have_three_points(const Geometry& X) {
  for (FlatId l : X.flats_of_dim(1))
    if (X.flat_points(l).size() < 3) return false;
  return true;
}

}  // namespace

QuotientResult quotient(const GeometryPtr& g, const PointSet& E) {
  auto Q = Geometry::make_quotient(g, E);
  PartialGeoMap pi{g, Q, E, Q->class_of()};
  return {Q, std::move(pi)};
}

PointSet project_flat(const Geometry& Q, const PointSet& S) {
  if (Q.backend() != Backend::Quotient) fail(ErrorKind::InvalidInput, "not a quotient geometry");
  PointSet T(Q.size());
  for (PointId x : to_ids(S))
    if (Q.class_of()[x] != kNoPoint) T.set(Q.class_of()[x]);
  return T;
}

PointSet lift_flat(const Geometry& Q, const PointSet& T) {
  if (Q.backend() != Backend::Quotient) fail(ErrorKind::InvalidInput, "not a quotient geometry");
  PointSet S = Q.exceptional();
  const auto& cls = Q.class_of();
  for (PointId x = 0; x < cls.size(); ++x)
    if (cls[x] != kNoPoint && T.test(cls[x])) S.set(x);
  return S;
}

PartialReport is_partial_morphism(const PartialGeoMap& f) {
  validate(f);
  const Geometry& X = *f.domain;
  PartialReport r;
  const PointSet& E = f.exceptional;
  if (!X.is_flat(E)) {
    r.exceptional_is_flat = false;
    r.holds = false;
    return r;
  }
  std::vector<PointId> off;
  for (PointId x = 0; x < X.size(); ++x)
    if (!E.test(x)) off.push_back(x);
  auto U = subgeometry(f.domain, off);
  GeoMap g{U, f.codomain, std::vector<PointId>(off.size())};
  for (std::size_t i = 0; i < off.size(); ++i) g.images[i] = f.images[off[i]];
  r.morphism_off_exceptional = preimage_criterion(g);

  const FlatId e = *X.flat_index(E);
  for (std::size_t i = 0; i < off.size() && r.class_constant; ++i)
    for (std::size_t j = i + 1; j < off.size(); ++j)
      if (X.join_index(e, off[i]) == X.join_index(e, off[j]) && f.images[off[i]] != f.images[off[j]]) {
        r.class_constant = false;
        r.witness = {off[i], off[j]};
        break;
      }
  r.holds = r.morphism_off_exceptional && r.class_constant;
  if (X.backend() == Backend::Projective) r.b1b2_agrees = check_b1_b2(f).holds() == r.holds;
  return r;
}

GeoMap factor_through_quotient(const PartialGeoMap& f, const GeometryPtr& quotient, bool experimental) {
  validate(f);
  if (!experimental && !lines_have_three_points(*f.domain))
    fail(ErrorKind::LinesTooShort, "the domain has lines with two points");
  if (!is_partial_morphism(f).holds)
    fail(ErrorKind::NotPartialMorphism, "map is not a partial morphism with the given exceptional flat");
  GeometryPtr Q = quotient ? quotient : Geometry::make_quotient(f.domain, f.exceptional);
  if (Q->backend() != Backend::Quotient || Q->parent() != f.domain || Q->exceptional() != f.exceptional)
    fail(ErrorKind::InvalidInput, "quotient does not match the map");
  GeoMap h{Q, f.codomain, std::vector<PointId>(Q->size())};
  for (PointId c = 0; c < Q->size(); ++c) h.images[c] = f.images[Q->parent_ids()[c]];
  return h;
}

PartialGeoMap compose(const GeoMap& g, const PartialGeoMap& f) {
  if (f.codomain->size() != g.domain->size()) fail(ErrorKind::InvalidInput, "maps are not composable");
  PartialGeoMap h{f.domain, g.codomain, f.exceptional, std::vector<PointId>(f.images.size(), kNoPoint)};
  for (PointId x = 0; x < f.images.size(); ++x)
    if (f.images[x] != kNoPoint) h.images[x] = g.images[f.images[x]];
  return h;
}

std::vector<PartialGeoMap> enumerate_partial_morphisms(const GeometryPtr& X, const PointSet& E, const GeometryPtr& Y,
                                                       const SearchOptions& options) {
  if (!X->is_flat(E)) fail(ErrorKind::NotAFlat, "exceptional set is not a flat");
  std::vector<PointId> off;
  for (PointId x = 0; x < X->size(); ++x)
    if (!E.test(x)) off.push_back(x);
  auto U = subgeometry(X, off);
  SearchProblem p;
  p.domain_size = U->size();
  p.codomain = Y;
  p.constraints = morphism_constraints(*U);
  const FlatId e = *X->flat_index(E);
  for (PointId i = 0; i < off.size(); ++i)
    for (PointId j = i + 1; j < off.size(); ++j)
      if (X->join_index(e, off[i]) == X->join_index(e, off[j])) {
        p.constraints.push_back({ConstraintKind::Equal, kNoPoint, {i, j}});
        break;  // the class is chained through its next member
      }
  p.accept = [&](std::span<const PointId> img) {
    return preimage_criterion(GeoMap{U, Y, std::vector<PointId>(img.begin(), img.end())});
  };
  std::vector<PartialGeoMap> out;
  for (auto& r : run_search(p, options)) {
    PartialGeoMap f{X, Y, E, std::vector<PointId>(X->size(), kNoPoint)};
    for (std::size_t i = 0; i < off.size(); ++i) f.images[off[i]] = r[i];
    out.push_back(std::move(f));
  }
  return out;
}

QuotientSection quotient_section(const Field& K, int dim, const std::vector<Vec>& w_basis) {
  if (dim < 1) fail(ErrorKind::InvalidInput, "vector dimension must be positive");
  const auto n = static_cast<std::size_t>(dim);
  std::vector<Vec> rows;
  std::vector<std::size_t> pivots;
  if (!w_basis.empty()) {
    for (const auto& w : w_basis)
      if (w.size() != n) fail(ErrorKind::InvalidInput, "basis vector of the wrong length");
    auto e = rref(Matrix::from_rows(K, w_basis));
    pivots = e.pivots;
    for (std::size_t r = 0; r < pivots.size(); ++r) rows.push_back(e.rref.row(r));
  }
  if (pivots.size() >= n) fail(ErrorKind::InvalidInput, "W must be a proper subspace");
  std::vector<char> is_pivot(n, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  const std::size_t m = free.size();

  // Gamma: v -> free coordinates of v reduced modulo W. Delta: the section
  // placing a class at the free coordinates.
  Matrix Gamma(K, m, n), Delta(K, n, m);
  for (std::size_t i = 0; i < m; ++i) {
    Delta(free[i], i) = 1;
    for (std::size_t c = 0; c < n; ++c) {
      Elem v = c == free[i] ? 1 : 0;
      for (std::size_t r = 0; r < pivots.size(); ++r)
        if (pivots[r] == c) v = K->neg(rows[r][free[i]]);
      Gamma(i, c) = v;
    }
  }
  return {std::move(Gamma), std::move(Delta)};
}

QuotientIsoReport quotient_projective_iso(const Field& K, int dim, const std::vector<Vec>& w_basis) {
  const auto [Gamma, Delta] = quotient_section(K, dim, w_basis);
  const auto m = Gamma.rows();
  QuotientIsoReport rep;
  rep.space = projective_space(K, dim - 1);
  rep.target = projective_space(K, static_cast<int>(m) - 1);
  const auto id = field_identity(K);
  auto gamma = projectivize_map(rep.space, rep.target, SemilinearMap{Gamma, id});
  rep.exceptional = gamma.exceptional;
  rep.quotient = Geometry::make_quotient(rep.space, rep.exceptional);
  rep.forward = factor_through_quotient(gamma, rep.quotient);
  auto delta = *as_total(projectivize_map(rep.target, rep.space, SemilinearMap{Delta, id}));
  rep.backward = GeoMap{rep.target, rep.quotient, std::vector<PointId>(rep.target->size())};
  for (PointId u = 0; u < rep.target->size(); ++u) rep.backward.images[u] = rep.quotient->class_of()[delta.images[u]];

  const auto fb = compose(rep.forward, rep.backward);
  const auto bf = compose(rep.backward, rep.forward);
  rep.composites_identity = fb.images == identity_map(rep.target).images &&
                            bf.images == identity_map(rep.quotient).images;
  rep.both_morphisms = preimage_criterion(rep.forward) && preimage_criterion(rep.backward);
  return rep;
}

}  // namespace geomkit
