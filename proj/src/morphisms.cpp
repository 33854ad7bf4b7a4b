#include "geomkit/morphisms.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "geomkit/error.hpp"

namespace geomkit {

namespace {

// Domains above this size skip the exhaustive generated-by-lines test.
constexpr std::size_t kCriteriaDomainLimit = 200;

bool preimage_ok(const Geometry& X, const Geometry& Y, std::span<const PointId> img) {
  PointSet P(X.size());
  for (FlatId g = 0; g < Y.flat_count(); ++g) {
    const PointSet& G = Y.flat(g);
    P.reset();
    for (PointId x = 0; x < X.size(); ++x)
      if (G.test(img[x])) P.set(x);
    if (!X.is_flat(P)) return false;
  }
  return true;
}

int image_dim(const Geometry& Y, std::span<const PointId> img) {
  FlatId f = Y.empty_closure_index();
  for (PointId y : img) f = Y.join_index(f, y);
  return Y.flat_dim(f);
}

}  // namespace

void validate(const GeoMap& f) {
  if (!f.domain || !f.codomain) fail(ErrorKind::InvalidInput, "map without domain or codomain");
  if (f.images.size() != f.domain->size())
    fail(ErrorKind::UnknownPoint, "image table has " + std::to_string(f.images.size()) + " entries, domain has " +
                                      std::to_string(f.domain->size()) + " points");
  for (PointId y : f.images) f.codomain->require_point(y);
}

void validate(const PartialGeoMap& f) {
  if (!f.domain || !f.codomain) fail(ErrorKind::InvalidInput, "map without domain or codomain");
  if (f.images.size() != f.domain->size() || f.exceptional.size() != f.domain->size())
    fail(ErrorKind::UnknownPoint, "image table does not match the domain");
  for (PointId x = 0; x < f.images.size(); ++x) {
    if (f.exceptional.test(x)) {
      if (f.images[x] != kNoPoint) fail(ErrorKind::InvalidInput, "exceptional point with an image");
    } else {
      f.codomain->require_point(f.images[x]);
    }
  }
}

PartialGeoMap as_partial(const GeoMap& f) { return PartialGeoMap{f.domain, f.codomain, f.domain->empty_set(), f.images}; }

std::optional<GeoMap> as_total(const PartialGeoMap& f) {
  if (f.exceptional.any()) return std::nullopt;
  return GeoMap{f.domain, f.codomain, f.images};
}

GeoMap identity_map(const GeometryPtr& X) {
  GeoMap f{X, X, std::vector<PointId>(X->size())};
  for (PointId x = 0; x < X->size(); ++x) f.images[x] = x;
  return f;
}

GeoMap constant_map(const GeometryPtr& X, const GeometryPtr& Y, PointId y) {
  Y->require_point(y);
  return GeoMap{X, Y, std::vector<PointId>(X->size(), y)};
}

GeoMap compose(const GeoMap& g, const GeoMap& f) {
  if (f.codomain->size() != g.domain->size()) fail(ErrorKind::InvalidInput, "maps are not composable");
  GeoMap h{f.domain, g.codomain, std::vector<PointId>(f.images.size())};
  for (PointId x = 0; x < f.images.size(); ++x) h.images[x] = g.images[f.images[x]];
  return h;
}

bool is_injective(const GeoMap& f) {
  std::vector<char> seen(f.codomain->size(), 0);
  for (PointId y : f.images) {
    if (seen[y]) return false;
    seen[y] = 1;
  }
  return true;
}

bool is_surjective(const GeoMap& f) { return image_set(f).all(); }
bool is_bijective(const GeoMap& f) { return f.domain->size() == f.codomain->size() && is_injective(f); }

std::optional<GeoMap> inverse_map(const GeoMap& f) {
  if (!is_bijective(f)) return std::nullopt;
  GeoMap g{f.codomain, f.domain, std::vector<PointId>(f.images.size())};
  for (PointId x = 0; x < f.images.size(); ++x) g.images[f.images[x]] = x;
  return g;
}

PointSet image_set(const GeoMap& f) {
  PointSet s(f.codomain->size());
  for (PointId y : f.images) s.set(y);
  return s;
}

int image_dimension(const GeoMap& f) { return image_dim(*f.codomain, f.images); }
bool image_not_in_line(const GeoMap& f) { return image_dimension(f) >= 2; }

bool preimage_criterion(const GeoMap& f) {
  validate(f);
  return preimage_ok(*f.domain, *f.codomain, f.images);
}

std::optional<std::vector<PointId>> closure_violation(const GeoMap& f) {
  validate(f);
  const Geometry& X = *f.domain;
  const Geometry& Y = *f.codomain;
  std::vector<PointId> B;
  std::optional<std::vector<PointId>> witness;
  // Only points new to cl(B) need checking; earlier ones passed for a subset of B.
  std::function<bool(FlatId, FlatId, FlatId, PointId)> rec = [&](FlatId cur, FlatId prev, FlatId img, PointId from) {
    const PointSet& C = X.flat(cur);
    const bool root = cur == prev;
    for (PointId x0 : X.flat_points(cur)) {
      if (!root && X.flat(prev).test(x0)) continue;
      if (!Y.flat(img).test(f.images[x0])) {
        std::vector<PointId> w{x0};
        w.insert(w.end(), B.begin(), B.end());
        witness = std::move(w);
        return false;
      }
    }
    for (PointId p = from; p < X.size(); ++p) {
      if (C.test(p)) continue;
      B.push_back(p);
      const bool ok = rec(X.join_index(cur, p), cur, Y.join_index(img, f.images[p]), p + 1);
      B.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  const FlatId e = X.empty_closure_index();
  rec(e, e, Y.empty_closure_index(), 0);
  return witness;
}

std::optional<std::vector<PointId>> collinear_violation(const GeoMap& f) {
  validate(f);
  const Geometry& X = *f.domain;
  const Geometry& Y = *f.codomain;
  for (FlatId l : X.flats_of_dim(1)) {
    const auto& pts = X.flat_points(l);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const PointSet& L = Y.flat(Y.line_through(f.images[pts[i]], f.images[pts[j]]));
        for (std::size_t k = 0; k < pts.size(); ++k) {
          if (k == i || k == j) continue;
          if (!L.test(f.images[pts[k]])) return std::vector<PointId>{pts[k], pts[i], pts[j]};
        }
      }
  }
  return std::nullopt;
}

std::optional<std::vector<PointId>> coplanar_violation(const GeoMap& f) {
  if (auto w = collinear_violation(f)) return w;
  const Geometry& X = *f.domain;
  const Geometry& Y = *f.codomain;
  for (FlatId pl : X.flats_of_dim(2)) {
    const auto& pts = X.flat_points(pl);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const PointSet& Lij = X.flat(X.line_through(pts[i], pts[j]));
        const FlatId yij = Y.line_through(f.images[pts[i]], f.images[pts[j]]);
        for (std::size_t k = j + 1; k < pts.size(); ++k) {
          if (Lij.test(pts[k])) continue;
          const PointSet& P = Y.flat(Y.join_index(yij, f.images[pts[k]]));
          for (PointId x0 : pts)
            if (!P.test(f.images[x0])) return std::vector<PointId>{x0, pts[i], pts[j], pts[k]};
        }
      }
  }
  return std::nullopt;
}

MorphismReport is_morphism(const GeoMap& f) {
  validate(f);
  MorphismReport r;
  r.criterion = "preimage";
  r.is_morphism = preimage_criterion(f);
  r.verdicts.push_back({"preimage", r.is_morphism});
  auto w = closure_violation(f);
  r.verdicts.push_back({"finite_closure", !w.has_value()});
  if (w) r.witness = *w;
  if (f.domain->size() <= kCriteriaDomainLimit) {
    if (f.domain->lines_generate()) {
      auto c = collinear_violation(f);
      r.verdicts.push_back({"collinear_triples", !c.has_value()});
    }
    if (f.domain->lines_and_planes_generate()) {
      auto c = coplanar_violation(f);
      r.verdicts.push_back({"coplanar_quadruples", !c.has_value()});
    }
  }
  for (const auto& v : r.verdicts)
    if (v.holds != r.is_morphism) r.criteria_agree = false;
  return r;
}

bool morphism_fast(const GeoMap& f) {
  validate(f);
  if (f.domain->size() <= kCriteriaDomainLimit) {
    if (f.domain->lines_generate()) return !collinear_violation(f);
    if (f.domain->lines_and_planes_generate()) return !coplanar_violation(f);
  }
  return preimage_criterion(f);
}

namespace {

void require_morphism(const GeoMap& f) {
  if (!preimage_criterion(f)) fail(ErrorKind::NotAMorphism, "map is not a morphism of geometries");
}

}  // namespace

bool is_isomorphism(const GeoMap& f) {
  require_morphism(f);
  auto g = inverse_map(f);
  return g && preimage_criterion(*g);
}

bool is_embedding(const GeoMap& f) {
  require_morphism(f);
  if (!is_injective(f)) return false;
  std::vector<PointId> img(f.images.begin(), f.images.end());
  std::sort(img.begin(), img.end());
  auto Y = subgeometry(f.codomain, img);
  GeoMap g{f.domain, Y, std::vector<PointId>(f.images.size())};
  for (PointId x = 0; x < f.images.size(); ++x)
    g.images[x] = static_cast<PointId>(std::lower_bound(img.begin(), img.end(), f.images[x]) - img.begin());
  return is_isomorphism(g);
}

bool maps_lines_onto_lines(const GeoMap& f) {
  validate(f);
  if (!is_bijective(f)) return false;
  const Geometry& X = *f.domain;
  const Geometry& Y = *f.codomain;
  std::set<FlatId> hit;
  PointSet img(Y.size());
  for (FlatId l : X.flats_of_dim(1)) {
    img.reset();
    for (PointId x : X.flat_points(l)) img.set(f.images[x]);
    auto idx = Y.flat_index(img);
    if (!idx || Y.flat_dim(*idx) != 1) return false;
    hit.insert(*idx);
  }
  return hit.size() == Y.flats_of_dim(1).size();
}

bool is_collineation(const GeoMap& f) {
  require_morphism(f);
  return maps_lines_onto_lines(f);
}

SurjectionReport check_surjective_morphism(const GeoMap& f) {
  require_morphism(f);
  if (!is_surjective(f)) fail(ErrorKind::NotSurjective, "map is not surjective");
  SurjectionReport r;
  r.domain_dim = f.domain->dimension();
  r.codomain_dim = f.codomain->dimension();
  r.dimension_inequality = r.domain_dim >= r.codomain_dim;
  r.equal_dimensions = r.domain_dim == r.codomain_dim;
  if (r.equal_dimensions) r.isomorphism = is_isomorphism(f);
  return r;
}

std::string_view to_string(MorphismFilter f) {
  switch (f) {
    case MorphismFilter::All: return "all";
    case MorphismFilter::ImageNotInLine: return "image_not_in_line";
    case MorphismFilter::Bijective: return "bijective";
    case MorphismFilter::Constant: return "constant";
  }
  return "all";
}

MorphismFilter parse_filter(const std::string& s) {
  if (s == "all") return MorphismFilter::All;
  if (s == "image_not_in_line") return MorphismFilter::ImageNotInLine;
  if (s == "bijective") return MorphismFilter::Bijective;
  if (s == "constant") return MorphismFilter::Constant;
  fail(ErrorKind::InvalidInput, "unknown filter '" + s + "'");
}

std::vector<GeoMap> enumerate_morphisms(const GeometryPtr& X, const GeometryPtr& Y, MorphismFilter filter,
                                        const SearchOptions& options, SearchStats* stats) {
  std::vector<GeoMap> out;
  if (filter == MorphismFilter::Bijective && X->size() != Y->size()) return out;
  SearchProblem p;
  p.domain_size = X->size();
  p.codomain = Y;
  p.constraints = morphism_constraints(*X);
  p.injective = filter == MorphismFilter::Bijective;
  if (filter == MorphismFilter::Constant)
    for (PointId x = 1; x < X->size(); ++x) p.constraints.push_back({ConstraintKind::Equal, kNoPoint, {0, x}});
  const Geometry& XX = *X;
  const Geometry& YY = *Y;
  p.accept = [&, filter](std::span<const PointId> img) {
    if (filter == MorphismFilter::ImageNotInLine && image_dim(YY, img) < 2) return false;
    return preimage_ok(XX, YY, img);
  };
  auto raw = run_search(p, options, stats);
  out.reserve(raw.size());
  for (auto& r : raw) out.push_back(GeoMap{X, Y, std::move(r)});
  return out;
}

std::optional<GeoMap> find_isomorphism(const GeometryPtr& X, const GeometryPtr& Y, const SearchOptions& options) {
  for (auto& f : enumerate_morphisms(X, Y, MorphismFilter::Bijective, options))
    if (preimage_criterion(*inverse_map(f))) return f;
  return std::nullopt;
}

void compare_families(VerificationReport& r, const std::vector<std::vector<PointId>>& enumerated,
                      const std::vector<std::vector<PointId>>& constructed) {
  r.enumerated = enumerated.size();
  r.constructed = constructed.size();
  r.sets_equal = enumerated == constructed;
  std::vector<std::vector<PointId>> a, b;
  std::set_difference(enumerated.begin(), enumerated.end(), constructed.begin(), constructed.end(),
                      std::back_inserter(a));
  std::set_difference(constructed.begin(), constructed.end(), enumerated.begin(), enumerated.end(),
                      std::back_inserter(b));
  if (a.size() > 10) a.resize(10);
  if (b.size() > 10) b.resize(10);
  r.only_enumerated = std::move(a);
  r.only_constructed = std::move(b);
}

std::string describe(const Geometry& g) {
  if (g.backend() == Backend::Affine)
    return "AG(" + std::to_string(g.space_dim()) + "," + std::to_string(g.field()->order()) + ")";
  if (g.backend() == Backend::Projective)
    return "PG(" + std::to_string(g.space_dim()) + "," + std::to_string(g.field()->order()) + ")";
  return std::string(to_string(g.backend())) + "[" + std::to_string(g.size()) + "]";
}

}  // namespace geomkit
