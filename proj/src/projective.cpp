#include "geomkit/projective.hpp"

#include <chrono>
#include <set>

#include "geomkit/error.hpp"

namespace geomkit {

namespace {

void require_projective(const Geometry& g, const char* what) {
  if (g.backend() != Backend::Projective)
    fail(ErrorKind::InvalidInput, std::string(what) + " must be a projective space");
}

int image_dim(const Geometry& Y, std::span<const PointId> img) {
  FlatId f = Y.empty_closure_index();
  for (PointId y : img)
    if (y != kNoPoint) f = Y.join_index(f, y);
  return Y.flat_dim(f);
}

Matrix columns(const Field& K, const std::vector<Vec>& cols) {
  Matrix m(K, cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) m(i, j) = cols[j][i];
  return m;
}

}  // namespace

PartialGeoMap projectivize_map(const GeometryPtr& P, const GeometryPtr& P2, const SemilinearMap& phi) {
  require_projective(*P, "domain");
  require_projective(*P2, "codomain");
  const Matrix& M = phi.matrix;
  if (phi.sigma.source() != P->field() || phi.sigma.target() != P2->field() || M.field() != P2->field())
    fail(ErrorKind::InvalidInput, "semilinear map does not match the fields");
  if (M.cols() != static_cast<std::size_t>(P->space_dim() + 1) ||
      M.rows() != static_cast<std::size_t>(P2->space_dim() + 1))
    fail(ErrorKind::InvalidInput, "matrix shape does not match the spaces");
  if (is_zero(M.data())) fail(ErrorKind::ZeroMap, "the zero map induces no projective map");
  PartialGeoMap f{P, P2, P->empty_set(), std::vector<PointId>(P->size(), kNoPoint)};
  for (PointId x = 0; x < P->size(); ++x) {
    const Vec v = phi(P->coords(x));
    if (is_zero(v))
      f.exceptional.set(x);
    else
      f.images[x] = P2->point_of(v);
  }
  return f;
}

ProjFrame standard_frame(const Geometry& P) {
  require_projective(P, "geometry");
  const auto n = static_cast<std::size_t>(P.space_dim()) + 1;
  ProjFrame f;
  for (std::size_t j = 0; j < n; ++j) {
    Vec e(n, 0);
    e[j] = 1;
    f.points.push_back(P.point_of(e));
  }
  f.points.push_back(P.point_of(Vec(n, 1)));
  return f;
}

bool is_frame(const Geometry& P, const ProjFrame& f) {
  require_projective(P, "geometry");
  const auto n = static_cast<std::size_t>(P.space_dim()) + 1;
  if (f.points.size() != n + 1) return false;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    std::vector<Vec> rows;
    for (std::size_t j = 0; j <= n; ++j)
      if (j != skip) rows.push_back(P.coords(f.points.at(j)));
    if (mat_rank(Matrix::from_rows(P.field(), rows)) != n) return false;
  }
  return true;
}

SemilinearMap recover_semilinear(const GeoMap& f, const std::optional<ProjFrame>& frame) {
  validate(f);
  const Geometry& P = *f.domain;
  const Geometry& P2 = *f.codomain;
  require_projective(P, "domain");
  require_projective(P2, "codomain");
  if (image_dim(P2, f.images) < 2) fail(ErrorKind::DegenerateImage, "image lies in a line");
  const ProjFrame F = frame ? *frame : standard_frame(P);
  if (!is_frame(P, F)) fail(ErrorKind::InvalidInput, "points do not form a frame");
  const auto n = static_cast<std::size_t>(P.space_dim()) + 1;
  const FiniteField& K2 = *P2.field();
  const std::uint32_t q2 = K2.order();

  std::vector<Vec> b, w;
  for (std::size_t j = 0; j < n; ++j) {
    b.push_back(P.coords(F.points[j]));
    w.push_back(P2.coords(f.images[F.points[j]]));
  }
  const Matrix B = columns(P.field(), b);
  const auto sigmas = field_morphisms(P.field(), P2.field());
  double combos = static_cast<double>(sigmas.size());
  for (std::size_t j = 1; j < n; ++j) combos *= q2 - 1;
  if (combos > 5e6) fail(ErrorKind::BoundExceeded, "too many column scalings to search");

  for (const auto& sigma : sigmas) {
    const Matrix Binv = mat_inverse(apply_sigma(sigma, B));
    // Column j of M sigma(B) is lambda_j w_j with lambda_0 = 1.
    std::vector<Elem> lam(n, 1);
    while (true) {
      std::vector<Vec> cols(n);
      for (std::size_t j = 0; j < n; ++j) cols[j] = vec_scale(K2, lam[j], w[j]);
      const Matrix M = mat_mul(columns(P2.field(), cols), Binv);
      SemilinearMap phi{M, sigma};
      bool ok = true;
      for (PointId x = 0; x < P.size() && ok; ++x) {
        const Vec v = phi(P.coords(x));
        ok = !is_zero(v) && P2.point_of(v) == f.images[x];
      }
      if (ok) return phi;
      std::size_t j = 1;
      while (j < n && lam[j] == q2 - 1) lam[j++] = 1;
      if (j >= n) break;
      ++lam[j];
    }
  }
  fail(ErrorKind::NoSemilinearModel, "no semilinear map induces the given map");
}

VerificationReport ft_projective_verify(const GeometryPtr& P, const GeometryPtr& P2, const SearchOptions& options) {
  require_projective(*P, "domain");
  require_projective(*P2, "codomain");
  VerificationReport r;
  r.theorem = "ft-projective";
  r.domain = describe(*P);
  r.codomain = describe(*P2);
  auto maps = enumerate_morphisms(P, P2, MorphismFilter::ImageNotInLine, options, &r.search);
  std::vector<std::vector<PointId>> enumerated;
  enumerated.reserve(maps.size());
  for (auto& m : maps) enumerated.push_back(std::move(m.images));

  const auto t0 = std::chrono::steady_clock::now();
  const auto n = static_cast<std::size_t>(P->space_dim()) + 1;
  const auto n2 = static_cast<std::size_t>(P2->space_dim()) + 1;
  const auto sigmas = field_morphisms(P->field(), P2->field());
  double total = static_cast<double>(sigmas.size());
  for (std::size_t i = 0; i < n * n2; ++i) total *= P2->field()->order();
  if (total > 5e7) fail(ErrorKind::BoundExceeded, "semilinear family too large to construct");
  // Distinct matrices may induce the same map; keep point tables only.
  std::set<std::vector<PointId>> constructed;
  for (const auto& sigma : sigmas) {
    std::vector<Vec> src(P->size());
    for (PointId x = 0; x < P->size(); ++x) src[x] = apply_sigma(sigma, P->coords(x));
    for_each_matrix(n2, n, P2->field(), [&](const Matrix& M) {
      std::vector<PointId> img(P->size());
      for (PointId x = 0; x < P->size(); ++x) {
        const Vec v = mat_vec(M, src[x]);
        if (is_zero(v)) return true;
        img[x] = P2->point_of(v);
      }
      if (image_dim(*P2, img) >= 2) constructed.insert(std::move(img));
      return true;
    });
  }
  r.construct_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  compare_families(r, enumerated, std::vector<std::vector<PointId>>(constructed.begin(), constructed.end()));
  return r;
}

AxiomReport veblen_young_check(std::size_t n, const std::vector<std::vector<PointId>>& lines) {
  const std::size_t m = lines.size();
  std::vector<PointSet> L(m, PointSet(n));
  for (std::size_t l = 0; l < m; ++l)
    for (PointId x : lines[l]) {
      if (x >= n) fail(ErrorKind::UnknownPoint, "line mentions point " + std::to_string(x));
      L[l].set(x);
    }
  std::vector<int> through(n * n, -1);
  for (std::size_t l = m; l-- > 0;)
    for (PointId a : lines[l])
      for (PointId b : lines[l])
        if (a != b) through[a * n + b] = static_cast<int>(l);

  AxiomReport rep;
  AxiomResult p1{"P1", true, "", {}};
  for (PointId a = 0; a < n && p1.pass; ++a)
    for (PointId b = a + 1; b < n; ++b) {
      int count = 0;
      for (const auto& l : L)
        if (l.test(a) && l.test(b)) ++count;
      if (count != 1) {
        p1.pass = false;
        p1.detail = "points lie on " + std::to_string(count) + " lines";
        p1.witness = {{a, b}};
        break;
      }
    }
  rep.results.push_back(p1);

  AxiomResult p2{"P2", true, "", {}};
  for (std::size_t l = 0; l < m; ++l)
    if (L[l].count() < 3) {
      p2.pass = false;
      p2.detail = "line with fewer than three points";
      p2.witness = {lines[l]};
      break;
    }
  rep.results.push_back(p2);

  // A line missing the vertex a that meets sides ab and ac must meet bc.
  AxiomResult p3{"P3", true, "", {}};
  for (PointId a = 0; a < n && p3.pass; ++a)
    for (PointId b = 0; b < n && p3.pass; ++b) {
      if (b == a || through[a * n + b] < 0) continue;
      const PointSet& AB = L[through[a * n + b]];
      for (PointId c = b + 1; c < n && p3.pass; ++c) {
        if (c == a || AB.test(c) || through[a * n + c] < 0 || through[b * n + c] < 0) continue;
        const PointSet& AC = L[through[a * n + c]];
        const PointSet& BC = L[through[b * n + c]];
        for (std::size_t l = 0; l < m; ++l) {
          if (L[l].test(a) || !L[l].intersects(AB) || !L[l].intersects(AC)) continue;
          if (!L[l].intersects(BC)) {
            p3.pass = false;
            p3.detail = "line meets two sides of a triangle but not the third";
            p3.witness = {{a, b, c}, lines[l]};
            break;
          }
        }
      }
    }
  rep.results.push_back(p3);
  return rep;
}

B1B2Report check_b1_b2(const PartialGeoMap& f) {
  validate(f);
  const Geometry& P = *f.domain;
  const Geometry& Y = *f.codomain;
  require_projective(P, "domain");
  B1B2Report r;
  const PointSet& E = f.exceptional;
  for (PointId x1 = 0; x1 < P.size(); ++x1) {
    if (E.test(x1)) continue;
    for (PointId x2 = x1 + 1; x2 < P.size(); ++x2) {
      if (E.test(x2)) continue;
      const PointSet& L = P.flat(P.line_through(x1, x2));
      if (r.b2 && L.intersects(E) && f.images[x1] != f.images[x2]) {
        r.b2 = false;
        r.b2_witness = {x1, x2};
      }
      if (!r.b1) continue;
      const PointSet& I = f.images[x1] == f.images[x2] ? Y.flat(Y.join_index(Y.empty_closure_index(), f.images[x1]))
                                                        : Y.flat(Y.line_through(f.images[x1], f.images[x2]));
      for (PointId x0 : P.flat_points(P.line_through(x1, x2)))
        if (!E.test(x0) && !I.test(f.images[x0])) {
          r.b1 = false;
          r.b1_witness = {x0, x1, x2};
          break;
        }
    }
  }
  return r;
}

}  // namespace geomkit
