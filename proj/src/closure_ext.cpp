#include "geomkit/closure_ext.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <thread>

#include "geomkit/error.hpp"
#include "geomkit/quotients.hpp"

namespace geomkit {

namespace {

void require_backend(const Geometry& g, Backend b, const char* what) {
  if (g.backend() != b)
    fail(ErrorKind::InvalidInput, std::string(what) + " must be " + (b == Backend::Affine ? "an affine" : "a projective") +
                                      " space");
}

Vec prepend(Elem head, std::span<const Elem> v) {
  Vec out{head};
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::string vec_text(std::span<const Elem> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

Matrix from_columns(const Field& K, const std::vector<Vec>& cols) {
  Matrix m(K, cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) m(i, j) = cols[j][i];
  return m;
}

struct FamilyOutcome {
  bool exceptional = true;
  PointId image = kNoPoint;
  std::optional<ExtensionWitness> witness;
};

FamilyOutcome resolve_family(const GeoMap& phi, PointId direction, const std::vector<FlatId>& family) {
  const Geometry& A = *phi.domain;
  const Geometry& Y = *phi.codomain;
  FamilyOutcome out;
  std::vector<FlatId> image_lines;
  std::vector<FlatId> source;  // domain line behind each image line
  for (FlatId l : family) {
    const auto& pts = A.flat_points(l);
    const PointId y0 = phi.images[pts[0]];
    auto other = std::find_if(pts.begin(), pts.end(), [&](PointId x) { return phi.images[x] != y0; });
    if (other == pts.end()) continue;  // constant line
    const FlatId img = Y.line_through(y0, phi.images[*other]);
    if (std::find(image_lines.begin(), image_lines.end(), img) == image_lines.end()) {
      image_lines.push_back(img);
      source.push_back(l);
    }
  }
  if (image_lines.empty()) return out;
  out.exceptional = false;
  auto witness = [&](std::initializer_list<std::size_t> idx, const char* reason) {
    ExtensionWitness w{direction, {}, reason};
    for (auto i : idx) w.lines.push_back(A.flat_points(source[i]));
    out.witness = std::move(w);
    return out;
  };
  if (image_lines.size() == 1) return witness({0}, "all image lines coincide");
  const PointSet meet = Y.flat(image_lines[0]) & Y.flat(image_lines[1]);
  if (meet.none()) return witness({0, 1}, "image lines do not meet");
  out.image = static_cast<PointId>(meet.find_first());
  for (std::size_t j = 2; j < image_lines.size(); ++j)
    if (!Y.flat(image_lines[j]).test(out.image)) return witness({0, 1, j}, "image lines are not concurrent");
  return out;
}

std::vector<FlatId> lines_through(const Geometry& P, PointId p) {
  std::vector<FlatId> lines;
  for (PointId z = 0; z < P.size(); ++z)
    if (z != p) lines.push_back(P.line_through(p, z));
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  return lines;
}

// (b1) and (b2) restricted to the given lines through p, with p sent to y.
bool locally_valid(const PartialGeoMap& f, PointId p, PointId y, const std::vector<FlatId>& lines) {
  const Geometry& P = *f.domain;
  const Geometry& Y = *f.codomain;
  const PointSet& E = f.exceptional;
  auto img = [&](PointId x) { return x == p ? y : f.images[x]; };
  for (FlatId l : lines) {
    std::vector<PointId> D;
    for (PointId x : P.flat_points(l))
      if (!E.test(x)) D.push_back(x);
    if (P.flat(l).intersects(E)) {
      for (PointId x : D)
        if (img(x) != y) return false;
      continue;
    }
    for (std::size_t i = 0; i < D.size(); ++i)
      for (std::size_t j = i + 1; j < D.size(); ++j) {
        const PointId a = img(D[i]), b = img(D[j]);
        if (a == b) {
          for (PointId x : D)
            if (img(x) != a) return false;
        } else {
          const PointSet& I = Y.flat(Y.line_through(a, b));
          for (PointId x : D)
            if (!I.test(img(x))) return false;
        }
      }
  }
  return true;
}

}  // namespace

VectorialExtension vectorial_extension(const GeometryPtr& A, PointId origin) {
  require_backend(*A, Backend::Affine, "domain");
  A->require_point(origin);
  VectorialExtension e{A, origin, {}};
  const FiniteField& K = *A->field();
  for (PointId x = 0; x < A->size(); ++x) e.embedding.push_back(prepend(1, vec_sub(K, A->coords(x), A->coords(origin))));
  return e;
}

std::optional<Matrix> extension_isomorphism(const VectorialExtension& a, const VectorialExtension& b) {
  if (a.affine != b.affine) fail(ErrorKind::InvalidInput, "extensions of different affine spaces");
  const Geometry& A = *a.affine;
  const auto n = static_cast<std::size_t>(A.space_dim());
  std::vector<PointId> frame{a.origin};
  for (std::size_t i = 0; i < n; ++i) {
    Vec v = A.coords(a.origin);
    v[i] = A.field()->add(v[i], 1);
    frame.push_back(A.point_of(v));
  }
  std::vector<Vec> ca, cb;
  for (PointId x : frame) {
    ca.push_back(a.embedding[x]);
    cb.push_back(b.embedding[x]);
  }
  auto inv = try_inverse(from_columns(A.field(), ca));
  if (!inv) return std::nullopt;
  Matrix phi = mat_mul(from_columns(A.field(), cb), *inv);
  for (PointId x = 0; x < A.size(); ++x)
    if (mat_vec(phi, a.embedding[x]) != b.embedding[x]) return std::nullopt;
  return phi;
}

ProjectiveClosure projective_closure(const GeometryPtr& A) {
  require_backend(*A, Backend::Affine, "geometry");
  ProjectiveClosure c;
  c.affine = A;
  c.projective = projective_space(A->field(), A->space_dim());
  const Geometry& P = *c.projective;
  c.hyperplane = P.empty_set();
  c.affine_of.assign(P.size(), kNoPoint);
  for (PointId x = 0; x < A->size(); ++x) {
    const PointId p = P.point_of(prepend(1, A->coords(x)));
    c.embed.push_back(p);
    c.affine_of[p] = x;
  }
  for (PointId p = 0; p < P.size(); ++p)
    if (P.coords(p)[0] == 0) c.hyperplane.set(p);
  return c;
}

PointId point_at_infinity(const ProjectiveClosure& C, const PointSet& L) {
  const Geometry& A = *C.affine;
  if (L.size() != A.size() || L.count() < 2) fail(ErrorKind::NotALine, "not a line of the affine space");
  const auto f = A.flat_index(L);
  if (!f || A.flat_dim(*f) != 1) fail(ErrorKind::NotALine, "not a line of the affine space");
  const auto& pts = A.flat_points(*f);
  return C.projective->point_of(prepend(0, vec_sub(*A.field(), A.coords(pts[1]), A.coords(pts[0]))));
}

ExtensionResult extend_to_closure(const GeoMap& phi, const ExtensionOptions& options) {
  validate(phi);
  require_backend(*phi.domain, Backend::Affine, "domain");
  require_backend(*phi.codomain, Backend::Projective, "codomain");
  if (!morphism_fast(phi)) fail(ErrorKind::NotAMorphism, "input is not a morphism of geometries");
  if (image_dimension(phi) < 2) fail(ErrorKind::DegenerateImage, "image lies in a line");

  ExtensionResult r;
  r.closure = projective_closure(phi.domain);
  const Geometry& A = *phi.domain;
  const Geometry& P = *r.closure.projective;
  const std::uint32_t q = A.field()->order();
  r.hypothesis = q >= 4 || (q == 3 && phi.codomain->field()->characteristic() == 3);

  std::map<PointId, std::vector<FlatId>> families;
  for (FlatId l : A.flats_of_dim(1)) families[point_at_infinity(r.closure, A.flat(l))].push_back(l);
  std::vector<PointId> directions;
  for (const auto& [p, ls] : families) directions.push_back(p);

  std::vector<FamilyOutcome> outcomes(directions.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < directions.size(); i = next++)
      outcomes[i] = resolve_family(phi, directions[i], families[directions[i]]);
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(directions.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  PointSet E = P.empty_set();
  for (std::size_t i = 0; i < directions.size(); ++i)
    if (outcomes[i].exceptional) E.set(directions[i]);
  r.exceptional_is_flat = P.is_flat(E);
  for (auto& o : outcomes)
    if (o.witness) {
      r.witness = std::move(o.witness);
      return r;
    }

  PartialGeoMap ext{r.closure.projective, phi.codomain, E, std::vector<PointId>(P.size(), kNoPoint)};
  for (PointId x = 0; x < A.size(); ++x) ext.images[r.closure.embed[x]] = phi.images[x];
  for (std::size_t i = 0; i < directions.size(); ++i)
    if (!outcomes[i].exceptional) ext.images[directions[i]] = outcomes[i].image;
  r.restriction_ok = true;
  for (PointId x = 0; x < A.size(); ++x)
    if (ext.images[r.closure.embed[x]] != phi.images[x]) r.restriction_ok = false;
  r.b1b2 = check_b1_b2(ext);

  if (options.check_uniqueness && r.b1b2.holds()) {
    r.unique = true;
    for (std::size_t i = 0; i < directions.size() && r.unique; ++i) {
      if (outcomes[i].exceptional) continue;
      const auto lines = lines_through(P, directions[i]);
      for (PointId y = 0; y < phi.codomain->size() && r.unique; ++y)
        if (y != outcomes[i].image && locally_valid(ext, directions[i], y, lines)) r.unique = false;
    }
  }
  r.extension = std::move(ext);
  return r;
}

GeoMap into_closure(const GeoMap& phi, const ProjectiveClosure& target) {
  validate(phi);
  if (phi.codomain != target.affine) fail(ErrorKind::InvalidInput, "map does not land in the closure's affine part");
  GeoMap g{phi.domain, target.projective, std::vector<PointId>(phi.images.size())};
  for (PointId x = 0; x < phi.images.size(); ++x) g.images[x] = target.embed[phi.images[x]];
  return g;
}

FractionalDecomposition fractional_decompose(const GeoMap& phi, const ExtensionOptions& options) {
  validate(phi);
  const GeometryPtr& A = phi.domain;
  const GeometryPtr& B = phi.codomain;
  require_backend(*A, Backend::Affine, "domain");
  require_backend(*B, Backend::Affine, "codomain");
  const Field& K = A->field();
  const Field& K2 = B->field();
  const auto n = static_cast<std::size_t>(A->space_dim());
  const auto n2 = static_cast<std::size_t>(B->space_dim());
  const PointId zero = A->point_of(Vec(n, 0));
  if (!is_zero(B->coords(phi.images[zero]))) fail(ErrorKind::InvalidInput, "the map must send 0 to 0");
  if (image_dimension(phi) < 2) fail(ErrorKind::DegenerateImage, "image lies in a line");
  if (!(K->order() >= 4 || (K->order() == 3 && K2->characteristic() == 3)))
    fail(ErrorKind::HypothesisViolated, "requires |K| >= 4, or |K| = 3 = char K'");

  const auto target = projective_closure(B);
  ExtensionOptions opts = options;
  opts.check_uniqueness = false;
  const auto res = extend_to_closure(into_closure(phi, target), opts);
  if (!res.success())
    fail(ErrorKind::DecompositionFailed,
         "no partial projective extension" + (res.witness ? ": " + res.witness->reason : std::string()));
  const PartialGeoMap& ext = *res.extension;
  const GeometryPtr& P = res.closure.projective;

  std::optional<SemilinearMap> model;
  try {
    if (ext.exceptional.none()) {
      model = recover_semilinear(*as_total(ext));
    } else {
      std::vector<Vec> w;
      for (PointId e : to_ids(ext.exceptional)) w.push_back(P->coords(e));
      const auto [gamma, delta] = quotient_section(K, static_cast<int>(n) + 1, w);
      auto T = projective_space(K, static_cast<int>(gamma.rows()) - 1);
      GeoMap psi{T, ext.codomain, std::vector<PointId>(T->size())};
      for (PointId u = 0; u < T->size(); ++u) psi.images[u] = ext.images[P->point_of(mat_vec(delta, T->coords(u)))];
      model = recover_semilinear(psi).after(SemilinearMap{gamma, field_identity(K)});
    }
  } catch (const GeomError& e) {
    fail(ErrorKind::DecompositionFailed, std::string("no global semilinear map: ") + e.what());
  }
  const SemilinearMap& Phi = *model;
  const auto induced = projectivize_map(P, ext.codomain, Phi);
  if (induced.exceptional != ext.exceptional || induced.images != ext.images)
    fail(ErrorKind::DecompositionFailed, "semilinear map does not induce the extension");

  // Phi(p0) = phi(p0) = (1, 0, ..., 0).
  const Vec u0 = Phi.matrix.col(0);
  if (u0[0] == 0 || !is_zero(std::span(u0).subspan(1)))
    fail(ErrorKind::DecompositionFailed, "origin is not sent to the origin");
  const Matrix M = mat_scale(K2->inv(u0[0]), Phi.matrix);

  FractionalDecomposition d{SemilinearMap{Matrix(K2, n2, n), Phi.sigma}, SemilinearMap{Matrix(K2, 1, n), Phi.sigma}};
  for (std::size_t c = 0; c < n; ++c) {
    d.omega.matrix(0, c) = M(0, c + 1);
    for (std::size_t r = 0; r < n2; ++r) d.psi.matrix(r, c) = M(r + 1, c + 1);
  }
  try {
    for (PointId x = 0; x < A->size(); ++x)
      if (eval_fractional(d, A->coords(x)) != B->coords(phi.images[x]))
        fail(ErrorKind::DecompositionFailed, "decomposition does not reproduce the map at " + vec_text(A->coords(x)));
  } catch (const GeomError& e) {
    if (e.kind() == ErrorKind::DecompositionFailed) throw;
    fail(ErrorKind::DecompositionFailed, e.what());
  }
  return d;
}

Vec eval_fractional(const FractionalDecomposition& d, std::span<const Elem> v) {
  if (v.size() != d.psi.matrix.cols() || v.size() != d.omega.matrix.cols())
    fail(ErrorKind::InvalidInput, "vector length does not match the decomposition");
  const FiniteField& K2 = *d.psi.matrix.field();
  const Elem s = K2.add(1, d.omega(v)[0]);
  if (s == 0) fail(ErrorKind::PoleHit, "1 + omega(v) = 0 at v = " + vec_text(v));
  return vec_scale(K2, K2.inv(s), d.psi(v));
}

GeoMap fractional_map(const GeometryPtr& A, const GeometryPtr& B, const FractionalDecomposition& d) {
  require_backend(*A, Backend::Affine, "domain");
  require_backend(*B, Backend::Affine, "codomain");
  if (d.sigma().source() != A->field() || d.sigma().target() != B->field() ||
      d.psi.matrix.rows() != static_cast<std::size_t>(B->space_dim()))
    fail(ErrorKind::InvalidInput, "decomposition does not match the spaces");
  GeoMap f{A, B, std::vector<PointId>(A->size())};
  for (PointId x = 0; x < A->size(); ++x) f.images[x] = B->point_of(eval_fractional(d, A->coords(x)));
  return f;
}

bool is_fractional_morphism(const GeometryPtr& A, const GeometryPtr& B, const FractionalDecomposition& d) {
  return is_morphism(fractional_map(A, B, d)).is_morphism;
}

OctagonResult counterexample_octagon(std::uint32_t q) {
  const Field K = field_parse(std::to_string(q));
  auto Y = projective_space(K, 2);
  OctagonResult r;
  for (PointId y = 0; y < Y->size(); ++y) {
    const Vec& v = Y->coords(y);
    if (K->mul(v[0], v[0]) == K->mul(v[1], v[2])) r.conic.push_back(y);
  }
  if (r.conic.size() < 8)
    fail(ErrorKind::SelectionFailed,
         "the conic x0^2 = x1 x2 over GF(" + std::to_string(q) + ") has " + std::to_string(r.conic.size()) + " < 8 points");
  r.conic.resize(8);

  auto cube = affine_space(field_parse("2"), 3);
  // Points paired along the last coordinate: p1p2, p3p4, p5p6, p7p8.
  std::vector<PointId> order;
  for (PointId x = 0; x < cube->size(); ++x)
    if (cube->coords(x)[2] == 0) {
      Vec v = cube->coords(x);
      v[2] = 1;
      order.push_back(x);
      order.push_back(cube->point_of(v));
    }
  std::vector<std::size_t> perm(8);
  std::iota(perm.begin(), perm.end(), 0);
  bool found = false;
  do {
    std::vector<PointId> img(8);
    for (std::size_t i = 0; i < 8; ++i) img[order[i]] = r.conic[perm[i]];
    PointSet common = Y->full_set();
    for (std::size_t k = 0; k < 3; ++k) common &= Y->flat(Y->line_through(img[order[2 * k]], img[order[2 * k + 1]]));
    if (common.none()) {
      r.map = GeoMap{cube, Y, std::move(img)};
      found = true;
    }
  } while (!found && std::next_permutation(perm.begin(), perm.end()));
  if (!found) fail(ErrorKind::SelectionFailed, "no ordering of the octagon gives non-concurrent sides");
  for (std::size_t k = 0; k < 3; ++k) r.sides[k] = {order[2 * k], order[2 * k + 1]};
  r.is_morphism = is_morphism(r.map).is_morphism;
  r.extension = extend_to_closure(r.map);
  return r;
}

HesseResult counterexample_hesse(std::uint32_t q) {
  const Field K = field_parse(std::to_string(q));
  if (K->characteristic() == 3)
    fail(ErrorKind::NotFound, "characteristic 3: AG(2,3) extends through the prime subfield");
  auto A = affine_space(field_parse("3"), 2);
  auto Y = projective_space(K, 2);

  // Any such configuration contains a quadrangle, so the square
  // (0,0), (1,0), (0,1), (1,1) may be sent to the standard frame.
  SearchProblem p;
  p.domain_size = A->size();
  p.codomain = Y;
  p.constraints = morphism_constraints(*A);
  p.injective = true;
  p.candidates.assign(A->size(), {});
  const std::vector<std::pair<Vec, Vec>> fixed{
      {{0, 0}, {1, 0, 0}}, {{1, 0}, {0, 1, 0}}, {{0, 1}, {0, 0, 1}}, {{1, 1}, {1, 1, 1}}};
  for (const auto& [x, y] : fixed) p.candidates[A->point_of(x)] = {Y->point_of(y)};
  p.accept = [&](std::span<const PointId> img) {
    PointSet S = Y->empty_set();
    for (PointId y : img) S.set(y);
    for (std::size_t i = 0; i < img.size(); ++i)
      for (std::size_t j = i + 1; j < img.size(); ++j)
        if ((Y->flat(Y->line_through(img[i], img[j])) & S).count() != 3) return false;
    return true;
  };
  const auto found = run_search(p, SearchOptions{});
  if (found.empty()) fail(ErrorKind::NotFound, "PG(2," + std::to_string(q) + ") holds no nine-point configuration");

  HesseResult r;
  r.embedding = GeoMap{A, Y, found.front()};
  r.is_embedding = is_embedding(r.embedding);
  r.no_field_morphism = field_morphisms(A->field(), K).empty();
  r.extension = extend_to_closure(r.embedding);
  return r;
}

Char3Report char3_frame_coordinates(const GeoMap& phi, const std::array<PointId, 4>& square) {
  validate(phi);
  require_backend(*phi.domain, Backend::Affine, "domain");
  require_backend(*phi.codomain, Backend::Projective, "codomain");
  const Geometry& A = *phi.domain;
  const Geometry& Y = *phi.codomain;
  if (A.field()->order() != 3 || A.space_dim() != 2 || Y.space_dim() != 2)
    fail(ErrorKind::InvalidInput, "expects a map AG(2,3) -> PG(2,q)");
  const FiniteField& K = *Y.field();
  const auto [a, c, b, u] = square;
  auto img = [&](PointId x) { return Y.coords(phi.images[x]); };
  auto third = [&](PointId x, PointId y) {
    for (PointId z : A.flat_points(A.line_through(x, y)))
      if (z != x && z != y) return z;
    fail(ErrorKind::InvalidInput, "line with two points");
  };

  Char3Report r;
  r.square = square;
  const auto lambda = solve(from_columns(Y.field(), {img(a), img(b), img(c)}), img(u));
  if (!lambda) fail(ErrorKind::InvalidInput, "square vertices are not in general position");
  const auto S = from_columns(Y.field(), {vec_scale(K, (*lambda)[0], img(a)), vec_scale(K, (*lambda)[1], img(b)),
                                          vec_scale(K, (*lambda)[2], img(c))});
  const auto T = try_inverse(S);
  if (!T) fail(ErrorKind::InvalidInput, "square vertices are not in general position");
  r.to_frame = *T;
  auto frame = [&](PointId x) { return mat_vec(r.to_frame, img(x)); };
  auto scaled = [&](Vec v, std::size_t k) -> std::optional<Vec> {
    if (v[k] == 0) return std::nullopt;
    return vec_scale(K, K.inv(v[k]), v);
  };

  const auto rac = scaled(frame(third(a, c)), 0);
  const auto rcb = scaled(frame(third(c, b)), 1);
  const auto rbu = scaled(frame(third(b, u)), 0);
  const auto rua = scaled(frame(third(u, a)), 1);
  r.rhombus_shape = rac && rcb && rbu && rua && (*rac)[1] == 0 && (*rcb)[0] == 0 && (*rbu)[2] == 1 && (*rua)[2] == 1;
  if (r.rhombus_shape) {
    r.a = (*rac)[2];
    r.b = (*rcb)[2];
    r.c = K.sub((*rbu)[1], 1);
    r.d = K.sub((*rua)[0], 1);
  }

  // The class of a v c: its three image lines.
  const FlatId base = A.line_through(a, c);
  std::vector<FlatId> images;
  for (FlatId l : A.flats_of_dim(1))
    if (parallel(A, A.flat(l), A.flat(base))) {
      const auto& pts = A.flat_points(l);
      images.push_back(Y.line_through(phi.images[pts[0]], phi.images[pts[1]]));
    }
  PointSet common = Y.full_set();
  for (FlatId l : images) common &= Y.flat(l);
  r.concurrent = common.count() == 1;
  if (r.concurrent) {
    r.concurrency_point = static_cast<PointId>(common.find_first());
    r.concurrency = normalize_projective(K, mat_vec(r.to_frame, Y.coords(r.concurrency_point)));
  }
  return r;
}

bool Char3Check::holds() const {
  const bool printed = base.rhombus_shape && base.a == 2 && base.b == 2 && base.c == 1 && base.d == 1 &&
                       base.concurrent && base.concurrency == Vec{1, 0, 1};
  const bool solved = solutions.size() == 1 && solutions[0] == std::array<Elem, 4>{2, 2, 1, 1};
  return printed && solved && twist_agrees && symmetries_agree;
}

Char3Check concurrency_char3_check() {
  const Field K3 = field_parse("3");
  const Field K9 = field_parse("9");
  auto A = affine_space(K3, 2);
  auto Y = projective_space(K9, 2);
  const auto iota = field_morphisms(K3, K9).front();
  GeoMap phi{A, Y, std::vector<PointId>(A->size())};
  for (PointId x = 0; x < A->size(); ++x) phi.images[x] = Y->point_of(prepend(1, apply_sigma(iota, A->coords(x))));
  const std::array<PointId, 4> square{A->point_of(Vec{0, 0}), A->point_of(Vec{1, 0}), A->point_of(Vec{1, 1}),
                                      A->point_of(Vec{0, 1})};
  Char3Check out;
  out.base = char3_frame_coordinates(phi, square);

  // Incidences: each rhombus side passes through the opposite square vertex.
  const FiniteField& K = *K9;
  auto det = [&](const Vec& x, const Vec& y, const Vec& z) {
    return mat_rank(Matrix::from_rows(K9, {x, y, z})) < 3;
  };
  const Vec vA{1, 0, 0}, vB{0, 1, 0}, vC{0, 0, 1}, vU{1, 1, 1};
  for (Elem a = 1; a < K.order(); ++a)
    for (Elem b = 1; b < K.order(); ++b)
      for (Elem c = 1; c < K.order(); ++c)
        for (Elem d = 1; d < K.order(); ++d) {
          const Vec rac{1, 0, a}, rcb{0, 1, b}, rbu{1, K.add(1, c), 1}, rua{K.add(1, d), 1, 1};
          if (det(rac, rcb, vU) && det(rcb, rbu, vA) && det(rbu, rua, vC) && det(rua, rac, vB))
            out.solutions.push_back({a, b, c, d});
        }

  auto same = [](const Char3Report& x, const Char3Report& y) {
    return x.rhombus_shape == y.rhombus_shape && x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d &&
           x.concurrent == y.concurrent && x.concurrency == y.concurrency;
  };

  // A semilinear collineation with the Frobenius twist.
  Matrix g = Matrix::from_rows(K9, {{1, 3, 0}, {0, 1, 5}, {2, 0, 1}});
  SemilinearMap twist{g, field_morphisms(K9, K9).back()};
  GeoMap twisted = phi;
  for (auto& y : twisted.images) y = Y->point_of(twist(Y->coords(y)));
  out.twist_agrees = same(char3_frame_coordinates(twisted, square), out.base);

  // Relabel the square by its eight symmetries; frame changes must match.
  out.symmetries_agree = true;
  for (int reflect = 0; reflect < 2; ++reflect)
    for (int k = 0; k < 4; ++k) {
      std::array<PointId, 4> s{};
      for (int i = 0; i < 4; ++i) s[i] = square[(reflect ? 4 + k - i : k + i) % 4];
      const auto rep = char3_frame_coordinates(phi, s);
      bool ok = same(rep, out.base);
      if (ok) {
        const Matrix change = mat_mul(out.base.to_frame, mat_inverse(rep.to_frame));
        ok = normalize_projective(K, mat_vec(change, rep.concurrency)) ==
             normalize_projective(K, mat_vec(out.base.to_frame, Y->coords(rep.concurrency_point)));
      }
      out.symmetries_agree = out.symmetries_agree && ok;
    }
  return out;
}

}  // namespace geomkit
