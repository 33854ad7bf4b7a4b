#include "geomkit/affine.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "geomkit/error.hpp"

namespace geomkit {

namespace {

void require_affine(const Geometry& g, const char* what) {
  if (g.backend() != Backend::Affine) fail(ErrorKind::InvalidInput, std::string(what) + " must be an affine space");
}

// 0 for a point pair, otherwise 1 + code of the normalized difference.
std::uint64_t pair_code(const Geometry& A, PointId a, PointId b) {
  if (a == b) return 0;
  const FiniteField& K = *A.field();
  return 1 + vec_code(normalize_projective(K, vec_sub(K, A.coords(b), A.coords(a))), K.order());
}

int image_dim(const Geometry& Y, std::span<const PointId> img) {
  FlatId f = Y.empty_closure_index();
  for (PointId y : img) f = Y.join_index(f, y);
  return Y.flat_dim(f);
}

// Lines of an affine space grouped by direction, in order of first appearance.
std::vector<std::vector<FlatId>> parallel_classes(const Geometry& A) {
  std::map<std::uint64_t, std::size_t> index;
  std::vector<std::vector<FlatId>> classes;
  for (FlatId l : A.flats_of_dim(1)) {
    const auto& pts = A.flat_points(l);
    const auto code = pair_code(A, pts[0], pts[1]);
    auto [it, fresh] = index.emplace(code, classes.size());
    if (fresh) classes.emplace_back();
    classes[it->second].push_back(l);
  }
  return classes;
}

std::string vec_str(std::span<const Elem> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

Vec unit(std::size_t n, std::size_t j) {
  Vec e(n, 0);
  e[j] = 1;
  return e;
}

}  // namespace

AffineFlat affine_flat(const Geometry& A, const PointSet& S) {
  require_affine(A, "geometry");
  if (S.none()) fail(ErrorKind::EmptyFlat, "empty set has no direction");
  if (!A.is_flat(S)) fail(ErrorKind::NotAFlat, "set is not a flat");
  const auto ids = to_ids(S);
  const FiniteField& K = *A.field();
  AffineFlat out;
  out.base = A.coords(ids[0]);
  std::vector<Vec> rows;
  for (std::size_t i = 1; i < ids.size(); ++i) rows.push_back(vec_sub(K, A.coords(ids[i]), out.base));
  const auto n = static_cast<std::size_t>(A.space_dim());
  if (rows.empty()) {
    out.direction = Matrix(A.field(), 0, n);
    return out;
  }
  auto e = rref(Matrix::from_rows(A.field(), rows));
  std::vector<Vec> basis;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) basis.push_back(e.rref.row(r));
  out.direction = basis.empty() ? Matrix(A.field(), 0, n) : Matrix::from_rows(A.field(), basis);
  return out;
}

bool parallel(const AffineFlat& s1, const AffineFlat& s2) {
  if (s1.base.empty() || s2.base.empty()) fail(ErrorKind::EmptyFlat, "parallelism needs nonempty flats");
  return s1.direction.rows() == s2.direction.rows() && s1.direction.data() == s2.direction.data();
}

bool parallel(const Geometry& A, const PointSet& s1, const PointSet& s2) {
  return parallel(affine_flat(A, s1), affine_flat(A, s2));
}

bool is_parallel_morphism_raw(const GeoMap& f) {
  validate(f);
  const Geometry& A = *f.domain;
  const Geometry& B = *f.codomain;
  require_affine(A, "domain");
  require_affine(B, "codomain");
  const std::size_t n = A.size();
  std::vector<std::uint64_t> dc(n * n), ic(n * n);
  for (PointId a = 0; a < n; ++a)
    for (PointId b = 0; b < n; ++b) {
      dc[a * n + b] = pair_code(A, a, b);
      ic[a * n + b] = pair_code(B, f.images[a], f.images[b]);
    }
  for (std::size_t ab = 0; ab < n * n; ++ab)
    for (std::size_t cd = 0; cd < n * n; ++cd)
      if (dc[ab] == dc[cd] && ic[ab] != ic[cd]) return false;
  return true;
}

ParallelReport is_parallel_morphism(const GeoMap& f) {
  validate(f);
  const Geometry& A = *f.domain;
  const Geometry& B = *f.codomain;
  require_affine(A, "domain");
  require_affine(B, "codomain");
  ParallelReport r;
  for (const auto& cls : parallel_classes(A)) {
    const auto& first = A.flat_points(cls[0]);
    const PointId a0 = first[0], b0 = first[1];
    const auto ref = pair_code(B, f.images[a0], f.images[b0]);
    for (FlatId l : cls) {
      const auto& pts = A.flat_points(l);
      for (std::size_t i = 0; i < pts.size() && r.is_parallel; ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
          if (pair_code(B, f.images[pts[i]], f.images[pts[j]]) != ref) {
            r.is_parallel = false;
            r.witness = {a0, b0, pts[i], pts[j]};
            break;
          }
      if (!r.is_parallel) break;
    }
    if (!r.is_parallel) break;
  }
  if (A.size() <= 49) r.oracle_agrees = is_parallel_morphism_raw(f) == r.is_parallel;
  return r;
}

Vec SemiaffineDecomposition::operator()(std::span<const Elem> v) const {
  return vec_add(*differential.matrix.field(), differential(v), translation);
}

SemiaffineDecomposition semiaffine_extract(const GeoMap& f) {
  validate(f);
  const Geometry& A = *f.domain;
  const Geometry& B = *f.codomain;
  require_affine(A, "domain");
  require_affine(B, "codomain");
  if (image_dim(B, f.images) < 2) fail(ErrorKind::DegenerateImage, "image lies in a line");
  const FiniteField& K2 = *B.field();
  const auto n = static_cast<std::size_t>(A.space_dim());
  const auto n2 = static_cast<std::size_t>(B.space_dim());
  const PointId zero = A.point_of(Vec(n, 0));
  const Vec a = B.coords(f.images[zero]);
  std::vector<Vec> psi(A.size());
  for (PointId x = 0; x < A.size(); ++x) psi[x] = vec_sub(K2, B.coords(f.images[x]), a);

  for (PointId x = 0; x < A.size(); ++x)
    for (PointId y = x; y < A.size(); ++y) {
      const PointId s = A.affine_add(x, y);
      if (psi[s] != vec_add(K2, psi[x], psi[y]))
        fail(ErrorKind::NotSemiaffine, "additivity fails: psi(u+v) != psi(u)+psi(v) at u=" + vec_str(A.coords(x)) +
                                           ", v=" + vec_str(A.coords(y)));
    }

  PointId xs = kNoPoint;
  for (std::size_t j = 0; j < n && xs == kNoPoint; ++j) {
    const PointId e = A.point_of(unit(n, j));
    if (!is_zero(psi[e])) xs = e;
  }
  for (PointId x = 0; x < A.size() && xs == kNoPoint; ++x)
    if (!is_zero(psi[x])) xs = x;
  const Vec& px = psi[xs];
  std::size_t lead = 0;
  while (px[lead] == 0) ++lead;
  const FiniteField& K = *A.field();
  std::vector<Elem> table(K.order());
  for (Elem lam = 0; lam < K.order(); ++lam) {
    const Vec& py = psi[A.affine_scale(lam, xs)];
    const Elem s = K2.div(py[lead], px[lead]);
    if (py != vec_scale(K2, s, px))
      fail(ErrorKind::NotSemiaffine, "psi(lambda x) is not a multiple of psi(x) at lambda=" + std::to_string(lam) +
                                         ", x=" + vec_str(A.coords(xs)));
    table[lam] = s;
  }
  std::optional<FieldMorphism> sigma;
  for (auto& m : field_morphisms(A.field(), B.field()))
    if (m.table() == table) sigma = m;
  if (!sigma) fail(ErrorKind::NotSemiaffine, "recovered scalar map is not a field morphism");

  Matrix M(B.field(), n2, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec& c = psi[A.point_of(unit(n, j))];
    for (std::size_t i = 0; i < n2; ++i) M(i, j) = c[i];
  }
  SemiaffineDecomposition d{SemilinearMap{std::move(M), *sigma}, a};
  for (PointId x = 0; x < A.size(); ++x)
    if (d(A.coords(x)) != B.coords(f.images[x]))
      fail(ErrorKind::NotSemiaffine, "round trip differs at " + vec_str(A.coords(x)));
  return d;
}

GeoMap semiaffine_map(const GeometryPtr& A, const GeometryPtr& B, const SemiaffineDecomposition& d) {
  require_affine(*A, "domain");
  require_affine(*B, "codomain");
  GeoMap f{A, B, std::vector<PointId>(A->size())};
  for (PointId x = 0; x < A->size(); ++x) f.images[x] = B->point_of(d(A->coords(x)));
  return f;
}

VerificationReport ft_affine_verify(const GeometryPtr& A, const GeometryPtr& B, const SearchOptions& options) {
  require_affine(*A, "domain");
  require_affine(*B, "codomain");
  VerificationReport r;
  r.theorem = "ft-affine";
  r.domain = describe(*A);
  r.codomain = describe(*B);

  SearchProblem p;
  p.domain_size = A->size();
  p.codomain = B;
  constexpr std::size_t kDensePairs = 64;
  for (const auto& cls : parallel_classes(*A)) {
    std::vector<std::pair<PointId, PointId>> pairs;
    std::vector<std::size_t> line_start;
    for (FlatId l : cls) {
      line_start.push_back(pairs.size());
      const auto& pts = A->flat_points(l);
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) pairs.emplace_back(pts[i], pts[j]);
    }
    line_start.push_back(pairs.size());
    auto link = [&](std::size_t u, std::size_t v) {
      p.constraints.push_back({ConstraintKind::ParallelPairs, kNoPoint,
                               {pairs[u].first, pairs[u].second, pairs[v].first, pairs[v].second}});
    };
    if (pairs.size() <= kDensePairs) {
      for (std::size_t u = 0; u < pairs.size(); ++u)
        for (std::size_t v = u + 1; v < pairs.size(); ++v) link(u, v);
    } else {
      // Dense within each line, star to the first pair across lines.
      for (std::size_t l = 0; l + 1 < line_start.size(); ++l) {
        for (std::size_t u = line_start[l]; u < line_start[l + 1]; ++u)
          for (std::size_t v = u + 1; v < line_start[l + 1]; ++v) link(u, v);
        if (l > 0) link(0, line_start[l]);
      }
    }
  }
  const Geometry& BB = *B;
  p.accept = [&](std::span<const PointId> img) { return image_dim(BB, img) >= 2; };
  auto enumerated = run_search(p, options, &r.search);

  const auto t0 = std::chrono::steady_clock::now();
  const auto n = static_cast<std::size_t>(A->space_dim());
  const auto n2 = static_cast<std::size_t>(B->space_dim());
  const auto sigmas = field_morphisms(A->field(), B->field());
  double total = static_cast<double>(sigmas.size()) * static_cast<double>(B->size());
  for (std::size_t i = 0; i < n * n2; ++i) total *= B->field()->order();
  if (total > 5e7) fail(ErrorKind::BoundExceeded, "semiaffine family too large to construct");
  std::set<std::vector<PointId>> constructed;
  for (const auto& sigma : sigmas) {
    for_each_matrix(n2, n, B->field(), [&](const Matrix& M) {
      std::vector<PointId> lin(A->size());
      for (PointId x = 0; x < A->size(); ++x)
        lin[x] = B->point_of(mat_vec(M, apply_sigma(sigma, A->coords(x))));
      if (image_dim(*B, lin) < 2) return true;
      std::vector<PointId> img(A->size());
      for (PointId t = 0; t < B->size(); ++t) {
        for (PointId x = 0; x < A->size(); ++x) img[x] = B->affine_add(lin[x], t);
        constructed.insert(img);
      }
      return true;
    });
  }
  r.construct_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  compare_families(r, enumerated, std::vector<std::vector<PointId>>(constructed.begin(), constructed.end()));
  return r;
}

ClassicalReport classical_ft_check(const GeoMap& f) {
  validate(f);
  const Geometry& A = *f.domain;
  const Geometry& B = *f.codomain;
  require_affine(A, "domain");
  require_affine(B, "codomain");
  if (A.space_dim() < 2 || B.space_dim() < 2) fail(ErrorKind::HypothesisViolated, "dimensions must be at least 2");
  if (A.field()->order() == 2 || B.field()->order() == 2)
    fail(ErrorKind::HypothesisViolated, "fields of order 2 are excluded");
  if (!is_bijective(f)) fail(ErrorKind::HypothesisViolated, "map is not bijective");
  ClassicalReport r;
  r.collineation = maps_lines_onto_lines(f);
  try {
    const auto d = semiaffine_extract(f);
    r.semiaffinity = d.sigma().is_bijective();
  } catch (const GeomError& e) {
    if (e.kind() != ErrorKind::NotSemiaffine && e.kind() != ErrorKind::DegenerateImage) throw;
    r.semiaffinity = false;
  }
  r.agree = r.collineation == r.semiaffinity;
  return r;
}

SubspaceReport subspace_criterion(const Geometry& A, const PointSet& W) {
  require_affine(A, "geometry");
  const FiniteField& K = *A.field();
  if (K.order() == 2) fail(ErrorKind::FieldTooSmall, "line closure does not characterize subspaces over GF(2)");
  const PointId zero = A.point_of(Vec(static_cast<std::size_t>(A.space_dim()), 0));
  const auto ids = to_ids(W);
  SubspaceReport r;
  r.line_closed = W.test(zero);
  for (std::size_t i = 0; i < ids.size() && r.line_closed; ++i)
    for (std::size_t j = 0; j < ids.size() && r.line_closed; ++j)
      for (Elem t = 0; t < K.order(); ++t) {
        const PointId z = A.affine_add(A.affine_scale(K.sub(1, t), ids[i]), A.affine_scale(t, ids[j]));
        if (!W.test(z)) {
          r.line_closed = false;
          break;
        }
      }
  r.vector_subspace = W.test(zero);
  for (std::size_t i = 0; i < ids.size() && r.vector_subspace; ++i) {
    for (PointId y : ids)
      if (!W.test(A.affine_add(ids[i], y))) r.vector_subspace = false;
    for (Elem t = 0; t < K.order(); ++t)
      if (!W.test(A.affine_scale(t, ids[i]))) r.vector_subspace = false;
  }
  return r;
}

SyntheticIncidence synthetic_from_affine(const Geometry& A) {
  require_affine(A, "geometry");
  SyntheticIncidence s;
  s.labels = A.labels();
  int c = 0;
  for (const auto& cls : parallel_classes(A)) {
    for (FlatId l : cls) {
      s.lines.push_back(A.flat_points(l));
      s.parallel_class.push_back(c);
    }
    ++c;
  }
  return s;
}

AxiomReport synthetic_affine_check(const SyntheticIncidence& s) {
  const std::size_t n = s.size();
  const std::size_t m = s.lines.size();
  if (s.parallel_class.size() != m) fail(ErrorKind::InvalidInput, "one parallel class per line is required");
  std::vector<PointSet> L(m, PointSet(n));
  for (std::size_t l = 0; l < m; ++l)
    for (PointId x : s.lines[l]) {
      if (x >= n) fail(ErrorKind::UnknownPoint, "line mentions point " + std::to_string(x));
      L[l].set(x);
    }
  // First line through each pair, or -1.
  std::vector<int> through(n * n, -1);
  for (std::size_t l = m; l-- > 0;)
    for (PointId a : s.lines[l])
      for (PointId b : s.lines[l])
        if (a != b) through[a * n + b] = static_cast<int>(l);
  auto same_class = [&](int l1, int l2) { return l1 >= 0 && l2 >= 0 && s.parallel_class[l1] == s.parallel_class[l2]; };

  AxiomReport rep;
  AxiomResult a1{"A1", true, "", {}};
  for (PointId a = 0; a < n && a1.pass; ++a)
    for (PointId b = a + 1; b < n; ++b) {
      int count = 0;
      for (std::size_t l = 0; l < m; ++l)
        if (L[l].test(a) && L[l].test(b)) ++count;
      if (count != 1) {
        a1.pass = false;
        a1.detail = "points lie on " + std::to_string(count) + " lines";
        a1.witness = {{a, b}};
        break;
      }
    }
  rep.results.push_back(a1);

  AxiomResult a2{"A2", true, "", {}};
  for (std::size_t l = 0; l < m; ++l)
    if (L[l].count() < 2) {
      a2.pass = false;
      a2.detail = "line with fewer than two points";
      a2.witness = {s.lines[l]};
      break;
    }
  rep.results.push_back(a2);

  AxiomResult a3{"A3", true, "", {}};
  // par[l][p]: the unique line through p parallel to l, when it exists.
  std::vector<std::vector<int>> par(m, std::vector<int>(n, -1));
  for (std::size_t l = 0; l < m && a3.pass; ++l)
    for (PointId p = 0; p < n; ++p) {
      int count = 0;
      for (std::size_t k = 0; k < m; ++k)
        if (s.parallel_class[k] == s.parallel_class[l] && L[k].test(p)) {
          ++count;
          par[l][p] = static_cast<int>(k);
        }
      if (count != 1) {
        a3.pass = false;
        a3.detail = std::to_string(count) + " parallels through the point";
        a3.witness = {s.lines[l], {p}};
        break;
      }
    }
  rep.results.push_back(a3);

  AxiomResult a4{"A4", true, "", {}};
  constexpr std::size_t kA4Limit = 32;
  if (!a1.pass || !a3.pass) {
    a4.detail = "not evaluated: A1 or A3 fails";
  } else if (n > kA4Limit) {
    a4.detail = "not evaluated: more than " + std::to_string(kA4Limit) + " points";
  } else {
    for (PointId a = 0; a < n && a4.pass; ++a)
      for (PointId b = 0; b < n && a4.pass; ++b) {
        if (a == b) continue;
        const int ab = through[a * n + b];
        for (PointId c = 0; c < n && a4.pass; ++c) {
          if (c == a || c == b || L[ab].test(c)) continue;
          const int ac = through[a * n + c], bc = through[b * n + c];
          for (PointId a2p = 0; a2p < n && a4.pass; ++a2p)
            for (PointId b2p = 0; b2p < n; ++b2p) {
              if (a2p == b2p || !same_class(through[a2p * n + b2p], ab)) continue;
              const int l1 = par[ac][a2p], l2 = par[bc][b2p];
              const PointSet& A2B2 = L[through[a2p * n + b2p]];
              bool found = false;
              for (PointId c2 = 0; c2 < n && !found; ++c2)
                found = c2 != a2p && c2 != b2p && L[l1].test(c2) && L[l2].test(c2) && !A2B2.test(c2);
              if (!found) {
                a4.pass = false;
                a4.detail = "no point c' completes the similar triangle";
                a4.witness = {{a, b, c}, {a2p, b2p}};
                break;
              }
            }
        }
      }
  }
  rep.results.push_back(a4);

  // Subsets closed under (a) joining lines and (b) parallels through points.
  AxiomResult sub{"subspace_conditions", true, "", {}};
  constexpr std::size_t kSubsetLimit = 16;
  if (n > kSubsetLimit || !a1.pass || !a3.pass) {
    sub.detail = "not evaluated";
  } else {
    bool three = true;
    for (const auto& l : L)
      if (l.count() < 3) three = false;
    std::size_t only_a = 0, both = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      auto in = [&](PointId x) { return (mask >> x) & 1; };
      bool ca = true;
      for (std::size_t l = 0; l < m && ca; ++l) {
        std::size_t hits = 0;
        for (PointId x : s.lines[l]) hits += in(x);
        if (hits >= 2 && hits != s.lines[l].size()) ca = false;
      }
      if (!ca) continue;
      bool cb = true;
      for (std::size_t l = 0; l < m && cb; ++l) {
        bool inside = true;
        for (PointId x : s.lines[l]) inside = inside && in(x);
        if (!inside) continue;
        for (PointId p = 0; p < n && cb; ++p)
          if (in(p))
            for (PointId x : s.lines[par[l][p]]) cb = cb && in(x);
      }
      (cb ? both : only_a)++;
    }
    sub.detail = std::to_string(both + only_a) + " sets satisfy (a), " + std::to_string(both) + " also (b)";
    if (three && only_a > 0) {
      sub.pass = false;
      sub.detail += "; (b) is not implied although lines have three points";
    }
  }
  rep.results.push_back(sub);
  return rep;
}

}  // namespace geomkit
