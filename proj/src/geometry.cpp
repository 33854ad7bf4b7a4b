#include "geomkit/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "geomkit/error.hpp"

namespace geomkit {

std::vector<PointId> to_ids(const PointSet& s) {
  std::vector<PointId> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) out.push_back(static_cast<PointId>(i));
  return out;
}

PointSet to_set(std::size_t n, std::span<const PointId> ids) {
  PointSet s(n);
  for (PointId x : ids) {
    if (x >= n) fail(ErrorKind::UnknownPoint, "point id " + std::to_string(x) + " out of range");
    s.set(x);
  }
  return s;
}

namespace {

struct HashSink {
  std::size_t* h;
  HashSink& operator*() { return *this; }
  HashSink& operator++() { return *this; }
  HashSink operator++(int) { return *this; }
  HashSink& operator=(std::uint64_t b) {
    *h ^= b + 0x9e3779b97f4a7c15ull + (*h << 6) + (*h >> 2);
    return *this;
  }
};

}  // namespace

std::size_t PointSetHash::operator()(const PointSet& s) const {
  std::size_t h = s.size() * 0x9e3779b97f4a7c15ull;
  boost::to_block_range(s, HashSink{&h});
  return h;
}

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::Explicit: return "explicit";
    case Backend::Affine: return "affine";
    case Backend::Projective: return "projective";
    case Backend::Subgeometry: return "subgeometry";
    case Backend::Truncation: return "truncation";
    case Backend::Quotient: return "quotient";
  }
  return "unknown";
}

struct Geometry::Lattice {
  std::vector<PointSet> flats;
  std::vector<std::vector<PointId>> points;
  std::vector<int> dims;
  std::vector<std::vector<PointId>> bases;
  std::unordered_map<PointSet, FlatId, PointSetHash> index;
  std::vector<FlatId> jt;  // flats * n
  FlatId empty_closure = 0, whole = 0;
  std::vector<std::vector<FlatId>> by_dim;
  std::vector<FlatId> pair_line;  // n*n when tabulated
};

Geometry::~Geometry() = default;

namespace {

std::string tuple_label(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

std::uint64_t checked_power(std::uint64_t q, int e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    r *= q;
    if (r > cap) fail(ErrorKind::BoundExceeded, "space too large to enumerate");
  }
  return r;
}

constexpr std::uint64_t kMaxPoints = 1u << 20;

}  // namespace

PointSet Geometry::full_set() const {
  PointSet s(n_);
  s.set();
  return s;
}

void Geometry::require_point(PointId x) const {
  if (x >= n_) fail(ErrorKind::UnknownPoint, "point id " + std::to_string(x) + " not in geometry of size " +
                                                 std::to_string(n_));
}

GeometryPtr Geometry::make_explicit(std::vector<std::string> labels, std::vector<std::vector<PointId>> flats) {
  std::shared_ptr<Geometry> g(new Geometry());
  g->backend_ = Backend::Explicit;
  g->n_ = labels.size();
  g->labels_ = std::move(labels);
  for (auto& f : flats) g->declared_.push_back(to_set(g->n_, f));
  return g;
}

GeometryPtr Geometry::make_affine(Field K, int n) {
  if (n < 0) fail(ErrorKind::InvalidInput, "negative dimension");
  const std::uint32_t q = K->order();
  const std::uint64_t count = checked_power(q, n, kMaxPoints);
  std::shared_ptr<Geometry> g(new Geometry());
  g->backend_ = Backend::Affine;
  g->field_ = K;
  g->space_dim_ = n;
  g->n_ = count;
  g->coords_.resize(count);
  g->labels_.resize(count);
  for (std::uint64_t id = 0; id < count; ++id) {
    Vec v(n);
    std::uint64_t c = id;
    for (int i = n; i-- > 0;) {
      v[i] = static_cast<Elem>(c % q);
      c /= q;
    }
    g->labels_[id] = tuple_label(v);
    g->coords_[id] = std::move(v);
  }
  if (count <= kMaxTabulatedPoints) {
    g->add_.resize(count * count);
    for (PointId a = 0; a < count; ++a)
      for (PointId b = 0; b < count; ++b)
        g->add_[a * count + b] = static_cast<PointId>(vec_code(vec_add(*K, g->coords_[a], g->coords_[b]), q));
    g->scale_.resize(q * count);
    for (Elem t = 0; t < q; ++t)
      for (PointId a = 0; a < count; ++a)
        g->scale_[t * count + a] = static_cast<PointId>(vec_code(vec_scale(*K, t, g->coords_[a]), q));
  }
  return g;
}

GeometryPtr Geometry::make_projective(Field K, int n) {
  if (n < 0) fail(ErrorKind::InvalidInput, "negative dimension");
  const std::uint32_t q = K->order();
  const std::uint64_t total = checked_power(q, n + 1, std::uint64_t{1} << 24);
  std::shared_ptr<Geometry> g(new Geometry());
  g->backend_ = Backend::Projective;
  g->field_ = K;
  g->space_dim_ = n;
  g->code_to_id_.assign(total, kNoPoint);
  for (std::uint64_t code = 1; code < total; ++code) {
    Vec v(n + 1);
    std::uint64_t c = code;
    for (int i = n + 1; i-- > 0;) {
      v[i] = static_cast<Elem>(c % q);
      c /= q;
    }
    auto first = std::find_if(v.begin(), v.end(), [](Elem x) { return x != 0; });
    if (*first != 1) continue;
    g->code_to_id_[code] = static_cast<PointId>(g->coords_.size());
    g->labels_.push_back(tuple_label(v));
    g->coords_.push_back(std::move(v));
  }
  g->n_ = g->coords_.size();
  if (g->n_ > kMaxPoints) fail(ErrorKind::BoundExceeded, "space too large to enumerate");
  g->build_projective_lines();
  return g;
}

void Geometry::build_projective_lines() {
  if (n_ > kMaxTabulatedPoints) return;
  const FiniteField& K = *field_;
  pair_line_.assign(n_ * n_, 0xffffffffu);
  for (PointId a = 0; a < n_; ++a)
    for (PointId b = a + 1; b < n_; ++b) {
      if (pair_line_[a * n_ + b] != 0xffffffffu) continue;
      PointSet L(n_);
      L.set(a);
      L.set(b);
      for (Elem t = 1; t < K.order(); ++t) L.set(point_of(vec_add(K, coords_[a], vec_scale(K, t, coords_[b]))));
      const auto idx = static_cast<std::uint32_t>(proj_lines_.size());
      const auto pts = to_ids(L);
      for (PointId u : pts)
        for (PointId v : pts)
          if (u != v) pair_line_[u * n_ + v] = idx;
      proj_lines_.push_back(std::move(L));
    }
}

GeometryPtr Geometry::make_subgeometry(GeometryPtr parent, std::span<const PointId> subset) {
  std::vector<PointId> ids(subset.begin(), subset.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (PointId x : ids) parent->require_point(x);
  std::shared_ptr<Geometry> g(new Geometry());
  g->backend_ = Backend::Subgeometry;
  g->n_ = ids.size();
  for (PointId x : ids) g->labels_.push_back(parent->label(x));
  g->parent_ids_ = std::move(ids);
  g->parent_ = std::move(parent);
  return g;
}

GeometryPtr Geometry::make_truncation(GeometryPtr parent, int m) {
  const int d = parent->dimension();
  if (m < 0 || m >= d)
    fail(ErrorKind::BadRank, "truncation rank " + std::to_string(m) + " must satisfy 0 <= m < " + std::to_string(d));
  std::shared_ptr<Geometry> g(new Geometry());
  g->backend_ = Backend::Truncation;
  g->n_ = parent->size();
  g->labels_ = parent->labels();
  g->trunc_m_ = m;
  g->parent_ = std::move(parent);
  return g;
}

GeometryPtr Geometry::make_quotient(GeometryPtr parent, const PointSet& E) {
  if (E.size() != parent->size()) fail(ErrorKind::UnknownPoint, "exceptional set has wrong size");
  auto eidx = parent->flat_index(E);
  if (!eidx) fail(ErrorKind::NotAFlat, "exceptional set is not a flat");
  std::shared_ptr<Geometry> g(new Geometry());
  g->backend_ = Backend::Quotient;
  g->exceptional_ = E;
  g->exceptional_flat_ = *eidx;
  g->class_of_.assign(parent->size(), kNoPoint);
  std::unordered_map<FlatId, PointId> cls;
  for (PointId x = 0; x < parent->size(); ++x) {
    if (E[x]) continue;
    const FlatId J = parent->join_index(*eidx, x);
    auto [it, fresh] = cls.emplace(J, static_cast<PointId>(g->parent_ids_.size()));
    if (fresh) {
      g->parent_ids_.push_back(x);
      g->labels_.push_back("[" + parent->label(x) + "]");
    }
    g->class_of_[x] = it->second;
  }
  g->n_ = g->parent_ids_.size();
  g->parent_ = std::move(parent);
  return g;
}

PointId Geometry::point_of(std::span<const Elem> v) const {
  if (backend_ == Backend::Affine) {
    if (v.size() != static_cast<std::size_t>(space_dim_)) fail(ErrorKind::UnknownPoint, "wrong coordinate count");
    for (Elem x : v)
      if (x >= field_->order()) fail(ErrorKind::UnknownPoint, "coordinate outside field");
    return static_cast<PointId>(vec_code(v, field_->order()));
  }
  if (backend_ == Backend::Projective) {
    if (v.size() != static_cast<std::size_t>(space_dim_ + 1)) fail(ErrorKind::UnknownPoint, "wrong coordinate count");
    for (Elem x : v)
      if (x >= field_->order()) fail(ErrorKind::UnknownPoint, "coordinate outside field");
    if (is_zero(v)) fail(ErrorKind::UnknownPoint, "zero vector has no projective point");
    return code_to_id_[vec_code(normalize_projective(*field_, v), field_->order())];
  }
  fail(ErrorKind::InvalidInput, "coordinates only exist on algebraic backends");
}

PointId Geometry::affine_add(PointId a, PointId b) const {
  if (!add_.empty()) return add_[a * n_ + b];
  return point_of(vec_add(*field_, coords_[a], coords_[b]));
}

PointId Geometry::affine_scale(Elem t, PointId a) const {
  if (!scale_.empty()) return scale_[t * n_ + a];
  return point_of(vec_scale(*field_, t, coords_[a]));
}

PointSet Geometry::raw_join(const PointSet& F, PointId x) const {
  if (F[x]) return F;
  if (F.none()) {
    PointSet s(n_);
    s.set(x);
    return s;
  }
  const PointId s0 = static_cast<PointId>(F.find_first());
  if (backend_ == Backend::Affine) {
    const PointId u = point_of(vec_sub(*field_, coords_[x], coords_[s0]));
    PointSet J = F;
    const auto members = to_ids(F);
    for (Elem t = 1; t < field_->order(); ++t) {
      const PointId ut = affine_scale(t, u);
      for (PointId s : members) J.set(affine_add(s, ut));
    }
    return J;
  }
  if (backend_ == Backend::Projective) {
    PointSet J = F;
    J.set(x);
    const FiniteField& K = *field_;
    for (auto s = F.find_first(); s != PointSet::npos; s = F.find_next(s)) {
      if (!pair_line_.empty()) {
        J |= proj_lines_[pair_line_[s * n_ + x]];
      } else {
        for (Elem t = 1; t < K.order(); ++t) J.set(point_of(vec_add(K, coords_[s], vec_scale(K, t, coords_[x]))));
      }
    }
    return J;
  }
  PointSet A = F;
  A.set(x);
  return raw_closure(A);
}

PointSet Geometry::raw_closure(const PointSet& A) const {
  switch (backend_) {
    case Backend::Explicit: {
      PointSet r = full_set();
      for (const auto& D : declared_)
        if (A.is_subset_of(D)) r &= D;
      return r;
    }
    case Backend::Affine:
    case Backend::Projective: {
      PointSet F(n_);
      for (auto a = A.find_first(); a != PointSet::npos; a = A.find_next(a))
        if (!F[a]) F = raw_join(F, static_cast<PointId>(a));
      return F;
    }
    case Backend::Subgeometry: {
      PointSet P(parent_->size());
      for (auto a = A.find_first(); a != PointSet::npos; a = A.find_next(a)) P.set(parent_ids_[a]);
      const PointSet C = parent_->closure(P);
      PointSet r(n_);
      for (PointId i = 0; i < n_; ++i)
        if (C[parent_ids_[i]]) r.set(i);
      return r;
    }
    case Backend::Truncation: {
      const PointSet C = parent_->closure(A);
      if (parent_->flat_dim(*parent_->flat_index(C)) < trunc_m_) return C;
      return full_set();
    }
    case Backend::Quotient: {
      FlatId idx = exceptional_flat_;
      for (auto a = A.find_first(); a != PointSet::npos; a = A.find_next(a))
        idx = parent_->join_index(idx, parent_ids_[a]);
      const PointSet& F = parent_->flat(idx);
      PointSet r(n_);
      for (PointId i = 0; i < n_; ++i)
        if (F[parent_ids_[i]]) r.set(i);
      return r;
    }
  }
  return A;
}

const Geometry::Lattice& Geometry::lattice() const {
  std::call_once(lattice_once_, [this] { build_lattice(); });
  return *lattice_;
}

const Geometry::Lattice* Geometry::lattice_if_built() const { return lattice_.get(); }

void Geometry::build_lattice() const {
  constexpr std::size_t kMaxFlats = 4'000'000;
  auto L = std::make_unique<Lattice>();
  std::vector<PointSet> flats;
  std::unordered_map<PointSet, FlatId, PointSetHash> index;
  std::vector<FlatId> jt;
  auto insert = [&](PointSet s) -> FlatId {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    const auto id = static_cast<FlatId>(flats.size());
    if (id >= kMaxFlats) fail(ErrorKind::BoundExceeded, "too many flats to tabulate");
    index.emplace(s, id);
    flats.push_back(std::move(s));
    return id;
  };
  const FlatId start = insert(raw_closure(PointSet(n_)));
  for (FlatId i = 0; i < flats.size(); ++i) {
    jt.resize((static_cast<std::size_t>(i) + 1) * n_);
    for (PointId x = 0; x < n_; ++x) {
      if (flats[i][x]) {
        jt[static_cast<std::size_t>(i) * n_ + x] = i;
      } else {
        PointSet J = raw_join(flats[i], x);
        jt[static_cast<std::size_t>(i) * n_ + x] = insert(std::move(J));
      }
    }
  }
  const std::size_t F = flats.size();
  std::vector<std::vector<PointId>> bases(F), pts(F);
  std::vector<int> dims(F);
  for (FlatId i = 0; i < F; ++i) {
    pts[i] = to_ids(flats[i]);
    FlatId g = start;
    for (PointId p : pts[i]) {
      if (!flats[g][p]) {
        bases[i].push_back(p);
        g = jt[static_cast<std::size_t>(g) * n_ + p];
      }
    }
    dims[i] = static_cast<int>(bases[i].size()) - 1;
  }
  std::vector<FlatId> order(F);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](FlatId a, FlatId b) {
    if (dims[a] != dims[b]) return dims[a] < dims[b];
    return pts[a] < pts[b];
  });
  std::vector<FlatId> rank_of(F);
  for (FlatId r = 0; r < F; ++r) rank_of[order[r]] = r;
  L->flats.resize(F);
  L->points.resize(F);
  L->dims.resize(F);
  L->bases.resize(F);
  L->jt.resize(F * n_);
  for (FlatId r = 0; r < F; ++r) {
    const FlatId old = order[r];
    L->flats[r] = std::move(flats[old]);
    L->points[r] = std::move(pts[old]);
    L->dims[r] = dims[old];
    L->bases[r] = std::move(bases[old]);
    for (PointId x = 0; x < n_; ++x)
      L->jt[static_cast<std::size_t>(r) * n_ + x] = rank_of[jt[static_cast<std::size_t>(old) * n_ + x]];
  }
  for (FlatId r = 0; r < F; ++r) L->index.emplace(L->flats[r], r);
  L->empty_closure = rank_of[start];
  FlatId w = L->empty_closure;
  for (PointId x = 0; x < n_; ++x) w = L->jt[static_cast<std::size_t>(w) * n_ + x];
  L->whole = w;
  int maxd = 0;
  for (int d : L->dims) maxd = std::max(maxd, d);
  L->by_dim.resize(maxd + 2);
  for (FlatId r = 0; r < F; ++r) L->by_dim[L->dims[r] + 1].push_back(r);
  if (n_ <= kMaxTabulatedPoints) {
    L->pair_line.assign(n_ * n_, 0);
    for (PointId a = 0; a < n_; ++a) {
      const FlatId fa = L->jt[static_cast<std::size_t>(L->empty_closure) * n_ + a];
      for (PointId b = 0; b < n_; ++b) L->pair_line[a * n_ + b] = L->jt[static_cast<std::size_t>(fa) * n_ + b];
    }
  }
  lattice_ = std::move(L);
}

PointSet Geometry::closure(const PointSet& A) const {
  if (A.size() != n_) fail(ErrorKind::UnknownPoint, "point set has wrong size");
  const Lattice& L = lattice();
  FlatId idx = L.empty_closure;
  for (auto a = A.find_first(); a != PointSet::npos; a = A.find_next(a))
    idx = L.jt[static_cast<std::size_t>(idx) * n_ + a];
  return L.flats[idx];
}

PointSet Geometry::closure(std::span<const PointId> A) const { return lattice().flats[closure_index(A)]; }

FlatId Geometry::closure_index(std::span<const PointId> A) const {
  const Lattice& L = lattice();
  FlatId idx = L.empty_closure;
  for (PointId a : A) {
    require_point(a);
    idx = L.jt[static_cast<std::size_t>(idx) * n_ + a];
  }
  return idx;
}

bool Geometry::is_flat(const PointSet& A) const { return flat_index(A).has_value(); }

int Geometry::dimension() const { return lattice().dims[lattice().whole]; }
std::size_t Geometry::flat_count() const { return lattice().flats.size(); }
const PointSet& Geometry::flat(FlatId f) const { return lattice().flats.at(f); }
const std::vector<PointId>& Geometry::flat_points(FlatId f) const { return lattice().points.at(f); }
int Geometry::flat_dim(FlatId f) const { return lattice().dims.at(f); }
const std::vector<PointId>& Geometry::flat_basis(FlatId f) const { return lattice().bases.at(f); }

std::optional<FlatId> Geometry::flat_index(const PointSet& s) const {
  if (s.size() != n_) return std::nullopt;
  const Lattice& L = lattice();
  auto it = L.index.find(s);
  if (it == L.index.end()) return std::nullopt;
  return it->second;
}

FlatId Geometry::join_index(FlatId f, PointId x) const {
  return lattice().jt[static_cast<std::size_t>(f) * n_ + x];
}

FlatId Geometry::empty_closure_index() const { return lattice().empty_closure; }
FlatId Geometry::whole_index() const { return lattice().whole; }

const std::vector<FlatId>& Geometry::flats_of_dim(int d) const {
  static const std::vector<FlatId> none;
  const Lattice& L = lattice();
  if (d + 1 < 0 || static_cast<std::size_t>(d + 1) >= L.by_dim.size()) return none;
  return L.by_dim[d + 1];
}

FlatId Geometry::line_through(PointId a, PointId b) const {
  const Lattice& L = lattice();
  if (!L.pair_line.empty()) return L.pair_line[a * n_ + b];
  return join_index(join_index(L.empty_closure, a), b);
}

PointSet line_closure(const Geometry& g, const PointSet& A, bool with_planes) {
  PointSet C = A;
    std::vector<PointId> members = to_ids(A);
    for (std::size_t i = 0; i < members.size(); ++i) {
      const PointId y = members[i];
      auto absorb = [&](FlatId f) {
        const PointSet& S = g.flat(f);
        if (S.is_subset_of(C)) return;
        for (PointId p : g.flat_points(f))
          if (!C[p]) {
            C.set(p);
            members.push_back(p);
          }
      };
      for (std::size_t j = 0; j < i; ++j) absorb(g.line_through(y, members[j]));
      if (with_planes) {
        for (std::size_t j = 0; j < i; ++j) {
          const FlatId yz = g.line_through(y, members[j]);
          for (std::size_t k = j + 1; k < i; ++k) absorb(g.join_index(yz, members[k]));
        }
      }
  }
  return C;
}

namespace {

bool generated_check(const Geometry& g, bool with_planes) {
  for (FlatId f = 0; f < g.flat_count(); ++f) {
    for (PointId x = 0; x < g.size(); ++x) {
      if (g.flat(f)[x]) continue;
      PointSet A = g.flat(f);
      A.set(x);
      if (line_closure(g, A, with_planes) != g.flat(g.join_index(f, x))) return false;
    }
  }
  return true;
}

}  // namespace

bool Geometry::lines_generate() const {
  std::call_once(lines_once_, [this] {
    // Projective spaces, and affine spaces off GF(2) above dimension 1, are generated by lines.
    if (backend_ == Backend::Projective)
      lines_generate_ = true;
    else if (backend_ == Backend::Affine)
      lines_generate_ = field_->order() > 2 || space_dim_ <= 1;
    else
      lines_generate_ = generated_check(*this, false);
  });
  return lines_generate_;
}

bool Geometry::lines_and_planes_generate() const {
  std::call_once(lp_once_, [this] {
    lp_generate_ = lines_generate() || backend_ == Backend::Affine || generated_check(*this, true);
  });
  return lp_generate_;
}

bool generated_by_lines(const Geometry& g) { return g.lines_generate(); }
bool generated_by_lines_and_planes(const Geometry& g) { return g.lines_and_planes_generate(); }

Flat make_flat(const Geometry& g, const PointSet& closed) {
  auto idx = g.flat_index(closed);
  if (!idx) fail(ErrorKind::NotAFlat, "set is not closed");
  return Flat{g.flat_points(*idx), g.flat_basis(*idx), g.flat_dim(*idx), closed};
}

Flat closure(const Geometry& g, std::span<const PointId> A) {
  const FlatId f = g.closure_index(A);
  return Flat{g.flat_points(f), g.flat_basis(f), g.flat_dim(f), g.flat(f)};
}

bool independent(const Geometry& g, std::span<const PointId> A) {
  for (std::size_t i = 0; i < A.size(); ++i) {
    std::vector<PointId> rest;
    for (std::size_t j = 0; j < A.size(); ++j)
      if (j != i) rest.push_back(A[j]);
    if (A[i] >= g.size()) fail(ErrorKind::UnknownPoint, "point id out of range");
    if (g.flat(g.closure_index(rest))[A[i]]) return false;
  }
  return true;
}

std::vector<PointId> basis_of(const Geometry& g, const PointSet& flat) {
  std::vector<PointId> basis;
  FlatId cur = g.empty_closure_index();
  for (auto p = flat.find_first(); p != PointSet::npos; p = flat.find_next(p)) {
    if (!g.flat(cur)[p]) {
      basis.push_back(static_cast<PointId>(p));
      cur = g.join_index(cur, static_cast<PointId>(p));
    }
  }
  return basis;
}

int dimension(const Geometry& g, const PointSet& flat) { return static_cast<int>(basis_of(g, flat).size()) - 1; }

Flat join(const Geometry& g, const PointSet& f1, const PointSet& f2) {
  PointSet u = f1 | f2;
  return make_flat(g, g.closure(u));
}

Flat meet(const Geometry& g, const PointSet& f1, const PointSet& f2) {
  PointSet m = f1 & f2;
  if (!g.is_flat(m)) fail(ErrorKind::NotAFlat, "meet of flats is not a flat");
  return make_flat(g, m);
}

GeometryPtr truncate(const GeometryPtr& g, int m) { return Geometry::make_truncation(g, m); }
GeometryPtr subgeometry(const GeometryPtr& g, std::span<const PointId> A) { return Geometry::make_subgeometry(g, A); }
GeometryPtr affine_space(Field K, int n) { return Geometry::make_affine(std::move(K), n); }
GeometryPtr projective_space(Field K, int n) { return Geometry::make_projective(std::move(K), n); }

bool same_flats(const Geometry& a, const Geometry& b) {
  if (a.size() != b.size() || a.flat_count() != b.flat_count()) return false;
  for (FlatId f = 0; f < a.flat_count(); ++f)
    if (a.flat(f) != b.flat(f)) return false;
  return true;
}

bool AxiomReport::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.pass; });
}

const AxiomResult* AxiomReport::find(std::string_view axiom) const {
  for (const auto& r : results)
    if (r.axiom == axiom) return &r;
  return nullptr;
}

AxiomReport check_axioms(const Geometry& g) {
  AxiomReport rep;
  const std::size_t n = g.size();
  const bool expl = g.backend() == Backend::Explicit;

  AxiomResult g1{"G1", true, "", {}};
  if (expl) {
    const auto& D = g.declared_flats();
    const bool has_empty = std::any_of(D.begin(), D.end(), [](const PointSet& s) { return s.none(); });
    const bool has_full = std::any_of(D.begin(), D.end(), [](const PointSet& s) { return s.all(); });
    if (!has_empty || !has_full) {
      g1.pass = false;
      g1.detail = !has_empty ? "empty set is not a listed flat" : "whole point set is not a listed flat";
    }
  } else {
    if (!g.is_flat(g.empty_set())) {
      g1.pass = false;
      g1.detail = "empty set is not closed";
      g1.witness.push_back(to_ids(g.closure(g.empty_set())));
    } else if (!g.is_flat(g.full_set())) {
      g1.pass = false;
      g1.detail = "whole point set is not closed";
    }
  }
  rep.results.push_back(g1);

  AxiomResult g2{"G2", true, "", {}};
  if (expl) {
    const auto& D = g.declared_flats();
    std::unordered_set<PointSet, PointSetHash> declared(D.begin(), D.end());
    PointSet tmp(n);
    for (std::size_t i = 0; i < D.size() && g2.pass; ++i)
      for (std::size_t j = i + 1; j < D.size(); ++j) {
        tmp = D[i];
        tmp &= D[j];
        if (!declared.count(tmp)) {
          g2.pass = false;
          g2.detail = "intersection of two listed flats is not listed";
          g2.witness = {to_ids(D[i]), to_ids(D[j])};
          break;
        }
      }
  } else {
    PointSet tmp(n);
    const std::size_t F = g.flat_count();
    for (FlatId i = 0; i < F && g2.pass; ++i)
      for (FlatId j = i + 1; j < F; ++j) {
        tmp = g.flat(i);
        tmp &= g.flat(j);
        if (!g.is_flat(tmp)) {
          g2.pass = false;
          g2.detail = "intersection of two flats is not a flat";
          g2.witness = {g.flat_points(i), g.flat_points(j)};
          break;
        }
      }
  }
  rep.results.push_back(g2);

  // Exchange: for each flat S the sets cl(S+x) \ S must partition X \ S.
  AxiomResult g3{"G3", true, "", {}};
  std::vector<char> seen;
  for (FlatId s = 0; s < g.flat_count() && g3.pass; ++s) {
    const PointSet& S = g.flat(s);
    std::unordered_set<FlatId> done;
    for (PointId x = 0; x < n && g3.pass; ++x) {
      if (S[x]) continue;
      const FlatId J = g.join_index(s, x);
      if (!done.insert(J).second) continue;
      for (PointId y : g.flat_points(J)) {
        if (S[y] || y == x) continue;
        if (!g.flat(g.join_index(s, y))[x]) {
          g3.pass = false;
          g3.detail = "y lies in the closure of S+x but x does not lie in the closure of S+y";
          g3.witness = {g.flat_points(s), {x}, {y}};
          break;
        }
      }
    }
  }
  rep.results.push_back(g3);

  rep.results.push_back({"G4", true, "pass (finite): every subset of a finite point set is finite", {}});
  return rep;
}

}  // namespace geomkit
