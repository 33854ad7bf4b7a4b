#include "geomkit/scalars.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>

#include "geomkit/error.hpp"

namespace geomkit {

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients, lowest first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b over GF(p).
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
    }
    trim(a);
  }
  return a;
}

Poly digits(std::uint64_t n, std::uint32_t p, std::size_t len) {
  Poly d(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    d[i] = static_cast<std::uint32_t>(n % p);
    n /= p;
  }
  return d;
}

bool irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t k = f.size() - 1;
  for (std::size_t d = 1; d <= k / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t n = 0; n < count; ++n) {
      Poly g = digits(n, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly first_irreducible(std::uint32_t p, std::uint32_t k) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t n = 0; n < count; ++n) {
    Poly f = digits(n, p, k);
    f.push_back(1);
    if (irreducible(f, p)) return f;
  }
  fail(ErrorKind::InvalidInput, "no irreducible polynomial found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FiniteField::FiniteField(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), q_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < k; ++i) q_ *= p;
  neg_.resize(q_);
  for (Elem a = 0; a < q_; ++a) {
    Elem r = 0, place = 1, x = a;
    for (std::uint32_t i = 0; i < k_; ++i) {
      const Elem c = x % p_;
      x /= p_;
      r += ((p_ - c) % p_) * place;
      place *= p_;
    }
    neg_[a] = r;
  }
  if (q_ <= 256 && p_ != 2) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (Elem a = 0; a < q_; ++a)
      for (Elem b = 0; b < q_; ++b) {
        Elem r = 0, place = 1, x = a, y = b;
        for (std::uint32_t i = 0; i < k_; ++i) {
          r += ((x % p_ + y % p_) % p_) * place;
          x /= p_;
          y /= p_;
          place *= p_;
        }
        add_table_[static_cast<std::size_t>(a) * q_ + b] = static_cast<std::uint16_t>(r);
      }
  }
  // Smallest generator of the multiplicative group.
  const auto factors = prime_factors(q_ - 1);
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul_poly(r, a);
      a = mul_poly(a, a);
      e >>= 1;
    }
    return r;
  };
  if (q_ > 2) {
    for (Elem g = 2; g < q_; ++g) {
      bool ok = true;
      for (auto f : factors)
        if (slow_pow(g, (q_ - 1) / f) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        gen_ = g;
        break;
      }
    }
  }
  if (q_ <= 4096) {
    log_.assign(q_, 0);
    exp_.assign(2 * static_cast<std::size_t>(q_ - 1), 0);
    Elem x = 1;
    for (Elem i = 0; i < q_ - 1; ++i) {
      exp_[i] = x;
      exp_[i + q_ - 1] = x;
      log_[x] = i;
      x = mul_poly(x, gen_);
    }
    inv_.assign(q_, 0);
    for (Elem a = 1; a < q_; ++a) inv_[a] = exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
}

std::string FiniteField::name() const {
  return k_ == 1 ? std::to_string(p_) : std::to_string(p_) + "^" + std::to_string(k_);
}

Elem FiniteField::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
  Elem r = 0, place = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    r += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return r;
}

Elem FiniteField::neg(Elem a) const { return neg_[a]; }

Elem FiniteField::mul_poly(Elem a, Elem b) const {
  if (k_ == 1) return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_);
  Poly x = digits(a, p_, k_), y = digits(b, p_, k_);
  Poly prod(2 * k_, 0);
  for (std::uint32_t i = 0; i < k_; ++i)
    for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
  Poly r = poly_mod(prod, modulus_, p_);
  Elem out = 0, place = 1;
  for (std::size_t i = 0; i < r.size(); ++i) {
    out += r[i] * place;
    place *= p_;
  }
  return out;
}

Elem FiniteField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (!log_.empty()) return exp_[log_[a] + log_[b]];
  return mul_poly(a, b);
}

Elem FiniteField::inv(Elem a) const {
  if (a == 0) fail(ErrorKind::NoInverse, "zero has no inverse in GF(" + name() + ")");
  if (!inv_.empty()) return inv_[a];
  return pow(a, q_ - 2);
}

Elem FiniteField::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Field field_make(std::uint32_t p, std::uint32_t k, std::uint32_t bound) {
  if (!is_prime(p)) fail(ErrorKind::NotPrimePower, std::to_string(p) + " is not prime");
  if (k < 1) fail(ErrorKind::InvalidInput, "degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > bound)
      fail(ErrorKind::BoundExceeded,
           std::to_string(p) + "^" + std::to_string(k) + " exceeds field bound " + std::to_string(bound));
  }
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, Field> cache;
  std::lock_guard lock(mu);
  auto it = cache.find({p, k});
  if (it != cache.end()) return it->second;
  Field f = std::make_shared<const FiniteField>(p, k, first_irreducible(p, k));
  cache.emplace(std::make_pair(p, k), f);
  return f;
}

Field field_parse(const std::string& text, std::uint32_t bound) {
  auto parse_int = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      fail(ErrorKind::InvalidInput, "bad field '" + text + "'");
    return v;
  };
  const auto caret = text.find('^');
  if (caret != std::string::npos) {
    const auto p = parse_int(std::string_view(text).substr(0, caret));
    const auto k = parse_int(std::string_view(text).substr(caret + 1));
    if (p > UINT32_MAX || k > 64) fail(ErrorKind::BoundExceeded, text);
    return field_make(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k), bound);
  }
  std::uint64_t q = parse_int(text);
  if (q < 2) fail(ErrorKind::NotPrimePower, text + " is not a prime power");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) fail(ErrorKind::NotPrimePower, text + " is not a prime power");
  if (p > UINT32_MAX) fail(ErrorKind::BoundExceeded, text);
  return field_make(static_cast<std::uint32_t>(p), k, bound);
}

FieldMorphism::FieldMorphism(Field source, Field target, std::vector<Elem> table, int frobenius_index)
    : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)), frob_(frobenius_index) {}

bool FieldMorphism::is_identity() const {
  if (source_ != target_) return false;
  for (Elem a = 0; a < table_.size(); ++a)
    if (table_[a] != a) return false;
  return true;
}

std::string FieldMorphism::name() const {
  if (is_identity()) return "identity";
  return "frobenius^" + std::to_string(frob_);
}

std::vector<FieldMorphism> field_morphisms(const Field& K, const Field& K2) {
  std::vector<FieldMorphism> out;
  if (K->characteristic() != K2->characteristic() || K2->degree() % K->degree() != 0) return out;
  const auto& m = K->modulus();
  // Smallest root of the modulus in K2.
  Elem root = 0;
  bool found = false;
  for (Elem r = 0; r < K2->order() && !found; ++r) {
    Elem acc = 0;
    for (std::size_t i = m.size(); i-- > 0;) acc = K2->add(K2->mul(acc, r), m[i]);
    if (acc == 0) {
      root = r;
      found = true;
    }
  }
  if (!found) return out;
  const std::uint32_t p = K->characteristic();
  Elem r = root;
  for (std::uint32_t i = 0; i < K2->degree(); ++i) {
    std::vector<Elem> table(K->order());
    for (Elem a = 0; a < K->order(); ++a) {
      Elem acc = 0, x = a, power = 1;
      for (std::uint32_t j = 0; j < K->degree(); ++j) {
        const Elem c = x % p;
        x /= p;
        acc = K2->add(acc, K2->mul(c, power));
        power = K2->mul(power, r);
      }
      table[a] = acc;
    }
    const bool seen = std::any_of(out.begin(), out.end(), [&](const FieldMorphism& f) { return f.table() == table; });
    if (!seen) out.emplace_back(K, K2, std::move(table), static_cast<int>(i));
    r = K2->frobenius(r);
  }
  return out;
}

FieldMorphism field_identity(const Field& K) {
  std::vector<Elem> table(K->order());
  for (Elem a = 0; a < K->order(); ++a) table[a] = a;
  return FieldMorphism(K, K, std::move(table), 0);
}

FieldMorphism field_morphism_by_name(const Field& K, const Field& K2, const std::string& name) {
  auto all = field_morphisms(K, K2);
  for (auto& f : all)
    if (f.name() == name) return f;
  if (name == "identity" && !all.empty() && all.front().frobenius_index() == 0) return all.front();
  fail(ErrorKind::InvalidInput, "no field morphism named '" + name + "' from GF(" + K->name() + ") to GF(" +
                                    K2->name() + ")");
}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<Vec>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows.front().size();
  Matrix m(std::move(field), rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) fail(ErrorKind::InvalidInput, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vec Matrix::row(std::size_t r) const { return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }

Vec Matrix::col(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

bool is_zero(std::span<const Elem> v) {
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

Vec vec_add(const FiniteField& K, std::span<const Elem> a, std::span<const Elem> b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = K.add(a[i], b[i]);
  return r;
}

Vec vec_sub(const FiniteField& K, std::span<const Elem> a, std::span<const Elem> b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = K.sub(a[i], b[i]);
  return r;
}

Vec vec_scale(const FiniteField& K, Elem s, std::span<const Elem> v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = K.mul(s, v[i]);
  return r;
}

Vec normalize_projective(const FiniteField& K, std::span<const Elem> v) {
  for (Elem x : v)
    if (x != 0) return vec_scale(K, K.inv(x), v);
  return Vec(v.begin(), v.end());
}

Vec apply_sigma(const FieldMorphism& sigma, std::span<const Elem> v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = sigma(v[i]);
  return r;
}

Matrix apply_sigma(const FieldMorphism& sigma, const Matrix& m) {
  Matrix r(sigma.target(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = sigma(m(i, j));
  return r;
}

Vec mat_vec(const Matrix& m, std::span<const Elem> v) {
  const FiniteField& K = *m.field();
  Vec r(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Elem acc = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) acc = K.add(acc, K.mul(m(i, j), v[j]));
    r[i] = acc;
  }
  return r;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const FiniteField& K = *a.field();
  Matrix r(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Elem acc = 0;
      for (std::size_t t = 0; t < a.cols(); ++t) acc = K.add(acc, K.mul(a(i, t), b(t, j)));
      r(i, j) = acc;
    }
  return r;
}

Matrix transpose(const Matrix& m) {
  Matrix r(m.field(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
  return r;
}

Matrix mat_scale(Elem s, const Matrix& m) {
  const FiniteField& K = *m.field();
  Matrix r = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = K.mul(s, m(i, j));
  return r;
}

Echelon rref(const Matrix& m) {
  const FiniteField& K = *m.field();
  Echelon e{m, {}};
  Matrix& a = e.rref;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(piv, j));
    const Elem s = K.inv(a(r, c));
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = K.mul(s, a(r, j));
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Elem f = a(i, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = K.sub(a(i, j), K.mul(f, a(r, j)));
    }
    e.pivots.push_back(c);
    ++r;
  }
  return e;
}

std::size_t mat_rank(const Matrix& m) { return rref(m).pivots.size(); }

std::optional<Matrix> try_inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.rref(i, n + j);
  return inv;
}

Matrix mat_inverse(const Matrix& m) {
  auto inv = try_inverse(m);
  if (!inv) fail(ErrorKind::NoInverse, "matrix is singular or not square");
  return *inv;
}

std::vector<Vec> kernel_basis(const Matrix& m) {
  const FiniteField& K = *m.field();
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = K.neg(e.rref(i, f));
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Vec> solve(const Matrix& m, std::span<const Elem> b) {
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Echelon e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vec x(m.cols(), 0);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.rref(i, m.cols());
  return x;
}

namespace {

struct Reduced {
  Vec row;
  std::size_t pivot;
};

// Reduces v against rows kept in echelon form; returns the residue.
Vec reduce(const FiniteField& K, Vec v, const std::vector<Reduced>& basis) {
  for (const auto& b : basis) {
    const Elem f = v[b.pivot];
    if (f == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = K.sub(v[j], K.mul(f, b.row[j]));
  }
  return v;
}

bool invertible_rec(std::size_t n, const Field& K, Matrix& m, std::size_t r, std::vector<Reduced>& basis,
                    const std::function<bool(const Matrix&)>& visit) {
  if (r == n) return visit(m);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= K->order();
  Vec v(n, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t j = n; j-- > 0;) {
      v[j] = static_cast<Elem>(c % K->order());
      c /= K->order();
    }
    Vec res = reduce(*K, v, basis);
    std::size_t piv = 0;
    while (piv < n && res[piv] == 0) ++piv;
    if (piv == n) continue;
    const Elem s = K->inv(res[piv]);
    for (auto& x : res) x = K->mul(s, x);
    // Keep basis fully reduced on the new pivot.
    std::vector<Reduced> next = basis;
    for (auto& b : next) {
      const Elem f = b.row[piv];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) b.row[j] = K->sub(b.row[j], K->mul(f, res[j]));
    }
    next.push_back({res, piv});
    for (std::size_t j = 0; j < n; ++j) m(r, j) = v[j];
    if (!invertible_rec(n, K, m, r + 1, next, visit)) return false;
  }
  return true;
}

}  // namespace

void for_each_invertible(std::size_t n, const Field& K, const std::function<bool(const Matrix&)>& visit) {
  Matrix m(K, n, n);
  std::vector<Reduced> basis;
  invertible_rec(n, K, m, 0, basis, visit);
}

void for_each_matrix(std::size_t rows, std::size_t cols, const Field& K,
                     const std::function<bool(const Matrix&)>& visit) {
  Matrix m(K, rows, cols);
  const std::size_t cells = rows * cols;
  std::vector<Elem> digits(cells, 0);
  while (true) {
    for (std::size_t i = 0; i < cells; ++i) m(i / cols, i % cols) = digits[i];
    if (!visit(m)) return;
    std::size_t i = cells;
    while (i > 0) {
      --i;
      if (++digits[i] < K->order()) break;
      digits[i] = 0;
      if (i == 0) return;
    }
    if (cells == 0) return;
  }
}

std::uint64_t vec_code(std::span<const Elem> v, std::uint32_t q) {
  std::uint64_t c = 0;
  for (Elem x : v) c = c * q + x;
  return c;
}

SemilinearMap SemilinearMap::after(const SemilinearMap& other) const {
  // M2 s2(M1 s1(v)) = M2 s2(M1) (s2 s1)(v)
  std::vector<Elem> table(other.sigma.source()->order());
  for (Elem a = 0; a < table.size(); ++a) table[a] = sigma(other.sigma(a));
  int idx = 0;
  for (const auto& f : field_morphisms(other.sigma.source(), sigma.target()))
    if (f.table() == table) idx = f.frobenius_index();
  FieldMorphism comp(other.sigma.source(), sigma.target(), std::move(table), idx);
  return SemilinearMap{mat_mul(matrix, apply_sigma(sigma, other.matrix)), std::move(comp)};
}

bool proportional(const SemilinearMap& a, const SemilinearMap& b) {
  if (!(a.sigma == b.sigma)) return false;
  if (a.matrix.rows() != b.matrix.rows() || a.matrix.cols() != b.matrix.cols()) return false;
  const FiniteField& K = *a.matrix.field();
  const auto& da = a.matrix.data();
  const auto& db = b.matrix.data();
  std::optional<Elem> lambda;
  for (std::size_t i = 0; i < da.size(); ++i) {
    if ((da[i] == 0) != (db[i] == 0)) return false;
    if (da[i] == 0) continue;
    const Elem r = K.div(da[i], db[i]);
    if (lambda && *lambda != r) return false;
    lambda = r;
  }
  return lambda.has_value();
}

}  // namespace geomkit
