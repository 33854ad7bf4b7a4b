/// @file scalars.hpp
/// Finite fields GF(p^k), field morphisms, vectors and matrices over them.
///
/// An element of GF(p^k) is the integer sum c_i p^i of the coefficients of
/// its polynomial representative c_0 + c_1 x + ... + c_{k-1} x^{k-1}.
/// Elements 0..p-1 form the prime subfield.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace geomkit {

using Elem = std::uint32_t;
using Vec = std::vector<Elem>;

inline constexpr std::uint32_t kDefaultFieldBound = 8192;

class FiniteField;
using Field = std::shared_ptr<const FiniteField>;

class FiniteField {
 public:
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return k_; }
  std::uint32_t order() const { return q_; }
  /// Monic modulus coefficients c_0..c_k (c_k = 1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  /// "p^k" form, or "p" for prime fields.
  std::string name() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  /// Throws NoInverse on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(Elem a) const { return pow(a, p_); }
  /// A generator of the multiplicative group.
  Elem primitive() const { return gen_; }
  /// The class of x in the polynomial representation (0 when k = 1).
  Elem generator_x() const { return k_ == 1 ? 0 : p_; }

  FiniteField(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus);

 private:
  Elem mul_poly(Elem a, Elem b) const;

  std::uint32_t p_, k_, q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint16_t> add_table_;  // q*q, small fields only
  std::vector<Elem> neg_;
  std::vector<Elem> log_, exp_;  // exp_ has length 2(q-1)
  std::vector<Elem> inv_;
  Elem gen_ = 1;
};

bool is_prime(std::uint64_t n);

/// Canonical GF(p^k). Instances are cached, so equal fields share one pointer.
Field field_make(std::uint32_t p, std::uint32_t k, std::uint32_t bound = kDefaultFieldBound);
/// Accepts "p^k" or a prime power written as an integer.
Field field_parse(const std::string& text, std::uint32_t bound = kDefaultFieldBound);

/// A unital ring morphism between finite fields, stored as an image table.
class FieldMorphism {
 public:
  FieldMorphism(Field source, Field target, std::vector<Elem> table, int frobenius_index);

  Elem operator()(Elem a) const { return table_[a]; }
  const Field& source() const { return source_; }
  const Field& target() const { return target_; }
  const std::vector<Elem>& table() const { return table_; }
  bool is_identity() const;
  bool is_bijective() const { return source_->order() == target_->order(); }
  /// Smallest i with this = Frob^i composed with the first embedding.
  int frobenius_index() const { return frob_; }
  std::string name() const;

  friend bool operator==(const FieldMorphism& a, const FieldMorphism& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.table_ == b.table_;
  }

 private:
  Field source_, target_;
  std::vector<Elem> table_;
  int frob_;
};

/// All unital ring morphisms K -> K2, ordered by frobenius index.
std::vector<FieldMorphism> field_morphisms(const Field& K, const Field& K2);
FieldMorphism field_identity(const Field& K);
/// Parses "identity" or "frobenius^i".
FieldMorphism field_morphism_by_name(const Field& K, const Field& K2, const std::string& name);

class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols);
  static Matrix identity(Field field, std::size_t n);
  static Matrix from_rows(Field field, const std::vector<Vec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }
  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Vec row(std::size_t r) const;
  Vec col(std::size_t c) const;
  const std::vector<Elem>& data() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ &&
           (a.field_ == b.field_);
  }

 private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> data_;
};

bool is_zero(std::span<const Elem> v);
Vec vec_add(const FiniteField& K, std::span<const Elem> a, std::span<const Elem> b);
Vec vec_sub(const FiniteField& K, std::span<const Elem> a, std::span<const Elem> b);
Vec vec_scale(const FiniteField& K, Elem s, std::span<const Elem> v);
/// Scales so the first nonzero coordinate is 1; the zero vector is returned unchanged.
Vec normalize_projective(const FiniteField& K, std::span<const Elem> v);
/// Applies sigma coordinatewise.
Vec apply_sigma(const FieldMorphism& sigma, std::span<const Elem> v);
Matrix apply_sigma(const FieldMorphism& sigma, const Matrix& m);

Vec mat_vec(const Matrix& m, std::span<const Elem> v);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
Matrix mat_scale(Elem s, const Matrix& m);

struct Echelon {
  Matrix rref;
  std::vector<std::size_t> pivots;
};
Echelon rref(const Matrix& m);
std::size_t mat_rank(const Matrix& m);
/// Throws NoInverse when singular or not square.
Matrix mat_inverse(const Matrix& m);
std::optional<Matrix> try_inverse(const Matrix& m);
/// Basis of {v : m v = 0}, one vector per free column.
std::vector<Vec> kernel_basis(const Matrix& m);
/// Solves m x = b; nullopt when inconsistent.
std::optional<Vec> solve(const Matrix& m, std::span<const Elem> b);

/// Visits every invertible n x n matrix in row-major lexicographic order.
/// Returning false from the callback stops the enumeration.
void for_each_invertible(std::size_t n, const Field& K, const std::function<bool(const Matrix&)>& visit);
/// Visits every matrix of the given shape in row-major lexicographic order.
void for_each_matrix(std::size_t rows, std::size_t cols, const Field& K,
                     const std::function<bool(const Matrix&)>& visit);

/// v -> M sigma(v), with M of shape (target dim) x (source dim) over the target field.
struct SemilinearMap {
  Matrix matrix;
  FieldMorphism sigma;

  Vec operator()(std::span<const Elem> v) const { return mat_vec(matrix, apply_sigma(sigma, v)); }
  /// (this after other); requires the fields to chain.
  SemilinearMap after(const SemilinearMap& other) const;
};

/// True when a = lambda b for some nonzero lambda and the field morphisms agree.
bool proportional(const SemilinearMap& a, const SemilinearMap& b);

/// Base-q integer code of a vector, first coordinate most significant.
std::uint64_t vec_code(std::span<const Elem> v, std::uint32_t q);

}  // namespace geomkit
