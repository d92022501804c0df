#ifndef CARTANORM_EXACTLA_HPP
#define CARTANORM_EXACTLA_HPP

// Exact linear algebra over the rationals.
//
// Every rank decision made anywhere in the toolkit goes through this file, so
// nothing here ever rounds. Scalars are GMP rationals (always canonical:
// lowest terms, positive denominator). Elimination is fraction-free on
// integer rows; see row_echelon() for the pivoting convention that fixes the
// solution returned by solve_preimage().

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cartanorm {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

/// Parses "p", "p/q" or "-p/q". Throws std::invalid_argument on anything else.
Rational parse_rational(const std::string& text);
/// Canonical "num/den" rendering (den is always printed, "0/1" for zero).
std::string to_fraction_string(const Rational& q);

bool is_zero(std::span<const Rational> v);

/// Dense row-major matrix of rationals. Zero-sized shapes are valid.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns);
  static Matrix column_vector(const Vector& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<Rational> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
  std::span<const Rational> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  Vector column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Rational> v);

  Matrix transpose() const;
  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix select_rows(std::span<const std::size_t> rows) const;
  Matrix hstack(const Matrix& right) const;
  Matrix vstack(const Matrix& below) const;

  bool is_zero() const;

  Matrix operator*(const Matrix& rhs) const;
  Vector operator*(std::span<const Rational> v) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator*(const Rational& s) const;
  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Reduced row echelon form. `pivots[r]` is the pivot column of row r; the
/// returned matrix keeps only the rank nonzero rows.
struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

RowEchelon row_echelon(const Matrix& m);

/// Pivot columns found by forward elimination (the columns of m that are not
/// in the span of the columns to their left).
std::vector<std::size_t> pivot_columns(const Matrix& m);

std::size_t rank(const Matrix& m);

/// A linear subspace of Q^n held by a basis of independent columns. Equality
/// is span equality, never basis equality.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0);

  /// Span of arbitrary columns; dependent columns are dropped.
  static Subspace span(const Matrix& columns);
  static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors);
  static Subspace full(std::size_t ambient_dim);
  /// Adopts the columns as a basis without checking independence.
  static Subspace from_independent_columns(std::size_t ambient_dim, Matrix columns);
  /// Span of the standard basis vectors listed in `coords`.
  static Subspace coordinate(std::size_t ambient_dim, std::span<const std::size_t> coords);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  bool is_zero() const { return dim() == 0; }
  const Matrix& basis() const { return basis_; }
  Vector basis_vector(std::size_t i) const { return basis_.column(i); }

  bool contains(std::span<const Rational> v) const;
  bool contains(const Subspace& other) const;

  /// Coordinates of v in this basis, or nullopt if v is not in the span.
  std::optional<Vector> coordinates(std::span<const Rational> v) const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  Subspace(std::size_t ambient, Matrix independent_columns);

  std::size_t ambient_ = 0;
  Matrix basis_;
};

Subspace kernel_basis(const Matrix& m);
Subspace image_basis(const Matrix& m);

/// Extends a basis of s to one of t by greedily adding basis vectors of t in
/// order; returns the span of the added vectors. Throws PreconditionError
/// unless s is contained in t.
Subspace complement(const Subspace& s, const Subspace& t);

Subspace intersect(const Subspace& s, const Subspace& t);
Subspace sum(const Subspace& s, const Subspace& t);

/// Some x with m x = b, or nullopt when b is outside the image. Free
/// variables of the reduced echelon form are set to zero.
std::optional<Vector> solve_preimage(const Matrix& m, std::span<const Rational> b);

/// Column-wise solve of m X = b; nullopt if any column is unsolvable.
std::optional<Matrix> solve_preimage(const Matrix& m, const Matrix& b);

/// Inverse of a square matrix; throws PreconditionError when singular.
Matrix inverse(const Matrix& m);

Rational determinant(const Matrix& m);

/// True iff m is symmetric with all leading principal minors positive.
bool is_positive_definite(const Matrix& m);

}  // namespace cartanorm

#endif  // CARTANORM_EXACTLA_HPP
