#include "cartanorm/error.hpp"
#include "cartanorm/exactla.hpp"

namespace cartanorm {

Subspace::Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(ambient_dim, 0) {}

Subspace::Subspace(std::size_t ambient, Matrix independent_columns)
    : ambient_(ambient), basis_(std::move(independent_columns)) {}

Subspace Subspace::from_independent_columns(std::size_t ambient_dim, Matrix columns) {
  if (columns.rows() != ambient_dim) throw DimensionError("basis rows do not match ambient dimension");
  return Subspace(ambient_dim, std::move(columns));
}

Subspace Subspace::span(const Matrix& columns) { return image_basis(columns); }

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
  return image_basis(Matrix::from_columns(ambient_dim, vectors));
}

Subspace Subspace::full(std::size_t ambient_dim) {
  return Subspace(ambient_dim, Matrix::identity(ambient_dim));
}

Subspace Subspace::coordinate(std::size_t ambient_dim, std::span<const std::size_t> coords) {
  Matrix b(ambient_dim, coords.size());
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (coords[j] >= ambient_dim) throw DimensionError("coordinate index out of range");
    b(coords[j], j) = 1;
  }
  return image_basis(b);
}

bool Subspace::contains(std::span<const Rational> v) const {
  if (v.size() != ambient_) throw DimensionError("Subspace::contains: ambient mismatch");
  if (cartanorm::is_zero(v)) return true;
  return coordinates(v).has_value();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionError("Subspace::contains: ambient mismatch");
  if (other.dim() == 0) return true;
  if (other.dim() > dim()) return false;
  return rank(basis_.hstack(other.basis_)) == dim();
}

std::optional<Vector> Subspace::coordinates(std::span<const Rational> v) const {
  if (v.size() != ambient_) throw DimensionError("Subspace::coordinates: ambient mismatch");
  return solve_preimage(basis_, v);
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_ == b.ambient_ && a.dim() == b.dim() && a.contains(b);
}

Subspace kernel_basis(const Matrix& m) {
  const RowEchelon e = row_echelon(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> vecs;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v(n);
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    vecs.push_back(std::move(v));
  }
  return Subspace::span(n, vecs);
}

Subspace image_basis(const Matrix& m) {
  const auto piv = pivot_columns(m);
  return Subspace::from_independent_columns(m.rows(), m.select_columns(piv));
}

Subspace complement(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim()) throw DimensionError("complement: ambient mismatch");
  if (!t.contains(s)) throw PreconditionError("complement: first subspace is not contained in the second");
  const auto piv = pivot_columns(s.basis().hstack(t.basis()));
  std::vector<std::size_t> added;
  for (auto p : piv)
    if (p >= s.dim()) added.push_back(p - s.dim());
  return Subspace::from_independent_columns(t.ambient_dim(), t.basis().select_columns(added));
}

Subspace intersect(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim()) throw DimensionError("intersect: ambient mismatch");
  if (s.is_zero() || t.is_zero()) return Subspace(s.ambient_dim());
  const Subspace k = kernel_basis(s.basis().hstack(t.basis() * Rational(-1)));
  std::vector<std::size_t> first(s.dim());
  for (std::size_t i = 0; i < first.size(); ++i) first[i] = i;
  const Matrix coeffs = k.basis().select_rows(first);
  return Subspace::span(s.basis() * coeffs);
}

Subspace sum(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim()) throw DimensionError("sum: ambient mismatch");
  return Subspace::span(s.basis().hstack(t.basis()));
}

}  // namespace cartanorm
