#include "cartanorm/error.hpp"
#include "cartanorm/exactla.hpp"

#include <utility>

namespace cartanorm {
namespace {

using IntRow = std::vector<mpz_class>;

IntRow integer_row(std::span<const Rational> r) {
  mpz_class l = 1;
  for (const auto& x : r)
    if (sgn(x) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntRow out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    if (sgn(r[i]) != 0) out[i] = r[i].get_num() * (l / r[i].get_den());
  return out;
}

void make_primitive(IntRow& row) {
  mpz_class g = 0;
  for (const auto& x : row) {
    if (sgn(x) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g <= 1) return;
  for (auto& x : row)
    if (sgn(x) != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// Integer Gauss-Jordan. Pivot row is the one with the smallest nonzero
// entry in the current column; rows are kept primitive after every update.
std::vector<std::size_t> integer_gauss_jordan(std::vector<IntRow>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  mpz_class g, a, b;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t best = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      if (best == rows.size() || mpz_cmpabs(rows[r][c].get_mpz_t(), rows[best][c].get_mpz_t()) < 0) best = r;
    }
    if (best == rows.size()) continue;
    std::swap(rows[rank], rows[best]);
    IntRow& piv = rows[rank];
    make_primitive(piv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || sgn(rows[r][c]) == 0) continue;
      IntRow& row = rows[r];
      mpz_gcd(g.get_mpz_t(), piv[c].get_mpz_t(), row[c].get_mpz_t());
      mpz_divexact(a.get_mpz_t(), piv[c].get_mpz_t(), g.get_mpz_t());
      mpz_divexact(b.get_mpz_t(), row[c].get_mpz_t(), g.get_mpz_t());
      for (std::size_t j = 0; j < cols; ++j) {
        if (a != 1 && sgn(row[j]) != 0) row[j] *= a;
        if (sgn(piv[j]) != 0) mpz_submul(row[j].get_mpz_t(), b.get_mpz_t(), piv[j].get_mpz_t());
      }
      make_primitive(row);
    }
    pivots.push_back(c);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

}  // namespace

RowEchelon row_echelon(const Matrix& m) {
  std::vector<IntRow> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!is_zero(m.row(r))) rows.push_back(integer_row(m.row(r)));
  RowEchelon out;
  out.pivots = integer_gauss_jordan(rows, m.cols());
  out.reduced = Matrix(rows.size(), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const mpz_class& p = rows[r][out.pivots[r]];
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (sgn(rows[r][c]) == 0) continue;
      Rational q(rows[r][c], p);
      q.canonicalize();
      out.reduced(r, c) = q;
    }
  }
  return out;
}

std::vector<std::size_t> pivot_columns(const Matrix& m) {
  std::vector<IntRow> rows;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!is_zero(m.row(r))) rows.push_back(integer_row(m.row(r)));
  return integer_gauss_jordan(rows, m.cols());
}

std::size_t rank(const Matrix& m) { return pivot_columns(m).size(); }

std::optional<Vector> solve_preimage(const Matrix& m, std::span<const Rational> b) {
  if (b.size() != m.rows()) throw DimensionError("solve_preimage: right-hand side length mismatch");
  Vector bv(b.begin(), b.end());
  auto x = solve_preimage(m, Matrix::column_vector(bv));
  if (!x) return std::nullopt;
  return x->column(0);
}

std::optional<Matrix> solve_preimage(const Matrix& m, const Matrix& b) {
  if (b.rows() != m.rows()) throw DimensionError("solve_preimage: right-hand side row mismatch");
  const std::size_t n = m.cols();
  const RowEchelon e = row_echelon(m.hstack(b));
  Matrix x(n, b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= n) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.reduced(r, n + j);
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
  if (rank(m) != m.rows()) throw PreconditionError("inverse of a singular matrix");
  return *solve_preimage(m, Matrix::identity(m.rows()));
}

Rational determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  Matrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(a(r, c)) == 0) continue;
      const Rational f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

bool is_positive_definite(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m(i, j) != m(j, i)) return false;
  // Pivots of elimination without row exchanges are ratios of consecutive
  // leading principal minors.
  Matrix a = m;
  for (std::size_t c = 0; c < n; ++c) {
    if (sgn(a(c, c)) <= 0) return false;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(a(r, c)) == 0) continue;
      const Rational f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return true;
}

}  // namespace cartanorm
