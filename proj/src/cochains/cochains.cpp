#include "cartanorm/cochains.hpp"

#include "cartanorm/error.hpp"

#include <algorithm>

namespace cartanorm {

namespace {

void enumerate_tuples(const std::vector<std::size_t>& items, std::size_t k, std::size_t start,
                      std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < items.size(); ++i) {
    cur.push_back(items[i]);
    enumerate_tuples(items, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

HomSpace::HomSpace(std::vector<int> weights, std::size_t arity)
    : weights_(std::move(weights)), arity_(arity), inputs_(negative_positions(weights_)) {
  std::vector<std::size_t> cur;
  enumerate_tuples(inputs_, arity_, 0, cur, tuples_);
  for (std::size_t p = 0; p < tuples_.size(); ++p) position_[tuples_[p]] = p;
  const std::size_t n = weights_.size();
  coord_weight_.resize(dim());
  for (std::size_t p = 0; p < tuples_.size(); ++p) {
    int in = 0;
    for (auto a : tuples_[p]) in += weights_[a];
    for (std::size_t t = 0; t < n; ++t) coord_weight_[p * n + t] = weights_[t] - in;
  }
}

std::optional<std::size_t> HomSpace::tuple_position(const std::vector<std::size_t>& tuple) const {
  auto it = position_.find(tuple);
  if (it == position_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> HomSpace::coordinates_of_weight(int l) const { return positions_with_weight(coord_weight_, l); }

std::vector<std::size_t> HomSpace::coordinates_of_weight_at_least(int l) const {
  return positions_with_weight_at_least(coord_weight_, l);
}

int HomSpace::min_weight() const { return coord_weight_.empty() ? 0 : cartanorm::min_weight(coord_weight_); }
int HomSpace::max_weight() const { return coord_weight_.empty() ? -1 : cartanorm::max_weight(coord_weight_); }

std::optional<int> HomSpace::homogeneity(std::span<const Rational> v) const {
  if (v.size() != dim()) throw DimensionError("homogeneity: vector length mismatch");
  std::optional<int> h;
  for (std::size_t c = 0; c < v.size(); ++c)
    if (sgn(v[c]) != 0) h = h ? std::min(*h, coord_weight_[c]) : coord_weight_[c];
  return h;
}

std::string HomSpace::coordinate_label(std::size_t coord, const LieAlgebra& l) const {
  std::string s = "(";
  const auto& tup = tuples_[tuple_of(coord)];
  for (std::size_t i = 0; i < tup.size(); ++i) {
    if (i) s += ",";
    s += l.label(tup[i]);
  }
  return s + ")->" + l.label(target_of(coord));
}

Matrix SparseMatrix::dense() const {
  Matrix m(rows, cols);
  for (const auto& [r, c, v] : entries) m(r, c) += v;
  return m;
}

Matrix SparseMatrix::block(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const {
  std::vector<std::size_t> rmap(rows, rows), cmap(cols, cols);
  for (std::size_t i = 0; i < row_ids.size(); ++i) rmap[row_ids[i]] = i;
  for (std::size_t j = 0; j < col_ids.size(); ++j) cmap[col_ids[j]] = j;
  Matrix m(row_ids.size(), col_ids.size());
  for (const auto& [r, c, v] : entries)
    if (rmap[r] != rows && cmap[c] != cols) m(rmap[r], cmap[c]) += v;
  return m;
}

Vector SparseMatrix::apply(std::span<const Rational> v) const {
  if (v.size() != cols) throw DimensionError("sparse apply: vector length mismatch");
  Vector out(rows);
  for (const auto& [r, c, x] : entries)
    if (sgn(v[c]) != 0) out[r] += x * v[c];
  return out;
}

void SparseBuilder::add(std::size_t r, std::size_t c, const Rational& v) {
  if (sgn(v) == 0) return;
  acc_[{r, c}] += v;
}

SparseMatrix SparseBuilder::build() const {
  SparseMatrix m{rows_, cols_, {}};
  for (const auto& [rc, v] : acc_)
    if (sgn(v) != 0) m.entries.emplace_back(rc.first, rc.second, v);
  return m;
}

std::optional<std::pair<std::vector<std::size_t>, int>> insert_sorted(const std::vector<std::size_t>& tuple,
                                                                     std::size_t u, std::size_t at) {
  std::size_t pos = 0;
  for (auto x : tuple) {
    if (x == u) return std::nullopt;
    if (x < u) ++pos;
  }
  std::vector<std::size_t> out = tuple;
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), u);
  const std::size_t moves = pos > at ? pos - at : at - pos;
  return std::make_pair(std::move(out), moves % 2 == 0 ? 1 : -1);
}

namespace {

std::vector<std::size_t> without(const std::vector<std::size_t>& t, std::size_t i) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < t.size(); ++a)
    if (a != i) out.push_back(t[a]);
  return out;
}

std::vector<std::size_t> without2(const std::vector<std::size_t>& t, std::size_t i, std::size_t j) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < t.size(); ++a)
    if (a != i && a != j) out.push_back(t[a]);
  return out;
}

}  // namespace

SparseMatrix cochain_differential(const GradedLieAlgebra& g, const HomSpace& from, const HomSpace& to) {
  const std::size_t n = g.dim();
  if (to.arity() != from.arity() + 1 || from.basis_weights() != g.degree || to.basis_weights() != g.degree)
    throw DimensionError("cochain_differential: incompatible spaces");
  const LieAlgebra& l = g.alg;
  SparseBuilder b(to.dim(), from.dim());
  for (std::size_t jp = 0; jp < to.tuple_count(); ++jp) {
    const auto& J = to.tuple(jp);
    for (std::size_t i = 0; i < J.size(); ++i) {
      const Rational sign = i % 2 == 0 ? 1 : -1;
      const std::size_t ip = *from.tuple_position(without(J, i));
      // (-1)^i [X_i, phi(..., X_i omitted, ...)]
      for (std::size_t s = 0; s < n; ++s)
        for (const auto& t : l.bracket_terms(J[i], s)) b.add(to.coordinate(jp, t.k), from.coordinate(ip, s), sign * t.c);
    }
    for (std::size_t i = 0; i < J.size(); ++i)
      for (std::size_t j = i + 1; j < J.size(); ++j) {
        const auto rest = without2(J, i, j);
        const int sign = (i + j) % 2 == 0 ? 1 : -1;
        for (const auto& t : l.bracket_terms(J[i], J[j])) {
          if (g.degree[t.k] >= 0) throw PreconditionError("cochain_differential: negative part is not a subalgebra");
          auto ins = insert_sorted(rest, t.k, 0);
          if (!ins) continue;
          const std::size_t ip = *from.tuple_position(ins->first);
          const Rational c = t.c * (sign * ins->second);
          for (std::size_t s = 0; s < n; ++s) b.add(to.coordinate(jp, s), from.coordinate(ip, s), c);
        }
      }
  }
  return b.build();
}

CochainComplex::CochainComplex(GradedLieAlgebra g, std::size_t max_arity) : g_(std::move(g)) {
  if (!check_graded(g_)) throw PreconditionError("CochainComplex: algebra is not graded");
  for (std::size_t k = 0; k <= max_arity; ++k) spaces_.emplace_back(g_.degree, k);
  for (std::size_t k = 0; k < max_arity; ++k) diffs_.push_back(cochain_differential(g_, spaces_[k], spaces_[k + 1]));
}

const HomSpace& CochainComplex::space(std::size_t k) const {
  if (k >= spaces_.size()) throw PreconditionError("CochainComplex: arity beyond the built range");
  return spaces_[k];
}

const SparseMatrix& CochainComplex::differential(std::size_t k) const {
  if (k >= diffs_.size()) throw PreconditionError("CochainComplex: differential beyond the built range");
  return diffs_[k];
}

Vector CochainComplex::apply_differential(std::size_t k, std::span<const Rational> phi) const {
  return differential(k).apply(phi);
}

Matrix CochainComplex::differential_block(std::size_t k, int l) const {
  const auto cols = block_coordinates(k, l);
  const auto rows = block_coordinates(k + 1, l);
  return differential(k).block(rows, cols);
}

Subspace CochainComplex::image_in(std::size_t k, int l) const {
  if (k == 0) return Subspace(cochain_dim(0, l));
  return image_basis(differential_block(k - 1, l));
}

Subspace CochainComplex::kernel_in(std::size_t k, int l) const { return kernel_basis(differential_block(k, l)); }

std::size_t CochainComplex::cohomology_dim(std::size_t k, int l) const {
  const std::size_t c = cochain_dim(k, l);
  if (c == 0) return 0;
  const std::size_t out = rank(differential_block(k, l));
  const std::size_t in = k == 0 ? 0 : rank(differential_block(k - 1, l));
  return c - out - in;
}

Vector homogeneous_component(const HomSpace& s, std::span<const Rational> phi, int l) {
  if (phi.size() != s.dim()) throw DimensionError("homogeneous_component: length mismatch");
  Vector out(phi.size());
  for (std::size_t c = 0; c < phi.size(); ++c)
    if (s.weight(c) == l) out[c] = phi[c];
  return out;
}

Subspace cochain_space_basis(const HomSpace& s, int l) {
  const auto coords = s.coordinates_of_weight(l);
  return Subspace::coordinate(s.dim(), coords);
}

Vector embed(std::size_t dim, std::span<const std::size_t> coords, std::span<const Rational> local) {
  if (coords.size() != local.size()) throw DimensionError("embed: length mismatch");
  Vector v(dim);
  for (std::size_t i = 0; i < coords.size(); ++i) v[coords[i]] = local[i];
  return v;
}

Vector restrict_to(std::span<const Rational> v, std::span<const std::size_t> coords) {
  Vector out(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) out[i] = v[coords[i]];
  return out;
}

Matrix embed_columns(std::size_t dim, std::span<const std::size_t> coords, const Matrix& local) {
  if (coords.size() != local.rows()) throw DimensionError("embed_columns: length mismatch");
  Matrix m(dim, local.cols());
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t c = 0; c < local.cols(); ++c) m(coords[i], c) = local(i, c);
  return m;
}

namespace {

// Local index of each basis position within inputs().
std::vector<std::size_t> input_slots(const HomSpace& s) {
  std::vector<std::size_t> slot(s.target_dim(), s.target_dim());
  for (std::size_t a = 0; a < s.inputs().size(); ++a) slot[s.inputs()[a]] = a;
  return slot;
}

Rational minor(const Matrix& b, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  const std::size_t k = rows.size();
  if (k == 0) return 1;
  if (k == 1) return b(rows[0], cols[0]);
  Matrix m(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m(i, j) = b(rows[i], cols[j]);
  return determinant(m);
}

}  // namespace

Vector transform_hom(const HomSpace& s, const Matrix& a, const Matrix& b, std::span<const Rational> f) {
  const std::size_t n = s.target_dim();
  const std::size_t ni = s.inputs().size();
  if (f.size() != s.dim() || a.rows() != n || a.cols() != n || b.rows() != ni || b.cols() != ni)
    throw DimensionError("transform_hom: shape mismatch");
  const auto slot = input_slots(s);
  std::vector<std::vector<std::size_t>> local(s.tuple_count());
  for (std::size_t p = 0; p < s.tuple_count(); ++p)
    for (auto x : s.tuple(p)) local[p].push_back(slot[x]);
  // f o Lambda^k b, then a on the target.
  Vector pulled(s.dim());
  for (std::size_t ip = 0; ip < s.tuple_count(); ++ip) {
    bool any = false;
    for (std::size_t t = 0; t < n && !any; ++t) any = sgn(f[s.coordinate(ip, t)]) != 0;
    if (!any) continue;
    for (std::size_t jp = 0; jp < s.tuple_count(); ++jp) {
      const Rational d = minor(b, local[ip], local[jp]);
      if (sgn(d) == 0) continue;
      for (std::size_t t = 0; t < n; ++t)
        if (sgn(f[s.coordinate(ip, t)]) != 0) pulled[s.coordinate(jp, t)] += d * f[s.coordinate(ip, t)];
    }
  }
  Vector out(s.dim());
  for (std::size_t jp = 0; jp < s.tuple_count(); ++jp)
    for (std::size_t t = 0; t < n; ++t) {
      const Rational& x = pulled[s.coordinate(jp, t)];
      if (sgn(x) == 0) continue;
      for (std::size_t u = 0; u < n; ++u)
        if (sgn(a(u, t)) != 0) out[s.coordinate(jp, u)] += a(u, t) * x;
    }
  return out;
}

SparseMatrix hom_derivation_action(const HomSpace& s, const Matrix& a, const Matrix& d) {
  const std::size_t n = s.target_dim();
  const std::size_t ni = s.inputs().size();
  if (a.rows() != n || a.cols() != n || d.rows() != ni || d.cols() != ni)
    throw DimensionError("hom_derivation_action: shape mismatch");
  const auto slot = input_slots(s);
  SparseBuilder b(s.dim(), s.dim());
  for (std::size_t p = 0; p < s.tuple_count(); ++p) {
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t u = 0; u < n; ++u)
        if (sgn(a(u, t)) != 0) b.add(s.coordinate(p, u), s.coordinate(p, t), a(u, t));
    // (f o D)(e_J) = sum_i f(..., D e_{j_i}, ...)
    const auto& J = s.tuple(p);
    for (std::size_t i = 0; i < J.size(); ++i) {
      const auto rest = without(J, i);
      for (std::size_t bi = 0; bi < ni; ++bi) {
        const Rational& c = d(bi, slot[J[i]]);
        if (sgn(c) == 0) continue;
        auto ins = insert_sorted(rest, s.inputs()[bi], i);
        if (!ins) continue;
        const std::size_t q = *s.tuple_position(ins->first);
        for (std::size_t t = 0; t < n; ++t) b.add(s.coordinate(p, t), s.coordinate(q, t), -c * ins->second);
      }
    }
  }
  return b.build();
}

Splitting::Splitting(std::vector<int> index, Matrix s) : index_(std::move(index)), s_(std::move(s)), phi_(inverse(s_)) {}

Splitting Splitting::canonical(const FilteredLieAlgebra& f) { return Splitting(f.index, Matrix::identity(f.dim())); }

Splitting Splitting::from_matrix(const FilteredLieAlgebra& f, Matrix s) {
  const std::size_t n = f.dim();
  if (s.rows() != n || s.cols() != n) throw DimensionError("Splitting: matrix has wrong shape");
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t t = 0; t < n; ++t) {
      if (u == t) {
        if (s(u, t) != 1) throw PreconditionError("Splitting: representative must reduce to the basis vector");
      } else if (sgn(s(u, t)) != 0 && f.index[u] <= f.index[t]) {
        throw PreconditionError("Splitting: representative has a component of non-higher index");
      }
    }
  return Splitting(f.index, std::move(s));
}

Splitting Splitting::from_complements(const FilteredLieAlgebra& f, const std::vector<Subspace>& complements) {
  const std::size_t n = f.dim();
  const int mu = depth(f.index);
  const int nu = height(f.index);
  if (complements.size() != static_cast<std::size_t>(mu + nu + 1))
    throw DimensionError("Splitting: expected one complement per filtration index");
  Matrix s(n, n);
  for (int i = -mu; i <= nu; ++i) {
    const Subspace& w = complements[static_cast<std::size_t>(i + mu)];
    const auto at = positions_with_weight(f.index, i);
    if (w.ambient_dim() != n || w.dim() != at.size()) throw PreconditionError("Splitting: complement has wrong dimension");
    if (!filtration_component(f, i).contains(w)) throw PreconditionError("Splitting: complement not inside g^i");
    const Matrix proj = w.basis().select_rows(at);
    if (rank(proj) != at.size()) throw PreconditionError("Splitting: complement meets g^{i+1}");
    const Matrix reps = w.basis() * inverse(proj);
    for (std::size_t c = 0; c < at.size(); ++c) s.set_column(at[c], reps.column(c));
  }
  return from_matrix(f, std::move(s));
}

Subspace Splitting::complement_at(int i) const {
  const auto at = positions_with_weight(index_, i);
  return Subspace::from_independent_columns(s_.rows(), s_.select_columns(at));
}

namespace {

Matrix input_block(const HomSpace& s, const Matrix& m) { return m.select_rows(s.inputs()).select_columns(s.inputs()); }

}  // namespace

Vector gr_ell(const HomSpace& s, std::span<const Rational> alpha, int l, const Splitting& split) {
  if (split.index() != s.basis_weights()) throw DimensionError("gr_ell: splitting does not match the space");
  const auto h = s.homogeneity(alpha);
  if (h && *h < l) throw PreconditionError("gr_ell: map is not homogeneous of degree >= l");
  const Vector pulled =
      transform_hom(s, Matrix::identity(s.target_dim()), input_block(s, split.matrix()), alpha);
  return homogeneous_component(s, pulled, l);
}

Vector lift_cochain(const HomSpace& s, std::span<const Rational> beta, const Splitting& split) {
  if (split.index() != s.basis_weights()) throw DimensionError("lift_cochain: splitting does not match the space");
  return transform_hom(s, split.matrix(), input_block(s, split.phi()), beta);
}

SparseMatrix homology_differential(const LieAlgebra& l, const std::vector<Vector>& z, const HomSpace& from,
                                   const HomSpace& to) {
  const std::size_t n = l.dim();
  const std::size_t ni = from.inputs().size();
  if (to.arity() + 1 != from.arity() || z.size() != ni || from.basis_weights() != to.basis_weights())
    throw DimensionError("homology_differential: incompatible spaces");
  const auto slot = input_slots(from);
  const Matrix zm = Matrix::from_columns(n, z);
  // [z_a, z_b] in the z basis.
  std::vector<Vector> zz(ni * ni);
  for (std::size_t a = 0; a < ni; ++a)
    for (std::size_t b = a + 1; b < ni; ++b) {
      auto x = solve_preimage(zm, l.bracket(z[a], z[b]));
      if (!x) throw PreconditionError("homology_differential: span of z is not a subalgebra");
      zz[a * ni + b] = *x;
    }
  std::vector<Matrix> adz;
  for (std::size_t a = 0; a < ni; ++a) adz.push_back(l.ad(z[a]));
  SparseBuilder out(to.dim(), from.dim());
  for (std::size_t p = 0; p < from.tuple_count(); ++p) {
    const auto& I = from.tuple(p);
    for (std::size_t i = 0; i < I.size(); ++i) {
      // sign (-1)^{i+1} with 1-based numbering
      const Rational sign = i % 2 == 0 ? -1 : 1;
      const std::size_t q = *to.tuple_position(without(I, i));
      const Matrix& ad = adz[slot[I[i]]];
      for (std::size_t t = 0; t < n; ++t)
        for (std::size_t u = 0; u < n; ++u)
          if (sgn(ad(u, t)) != 0) out.add(to.coordinate(q, u), from.coordinate(p, t), sign * ad(u, t));
    }
    for (std::size_t i = 0; i < I.size(); ++i)
      for (std::size_t j = i + 1; j < I.size(); ++j) {
        const int sign = (i + j) % 2 == 0 ? 1 : -1;
        const auto rest = without2(I, i, j);
        const Vector& br = zz[slot[I[i]] * ni + slot[I[j]]];
        for (std::size_t c = 0; c < ni; ++c) {
          if (sgn(br[c]) == 0) continue;
          auto ins = insert_sorted(rest, from.inputs()[c], 0);
          if (!ins) continue;
          const std::size_t q = *to.tuple_position(ins->first);
          const Rational v = br[c] * (sign * ins->second);
          for (std::size_t t = 0; t < n; ++t) out.add(to.coordinate(q, t), from.coordinate(p, t), v);
        }
      }
  }
  return out.build();
}

bool is_filtration_compatible(const Matrix& m, const std::vector<int>& row_w, const std::vector<int>& col_w) {
  if (row_w.size() != m.rows() || col_w.size() != m.cols()) throw DimensionError("weights do not match the map");
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (sgn(m(r, c)) != 0 && row_w[r] < col_w[c]) return false;
  return true;
}

bool check_image_homogeneous(const Matrix& m, const std::vector<int>& row_w, const std::vector<int>& col_w) {
  if (!is_filtration_compatible(m, row_w, col_w)) throw PreconditionError("check_image_homogeneous: map is not filtration compatible");
  if (m.rows() == 0 || m.cols() == 0) return true;
  const std::size_t r = rank(m);
  const int lo = std::min(min_weight(row_w), min_weight(col_w));
  const int hi = std::max(max_weight(row_w), max_weight(col_w)) + 1;
  for (int i = lo; i <= hi; ++i) {
    std::vector<std::size_t> low_rows;
    for (std::size_t a = 0; a < row_w.size(); ++a)
      if (row_w[a] < i) low_rows.push_back(a);
    // dim(im m ∩ W^i) = rank m - rank of the rows below i.
    const std::size_t lhs = r - rank(m.select_rows(low_rows));
    const std::size_t rhs = rank(m.select_columns(positions_with_weight_at_least(col_w, i)));
    if (lhs != rhs) return false;
  }
  return true;
}

Matrix gr0_of_map(const Matrix& m, const std::vector<int>& row_w, const std::vector<int>& col_w) {
  if (row_w.size() != m.rows() || col_w.size() != m.cols()) throw DimensionError("weights do not match the map");
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (row_w[r] == col_w[c]) out(r, c) = m(r, c);
  return out;
}

}  // namespace cartanorm
