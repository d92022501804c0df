#include "cartanorm/normcond.hpp"

#include "cartanorm/error.hpp"
#include "cartanorm/models.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace cartanorm {

namespace {

std::vector<std::size_t> nonnegative_positions(const std::vector<int>& w) { return positions_with_weight_at_least(w, 0); }

Matrix input_block(const HomSpace& s, const Matrix& m) { return m.select_rows(s.inputs()).select_columns(s.inputs()); }

std::vector<std::size_t> local_inputs(const HomSpace& s, const std::vector<std::size_t>& tuple) {
  std::vector<std::size_t> out;
  for (auto x : tuple) {
    const auto& in = s.inputs();
    out.push_back(static_cast<std::size_t>(std::find(in.begin(), in.end(), x) - in.begin()));
  }
  return out;
}

/// Lambda^k(a) (x) b on HomSpace coordinates; a acts on the inputs.
SparseMatrix tensor_gram(const HomSpace& s, const Matrix& a, const Matrix& b) {
  const std::size_t n = s.target_dim();
  std::vector<std::vector<std::size_t>> local(s.tuple_count());
  for (std::size_t p = 0; p < s.tuple_count(); ++p) local[p] = local_inputs(s, s.tuple(p));
  SparseBuilder out(s.dim(), s.dim());
  for (std::size_t p = 0; p < s.tuple_count(); ++p)
    for (std::size_t q = 0; q < s.tuple_count(); ++q) {
      const Rational m = determinant(a.select_rows(local[p]).select_columns(local[q]));
      if (sgn(m) == 0) continue;
      for (std::size_t t = 0; t < n; ++t)
        for (std::size_t u = 0; u < n; ++u)
          if (sgn(b(t, u)) != 0) out.add(s.coordinate(p, t), s.coordinate(q, u), m * b(t, u));
    }
  return out.build();
}

SparseMatrix transpose(const SparseMatrix& m) {
  SparseMatrix t{m.cols, m.rows, {}};
  for (const auto& [r, c, v] : m.entries) t.entries.emplace_back(c, r, v);
  return t;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.rows) throw DimensionError("sparse product: shape mismatch");
  std::vector<std::vector<std::pair<std::size_t, const Rational*>>> rows(b.rows);
  for (const auto& [r, c, v] : b.entries) rows[r].emplace_back(c, &v);
  SparseBuilder out(a.rows, b.cols);
  for (const auto& [r, k, v] : a.entries)
    for (const auto& [c, w] : rows[k]) out.add(r, c, v * *w);
  return out.build();
}

/// N ∩ L^l: the elements of n with every coordinate of weight < l zero.
Subspace filtered_part(const HomSpace& s, const Subspace& n, int l) {
  if (n.is_zero()) return n;
  std::vector<std::size_t> low;
  for (std::size_t c = 0; c < s.dim(); ++c)
    if (s.weight(c) < l) low.push_back(c);
  if (low.empty()) return n;
  const Subspace coeffs = kernel_basis(n.basis().select_rows(low));
  if (coeffs.is_zero()) return Subspace(s.dim());
  return Subspace::from_independent_columns(s.dim(), n.basis() * coeffs.basis());
}

/// The weight-l coordinates of each column.
Matrix graded_part(const HomSpace& s, const Matrix& cols, int l) {
  return cols.select_rows(s.coordinates_of_weight(l));
}

Subspace local_span(std::size_t dim, const Matrix& cols) {
  if (cols.cols() == 0) return Subspace(dim);
  return Subspace::span(cols);
}

Subspace local_kernel(const Matrix& m) {
  if (m.rows() == 0) return Subspace::full(m.cols());
  return kernel_basis(m);
}

Subspace local_image(const Matrix& m) {
  if (m.cols() == 0) return Subspace(m.rows());
  return image_basis(m);
}

std::optional<Vector> invariance_failure(const FilteredLieAlgebra& f, const HomSpace& s, const Subspace& n) {
  if (n.is_zero()) return std::nullopt;
  for (auto p : nonnegative_positions(f.index)) {
    const SparseMatrix act = module_action_matrix(f, unit_vector(f.dim(), p), s);
    Matrix images(s.dim(), n.dim());
    for (std::size_t c = 0; c < n.dim(); ++c) images.set_column(c, act.apply(n.basis_vector(c)));
    if (rank(n.basis().hstack(images)) == n.dim()) continue;
    for (std::size_t c = 0; c < n.dim(); ++c) {
      Vector y = images.column(c);
      if (!n.contains(y)) return y;
    }
  }
  return std::nullopt;
}

}  // namespace

SparseMatrix module_action_matrix(const FilteredLieAlgebra& f, std::span<const Rational> a, const HomSpace& s) {
  if (a.size() != f.dim() || s.basis_weights() != f.index) throw DimensionError("module_action: shape mismatch");
  for (auto x : negative_positions(f.index))
    if (sgn(a[x]) != 0) throw PreconditionError("module_action: A is not in g^0");
  const Matrix ad = f.alg.ad(a);
  return hom_derivation_action(s, ad, input_block(s, ad));
}

Vector module_action(const FilteredLieAlgebra& f, std::span<const Rational> a, const HomSpace& s,
                     std::span<const Rational> phi) {
  if (phi.size() != s.dim()) throw DimensionError("module_action: hom has wrong dimension");
  return module_action_matrix(f, a, s).apply(phi);
}

int max_two_form_degree(const FilteredLieAlgebra& f) { return 2 * depth(f.index) + height(f.index); }

bool NormalizationReport::ok() const {
  if (!invariant) return false;
  for (const auto& d : degrees)
    if (!d.complementary) return false;
  return true;
}

NormalizationReport check_normalization(const FilteredLieAlgebra& f, const Subspace& n) {
  const HomSpace s2(f.index, 2);
  if (n.ambient_dim() != s2.dim()) throw DimensionError("check_normalization: subspace has wrong ambient dimension");
  NormalizationReport rep;
  rep.invariance_witness = invariance_failure(f, s2, n);
  rep.invariant = !rep.invariance_witness;
  const CochainComplex cc(associated_graded(f), 3);
  for (int l = 1; l <= max_two_form_degree(f); ++l) {
    NormalizationDegree d;
    d.l = l;
    const auto coords = s2.coordinates_of_weight(l);
    const Subspace gr = local_span(coords.size(), graded_part(s2, filtered_part(s2, n, l).basis(), l));
    const Subspace im = cc.image_in(2, l);
    d.dim_grN = gr.dim();
    d.dim_im = im.dim();
    d.dim_c2 = coords.size();
    const Subspace meet = intersect(gr, im);
    if (!meet.is_zero()) d.witness = embed(s2.dim(), coords, meet.basis_vector(0));
    d.complementary = meet.is_zero() && d.dim_grN + d.dim_im == d.dim_c2;
    rep.degrees.push_back(std::move(d));
  }
  return rep;
}

NormalizationCondition::NormalizationCondition(FilteredLieAlgebra f, Subspace n)
    : f_(std::move(f)),
      n_(std::move(n)),
      s1_(f_.index, 1),
      s2_(f_.index, 2),
      cc_(associated_graded(f_), 3),
      top_(max_two_form_degree(f_)) {
  const NormalizationReport rep = check_normalization(f_, n_);
  if (!rep.invariant) throw PreconditionError("normalization condition: subspace is not g^0-invariant");
  for (const auto& d : rep.degrees)
    if (!d.complementary)
      throw PreconditionError("normalization condition: not complementary to im d in degree " + std::to_string(d.l));
  for (int l = 1; l <= top_; ++l) {
    filtered_.push_back(filtered_part(s2_, n_, l).basis());
    graded_.push_back(graded_part(s2_, filtered_.back(), l));
  }
}

Subspace NormalizationCondition::graded_image(int l) const {
  const std::size_t dim = s2_.coordinates_of_weight(l).size();
  if (l < 1 || l > top_) return Subspace(dim);
  return local_span(dim, graded_[static_cast<std::size_t>(l - 1)]);
}

const Matrix& NormalizationCondition::filtered_basis(int l) const {
  if (l < 1 || l > top_) throw PreconditionError("normalization condition: degree out of range");
  return filtered_[static_cast<std::size_t>(l - 1)];
}

const Matrix& NormalizationCondition::graded_basis(int l) const {
  if (l < 1 || l > top_) throw PreconditionError("normalization condition: degree out of range");
  return graded_[static_cast<std::size_t>(l - 1)];
}

DegreeSplit decompose_degree(const NormalizationCondition& nc, int l, std::span<const Rational> w) {
  const std::size_t dim = nc.hom2().coordinates_of_weight(l).size();
  if (w.size() != dim) throw DimensionError("decompose_degree: vector has wrong dimension");
  const Subspace gr = nc.graded_image(l);
  const Subspace im = nc.complex().image_in(2, l);
  DegreeSplit out{Vector(dim), Vector(dim)};
  if (dim == 0) return out;
  const auto x = solve_preimage(gr.basis().hstack(im.basis()), w);
  if (!x) throw Error("decompose_degree: degree is not a direct sum");
  for (std::size_t c = 0; c < gr.dim(); ++c)
    for (std::size_t r = 0; r < dim; ++r) out.n[r] += (*x)[c] * gr.basis()(r, c);
  for (std::size_t c = 0; c < im.dim(); ++c)
    for (std::size_t r = 0; r < dim; ++r) out.b[r] += (*x)[gr.dim() + c] * im.basis()(r, c);
  return out;
}

NegligibleReport check_negligible(const Subspace& nt, const NormalizationCondition& nc) {
  const HomSpace& s2 = nc.hom2();
  if (nt.ambient_dim() != s2.dim()) throw DimensionError("check_negligible: subspace has wrong ambient dimension");
  NegligibleReport rep;
  rep.contained = nc.space().contains(nt);
  rep.invariant = !invariance_failure(nc.algebra(), s2, nt);
  rep.trivial_intersection = true;
  bool complementary = true;
  for (int l = 1; l <= nc.max_degree(); ++l) {
    NegligibleDegree d;
    d.l = l;
    const auto coords = s2.coordinates_of_weight(l);
    const Subspace gr = local_span(coords.size(), graded_part(s2, filtered_part(s2, nt, l).basis(), l));
    const Subspace ker = nc.complex().kernel_in(2, l);
    d.dim_grNt = gr.dim();
    d.dim_ker = ker.dim();
    d.dim_c2 = coords.size();
    d.trivial_intersection = intersect(gr, ker).is_zero();
    d.complementary = d.trivial_intersection && d.dim_grNt + d.dim_ker == d.dim_c2;
    rep.trivial_intersection = rep.trivial_intersection && d.trivial_intersection;
    complementary = complementary && d.complementary;
    rep.degrees.push_back(d);
  }
  rep.maximal = rep.negligible() && complementary;
  return rep;
}

std::vector<std::size_t> quotient_dims(const NormalizationCondition& nc, const NegligibleSubmodule& nt) {
  const NegligibleReport rep = check_negligible(nt.space, nc);
  if (!nt.maximal || !rep.maximal) throw PreconditionError("quotient_dims: submodule is not maximal negligible");
  std::vector<std::size_t> out;
  for (const auto& d : rep.degrees) {
    const std::size_t q = nc.graded_image(d.l).dim() - d.dim_grNt;
    if (q != nc.complex().cohomology_dim(2, d.l))
      throw Error("quotient_dims: dimension differs from H^2 in degree " + std::to_string(d.l));
    out.push_back(q);
  }
  return out;
}

CodifferentialReport check_codifferential(const Codifferential& c) {
  const FilteredLieAlgebra& f = c.alg;
  const HomSpace* sp[4] = {nullptr, &c.s1, &c.s2, &c.s3};
  const Matrix* dk[4] = {nullptr, nullptr, &c.d2, &c.d3};
  for (std::size_t k = 2; k <= 3; ++k)
    if (dk[k]->rows() != sp[k - 1]->dim() || dk[k]->cols() != sp[k]->dim())
      throw DimensionError("check_codifferential: map has wrong shape");
  CodifferentialReport rep;

  rep.equivariant = true;
  for (auto p : nonnegative_positions(f.index)) {
    const Vector a = unit_vector(f.dim(), p);
    Matrix act[4];
    for (std::size_t k = 1; k <= 3; ++k) act[k] = module_action_matrix(f, a, *sp[k]).dense();
    for (std::size_t k = 2; k <= 3; ++k)
      if (!(*dk[k] * act[k] == act[k - 1] * *dk[k])) {
        rep.equivariant = false;
        rep.failures.push_back("equivariance: d" + std::to_string(k) + " with " + f.alg.labels()[p]);
      }
  }

  rep.homogeneous = true;
  for (std::size_t k = 2; k <= 3; ++k)
    if (!is_filtration_compatible(*dk[k], sp[k - 1]->weights(), sp[k]->weights())) {
      rep.homogeneous = false;
      rep.failures.push_back("homogeneity: d" + std::to_string(k));
    }

  rep.square_zero = (c.d2 * c.d3).is_zero();
  if (!rep.square_zero) rep.failures.push_back("d2 d3 != 0");

  rep.image_homogeneous = rep.homogeneous;
  if (rep.homogeneous)
    for (std::size_t k = 2; k <= 3; ++k)
      if (!check_image_homogeneous(*dk[k], sp[k - 1]->weights(), sp[k]->weights())) {
        rep.image_homogeneous = false;
        rep.failures.push_back("image homogeneity: d" + std::to_string(k));
      }

  rep.disjoint = true;
  const CochainComplex cc(associated_graded(f), 3);
  for (std::size_t k = 2; k <= 3; ++k) {
    const HomSpace& from = *sp[k];
    const HomSpace& to = *sp[k - 1];
    const int lo = std::min(from.min_weight(), to.min_weight());
    const int hi = std::max(from.max_weight(), to.max_weight());
    for (int l = lo; l <= hi; ++l) {
      const auto rows = to.coordinates_of_weight(l);
      const auto cols = from.coordinates_of_weight(l);
      const Matrix b = dk[k]->select_rows(rows).select_columns(cols);
      if (!intersect(local_kernel(b), cc.image_in(k, l)).is_zero()) {
        rep.disjoint = false;
        rep.failures.push_back("disjointness: ker gr0(d" + std::to_string(k) + ") meets im d in degree " +
                               std::to_string(l));
      }
      if (!intersect(local_image(b), cc.kernel_in(k - 1, l)).is_zero()) {
        rep.disjoint = false;
        rep.failures.push_back("disjointness: im gr0(d" + std::to_string(k) + ") meets ker d in degree " +
                               std::to_string(l));
      }
    }
  }
  return rep;
}

Codifferential kostant_codifferential(const FilteredLieAlgebra& f) {
  const Matrix kf = killing_form(f.alg);
  if (sgn(determinant(kf)) == 0) throw PreconditionError("kostant_codifferential: Killing form is degenerate");
  const Subspace ann = kernel_basis(kf.select_rows(nonnegative_positions(f.index)));
  if (!(ann == filtration_component(f, 1)))
    throw PreconditionError("kostant_codifferential: annihilator of p differs from g^1");
  Codifferential c{f, HomSpace(f.index, 1), HomSpace(f.index, 2), HomSpace(f.index, 3), Matrix(), Matrix(), "kostant"};
  const auto& in = c.s1.inputs();
  const auto up = positions_with_weight_at_least(f.index, 1);
  const Matrix pairing = kf.select_rows(in).select_columns(up);
  std::vector<Vector> z;
  for (std::size_t a = 0; a < in.size(); ++a) {
    const auto y = solve_preimage(pairing, unit_vector(in.size(), a));
    if (!y) throw PreconditionError("kostant_codifferential: pairing of g/p with p+ is degenerate");
    z.push_back(embed(f.dim(), up, *y));
  }
  c.d2 = homology_differential(f.alg, z, c.s2, c.s1).dense();
  c.d3 = homology_differential(f.alg, z, c.s3, c.s2).dense();
  return c;
}

bool is_valid_inner_product(const InnerProduct& ip, const std::vector<int>& weights) {
  const Matrix& g = ip.gram;
  if (g.rows() != weights.size() || g.cols() != weights.size()) return false;
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < g.cols(); ++c)
      if (weights[r] != weights[c] && sgn(g(r, c)) != 0) return false;
  return is_positive_definite(g);
}

InnerProduct subriemannian_inner_product(const GradedLieAlgebra& m, const Matrix& b, const Subspace& g0) {
  if (!is_fundamental(m)) throw PreconditionError("subriemannian_inner_product: m is not fundamental");
  const std::size_t n = m.dim();
  const auto p1 = positions_with_weight(m.degree, -1);
  if (b.rows() != p1.size() || b.cols() != p1.size() || !is_positive_definite(b))
    throw PreconditionError("subriemannian_inner_product: b is not an inner product on m_-1");
  if (g0.ambient_dim() != n * n) throw DimensionError("subriemannian_inner_product: derivations have wrong ambient dimension");
  std::vector<Matrix> low;
  std::vector<Matrix> ds;
  for (std::size_t c = 0; c < g0.dim(); ++c) {
    ds.push_back(derivation_matrix(n, g0.basis_vector(c)));
    low.push_back(ds.back().select_rows(p1).select_columns(p1));
    if (!(low.back().transpose() * b + b * low.back()).is_zero())
      throw PreconditionError("subriemannian_inner_product: g0 is not skew on m_-1");
  }
  Matrix g(n + g0.dim(), n + g0.dim());
  std::map<int, Matrix> metric{{-1, b}};
  for (std::size_t r = 0; r < p1.size(); ++r)
    for (std::size_t c = 0; c < p1.size(); ++c) g(p1[r], p1[c]) = b(r, c);
  const int mu = depth(m.degree);
  for (int d = 2; d <= mu; ++d) {
    const auto pt = positions_with_weight(m.degree, -d);
    const auto prev = positions_with_weight(m.degree, -(d - 1));
    const Matrix& gp = metric.at(-(d - 1));
    // Source tensor space: Lambda^2 m_-1 for d = 2, m_-1 (x) m_{-(d-1)} after.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < p1.size(); ++a)
      for (std::size_t c = d == 2 ? a + 1 : 0; c < prev.size(); ++c) pairs.emplace_back(a, c);
    Matrix gt(pairs.size(), pairs.size());
    for (std::size_t x = 0; x < pairs.size(); ++x)
      for (std::size_t y = 0; y < pairs.size(); ++y) {
        const auto [a, c] = pairs[x];
        const auto [a2, c2] = pairs[y];
        if (d == 2)
          gt(x, y) = b(a, a2) * b(c, c2) - b(a, c2) * b(c, a2);
        else
          gt(x, y) = b(a, a2) * gp(c, c2);
      }
    Matrix beta(pt.size(), pairs.size());
    for (std::size_t x = 0; x < pairs.size(); ++x) {
      const Vector br = m.alg.bracket(unit_vector(n, p1[pairs[x].first]), unit_vector(n, prev[pairs[x].second]));
      for (std::size_t r = 0; r < pt.size(); ++r) beta(r, x) = br[pt[r]];
    }
    const Matrix gd = inverse(beta * inverse(gt) * beta.transpose());
    metric[-d] = gd;
    for (std::size_t r = 0; r < pt.size(); ++r)
      for (std::size_t c = 0; c < pt.size(); ++c) g(pt[r], pt[c]) = gd(r, c);
  }
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = 0; j < ds.size(); ++j) {
      Rational tr = 0;
      const Matrix prod = low[i] * low[j];
      for (std::size_t r = 0; r < prod.rows(); ++r) tr += prod(r, r);
      g(n + i, n + j) = -tr;
    }
  std::vector<std::size_t> on_m(n);
  std::iota(on_m.begin(), on_m.end(), 0);
  const Matrix gm = g.select_rows(on_m).select_columns(on_m);
  for (const auto& dm : ds)
    if (!(dm.transpose() * gm + gm * dm).is_zero())
      throw Error("subriemannian_inner_product: induced metric on m is not g0-invariant");
  if (!is_positive_definite(g)) throw Error("subriemannian_inner_product: result is not positive definite");
  return {g};
}

std::vector<Rational> ode_module_weights(std::size_t k) {
  // c_0 = 1 and i c_{i-1} = (k - i + 1) c_i, from <e v_i, v_{i-1}> = <v_i, f v_{i-1}>.
  Matrix a(k + 1, k + 1);
  Vector rhs(k + 1);
  a(0, 0) = 1;
  rhs[0] = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    a(i, i - 1) = static_cast<long>(i);
    a(i, i) = -static_cast<long>(k - i + 1);
  }
  const auto c = solve_preimage(a, rhs);
  if (!c) throw Error("ode_module_weights: adjointness constraints are inconsistent");
  return *c;
}

InnerProduct ode_inner_product(std::size_t k, std::size_t m) {
  if (k < 1 || m < 1) throw PreconditionError("ode_inner_product: needs k >= 1 and m >= 1");
  const std::size_t n = 3 + m * m + (k + 1) * m;
  Matrix g(n, n);
  // tr(X^T Y) on sl(2) and gl(m).
  g(0, 0) = 1;
  g(1, 1) = 2;
  g(2, 2) = 1;
  for (std::size_t i = 0; i < m * m; ++i) g(3 + i, 3 + i) = 1;
  const auto c = ode_module_weights(k);
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t a = 0; a < m; ++a) {
      const std::size_t p = 3 + m * m + i * m + a;
      g(p, p) = c[i];
    }
  return {g};
}

Matrix hom_gram(const HomSpace& s, const Matrix& g) {
  if (g.rows() != s.target_dim() || g.cols() != s.target_dim()) throw DimensionError("hom_gram: shape mismatch");
  return tensor_gram(s, inverse(input_block(s, g)), g).dense();
}

Codifferential adjoint_codifferential(const FilteredLieAlgebra& f, const InnerProduct& ip) {
  if (!is_valid_inner_product(ip, f.index))
    throw PreconditionError("adjoint_codifferential: not a grading-orthogonal inner product");
  const GradedLieAlgebra gr{f.alg, f.index};
  if (!check_graded(gr)) throw PreconditionError("adjoint_codifferential: algebra is not graded by its filtration");
  const CochainComplex cc(gr, 3);
  Codifferential c{f, cc.space(1), cc.space(2), cc.space(3), Matrix(), Matrix(), "adjoint"};
  const Matrix& g = ip.gram;
  const Matrix gi = inverse(g);
  auto adjoint = [&](std::size_t k) {
    // d*_k = G_{k-1}^{-1} d^T G_k with d: C^{k-1} -> C^k.
    const HomSpace& lo = cc.space(k - 1);
    const HomSpace& hi = cc.space(k);
    const SparseMatrix lo_inv = tensor_gram(lo, input_block(lo, g), gi);
    const SparseMatrix hi_gram = tensor_gram(hi, inverse(input_block(hi, g)), g);
    return multiply(multiply(lo_inv, transpose(cc.differential(k - 1))), hi_gram).dense();
  };
  c.d2 = adjoint(2);
  c.d3 = adjoint(3);
  return c;
}

NormalizationPair condition_from_codifferential(const Codifferential& c) {
  const CodifferentialReport rep = check_codifferential(c);
  if (!rep.ok()) throw PreconditionError("condition_from_codifferential: invalid codifferential (" + rep.failures.front() + ")");
  NormalizationCondition n(c.alg, local_kernel(c.d2));
  Subspace nt = local_image(c.d3);
  const NegligibleReport nrep = check_negligible(nt, n);
  if (!nrep.maximal) throw Error("condition_from_codifferential: image of d3 is not maximal negligible");
  return {std::move(n), {std::move(nt), true}};
}

NormalizedHom normalize_pointwise(std::span<const Rational> v, const NormalizationCondition& nc, const Splitting& split) {
  const HomSpace& s2 = nc.hom2();
  const HomSpace& s1 = nc.hom1();
  if (v.size() != s2.dim()) throw DimensionError("normalize_pointwise: hom has wrong dimension");
  const auto h = s2.homogeneity(v);
  if (h && *h < 1) throw PreconditionError("normalize_pointwise: hom is not homogeneous of degree >= 1");
  NormalizedHom out{Vector(s2.dim()), {}};
  Vector r(v.begin(), v.end());
  for (int l = 1; l <= nc.max_degree(); ++l) {
    const auto coords = s2.coordinates_of_weight(l);
    const Vector w = restrict_to(gr_ell(s2, r, l, split), coords);
    const DegreeSplit parts = decompose_degree(nc, l, w);
    Vector hl(s1.dim());
    if (!is_zero(parts.b)) {
      const auto x = solve_preimage(nc.complex().differential_block(1, l), parts.b);
      if (!x) throw Error("normalize_pointwise: image part has no preimage");
      hl = lift_cochain(s1, embed(s1.dim(), s1.coordinates_of_weight(l), *x), split);
      const Vector lifted = lift_cochain(s2, embed(s2.dim(), coords, parts.b), split);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= lifted[i];
    }
    if (!is_zero(parts.n)) {
      const auto y = solve_preimage(nc.graded_basis(l), parts.n);
      if (!y) throw Error("normalize_pointwise: N-part has no lift");
      const Vector nl = nc.filtered_basis(l) * *y;
      for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] -= nl[i];
        out.v_norm[i] += nl[i];
      }
    }
    out.corrections.push_back({l, std::move(hl)});
  }
  if (!is_zero(r)) throw Error("normalize_pointwise: residual survives the top degree");
  return out;
}

}  // namespace cartanorm
