#include "cartanorm/liealg.hpp"

#include "cartanorm/error.hpp"

#include <algorithm>
#include <map>

namespace cartanorm {

LieAlgebra::LieAlgebra(std::vector<std::string> labels)
    : labels_(std::move(labels)), table_(labels_.size() * labels_.size()) {}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, std::span<const Rational> v) {
  if (v.size() != dim()) throw DimensionError("bracket vector has wrong length");
  std::vector<Term> terms;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (sgn(v[k]) != 0) terms.push_back({k, v[k]});
  set_bracket(i, j, terms);
}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, const std::vector<Term>& terms) {
  const std::size_t n = dim();
  if (i >= n || j >= n) throw DimensionError("bracket index out of range");
  std::map<std::size_t, Rational> acc;
  for (const auto& t : terms) {
    if (t.k >= n) throw DimensionError("bracket term index out of range");
    acc[t.k] += t.c;
  }
  std::vector<Term> pos, neg;
  for (const auto& [k, c] : acc) {
    if (sgn(c) == 0) continue;
    pos.push_back({k, c});
    neg.push_back({k, -c});
  }
  if (i == j) {
    if (!pos.empty()) throw PreconditionError("[e_i, e_i] must vanish");
    return;
  }
  table_[i * n + j] = std::move(pos);
  table_[j * n + i] = std::move(neg);
}

Vector LieAlgebra::bracket(std::size_t i, std::size_t j) const {
  Vector out(dim());
  for (const auto& t : bracket_terms(i, j)) out[t.k] = t.c;
  return out;
}

Vector LieAlgebra::bracket(std::span<const Rational> x, std::span<const Rational> y) const {
  const std::size_t n = dim();
  if (x.size() != n || y.size() != n) throw DimensionError("bracket operand length mismatch");
  Vector out(n);
  Rational xy;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(y[j]) == 0) continue;
      const auto& terms = table_[i * n + j];
      if (terms.empty()) continue;
      xy = x[i] * y[j];
      for (const auto& t : terms) out[t.k] += xy * t.c;
    }
  }
  return out;
}

Matrix LieAlgebra::ad(std::span<const Rational> x) const {
  const std::size_t n = dim();
  if (x.size() != n) throw DimensionError("ad operand length mismatch");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& t : table_[i * n + j]) m(t.k, j) += x[i] * t.c;
  }
  return m;
}

Matrix LieAlgebra::ad_basis(std::size_t i) const { return ad(unit_vector(dim(), i)); }

bool LieAlgebra::is_abelian() const {
  return std::all_of(table_.begin(), table_.end(), [](const auto& t) { return t.empty(); });
}

bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.table_.size(); ++i) {
    const auto& x = a.table_[i];
    const auto& y = b.table_[i];
    if (x.size() != y.size()) return false;
    for (std::size_t t = 0; t < x.size(); ++t)
      if (x[t].k != y[t].k || x[t].c != y[t].c) return false;
  }
  return true;
}

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

int min_weight(const std::vector<int>& w) { return w.empty() ? 0 : *std::min_element(w.begin(), w.end()); }
int max_weight(const std::vector<int>& w) { return w.empty() ? 0 : *std::max_element(w.begin(), w.end()); }

std::vector<std::size_t> positions_with_weight(const std::vector<int>& w, int value) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == value) out.push_back(i);
  return out;
}

std::vector<std::size_t> positions_with_weight_at_least(const std::vector<int>& w, int value) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] >= value) out.push_back(i);
  return out;
}

std::vector<std::size_t> negative_positions(const std::vector<int>& w) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] < 0) out.push_back(i);
  return out;
}

int depth(const std::vector<int>& w) { return -std::min(0, min_weight(w)); }
int height(const std::vector<int>& w) { return std::max(0, max_weight(w)); }

Subspace filtration_component(const FilteredLieAlgebra& f, int i) {
  return Subspace::coordinate(f.dim(), positions_with_weight_at_least(f.index, i));
}

std::optional<std::array<std::size_t, 3>> jacobi_witness(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  Vector acc(n);
  auto add_nested = [&](std::size_t a, std::size_t b, std::size_t c) {
    // [[e_a, e_b], e_c]
    for (const auto& t : l.bracket_terms(a, b))
      for (const auto& u : l.bracket_terms(t.k, c)) acc[u.k] += t.c * u.c;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        for (auto& x : acc) x = 0;
        add_nested(i, j, k);
        add_nested(j, k, i);
        add_nested(k, i, j);
        if (!is_zero(acc)) return std::array<std::size_t, 3>{i, j, k};
      }
  return std::nullopt;
}

bool check_jacobi(const LieAlgebra& l) { return !jacobi_witness(l).has_value(); }

bool check_graded(const GradedLieAlgebra& g) {
  const std::size_t n = g.dim();
  if (g.degree.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (const auto& t : g.alg.bracket_terms(i, j))
        if (g.degree[t.k] != g.degree[i] + g.degree[j]) return false;
  return true;
}

bool check_filtered(const FilteredLieAlgebra& f) {
  const std::size_t n = f.dim();
  if (f.index.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (const auto& t : f.alg.bracket_terms(i, j))
        if (f.index[t.k] < f.index[i] + f.index[j]) return false;
  return true;
}

GradedLieAlgebra associated_graded(const FilteredLieAlgebra& f) {
  if (!check_filtered(f)) throw PreconditionError("associated_graded: input is not a filtered Lie algebra");
  const std::size_t n = f.dim();
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i)
    labels[i] = "gr_" + std::to_string(f.index[i]) + "(" + f.alg.label(i) + ")";
  LieAlgebra gr(std::move(labels));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<Term> kept;
      for (const auto& t : f.alg.bracket_terms(i, j))
        if (f.index[t.k] == f.index[i] + f.index[j]) kept.push_back(t);
      gr.set_bracket(i, j, kept);
    }
  return {std::move(gr), f.index};
}

FilteredLieAlgebra filtered_by_grading(const GradedLieAlgebra& g) { return {g.alg, g.degree}; }

GradedLieAlgebra negative_part(const GradedLieAlgebra& g) {
  const auto neg = negative_positions(g.degree);
  std::vector<std::size_t> where(g.dim(), g.dim());
  std::vector<std::string> labels;
  std::vector<int> deg;
  for (std::size_t a = 0; a < neg.size(); ++a) {
    where[neg[a]] = a;
    labels.push_back(g.alg.label(neg[a]));
    deg.push_back(g.degree[neg[a]]);
  }
  LieAlgebra m(std::move(labels));
  for (std::size_t a = 0; a < neg.size(); ++a)
    for (std::size_t b = a + 1; b < neg.size(); ++b) {
      std::vector<Term> terms;
      for (const auto& t : g.alg.bracket_terms(neg[a], neg[b])) {
        if (where[t.k] == g.dim()) throw PreconditionError("negative part is not a subalgebra");
        terms.push_back({where[t.k], t.c});
      }
      m.set_bracket(a, b, terms);
    }
  return {std::move(m), std::move(deg)};
}

bool is_fundamental(const GradedLieAlgebra& m) {
  const std::size_t n = m.dim();
  const int mu = depth(m.degree);
  const auto gens = positions_with_weight(m.degree, -1);
  for (int d = -2; d >= -mu; --d) {
    const auto target = positions_with_weight(m.degree, d);
    if (target.empty()) continue;
    std::vector<Vector> brackets;
    for (auto a : gens)
      for (auto b : positions_with_weight(m.degree, d + 1)) brackets.push_back(m.alg.bracket(a, b));
    if (Subspace::span(n, brackets).dim() != target.size()) return false;
  }
  return true;
}

Subspace graded_derivations(const GradedLieAlgebra& g, int d) {
  const std::size_t n = g.dim();
  const LieAlgebra& l = g.alg;
  // Unknowns D(u, t) with deg u = deg t + d.
  std::vector<std::size_t> var_of(n * n, n * n);
  std::vector<std::size_t> flat;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t t = 0; t < n; ++t)
      if (g.degree[u] == g.degree[t] + d) {
        var_of[u * n + t] = flat.size();
        flat.push_back(u * n + t);
      }
  std::vector<Vector> rows;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t w = 0; w < n; ++w) {
        Vector row(flat.size());
        // D[e_a, e_b] - [D e_a, e_b] - [e_a, D e_b], coordinate w.
        for (const auto& t : l.bracket_terms(a, b))
          if (var_of[w * n + t.k] != n * n) row[var_of[w * n + t.k]] += t.c;
        for (std::size_t u = 0; u < n; ++u) {
          if (var_of[u * n + a] != n * n)
            for (const auto& t : l.bracket_terms(u, b))
              if (t.k == w) row[var_of[u * n + a]] -= t.c;
          if (var_of[u * n + b] != n * n)
            for (const auto& t : l.bracket_terms(a, u))
              if (t.k == w) row[var_of[u * n + b]] -= t.c;
        }
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
  Matrix system(rows.size(), flat.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < flat.size(); ++c) system(r, c) = rows[r][c];
  const Subspace k = kernel_basis(system);
  Matrix embedded(n * n, k.dim());
  for (std::size_t c = 0; c < k.dim(); ++c)
    for (std::size_t v = 0; v < flat.size(); ++v) embedded(flat[v], c) = k.basis()(v, c);
  return Subspace::from_independent_columns(n * n, embedded);
}

Matrix derivation_matrix(std::size_t n, std::span<const Rational> flat) {
  if (flat.size() != n * n) throw DimensionError("derivation vector has wrong length");
  Matrix m(n, n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t t = 0; t < n; ++t) m(u, t) = flat[u * n + t];
  return m;
}

Matrix killing_form(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  std::vector<Matrix> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(l.ad_basis(i));
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Rational tr;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (sgn(ads[i](r, c)) != 0 && sgn(ads[j](c, r)) != 0) tr += ads[i](r, c) * ads[j](c, r);
      b(i, j) = tr;
      b(j, i) = tr;
    }
  return b;
}

namespace {

// Rows of a matrix whose kernel is exactly s.
Matrix annihilator(const Subspace& s) {
  const Subspace k = kernel_basis(s.basis().transpose());
  return k.basis().transpose();
}

// Matrix of X -> [X, y].
Matrix right_bracket(const LieAlgebra& l, std::span<const Rational> y) { return l.ad(y) * Rational(-1); }

// {x in span(v) : q_b * m_b * x = 0 for all b}, returned inside the ambient.
Subspace constrained(const Subspace& v, const std::vector<std::pair<Matrix, Matrix>>& constraints) {
  const std::size_t cols = v.dim();
  Matrix system(0, cols);
  for (const auto& [q, m] : constraints) {
    if (q.rows() == 0) continue;
    system = system.vstack(q * (m * v.basis()));
  }
  const Subspace k = kernel_basis(system);
  return Subspace::from_independent_columns(v.ambient_dim(), v.basis() * k.basis());
}

// Basis in reduced column echelon form, so coordinate subspaces come back as
// standard basis vectors.
Subspace canonical(const Subspace& s) {
  const RowEchelon e = row_echelon(s.basis().transpose());
  return Subspace::from_independent_columns(s.ambient_dim(), e.reduced.transpose());
}

}  // namespace

Subspace center(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  std::vector<std::pair<Matrix, Matrix>> cons;
  for (std::size_t b = 0; b < n; ++b) cons.emplace_back(Matrix::identity(n), right_bracket(l, unit_vector(n, b)));
  return constrained(Subspace::full(n), cons);
}

Subspace normalizer(const LieAlgebra& l, const Subspace& s) {
  const std::size_t n = l.dim();
  if (s.ambient_dim() != n) throw DimensionError("normalizer: ambient mismatch");
  const Matrix q = annihilator(s);
  std::vector<std::pair<Matrix, Matrix>> cons;
  for (std::size_t i = 0; i < s.dim(); ++i) cons.emplace_back(q, right_bracket(l, s.basis_vector(i)));
  return constrained(Subspace::full(n), cons);
}

Subspace largest_ideal_in(const LieAlgebra& l, const Subspace& s) {
  const std::size_t n = l.dim();
  if (s.ambient_dim() != n) throw DimensionError("largest_ideal_in: ambient mismatch");
  Subspace cur = s;
  while (true) {
    const Matrix q = annihilator(cur);
    std::vector<std::pair<Matrix, Matrix>> cons;
    for (std::size_t a = 0; a < n; ++a) cons.emplace_back(q, l.ad_basis(a));
    Subspace next = constrained(cur, cons);
    if (next.dim() == cur.dim()) return cur;
    cur = std::move(next);
  }
}

Subspace max_ideal_in(const FilteredLieAlgebra& f) { return largest_ideal_in(f.alg, filtration_component(f, 0)); }

namespace {

// {X in start : [X, e_b] in target(min(idx b, -1) + j) for every basis b}.
template <class Target>
Subspace raising(const LieAlgebra& l, const std::vector<int>& idx, const Subspace& start, int j, Target target) {
  const std::size_t n = l.dim();
  std::vector<std::pair<Matrix, Matrix>> cons;
  for (std::size_t b = 0; b < n; ++b) {
    const Subspace t = target(std::min(idx[b], -1) + j);
    cons.emplace_back(annihilator(t), right_bracket(l, unit_vector(n, b)));
  }
  return constrained(start, cons);
}

}  // namespace

Subspace raising_subspace(const FilteredLieAlgebra& f, int j) {
  return raising(f.alg, f.index, filtration_component(f, 0), j, [&](int s) { return filtration_component(f, s); });
}

bool check_condition_B(const FilteredLieAlgebra& f) {
  return raising_subspace(f, 1) == filtration_component(f, 1);
}

std::vector<Subspace> continued_components(const LieAlgebra& l, const std::vector<int>& nonpos) {
  const std::size_t n = l.dim();
  if (nonpos.size() != n) throw DimensionError("continue_filtration: index list has wrong length");
  if (std::any_of(nonpos.begin(), nonpos.end(), [](int i) { return i > 0; }))
    throw PreconditionError("continue_filtration: expects indices <= 0");
  FilteredLieAlgebra base{l, nonpos};
  if (!check_filtered(base)) throw PreconditionError("continue_filtration: non-positive part is not filtered");
  // comps[j - 1] = g^j for j >= 1.
  std::vector<Subspace> comps;
  auto component = [&](int s) -> Subspace {
    if (s <= 0) return filtration_component(base, s);
    return comps[static_cast<std::size_t>(s - 1)];
  };
  Subspace cur = filtration_component(base, 0);
  for (int j = 0;; ++j) {
    Subspace next = canonical(raising(l, nonpos, cur, j + 1, component));
    comps.push_back(next);
    if (next.is_zero()) return comps;
    if (next.dim() == cur.dim()) {
      if (!next.is_zero()) throw EffectivityError("continue_filtration: the filtration stabilizes at a nonzero ideal inside g^0");
      return comps;
    }
    cur = std::move(next);
  }
}

FilteredLieAlgebra continue_filtration(const LieAlgebra& l, const std::vector<int>& nonpos) {
  const std::size_t n = l.dim();
  const auto comps = continued_components(l, nonpos);
  const Subspace g0 = canonical(Subspace::coordinate(n, positions_with_weight(nonpos, 0)));
  // New vectors for the g^0 slots, one block per jump g^j / g^{j+1}.
  std::vector<std::pair<Vector, int>> fresh;
  for (int j = 0; j < static_cast<int>(comps.size()); ++j) {
    const Subspace& upper = j == 0 ? g0 : comps[static_cast<std::size_t>(j - 1)];
    const Subspace w = complement(comps[static_cast<std::size_t>(j)], upper);
    for (std::size_t c = 0; c < w.dim(); ++c) fresh.emplace_back(w.basis_vector(c), j);
  }
  const auto slots = positions_with_weight(nonpos, 0);
  Matrix p = Matrix::identity(n);
  std::vector<int> index = nonpos;
  std::vector<bool> used(n, false);
  std::vector<std::pair<Vector, int>> pending;
  for (auto& [v, j] : fresh) {
    std::size_t unit = n;
    std::size_t nz = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(v[i]) != 0) {
        ++nz;
        unit = i;
      }
    if (nz == 1 && v[unit] == 1 && !used[unit] && nonpos[unit] == 0) {
      used[unit] = true;
      index[unit] = j;
    } else {
      pending.emplace_back(v, j);
    }
  }
  std::size_t next = 0;
  for (auto& [v, j] : pending) {
    while (used[slots[next]]) ++next;
    const std::size_t s = slots[next];
    used[s] = true;
    p.set_column(s, v);
    index[s] = j;
  }
  return {rebase(l, p), std::move(index)};
}

std::string combination_label(const LieAlgebra& l, std::span<const Rational> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    const bool neg = sgn(v[i]) < 0;
    const Rational a = abs(v[i]);
    if (!out.empty()) out += neg ? "-" : "+";
    else if (neg) out += "-";
    if (a != 1) out += a.get_str() + "*";
    out += l.label(i);
  }
  return out.empty() ? "0" : out;
}

LieAlgebra rebase(const LieAlgebra& l, const Matrix& p) {
  const std::size_t n = l.dim();
  if (p.rows() != n || p.cols() != n) throw DimensionError("rebase: change of basis has wrong shape");
  const Matrix pinv = inverse(p);
  std::vector<std::string> labels(n);
  std::vector<Vector> cols(n);
  for (std::size_t c = 0; c < n; ++c) {
    cols[c] = p.column(c);
    labels[c] = combination_label(l, cols[c]);
  }
  LieAlgebra out(std::move(labels));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.set_bracket(i, j, pinv * l.bracket(cols[i], cols[j]));
  return out;
}

LieAlgebra matrix_lie_algebra(const std::vector<Matrix>& basis, std::vector<std::string> labels) {
  const std::size_t d = basis.size();
  if (labels.size() != d) throw DimensionError("matrix_lie_algebra: label count mismatch");
  if (d == 0) return LieAlgebra(std::move(labels));
  const std::size_t r = basis[0].rows();
  const std::size_t c = basis[0].cols();
  auto flatten = [&](const Matrix& m) {
    Vector v(r * c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) v[i * c + j] = m(i, j);
    return v;
  };
  std::vector<Vector> flat;
  for (const auto& m : basis) {
    if (m.rows() != r || m.cols() != c) throw DimensionError("matrix_lie_algebra: matrices of different shapes");
    flat.push_back(flatten(m));
  }
  const Matrix b = Matrix::from_columns(r * c, flat);
  if (rank(b) != d) throw PreconditionError("matrix_lie_algebra: matrices are linearly dependent");
  std::vector<Vector> rhs;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      rhs.push_back(flatten(basis[i] * basis[j] - basis[j] * basis[i]));
      pairs.emplace_back(i, j);
    }
  LieAlgebra out(std::move(labels));
  if (pairs.empty()) return out;
  const auto x = solve_preimage(b, Matrix::from_columns(r * c, rhs));
  if (!x) throw PreconditionError("matrix_lie_algebra: span is not closed under commutators");
  for (std::size_t p = 0; p < pairs.size(); ++p) out.set_bracket(pairs[p].first, pairs[p].second, x->column(p));
  return out;
}

bool is_subalgebra(const LieAlgebra& l, const Subspace& s) {
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = i + 1; j < s.dim(); ++j)
      if (!s.contains(l.bracket(s.basis_vector(i), s.basis_vector(j)))) return false;
  return true;
}

}  // namespace cartanorm
