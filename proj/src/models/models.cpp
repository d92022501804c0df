#include "cartanorm/models.hpp"

#include "cartanorm/error.hpp"

#include <algorithm>
#include <map>

namespace cartanorm {

GradedLieAlgebra abelian(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i + 1));
  return {LieAlgebra(std::move(labels)), std::vector<int>(n, -1)};
}

GradedLieAlgebra heisenberg(std::size_t d) {
  if (d < 3 || d % 2 == 0) throw PreconditionError("heisenberg: dimension must be odd and at least 3");
  const std::size_t k = (d - 1) / 2;
  std::vector<std::string> labels;
  std::vector<int> deg;
  for (std::size_t i = 0; i < k; ++i) labels.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < k; ++i) labels.push_back("y" + std::to_string(i + 1));
  labels.push_back("z");
  deg.assign(2 * k, -1);
  deg.push_back(-2);
  LieAlgebra l(std::move(labels));
  for (std::size_t i = 0; i < k; ++i) l.set_bracket(i, k + i, std::vector<Term>{{2 * k, 1}});
  return {std::move(l), std::move(deg)};
}

namespace {

using Word = std::vector<std::size_t>;
using Poly = std::map<Word, Rational>;

struct HallElement {
  std::ptrdiff_t left = -1;
  std::ptrdiff_t right = -1;
  std::size_t weight = 1;
  std::string text;
  Poly poly;
};

Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out[w] += ca * cb;
    }
  return out;
}

Poly commutator(const Poly& a, const Poly& b) {
  Poly out = multiply(a, b);
  for (const auto& [w, c] : multiply(b, a)) out[w] -= c;
  for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
  return out;
}

// Basic commutators, weight by weight. Within a weight, [u, v] is listed
// with u in basis order as the outer loop and v as the inner loop; a pair is
// basic when u > v and, for u = [u1, u2], u2 <= v.
std::vector<HallElement> hall_basis(std::size_t g, std::size_t s) {
  std::vector<HallElement> basis;
  for (std::size_t i = 0; i < g; ++i) {
    HallElement e;
    e.text = "x" + std::to_string(i + 1);
    e.poly[Word{i}] = 1;
    basis.push_back(std::move(e));
  }
  for (std::size_t w = 2; w <= s; ++w) {
    const std::size_t existing = basis.size();
    for (std::size_t u = 0; u < existing; ++u)
      for (std::size_t v = 0; v < u; ++v) {
        if (basis[u].weight + basis[v].weight != w) continue;
        if (basis[u].right >= 0 && static_cast<std::size_t>(basis[u].right) > v) continue;
        HallElement e;
        e.left = static_cast<std::ptrdiff_t>(u);
        e.right = static_cast<std::ptrdiff_t>(v);
        e.weight = w;
        e.text = "[" + basis[u].text + "," + basis[v].text + "]";
        e.poly = commutator(basis[u].poly, basis[v].poly);
        basis.push_back(std::move(e));
      }
  }
  return basis;
}

}  // namespace

std::vector<std::string> hall_words(std::size_t g, std::size_t s) {
  std::vector<std::string> out;
  for (const auto& e : hall_basis(g, s)) out.push_back(e.text);
  return out;
}

GradedLieAlgebra free_nilpotent(std::size_t g, std::size_t s) {
  if (g < 2 || s < 1) throw PreconditionError("free_nilpotent: needs at least 2 generators and step at least 1");
  const auto basis = hall_basis(g, s);
  const std::size_t n = basis.size();
  std::vector<std::string> labels;
  std::vector<int> deg;
  for (const auto& e : basis) {
    labels.push_back(e.text);
    deg.push_back(-static_cast<int>(e.weight));
  }
  LieAlgebra l(std::move(labels));
  // Express commutators in the basis of each weight through the words.
  for (std::size_t w = 2; w <= s; ++w) {
    std::vector<std::size_t> members;
    std::map<Word, std::size_t> coord;
    for (std::size_t i = 0; i < n; ++i)
      if (basis[i].weight == w) {
        members.push_back(i);
        for (const auto& [word, c] : basis[i].poly) coord.emplace(word, coord.size());
      }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<Poly> rhs;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (basis[a].weight + basis[b].weight == w) {
          pairs.emplace_back(a, b);
          rhs.push_back(commutator(basis[a].poly, basis[b].poly));
          for (const auto& [word, c] : rhs.back()) coord.emplace(word, coord.size());
        }
    if (pairs.empty()) continue;
    Matrix m(coord.size(), members.size());
    for (std::size_t j = 0; j < members.size(); ++j)
      for (const auto& [word, c] : basis[members[j]].poly) m(coord[word], j) = c;
    Matrix r(coord.size(), pairs.size());
    for (std::size_t j = 0; j < pairs.size(); ++j)
      for (const auto& [word, c] : rhs[j]) r(coord[word], j) = c;
    const auto x = solve_preimage(m, r);
    if (!x) throw Error("free_nilpotent: commutator outside the Hall span");
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      std::vector<Term> terms;
      for (std::size_t i = 0; i < members.size(); ++i)
        if (sgn((*x)(i, j)) != 0) terms.push_back({members[i], (*x)(i, j)});
      l.set_bracket(pairs[j].first, pairs[j].second, terms);
    }
  }
  return {std::move(l), std::move(deg)};
}

GradedLieAlgebra bryant() {
  LieAlgebra l({"e1", "e2", "e3", "e12", "e13", "e23"});
  l.set_bracket(0, 1, std::vector<Term>{{3, 1}});
  l.set_bracket(0, 2, std::vector<Term>{{4, 1}});
  l.set_bracket(1, 2, std::vector<Term>{{5, 1}});
  return {std::move(l), {-1, -1, -1, -2, -2, -2}};
}

SymbolPair contact_csp(std::size_t n) {
  if (n < 2 || n % 2 != 0) throw PreconditionError("contact_csp: n must be even and at least 2");
  // Wedge coordinates e_i ^ e_j, i < j.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_pos;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      pair_pos[{i, j}] = pairs.size();
      pairs.emplace_back(i, j);
    }
  const std::size_t w = pairs.size();
  auto symplectic = [](std::size_t i, std::size_t j) { return i % 2 == 0 && j == i + 1; };
  // Basis of the kernel of b on Lambda^2: unpaired wedges, then
  // e_0^e_1 - e_2a^e_2a+1.
  std::vector<Vector> basis;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i + 1));
  for (const auto& [i, j] : pairs)
    if (!symplectic(i, j)) {
      basis.push_back(unit_vector(w, pair_pos[{i, j}]));
      labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  for (std::size_t a = 1; a < n / 2; ++a) {
    Vector v(w);
    v[pair_pos[{0, 1}]] = 1;
    v[pair_pos[{2 * a, 2 * a + 1}]] = -1;
    basis.push_back(std::move(v));
    labels.push_back("w" + std::to_string(a));
  }
  const Matrix bm = Matrix::from_columns(w, basis);
  Vector btilde(w);
  for (std::size_t a = 0; a < n / 2; ++a) btilde[pair_pos[{2 * a, 2 * a + 1}]] = Rational(2, static_cast<long>(n));
  LieAlgebra l(std::move(labels));
  for (const auto& [i, j] : pairs) {
    Vector v = unit_vector(w, pair_pos[{i, j}]);
    if (symplectic(i, j))
      for (std::size_t c = 0; c < w; ++c) v[c] -= btilde[c];
    const auto x = solve_preimage(bm, v);
    if (!x) throw Error("contact_csp: bracket outside Lambda^2_0");
    Vector full(n + basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) full[n + c] = (*x)[c];
    l.set_bracket(i, j, full);
  }
  std::vector<int> deg(n, -1);
  deg.resize(n + basis.size(), -2);
  GradedLieAlgebra m{std::move(l), std::move(deg)};
  Subspace g0 = graded_derivations(m, 0);
  return {std::move(m), std::move(g0)};
}

Subspace skew_derivations(const GradedLieAlgebra& m, const Matrix& b) {
  const std::size_t n = m.dim();
  const auto low = positions_with_weight(m.degree, -1);
  if (b.rows() != low.size() || b.cols() != low.size()) throw DimensionError("skew_derivations: Gram matrix has wrong size");
  const Subspace der = graded_derivations(m, 0);
  // D1^T b + b D1 for each basis derivation, flattened.
  std::vector<Vector> images;
  for (std::size_t c = 0; c < der.dim(); ++c) {
    const Matrix d1 = derivation_matrix(n, der.basis_vector(c)).select_rows(low).select_columns(low);
    const Matrix s = d1.transpose() * b + b * d1;
    Vector v;
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = 0; j < s.cols(); ++j) v.push_back(s(i, j));
    images.push_back(std::move(v));
  }
  if (der.dim() == 0) return der;
  const Matrix sys = Matrix::from_columns(low.size() * low.size(), images);
  const Subspace k = kernel_basis(sys);
  return Subspace::span(der.basis() * k.basis());
}

GradedLieAlgebra semidirect(const GradedLieAlgebra& m, const Subspace& g0, std::vector<std::string> labels) {
  const std::size_t n = m.dim();
  const std::size_t d = g0.dim();
  if (g0.ambient_dim() != n * n) throw DimensionError("semidirect: derivations have wrong ambient dimension");
  if (labels.size() != d) throw DimensionError("semidirect: label count mismatch");
  std::vector<std::string> all = m.alg.labels();
  all.insert(all.end(), labels.begin(), labels.end());
  LieAlgebra l(std::move(all));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) l.set_bracket(i, j, m.alg.bracket_terms(i, j));
  std::vector<Matrix> ds;
  for (std::size_t c = 0; c < d; ++c) ds.push_back(derivation_matrix(n, g0.basis_vector(c)));
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t t = 0; t < n; ++t) {
      std::vector<Term> terms;
      for (std::size_t u = 0; u < n; ++u)
        if (sgn(ds[c](u, t)) != 0) terms.push_back({u, ds[c](u, t)});
      l.set_bracket(n + c, t, terms);
    }
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) {
      const Matrix com = ds[a] * ds[b] - ds[b] * ds[a];
      Vector flat(n * n);
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t t = 0; t < n; ++t) flat[u * n + t] = com(u, t);
      const auto x = g0.coordinates(flat);
      if (!x) throw PreconditionError("semidirect: derivations do not span a subalgebra");
      std::vector<Term> terms;
      for (std::size_t c = 0; c < d; ++c)
        if (sgn((*x)[c]) != 0) terms.push_back({n + c, (*x)[c]});
      l.set_bracket(n + a, n + b, terms);
    }
  std::vector<int> deg = m.degree;
  deg.resize(n + d, 0);
  return {std::move(l), std::move(deg)};
}

FilteredLieAlgebra ode_algebra(std::size_t k, std::size_t m) {
  if (k < 1 || m < 1) throw PreconditionError("ode_algebra: needs k >= 1 and m >= 1");
  std::vector<std::string> labels{"e", "h", "f"};
  std::vector<int> index{1, 0, -1};
  auto gl = [&](std::size_t a, std::size_t b) { return 3 + a * m + b; };
  auto v = [&](std::size_t i, std::size_t a) { return 3 + m * m + i * m + a; };
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      labels.push_back("E" + std::to_string(a + 1) + std::to_string(b + 1));
      index.push_back(0);
    }
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t a = 0; a < m; ++a) {
      labels.push_back(m == 1 ? "v" + std::to_string(i) : "v" + std::to_string(i) + "_" + std::to_string(a + 1));
      index.push_back(-static_cast<int>(i) - 1);
    }
  LieAlgebra l(std::move(labels));
  const std::size_t E = 0, H = 1, F = 2;
  l.set_bracket(H, E, std::vector<Term>{{E, 2}});
  l.set_bracket(H, F, std::vector<Term>{{F, -2}});
  l.set_bracket(E, F, std::vector<Term>{{H, 1}});
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t d = 0; d < m; ++d) {
          if (gl(a, b) >= gl(c, d)) continue;
          // [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb
          std::vector<Term> terms;
          if (b == c) terms.push_back({gl(a, d), 1});
          if (d == a) terms.push_back({gl(c, b), -1});
          l.set_bracket(gl(a, b), gl(c, d), terms);
        }
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t a = 0; a < m; ++a) {
      const long ki = static_cast<long>(k) - static_cast<long>(i);
      // e = x d/dy, f = y d/dx, h = x d/dx - y d/dy on x^{k-i} y^i
      if (i > 0) l.set_bracket(E, v(i, a), std::vector<Term>{{v(i - 1, a), static_cast<long>(i)}});
      if (i < k) l.set_bracket(F, v(i, a), std::vector<Term>{{v(i + 1, a), ki}});
      if (ki - static_cast<long>(i) != 0) l.set_bracket(H, v(i, a), std::vector<Term>{{v(i, a), ki - static_cast<long>(i)}});
      for (std::size_t b = 0; b < m; ++b) l.set_bracket(gl(b, a), v(i, a), std::vector<Term>{{v(i, b), 1}});
    }
  return {std::move(l), std::move(index)};
}

namespace {

Matrix unit_matrix(std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(n, n);
  m(i, j) = 1;
  return m;
}

// Degree of a matrix under ad(diag(z)), which must be homogeneous.
int matrix_degree(const Matrix& x, const std::vector<Rational>& z) {
  std::optional<Rational> d;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (sgn(x(i, j)) == 0) continue;
      const Rational dij = z[i] - z[j];
      if (d && *d != dij) throw Error("parabolic_grading: basis matrix is not homogeneous");
      d = dij;
    }
  if (!d || d->get_den() != 1) throw Error("parabolic_grading: non-integral degree");
  return static_cast<int>(d->get_num().get_si());
}

FilteredLieAlgebra graded_matrix_algebra(const std::vector<Matrix>& mats, std::vector<std::string> labels,
                                         const std::vector<Rational>& z) {
  std::vector<int> deg;
  for (const auto& x : mats) deg.push_back(matrix_degree(x, z));
  return {matrix_lie_algebra(mats, std::move(labels)), std::move(deg)};
}

}  // namespace

FilteredLieAlgebra parabolic_grading(const std::string& type, std::size_t n, const std::vector<std::size_t>& crossed) {
  if (type == "sl") {
    if (n < 2 || n > 4) throw PreconditionError("parabolic_grading: sl(n) supported for n = 2..4");
    if (crossed.empty()) throw PreconditionError("parabolic_grading: at least one root must be crossed");
    std::vector<bool> cross(n, false);
    for (auto c : crossed) {
      if (c < 1 || c >= n) throw PreconditionError("parabolic_grading: simple root out of range");
      cross[c - 1] = true;
    }
    std::vector<Rational> z(n);
    for (std::size_t a = n - 1; a-- > 0;) z[a] = z[a + 1] + (cross[a] ? 1 : 0);
    std::vector<Matrix> mats;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        mats.push_back(unit_matrix(n, i, j));
        labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
      }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      mats.push_back(unit_matrix(n, i, i) - unit_matrix(n, i + 1, i + 1));
      labels.push_back("H" + std::to_string(i + 1));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        mats.push_back(unit_matrix(n, j, i));
        labels.push_back("E" + std::to_string(j + 1) + std::to_string(i + 1));
      }
    return graded_matrix_algebra(mats, std::move(labels), z);
  }
  if (type == "sp") {
    std::vector<std::size_t> sorted = crossed;
    std::sort(sorted.begin(), sorted.end());
    if (n != 4 || sorted != std::vector<std::size_t>{1, 2})
      throw PreconditionError("parabolic_grading: sp supported only for sp(4) with both roots crossed");
    auto u = [](std::size_t i, std::size_t j) { return unit_matrix(4, i, j); };
    const std::vector<Matrix> mats{u(0, 2),           u(0, 3) + u(1, 2), u(1, 3),           u(0, 0) - u(2, 2),
                                   u(0, 1) - u(3, 2), u(1, 0) - u(2, 3), u(1, 1) - u(3, 3), u(2, 0),
                                   u(3, 0) + u(2, 1), u(3, 1)};
    std::vector<std::string> labels{"B11", "B12", "B22", "A11", "A12", "A21", "A22", "C11", "C12", "C22"};
    const std::vector<Rational> z{Rational(3, 2), Rational(1, 2), Rational(-3, 2), Rational(-1, 2)};
    return graded_matrix_algebra(mats, std::move(labels), z);
  }
  throw PreconditionError("parabolic_grading: unsupported type '" + type + "'");
}

namespace {

FilteredLieAlgebra mutation_member(std::size_t n, long eps) {
  const std::size_t d = n + 1;
  std::vector<Matrix> mats;
  std::vector<std::string> labels;
  std::vector<int> index;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix x(d, d);
    x(i, n) = 1;
    x(n, i) = -eps;
    mats.push_back(std::move(x));
    labels.push_back("v" + std::to_string(i + 1));
    index.push_back(-1);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix x(d, d);
      x(i, j) = 1;
      x(j, i) = -1;
      mats.push_back(std::move(x));
      labels.push_back("A" + std::to_string(i + 1) + std::to_string(j + 1));
      index.push_back(0);
    }
  return {matrix_lie_algebra(mats, std::move(labels)), std::move(index)};
}

}  // namespace

MutationTriple mutation_triple(std::size_t n) {
  if (n < 2) throw PreconditionError("mutation_triple: needs n >= 2");
  return {mutation_member(n, 1), mutation_member(n, 0), mutation_member(n, -1)};
}

GradedLieAlgebra riemannian(std::size_t n) {
  if (n < 1) throw PreconditionError("riemannian: needs n >= 1");
  if (n == 1) return abelian(1);
  FilteredLieAlgebra e = mutation_member(n, 0);
  return {std::move(e.alg), std::move(e.index)};
}

GradedLieAlgebra subriemannian_heisenberg(std::size_t d) {
  const GradedLieAlgebra m = heisenberg(d);
  const std::size_t low = d - 1;
  const Subspace g0 = skew_derivations(m, Matrix::identity(low));
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < g0.dim(); ++c) labels.push_back("J" + std::to_string(c + 1));
  return semidirect(m, g0, std::move(labels));
}

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::parabolic: return "parabolic";
    case ModelKind::ode: return "ode";
    case ModelKind::riemannian: return "riemannian";
    case ModelKind::subriemannian: return "subriemannian";
    case ModelKind::symbol: return "symbol";
    case ModelKind::mutation: return "mutation";
  }
  return "unknown";
}

namespace {

std::size_t unsigned_param(const std::map<std::string, long>& p, const std::string& key) {
  const long v = p.at(key);
  if (v < 0) throw PreconditionError("parameter '" + key + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

ModelInstance symbol_instance(const std::string& name, const std::map<std::string, long>& p, const GradedLieAlgebra& m,
                              const Subspace& g0) {
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < g0.dim(); ++c) labels.push_back("D" + std::to_string(c + 1));
  return {name, ModelKind::symbol, p, {{name, filtered_by_grading(semidirect(m, g0, std::move(labels)))}}};
}

ModelInstance full_derivations(const std::string& name, const std::map<std::string, long>& p, const GradedLieAlgebra& m) {
  return symbol_instance(name, p, m, graded_derivations(m, 0));
}

std::vector<ModelSpec> make_catalog() {
  std::vector<ModelSpec> c;
  c.push_back({"sl", ModelKind::parabolic, "sl(n), n = 2..4, graded by crossed simple roots (bitmask, 0 = all)",
               {{"n", 3}, {"crossed", 0}}, [](const auto& p) {
                 const std::size_t n = unsigned_param(p, "n");
                 const long mask = p.at("crossed");
                 std::vector<std::size_t> roots;
                 for (std::size_t i = 1; i < n; ++i)
                   if (mask == 0 || (mask >> (i - 1)) & 1) roots.push_back(i);
                 return ModelInstance{"sl", ModelKind::parabolic, p, {{"sl", parabolic_grading("sl", n, roots)}}};
               }});
  c.push_back({"sp4", ModelKind::parabolic, "sp(4) with the Borel grading", {}, [](const auto& p) {
                 return ModelInstance{"sp4", ModelKind::parabolic, p, {{"sp4", parabolic_grading("sp", 4, {1, 2})}}};
               }});
  c.push_back({"ode", ModelKind::ode, "(sl(2) + gl(m)) x S^k R^2 (x) R^m", {{"k", 3}, {"m", 1}}, [](const auto& p) {
                 return ModelInstance{"ode", ModelKind::ode, p,
                                      {{"ode", ode_algebra(unsigned_param(p, "k"), unsigned_param(p, "m"))}}};
               }});
  c.push_back({"mutation_triple", ModelKind::mutation, "o(n+1), euc(n), o(n,1) filtered by o(n)", {{"n", 2}},
               [](const auto& p) {
                 auto t = mutation_triple(unsigned_param(p, "n"));
                 return ModelInstance{"mutation_triple", ModelKind::mutation, p,
                                      {{"o(n+1)", std::move(t.compact)},
                                       {"euc(n)", std::move(t.euclidean)},
                                       {"o(n,1)", std::move(t.noncompact)}}};
               }});
  c.push_back({"riemannian", ModelKind::riemannian, "R^n x so(n)", {{"n", 3}}, [](const auto& p) {
                 return ModelInstance{"riemannian", ModelKind::riemannian, p,
                                      {{"riemannian", filtered_by_grading(riemannian(unsigned_param(p, "n")))}}};
               }});
  c.push_back({"subriemannian", ModelKind::subriemannian, "heisenberg(d) x skew derivations", {{"d", 3}},
               [](const auto& p) {
                 return ModelInstance{"subriemannian", ModelKind::subriemannian, p,
                                      {{"subriemannian",
                                        filtered_by_grading(subriemannian_heisenberg(unsigned_param(p, "d")))}}};
               }});
  c.push_back({"heisenberg", ModelKind::symbol, "heisenberg(d) x degree-0 derivations", {{"d", 3}},
               [](const auto& p) { return full_derivations("heisenberg", p, heisenberg(unsigned_param(p, "d"))); }});
  c.push_back({"free_nilpotent", ModelKind::symbol, "free nilpotent (g generators, step s) x degree-0 derivations",
               {{"g", 2}, {"s", 3}}, [](const auto& p) {
                 return full_derivations("free_nilpotent", p,
                                         free_nilpotent(unsigned_param(p, "g"), unsigned_param(p, "s")));
               }});
  c.push_back({"bryant", ModelKind::symbol, "R^3 + Lambda^2 R^3 x degree-0 derivations", {},
               [](const auto& p) { return full_derivations("bryant", p, bryant()); }});
  c.push_back({"contact", ModelKind::symbol, "contact symbol of dimension n + csp(n)", {{"n", 4}}, [](const auto& p) {
                 const SymbolPair s = contact_csp(unsigned_param(p, "n"));
                 return symbol_instance("contact", p, s.m, s.g0);
               }});
  c.push_back({"abelian", ModelKind::symbol, "R^n x gl(n)", {{"n", 2}},
               [](const auto& p) { return full_derivations("abelian", p, abelian(unsigned_param(p, "n"))); }});
  return c;
}

}  // namespace

const std::vector<ModelSpec>& model_catalog() {
  static const std::vector<ModelSpec> catalog = make_catalog();
  return catalog;
}

const ModelSpec* find_model(const std::string& name) {
  for (const auto& s : model_catalog())
    if (s.name == name) return &s;
  return nullptr;
}

ModelInstance build_model(const std::string& name, const std::map<std::string, long>& params) {
  const ModelSpec* spec = find_model(name);
  if (!spec) throw PreconditionError("unknown model '" + name + "'");
  std::map<std::string, long> p = spec->defaults;
  for (const auto& [k, v] : params) {
    if (!p.count(k)) throw PreconditionError("model '" + name + "' has no parameter '" + k + "'");
    p[k] = v;
  }
  return spec->build(p);
}

}  // namespace cartanorm
