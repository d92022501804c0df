#include "cartanorm/prolong.hpp"

#include "cartanorm/cochains.hpp"
#include "cartanorm/error.hpp"

#include <algorithm>
#include <map>

namespace cartanorm {

std::size_t ProlongationResult::positive_dim() const {
  std::size_t s = 0;
  for (std::size_t i = 1; i < dims.size(); ++i) s += dims[i];
  return s;
}

std::size_t ProlongationResult::nonnegative_dim() const { return positive_dim() + (dims.empty() ? 0 : dims[0]); }

std::size_t default_prolongation_cap(const GradedLieAlgebra& m) {
  return 2 * (static_cast<std::size_t>(depth(m.degree)) + m.dim());
}

namespace {

// The growing algebra m + g_0 + g_1 + ... . Elements of degree >= 0 are
// stored as their maps on the basis of m.
class Builder {
 public:
  explicit Builder(const GradedLieAlgebra& m) : m_(m), nm_(m.dim()), deg_(m.degree), labels_(m.alg.labels()) {}

  std::size_t size() const { return deg_.size(); }
  const std::vector<int>& degrees() const { return deg_; }

  void add(int degree, std::string label, std::vector<Vector> images) {
    deg_.push_back(degree);
    labels_.push_back(std::move(label));
    maps_.push_back(std::move(images));
    charts_.erase(degree);
  }

  std::vector<std::size_t> of_degree(int d) const { return positions_with_weight(deg_, d); }

  Vector pad(const Vector& v) const {
    Vector out = v;
    out.resize(size());
    return out;
  }

  Vector bracket(std::size_t x, std::size_t y) const {
    if (x < nm_ && y < nm_) return pad(m_.alg.bracket(x, y));
    if (x >= nm_ && y < nm_) return pad(maps_[x - nm_][y]);
    if (x < nm_ && y >= nm_) return negate(pad(maps_[y - nm_][x]));
    if (x == y) return Vector(size());
    if (x < y) return pad(nn_.at({x, y}));
    return negate(pad(nn_.at({y, x})));
  }

  // Map X -> [p, q(X)] - [q, p(X)] on the basis of m, for p, q of degree >= 0.
  std::vector<Vector> commutator_map(std::size_t p, std::size_t q) const {
    std::vector<Vector> out;
    for (std::size_t t = 0; t < nm_; ++t) {
      Vector img(size());
      accumulate(img, p, pad(maps_[q - nm_][t]), 1);
      accumulate(img, q, pad(maps_[p - nm_][t]), -1);
      out.push_back(std::move(img));
    }
    return out;
  }

  Vector flatten(const std::vector<Vector>& images) const {
    Vector out;
    for (const auto& v : images) {
      const Vector p = pad(v);
      out.insert(out.end(), p.begin(), p.end());
    }
    return out;
  }

  // Expresses a map in the basis of the degree-d elements; nullopt if outside.
  std::optional<Vector> coordinates(const std::vector<Vector>& images, int d) const {
    const Chart& ch = chart(d);
    Vector out(size());
    if (ch.basis.empty()) {
      for (const auto& v : images)
        if (!is_zero(v)) return std::nullopt;
      return out;
    }
    Vector rhs(ch.rows.size());
    for (std::size_t r = 0; r < ch.rows.size(); ++r) {
      const auto [t, w] = ch.rows[r];
      if (w < images[t].size()) rhs[r] = images[t][w];
    }
    const Vector x = ch.inv * rhs;
    std::vector<Vector> rest(nm_, Vector(size()));
    for (std::size_t t = 0; t < nm_; ++t)
      for (std::size_t w = 0; w < images[t].size(); ++w) rest[t][w] = images[t][w];
    for (std::size_t i = 0; i < ch.basis.size(); ++i) {
      if (sgn(x[i]) == 0) continue;
      const auto& mp = maps_[ch.basis[i] - nm_];
      for (std::size_t t = 0; t < nm_; ++t)
        for (std::size_t w = 0; w < mp[t].size(); ++w)
          if (sgn(mp[t][w]) != 0) rest[t][w] -= x[i] * mp[t][w];
    }
    for (const auto& v : rest)
      if (!is_zero(v)) return std::nullopt;
    for (std::size_t i = 0; i < ch.basis.size(); ++i) out[ch.basis[i]] = x[i];
    return out;
  }

  void set_bracket(std::size_t p, std::size_t q, Vector v) { nn_[{p, q}] = std::move(v); }

  // Brackets of all pairs of non-negative degree summing to s.
  void close_degree(int s, bool must_vanish) {
    for (std::size_t p = nm_; p < size(); ++p)
      for (std::size_t q = p + 1; q < size(); ++q) {
        if (deg_[p] + deg_[q] != s) continue;
        const auto images = commutator_map(p, q);
        std::optional<Vector> c;
        if (must_vanish) {
          if (is_zero(flatten(images))) c = Vector(size());
        } else {
          c = coordinates(images, s);
        }
        if (!c) throw PreconditionError(s == 0 ? "tanaka_prolongation: g0 is not closed under commutators"
                                               : "tanaka_prolongation: bracket leaves the prolongation");
        set_bracket(p, q, std::move(*c));
      }
  }

  // Degree-i maps phi with phi([X,Y]) = [phi X, Y] + [X, phi Y].
  std::vector<std::vector<Vector>> solve_component(int i) const {
    std::vector<std::vector<std::size_t>> targets(nm_);
    std::vector<std::vector<std::size_t>> var(nm_);
    std::size_t nvar = 0;
    for (std::size_t t = 0; t < nm_; ++t) {
      targets[t] = of_degree(deg_[t] + i);
      for (std::size_t r = 0; r < targets[t].size(); ++r) var[t].push_back(nvar++);
    }
    if (nvar == 0) return {};
    const std::size_t n = size();
    std::vector<Vector> rows;
    for (std::size_t a = 0; a < nm_; ++a)
      for (std::size_t b = a + 1; b < nm_; ++b) {
        std::vector<Vector> block(n, Vector(nvar));
        for (const auto& term : m_.alg.bracket_terms(a, b))
          for (std::size_t r = 0; r < targets[term.k].size(); ++r) block[targets[term.k][r]][var[term.k][r]] += term.c;
        for (std::size_t r = 0; r < targets[a].size(); ++r) {
          const Vector br = bracket(targets[a][r], b);
          for (std::size_t w = 0; w < n; ++w)
            if (sgn(br[w]) != 0) block[w][var[a][r]] -= br[w];
        }
        for (std::size_t r = 0; r < targets[b].size(); ++r) {
          const Vector br = bracket(a, targets[b][r]);
          for (std::size_t w = 0; w < n; ++w)
            if (sgn(br[w]) != 0) block[w][var[b][r]] -= br[w];
        }
        for (auto& row : block)
          if (!is_zero(row)) rows.push_back(std::move(row));
      }
    Matrix sys(rows.size(), nvar);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < nvar; ++c) sys(r, c) = rows[r][c];
    const Subspace k = kernel_basis(sys);
    std::vector<std::vector<Vector>> out;
    for (std::size_t c = 0; c < k.dim(); ++c) {
      std::vector<Vector> images(nm_, Vector(n));
      for (std::size_t t = 0; t < nm_; ++t)
        for (std::size_t r = 0; r < targets[t].size(); ++r) images[t][targets[t][r]] = k.basis()(var[t][r], c);
      out.push_back(std::move(images));
    }
    return out;
  }

  GradedLieAlgebra assemble() const {
    LieAlgebra l(labels_);
    for (std::size_t x = 0; x < size(); ++x)
      for (std::size_t y = x + 1; y < size(); ++y) l.set_bracket(x, y, bracket(x, y));
    return {std::move(l), deg_};
  }

 private:
  static Vector negate(Vector v) {
    for (auto& x : v) x = -x;
    return v;
  }

  // img += sign * [p, v] for v a combination of basis vectors.
  void accumulate(Vector& img, std::size_t p, const Vector& v, int sign) const {
    for (std::size_t r = 0; r < v.size(); ++r) {
      if (sgn(v[r]) == 0) continue;
      const Vector br = bracket(p, r);
      for (std::size_t w = 0; w < br.size(); ++w)
        if (sgn(br[w]) != 0) img[w] += sign * v[r] * br[w];
    }
  }

  // Rows (t, w) on which the degree-d basis maps are independent, with the
  // inverse of that square block.
  struct Chart {
    std::vector<std::size_t> basis;
    std::vector<std::pair<std::size_t, std::size_t>> rows;
    Matrix inv;
  };

  const Chart& chart(int d) const {
    if (auto it = charts_.find(d); it != charts_.end()) return it->second;
    Chart ch;
    ch.basis = of_degree(d);
    if (!ch.basis.empty()) {
      std::vector<std::pair<std::size_t, std::size_t>> all;
      for (std::size_t t = 0; t < nm_; ++t)
        for (std::size_t w = 0; w < size(); ++w) all.emplace_back(t, w);
      Matrix a(all.size(), ch.basis.size());
      for (std::size_t i = 0; i < ch.basis.size(); ++i) {
        const auto& mp = maps_[ch.basis[i] - nm_];
        for (std::size_t t = 0; t < nm_; ++t)
          for (std::size_t w = 0; w < mp[t].size(); ++w) a(t * size() + w, i) = mp[t][w];
      }
      const auto piv = pivot_columns(a.transpose());
      for (auto r : piv) ch.rows.push_back(all[r]);
      ch.inv = inverse(a.select_rows(piv));
    }
    return charts_.emplace(d, std::move(ch)).first->second;
  }

  const GradedLieAlgebra& m_;
  std::size_t nm_;
  std::vector<int> deg_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Vector>> maps_;
  std::map<std::pair<std::size_t, std::size_t>, Vector> nn_;
  mutable std::map<int, Chart> charts_;
};

}  // namespace

ProlongationResult tanaka_prolongation(const GradedLieAlgebra& m, const Subspace& g0, std::optional<std::size_t> cap,
                                       const std::vector<std::string>& g0_labels) {
  const std::size_t nm = m.dim();
  if (!check_graded(m) || std::any_of(m.degree.begin(), m.degree.end(), [](int d) { return d >= 0; }))
    throw PreconditionError("tanaka_prolongation: m must be graded in negative degrees");
  if (g0.ambient_dim() != nm * nm) throw DimensionError("tanaka_prolongation: g0 has wrong ambient dimension");
  if (!graded_derivations(m, 0).contains(g0))
    throw PreconditionError("tanaka_prolongation: g0 is not made of degree-0 derivations");
  ProlongationResult res;
  res.cap = cap.value_or(default_prolongation_cap(m));
  Builder b(m);
  for (std::size_t c = 0; c < g0.dim(); ++c) {
    const Matrix d = derivation_matrix(nm, g0.basis_vector(c));
    std::vector<Vector> images;
    for (std::size_t t = 0; t < nm; ++t) images.push_back(d.column(t));
    b.add(0, c < g0_labels.size() && g0_labels.size() == g0.dim() ? g0_labels[c] : "g0_" + std::to_string(c + 1),
          std::move(images));
  }
  b.close_degree(0, false);
  res.dims.push_back(g0.dim());
  const int mu = depth(m.degree);
  const std::size_t needed = is_fundamental(m) ? 1 : static_cast<std::size_t>(std::max(mu, 1));
  std::size_t zeros = 0;
  int top = 0;
  int last = 0;
  for (std::size_t i = 1; i <= res.cap; ++i) {
    const int d = static_cast<int>(i);
    last = d;
    auto comp = b.solve_component(d);
    res.dims.push_back(comp.size());
    for (std::size_t c = 0; c < comp.size(); ++c)
      b.add(d, "g" + std::to_string(d) + "_" + std::to_string(c + 1), std::move(comp[c]));
    b.close_degree(d, false);
    if (res.dims.back() == 0) {
      if (++zeros >= needed) {
        res.stabilized_at = top;
        break;
      }
    } else {
      zeros = 0;
      top = d;
    }
  }
  if (res.stabilized_at) {
    res.dims.resize(static_cast<std::size_t>(top) + 1);
    for (int s = last + 1; s <= 2 * top; ++s) b.close_degree(s, true);
    res.total = b.assemble();
  }
  return res;
}

FiniteType finite_at(int nu) { return {true, nu}; }
FiniteType unknown_at(std::size_t cap) { return {false, static_cast<int>(cap)}; }

std::string to_string(const FiniteType& t) {
  return (t.finite ? "FINITE(" : "UNKNOWN_AT(") + std::to_string(t.value) + ")";
}

FiniteType is_finite_type(const GradedLieAlgebra& m, const Subspace& g0, std::optional<std::size_t> cap) {
  const auto r = tanaka_prolongation(m, g0, cap);
  if (r.stabilized_at) return finite_at(*r.stabilized_at);
  return unknown_at(r.cap);
}

SymbolData symbol_data(const FilteredLieAlgebra& f) {
  SymbolData s;
  s.gr = associated_graded(f);
  s.m = negative_part(s.gr);
  const auto neg = negative_positions(s.gr.degree);
  const std::size_t nm = neg.size();
  std::vector<Vector> ders;
  std::vector<std::string> labels;
  for (auto x : positions_with_weight(s.gr.degree, 0)) {
    Vector flat(nm * nm);
    for (std::size_t t = 0; t < nm; ++t) {
      const Vector br = s.gr.alg.bracket(x, neg[t]);
      for (std::size_t u = 0; u < nm; ++u) flat[u * nm + t] = br[neg[u]];
    }
    ders.push_back(std::move(flat));
    labels.push_back(s.gr.alg.label(x));
  }
  s.g0 = Subspace::span(nm * nm, ders);
  if (s.g0.dim() == labels.size()) s.g0_labels = std::move(labels);
  return s;
}

std::vector<std::size_t> h1_table(const FilteredLieAlgebra& f, int lo, int hi) {
  const CochainComplex cx(associated_graded(f), 2);
  std::vector<std::size_t> out;
  for (int l = lo; l <= hi; ++l) out.push_back(cx.cohomology_dim(1, l));
  return out;
}

bool check_full_prolongation_pair(const FilteredLieAlgebra& f) {
  const int top = depth(f.index) + height(f.index);
  for (auto h : h1_table(f, 1, top))
    if (h != 0) return false;
  return true;
}

bool check_full_prolongation_of_m(const FilteredLieAlgebra& f) {
  const int top = depth(f.index) + height(f.index);
  for (auto h : h1_table(f, 0, top))
    if (h != 0) return false;
  return true;
}

}  // namespace cartanorm
