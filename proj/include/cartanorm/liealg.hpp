#ifndef CARTANORM_LIEALG_HPP
#define CARTANORM_LIEALG_HPP

// Lie algebras by structure constants on a labeled basis, together with
// gradings and filtrations given by an integer weight per basis vector.

#include "cartanorm/exactla.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cartanorm {

struct Term {
  std::size_t k;
  Rational c;
};

class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(std::vector<std::string> labels);

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  void set_label(std::size_t i, std::string label) { labels_[i] = std::move(label); }

  /// Sets [e_i, e_j] = v and [e_j, e_i] = -v. i == j is rejected unless v = 0.
  void set_bracket(std::size_t i, std::size_t j, std::span<const Rational> v);
  void set_bracket(std::size_t i, std::size_t j, const std::vector<Term>& terms);

  const std::vector<Term>& bracket_terms(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  Vector bracket(std::size_t i, std::size_t j) const;
  Vector bracket(std::span<const Rational> x, std::span<const Rational> y) const;
  /// Matrix of ad(x) in the basis.
  Matrix ad(std::span<const Rational> x) const;
  Matrix ad_basis(std::size_t i) const;

  bool is_abelian() const;

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b);

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Term>> table_;
};

struct GradedLieAlgebra {
  LieAlgebra alg;
  std::vector<int> degree;

  std::size_t dim() const { return alg.dim(); }
};

/// Adapted basis: g^i is spanned by the basis vectors of index >= i.
struct FilteredLieAlgebra {
  LieAlgebra alg;
  std::vector<int> index;

  std::size_t dim() const { return alg.dim(); }
};

Vector unit_vector(std::size_t n, std::size_t i);

/// Smallest and largest weight; (0, 0) for an empty list.
int min_weight(const std::vector<int>& w);
int max_weight(const std::vector<int>& w);
/// Positions whose weight satisfies the predicate, in basis order.
std::vector<std::size_t> positions_with_weight(const std::vector<int>& w, int value);
std::vector<std::size_t> positions_with_weight_at_least(const std::vector<int>& w, int value);
std::vector<std::size_t> negative_positions(const std::vector<int>& w);

/// mu = -(lowest weight), nu = highest weight.
int depth(const std::vector<int>& w);
int height(const std::vector<int>& w);

/// Span of the basis vectors of weight >= i (the filtration component g^i).
Subspace filtration_component(const FilteredLieAlgebra& f, int i);

bool check_jacobi(const LieAlgebra& l);
/// First basis triple i < j < k violating the Jacobi identity, if any.
std::optional<std::array<std::size_t, 3>> jacobi_witness(const LieAlgebra& l);

bool check_graded(const GradedLieAlgebra& g);
bool check_filtered(const FilteredLieAlgebra& f);

/// Same basis and labels "gr_i(label)"; keeps only the components of the
/// bracket landing in index exactly idx(a) + idx(b).
GradedLieAlgebra associated_graded(const FilteredLieAlgebra& f);

/// Graded algebra viewed as filtered by its grading.
FilteredLieAlgebra filtered_by_grading(const GradedLieAlgebra& g);

/// Subalgebra spanned by the negative-degree basis vectors.
GradedLieAlgebra negative_part(const GradedLieAlgebra& g);

bool is_fundamental(const GradedLieAlgebra& m);

/// Degree-d derivations as a subspace of n*n matrices; coordinate u*n + t is
/// the coefficient of e_u in D(e_t).
Subspace graded_derivations(const GradedLieAlgebra& g, int d);
Matrix derivation_matrix(std::size_t n, std::span<const Rational> flat);

Matrix killing_form(const LieAlgebra& l);

Subspace center(const LieAlgebra& l);
Subspace normalizer(const LieAlgebra& l, const Subspace& s);
/// Largest ideal of g contained in s.
Subspace largest_ideal_in(const LieAlgebra& l, const Subspace& s);
Subspace max_ideal_in(const FilteredLieAlgebra& f);

/// {A in g^0 : [A, g^i] in g^{i+j} for all i < 0}.
Subspace raising_subspace(const FilteredLieAlgebra& f, int j);
bool check_condition_B(const FilteredLieAlgebra& f);

/// The components g^1, g^2, ... produced by continuing the non-positive part
/// of a filtration, in the original coordinates. Index values above 0 in
/// `nonpos` are rejected. The last entry is the first zero component.
std::vector<Subspace> continued_components(const LieAlgebra& l, const std::vector<int>& nonpos);
FilteredLieAlgebra continue_filtration(const LieAlgebra& l, const std::vector<int>& nonpos);

/// Structure constants in the basis given by the columns of p (invertible).
/// Columns equal to a standard basis vector keep their label.
LieAlgebra rebase(const LieAlgebra& l, const Matrix& p);

/// A matrix Lie algebra spanned by the given matrices, closed under
/// commutators (checked).
LieAlgebra matrix_lie_algebra(const std::vector<Matrix>& basis, std::vector<std::string> labels);

bool is_subalgebra(const LieAlgebra& l, const Subspace& s);

std::string combination_label(const LieAlgebra& l, std::span<const Rational> v);

}  // namespace cartanorm

#endif  // CARTANORM_LIEALG_HPP
