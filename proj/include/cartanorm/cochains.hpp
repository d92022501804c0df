#ifndef CARTANORM_COCHAINS_HPP
#define CARTANORM_COCHAINS_HPP

// Spaces of alternating maps on the negative part of a weighted basis,
// the Chevalley-Eilenberg differential, the homology differential, and the
// gr_l map between filtered and graded hom-spaces.
//
// Coordinate convention: a k-form is stored on increasing k-tuples I of
// negative-weight basis positions, tuples in lexicographic order, and the
// coordinate of (I, t) is tuple_position(I) * n + t where t runs over the
// whole basis. The same coordinates describe L(Lambda^k(g/p), g) for a
// filtered algebra and C^k(m, gr g) for its associated graded; only the
// meaning of the weight differs (at least vs. exactly).

#include "cartanorm/exactla.hpp"
#include "cartanorm/liealg.hpp"

#include <map>
#include <tuple>
#include <vector>

namespace cartanorm {

class HomSpace {
 public:
  HomSpace() = default;
  HomSpace(std::vector<int> weights, std::size_t arity);

  std::size_t arity() const { return arity_; }
  std::size_t target_dim() const { return weights_.size(); }
  const std::vector<int>& basis_weights() const { return weights_; }
  /// Negative-weight basis positions (the basis of m, resp. g/p).
  const std::vector<std::size_t>& inputs() const { return inputs_; }

  std::size_t tuple_count() const { return tuples_.size(); }
  const std::vector<std::size_t>& tuple(std::size_t p) const { return tuples_[p]; }
  /// Position of an increasing tuple of basis positions, or nullopt.
  std::optional<std::size_t> tuple_position(const std::vector<std::size_t>& tuple) const;

  std::size_t dim() const { return tuples_.size() * weights_.size(); }
  std::size_t coordinate(std::size_t tuple_pos, std::size_t target) const { return tuple_pos * weights_.size() + target; }
  std::size_t tuple_of(std::size_t coord) const { return coord / weights_.size(); }
  std::size_t target_of(std::size_t coord) const { return coord % weights_.size(); }

  /// weight(I, t) = w(t) - sum of w over I.
  int weight(std::size_t coord) const { return coord_weight_[coord]; }
  const std::vector<int>& weights() const { return coord_weight_; }
  std::vector<std::size_t> coordinates_of_weight(int l) const;
  std::vector<std::size_t> coordinates_of_weight_at_least(int l) const;
  /// Range of coordinate weights; (0, -1) when the space is zero.
  int min_weight() const;
  int max_weight() const;

  /// Largest l with every nonzero coordinate of v of weight >= l; nullopt for v = 0.
  std::optional<int> homogeneity(std::span<const Rational> v) const;

  std::string coordinate_label(std::size_t coord, const LieAlgebra& l) const;

 private:
  std::vector<int> weights_;
  std::size_t arity_ = 0;
  std::vector<std::size_t> inputs_;
  std::vector<std::vector<std::size_t>> tuples_;
  std::map<std::vector<std::size_t>, std::size_t> position_;
  std::vector<int> coord_weight_;
};

struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;

  Matrix dense() const;
  Matrix block(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const;
  Vector apply(std::span<const Rational> v) const;
};

/// Accumulates entries, merging duplicates and dropping zeros.
class SparseBuilder {
 public:
  SparseBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
  void add(std::size_t r, std::size_t c, const Rational& v);
  SparseMatrix build() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::map<std::pair<std::size_t, std::size_t>, Rational> acc_;
};

/// Inserts u into an increasing tuple. Returns nullopt if u is already present,
/// otherwise the sorted tuple and the sign of the sorting permutation when u
/// starts at position `at`.
std::optional<std::pair<std::vector<std::size_t>, int>> insert_sorted(const std::vector<std::size_t>& tuple,
                                                                     std::size_t u, std::size_t at);

/// Chevalley-Eilenberg differential C^k(m, g) -> C^{k+1}(m, g), m the
/// negative part of the graded algebra g, acting by the bracket.
SparseMatrix cochain_differential(const GradedLieAlgebra& g, const HomSpace& from, const HomSpace& to);

class CochainComplex {
 public:
  /// Builds C^0 .. C^{max_arity} and the differentials between them.
  explicit CochainComplex(GradedLieAlgebra g, std::size_t max_arity = 4);

  const GradedLieAlgebra& algebra() const { return g_; }
  std::size_t max_arity() const { return spaces_.size() - 1; }
  const HomSpace& space(std::size_t k) const;
  /// C^k -> C^{k+1}.
  const SparseMatrix& differential(std::size_t k) const;

  Vector apply_differential(std::size_t k, std::span<const Rational> phi) const;

  /// Coordinates of C^k_l inside C^k.
  std::vector<std::size_t> block_coordinates(std::size_t k, int l) const { return space(k).coordinates_of_weight(l); }
  /// d: C^k_l -> C^{k+1}_l in local coordinates of the two blocks.
  Matrix differential_block(std::size_t k, int l) const;
  /// im(d: C^{k-1}_l -> C^k_l) in local coordinates of C^k_l.
  Subspace image_in(std::size_t k, int l) const;
  /// ker(d: C^k_l -> C^{k+1}_l) in local coordinates of C^k_l.
  Subspace kernel_in(std::size_t k, int l) const;

  std::size_t cochain_dim(std::size_t k, int l) const { return block_coordinates(k, l).size(); }
  std::size_t cohomology_dim(std::size_t k, int l) const;

 private:
  GradedLieAlgebra g_;
  std::vector<HomSpace> spaces_;
  std::vector<SparseMatrix> diffs_;
};

/// The degree-l part of a cochain (other coordinates zeroed).
Vector homogeneous_component(const HomSpace& s, std::span<const Rational> phi, int l);
/// Coordinate subspace C^k_l inside the full space.
Subspace cochain_space_basis(const HomSpace& s, int l);

/// Embeds a local block vector back into the full coordinate space.
Vector embed(std::size_t dim, std::span<const std::size_t> coords, std::span<const Rational> local);
Vector restrict_to(std::span<const Rational> v, std::span<const std::size_t> coords);
Matrix embed_columns(std::size_t dim, std::span<const std::size_t> coords, const Matrix& local);

/// f -> a o f o Lambda^k(b): `a` acts on the target (n x n), `b` on the
/// inputs (square on the negative positions, in the order of inputs()).
Vector transform_hom(const HomSpace& s, const Matrix& a, const Matrix& b, std::span<const Rational> f);

/// f -> a o f - f o D, with D the derivation extension of `d` to k inputs.
SparseMatrix hom_derivation_action(const HomSpace& s, const Matrix& a, const Matrix& d);

/// Choice of complements W_i realizing g = gr(g). Column t of matrix() is the
/// representative in W_{idx t} of the class of e_t; it equals e_t plus terms
/// of strictly higher index.
class Splitting {
 public:
  static Splitting canonical(const FilteredLieAlgebra& f);
  static Splitting from_matrix(const FilteredLieAlgebra& f, Matrix s);
  /// complements[i + mu] = W_i for i = -mu..nu.
  static Splitting from_complements(const FilteredLieAlgebra& f, const std::vector<Subspace>& complements);

  const Matrix& matrix() const { return s_; }
  /// phi^W : g -> gr(g) in coordinates.
  const Matrix& phi() const { return phi_; }
  Subspace complement_at(int i) const;
  const std::vector<int>& index() const { return index_; }

 private:
  Splitting(std::vector<int> index, Matrix s);
  std::vector<int> index_;
  Matrix s_;
  Matrix phi_;
};

/// The induced map gr_l: alpha (homogeneous of degree >= l)
/// to a cochain in C^k(m, gr g)_l, in the shared coordinates.
Vector gr_ell(const HomSpace& s, std::span<const Rational> alpha, int l, const Splitting& split);
/// (phi^W)^{-1} o beta o (phi^W)^k for a graded cochain beta.
Vector lift_cochain(const HomSpace& s, std::span<const Rational> beta, const Splitting& split);

/// Homology differential on Lambda^k(p+) (x) g with p+ spanned by z[a]
/// (a indexing inputs() of the space); chain coordinates (I, t) stand for
/// z_I (x) e_t. Requires span(z) to be a subalgebra.
SparseMatrix homology_differential(const LieAlgebra& l, const std::vector<Vector>& z, const HomSpace& from,
                                   const HomSpace& to);

/// Entries only where the row weight is >= the column weight.
bool is_filtration_compatible(const Matrix& m, const std::vector<int>& row_w, const std::vector<int>& col_w);
/// im(m) meets each W^i exactly in m(V^i).
bool check_image_homogeneous(const Matrix& m, const std::vector<int>& row_w, const std::vector<int>& col_w);
/// Same-weight entries only.
Matrix gr0_of_map(const Matrix& m, const std::vector<int>& row_w, const std::vector<int>& col_w);

}  // namespace cartanorm

#endif  // CARTANORM_COCHAINS_HPP
