#ifndef CARTANORM_NORMCOND_HPP
#define CARTANORM_NORMCOND_HPP

// Normalization conditions, negligible submodules and codifferentials on
// L(Lambda^k(g/p), g), k = 1, 2, 3, in the coordinates of HomSpace.
//
// Invariance under P is tested infinitesimally, as stability under the
// action of a basis of g^0.

#include "cartanorm/cochains.hpp"
#include "cartanorm/liealg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cartanorm {

/// (A . f)(X_1..X_k) = [A, f(X_1..X_k)] - sum_i f(.., [A, X_i] + p, ..).
Vector module_action(const FilteredLieAlgebra& f, std::span<const Rational> a, const HomSpace& s,
                     std::span<const Rational> phi);
SparseMatrix module_action_matrix(const FilteredLieAlgebra& f, std::span<const Rational> a, const HomSpace& s);

/// 2 mu + nu, the largest homogeneity of a 2-hom.
int max_two_form_degree(const FilteredLieAlgebra& f);

struct NormalizationDegree {
  int l = 0;
  bool complementary = false;
  std::size_t dim_grN = 0;
  std::size_t dim_im = 0;
  std::size_t dim_c2 = 0;
  /// Nonzero element of gr_l(N) ∩ im d (full C^2 coordinates), if any.
  std::optional<Vector> witness;
};

struct NormalizationReport {
  bool invariant = false;
  std::optional<Vector> invariance_witness;
  std::vector<NormalizationDegree> degrees;
  bool ok() const;
};

/// N given by a basis in the coordinates of HomSpace(f.index, 2).
NormalizationReport check_normalization(const FilteredLieAlgebra& f, const Subspace& n);

class NormalizationCondition {
 public:
  /// Throws PreconditionError unless check_normalization passes.
  NormalizationCondition(FilteredLieAlgebra f, Subspace n);

  const FilteredLieAlgebra& algebra() const { return f_; }
  const Subspace& space() const { return n_; }
  const HomSpace& hom2() const { return s2_; }
  const HomSpace& hom1() const { return s1_; }
  const CochainComplex& complex() const { return cc_; }
  int max_degree() const { return top_; }
  /// gr_l(N ∩ L^l) in local coordinates of C^2_l (empty subspace outside 1..max_degree).
  Subspace graded_image(int l) const;
  /// Basis of N ∩ L^l and the gr_l of each basis vector (local coordinates).
  const Matrix& filtered_basis(int l) const;
  const Matrix& graded_basis(int l) const;

 private:
  FilteredLieAlgebra f_;
  Subspace n_;
  HomSpace s1_;
  HomSpace s2_;
  CochainComplex cc_;
  int top_ = 0;
  std::vector<Matrix> filtered_;
  std::vector<Matrix> graded_;
};

/// w = n + b with n in gr_l(N), b in im d, all in local coordinates of C^2_l.
struct DegreeSplit {
  Vector n;
  Vector b;
};
DegreeSplit decompose_degree(const NormalizationCondition& nc, int l, std::span<const Rational> w);

struct NegligibleDegree {
  int l = 0;
  bool trivial_intersection = false;
  bool complementary = false;
  std::size_t dim_grNt = 0;
  std::size_t dim_ker = 0;
  std::size_t dim_c2 = 0;
};

struct NegligibleReport {
  bool contained = false;
  bool invariant = false;
  bool trivial_intersection = false;
  bool maximal = false;
  std::vector<NegligibleDegree> degrees;
  bool negligible() const { return contained && invariant && trivial_intersection; }
};

NegligibleReport check_negligible(const Subspace& nt, const NormalizationCondition& nc);

struct NegligibleSubmodule {
  Subspace space;
  bool maximal = false;
};

/// dim gr_l(N / Ntilde) for l = 1..max_degree (index l - 1). Throws unless
/// Ntilde is maximal negligible; the result is checked against dim H^2_l.
std::vector<std::size_t> quotient_dims(const NormalizationCondition& nc, const NegligibleSubmodule& nt);

struct Codifferential {
  FilteredLieAlgebra alg;
  HomSpace s1;
  HomSpace s2;
  HomSpace s3;
  /// L(Lambda^2, g) -> L(Lambda^1, g).
  Matrix d2;
  /// L(Lambda^3, g) -> L(Lambda^2, g).
  Matrix d3;
  std::string construction;
};

struct CodifferentialReport {
  bool equivariant = false;
  bool homogeneous = false;
  bool square_zero = false;
  bool image_homogeneous = false;
  bool disjoint = false;
  std::vector<std::string> failures;
  bool ok() const { return equivariant && homogeneous && square_zero && image_homogeneous && disjoint; }
};

CodifferentialReport check_codifferential(const Codifferential& c);

/// Homology differential of p+ = g^1 transported along the Killing pairing
/// of g/p with p+.
Codifferential kostant_codifferential(const FilteredLieAlgebra& f);

struct InnerProduct {
  Matrix gram;
};

/// Symmetric, positive definite, and zero between different weights.
bool is_valid_inner_product(const InnerProduct& ip, const std::vector<int>& weights);

/// Inner product on the basis of semidirect(m, g0, ...): b on m_{-1}, induced
/// metrics on m_{-2}, m_{-3}, ... through the bracket, -tr(A B) on g0 with
/// A, B restricted to m_{-1}. Lambda^2 m_{-1} carries the determinant metric.
InnerProduct subriemannian_inner_product(const GradedLieAlgebra& m, const Matrix& b, const Subspace& g0);

/// Weights c_i of the diagonal inner product on S^k R^2 in the basis
/// x^{k-i} y^i, from <e v, w> = <v, f w> and c_0 = 1.
std::vector<Rational> ode_module_weights(std::size_t k);

/// Inner product on the basis of ode_algebra(k, m).
InnerProduct ode_inner_product(std::size_t k, std::size_t m);

/// Gram matrix on HomSpace coordinates induced by an inner product on g:
/// Lambda^k of the dual metric on g/p tensored with the metric on g.
Matrix hom_gram(const HomSpace& s, const Matrix& g);

/// Adjoints of d with respect to hom_gram. The algebra must be graded by its
/// filtration index and the inner product grading-orthogonal.
Codifferential adjoint_codifferential(const FilteredLieAlgebra& f, const InnerProduct& ip);

struct NormalizationPair {
  NormalizationCondition n;
  NegligibleSubmodule nt;
};

/// (ker d2, im d3); both are checked.
NormalizationPair condition_from_codifferential(const Codifferential& c);

struct Correction {
  int l = 0;
  /// Element of L(g/p, g) homogeneous of degree >= l.
  Vector h;
};

struct NormalizedHom {
  Vector v_norm;
  std::vector<Correction> corrections;
};

/// Removes the im d part degree by degree, l = 1, 2, ..., 2 mu + nu.
NormalizedHom normalize_pointwise(std::span<const Rational> v, const NormalizationCondition& nc,
                                  const Splitting& split);

}  // namespace cartanorm

#endif  // CARTANORM_NORMCOND_HPP
