#ifndef CARTANORM_MODELS_HPP
#define CARTANORM_MODELS_HPP

// Example algebras with exact structure constants.

#include "cartanorm/liealg.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace cartanorm {

GradedLieAlgebra abelian(std::size_t n);
/// d = 2k + 1: x_1..x_k, y_1..y_k in degree -1, z in degree -2, [x_i, y_i] = z.
GradedLieAlgebra heisenberg(std::size_t d);
/// Free nilpotent algebra of step s on g generators in a Hall basis.
GradedLieAlgebra free_nilpotent(std::size_t g, std::size_t s);
/// Hall basic commutators as nested brackets, e.g. "[[x2,x1],x1]", in basis order.
std::vector<std::string> hall_words(std::size_t g, std::size_t s);
/// m_{-1} = R^3, m_{-2} = Lambda^2 R^3, bracket the wedge product.
GradedLieAlgebra bryant();

struct SymbolPair {
  GradedLieAlgebra m;
  /// Degree-0 derivations of m, in derivation coordinates (u * n + t).
  Subspace g0;
};

/// m_{-1} = R^n (n even), m_{-2} = Lambda^2_0, g0 = all degree-0 derivations.
SymbolPair contact_csp(std::size_t n);

/// Degree-0 derivations whose restriction to m_{-1} is skew for the Gram
/// matrix b on m_{-1} (in the order of the degree -1 basis vectors).
Subspace skew_derivations(const GradedLieAlgebra& m, const Matrix& b);

/// m + g0 with g0 acting by the given derivations; g0 gets degree 0 and
/// labels `labels`. The derivations must span a subalgebra.
GradedLieAlgebra semidirect(const GradedLieAlgebra& m, const Subspace& g0, std::vector<std::string> labels);

/// (sl(2) + gl(m)) x V, V = S^k R^2 (x) R^m. Basis: e, h, f, E_ab, then
/// v_i_a = x^{k-i} y^i (x) u_a. Filtration index f -1, h 0, E 0, e 1,
/// v_i -(i+1); the algebra is graded by the same numbers.
FilteredLieAlgebra ode_algebra(std::size_t k, std::size_t m);

/// Diagonal element of sl(n) / sp(4) defining a parabolic grading.
/// type "sl" supports n = 2..4 with crossed simple roots in 1..n-1;
/// type "sp" supports n = 4 with both roots crossed.
FilteredLieAlgebra parabolic_grading(const std::string& type, std::size_t n, const std::vector<std::size_t>& crossed);

/// Members in the order o(n+1), euc(n), o(n,1).
struct MutationTriple {
  FilteredLieAlgebra compact;
  FilteredLieAlgebra euclidean;
  FilteredLieAlgebra noncompact;
};
MutationTriple mutation_triple(std::size_t n);

/// R^n x so(n) graded in degrees -1 and 0.
GradedLieAlgebra riemannian(std::size_t n);
/// heisenberg(d) x (skew degree-0 derivations for the standard metric on m_{-1}).
GradedLieAlgebra subriemannian_heisenberg(std::size_t d);

enum class ModelKind { parabolic, ode, riemannian, subriemannian, symbol, mutation };

std::string to_string(ModelKind k);

struct ModelInstance {
  std::string name;
  ModelKind kind;
  std::map<std::string, long> params;
  /// One algebra per member (three for the mutation triple).
  std::vector<std::pair<std::string, FilteredLieAlgebra>> members;
};

struct ModelSpec {
  std::string name;
  ModelKind kind;
  std::string summary;
  std::map<std::string, long> defaults;
  std::function<ModelInstance(const std::map<std::string, long>&)> build;
};

const std::vector<ModelSpec>& model_catalog();
const ModelSpec* find_model(const std::string& name);
/// Builds with defaults overridden by `params`; unknown parameters throw.
ModelInstance build_model(const std::string& name, const std::map<std::string, long>& params);

}  // namespace cartanorm

#endif  // CARTANORM_MODELS_HPP
