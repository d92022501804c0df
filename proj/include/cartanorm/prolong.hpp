#ifndef CARTANORM_PROLONG_HPP
#define CARTANORM_PROLONG_HPP

// Tanaka prolongation of (m, g0) and the full-prolongation tests.

#include "cartanorm/liealg.hpp"

#include <optional>
#include <vector>

namespace cartanorm {

struct ProlongationResult {
  /// dims[i] = dim g_i for i = 0, 1, ..., up to the last computed degree.
  std::vector<std::size_t> dims;
  /// Top nonzero degree once vanishing is certain; empty if the cap was hit.
  std::optional<int> stabilized_at;
  std::size_t cap = 0;
  /// m + g_0 + g_1 + ..., only when the prolongation is finite.
  std::optional<GradedLieAlgebra> total;

  std::size_t positive_dim() const;
  std::size_t nonnegative_dim() const;
};

/// 2 * (mu + dim m).
std::size_t default_prolongation_cap(const GradedLieAlgebra& m);

/// m graded in negative degrees; g0 a subalgebra of degree-0 derivations in
/// derivation coordinates (u * n + t). Components are computed for degrees
/// 1..cap. Vanishing is declared after one zero component when m is
/// fundamental, after mu consecutive zero components otherwise.
ProlongationResult tanaka_prolongation(const GradedLieAlgebra& m, const Subspace& g0,
                                       std::optional<std::size_t> cap = std::nullopt,
                                       const std::vector<std::string>& g0_labels = {});

struct FiniteType {
  bool finite = false;
  /// nu for FINITE(nu), the cap for UNKNOWN_AT(cap).
  int value = 0;

  friend bool operator==(const FiniteType&, const FiniteType&) = default;
};
FiniteType finite_at(int nu);
FiniteType unknown_at(std::size_t cap);
std::string to_string(const FiniteType& t);

FiniteType is_finite_type(const GradedLieAlgebra& m, const Subspace& g0, std::optional<std::size_t> cap = std::nullopt);

/// (m, image of ad: gr_0 -> der_gr(m)) for a filtered algebra.
struct SymbolData {
  GradedLieAlgebra gr;
  GradedLieAlgebra m;
  Subspace g0;
  std::vector<std::string> g0_labels;
};
SymbolData symbol_data(const FilteredLieAlgebra& f);

/// dim H^1(m, gr g)_l for l = lo..hi.
std::vector<std::size_t> h1_table(const FilteredLieAlgebra& f, int lo, int hi);

/// H^1_l = 0 for l = 1..mu+nu.
bool check_full_prolongation_pair(const FilteredLieAlgebra& f);
/// H^1_l = 0 for l = 0..mu+nu.
bool check_full_prolongation_of_m(const FilteredLieAlgebra& f);

}  // namespace cartanorm

#endif  // CARTANORM_PROLONG_HPP
