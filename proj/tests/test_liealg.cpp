#include "support.hpp"

#include "cartanorm/error.hpp"
#include "cartanorm/prolong.hpp"

#include <doctest.h>

using namespace cartanorm;

namespace {

Vector vec(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Basis e, h, f.
LieAlgebra sl2() {
  LieAlgebra l({"e", "h", "f"});
  l.set_bracket(0, 1, vec({-2, 0, 0}));
  l.set_bracket(0, 2, vec({0, 1, 0}));
  l.set_bracket(1, 2, vec({0, 0, -2}));
  return l;
}

FilteredLieAlgebra sl2_borel() { return {sl2(), {1, 0, -1}}; }

LieAlgebra abelian_algebra(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i + 1));
  return LieAlgebra(labels);
}

}  // namespace

TEST_CASE("check_jacobi") {
  CHECK(check_jacobi(abelian_algebra(3)));
  GradedLieAlgebra h = heisenberg(3);
  CHECK(check_jacobi(h.alg));
  CHECK(check_jacobi(sl2()));
  // Perturb the ode algebra: [e, f] = h + e breaks Jacobi on (e, h, f).
  FilteredLieAlgebra o = ode_algebra(3, 1);
  Vector ef = o.alg.bracket(0, 2);
  ef[0] += 1;
  o.alg.set_bracket(0, 2, ef);
  CHECK_FALSE(check_jacobi(o.alg));
  CHECK(jacobi_witness(o.alg).has_value());
  // One zero structure constant of heisenberg(3) raised by 1: [x, z] = x.
  h.alg.set_bracket(0, 2, vec({1, 0, 0}));
  CHECK_FALSE(check_jacobi(h.alg));
  const auto w = jacobi_witness(h.alg);
  REQUIRE(w.has_value());
  CHECK(*w == std::array<std::size_t, 3>{0, 1, 2});
}

TEST_CASE("check_graded") {
  CHECK(check_graded({ode_algebra(3, 1).alg, ode_algebra(3, 1).index}));
  GradedLieAlgebra h = heisenberg(3);
  CHECK(check_graded(h));
  h.degree[2] = -1;
  CHECK_FALSE(check_graded(h));
}

TEST_CASE("check_filtered") {
  CHECK(check_filtered(sl2_borel()));
  FilteredLieAlgebra bad = sl2_borel();
  bad.index[0] = 2;
  CHECK_FALSE(check_filtered(bad));
  const MutationTriple t = mutation_triple(2);
  CHECK(check_filtered(t.compact));
  CHECK(check_filtered(t.euclidean));
  CHECK(check_filtered(t.noncompact));
}

TEST_CASE("associated_graded") {
  const MutationTriple t = mutation_triple(2);
  const GradedLieAlgebra gc = associated_graded(t.compact);
  CHECK(testing::weight_counts(gc.degree) == std::map<int, std::size_t>{{-1, 2}, {0, 1}});
  for (auto i : positions_with_weight(gc.degree, -1))
    for (auto j : positions_with_weight(gc.degree, -1)) CHECK(is_zero(gc.alg.bracket(i, j)));
  const GradedLieAlgebra ge = associated_graded(t.euclidean);
  CHECK(gc.alg == ge.alg);
  CHECK(gc.degree == ge.degree);
  CHECK(gc.alg.label(0) == "gr_-1(v1)");
  const GradedLieAlgebra h = heisenberg(5);
  const GradedLieAlgebra hh = associated_graded(filtered_by_grading(h));
  CHECK(check_jacobi(hh.alg));
  CHECK(check_graded(hh));
  for (std::size_t i = 0; i < h.dim(); ++i)
    for (std::size_t j = 0; j < h.dim(); ++j) CHECK(h.alg.bracket(i, j) == hh.alg.bracket(i, j));
}

TEST_CASE("graded_derivations") {
  CHECK(graded_derivations(heisenberg(3), 0).dim() == 4);
  CHECK(graded_derivations(bryant(), 0).dim() == 9);
  CHECK(graded_derivations(abelian(3), 0).dim() == 9);
  // Closed under commutators.
  for (const auto& g : {heisenberg(3), bryant(), free_nilpotent(2, 3)}) {
    const Subspace d = graded_derivations(g, 0);
    const std::size_t n = g.dim();
    for (std::size_t a = 0; a < d.dim(); ++a)
      for (std::size_t b = 0; b < d.dim(); ++b) {
        const Matrix x = derivation_matrix(n, d.basis_vector(a));
        const Matrix y = derivation_matrix(n, d.basis_vector(b));
        const Matrix c = x * y - y * x;
        Vector flat(n * n);
        for (std::size_t u = 0; u < n; ++u)
          for (std::size_t t = 0; t < n; ++t) flat[u * n + t] = c(u, t);
        CHECK(d.contains(flat));
      }
  }
}

TEST_CASE("killing_form") {
  CHECK(killing_form(abelian_algebra(3)).is_zero());
  const Matrix k = killing_form(sl2());
  CHECK(k(1, 1) == 8);
  CHECK(k(0, 2) == 4);
  CHECK(k(2, 0) == 4);
  CHECK(k(0, 0) == 0);
  CHECK(k(0, 1) == 0);
  CHECK(killing_form(heisenberg(3).alg).is_zero());
  for (const auto& f : {parabolic_grading("sl", 3, {1, 2}), parabolic_grading("sl", 4, {2}),
                        parabolic_grading("sp", 4, {1, 2})}) {
    const Matrix kf = killing_form(f.alg);
    CHECK(kf == testing::killing_oracle(f.alg));
    CHECK(testing::naive_rank(kf) == f.dim());
  }
  for (const auto& g : {free_nilpotent(2, 3), bryant(), heisenberg(5)}) CHECK(killing_form(g.alg).is_zero());
}

TEST_CASE("max_ideal_in") {
  CHECK(max_ideal_in(sl2_borel()).dim() == 0);
  const FilteredLieAlgebra ab{abelian_algebra(2), {-1, 0}};
  const std::size_t e2[] = {1};
  CHECK(max_ideal_in(ab) == Subspace::coordinate(2, e2));
  CHECK(max_ideal_in(ode_algebra(3, 1)).dim() == 0);
}

TEST_CASE("check_condition_B") {
  CHECK(check_condition_B(sl2_borel()));
  FilteredLieAlgebra no_g1 = sl2_borel();
  no_g1.index[0] = 0;
  CHECK_FALSE(check_condition_B(no_g1));
  CHECK(check_condition_B(ode_algebra(3, 1)));
}

TEST_CASE("continue_filtration") {
  const FilteredLieAlgebra s = continue_filtration(sl2(), {0, 0, -1});
  CHECK(s.index == std::vector<int>{1, 0, -1});
  CHECK(height(s.index) == 1);
  const auto comps = continued_components(sl2(), {0, 0, -1});
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == Subspace::span(3, {vec({1, 0, 0})}));
  CHECK(comps[1].dim() == 0);
  const MutationTriple t = mutation_triple(2);
  const FilteredLieAlgebra o = continue_filtration(t.compact.alg, t.compact.index);
  CHECK(height(o.index) == 0);
  CHECK_THROWS_AS(continue_filtration(abelian_algebra(2), {-1, 0}), EffectivityError);
}

TEST_CASE("normalizer and center") {
  const LieAlgebra l = sl2();
  const Subspace borel = Subspace::span(3, {vec({1, 0, 0}), vec({0, 1, 0})});
  CHECK(normalizer(l, borel) == borel);
  CHECK(normalizer(l, Subspace(3)) == Subspace::full(3));
  const GradedLieAlgebra h = heisenberg(3);
  CHECK(normalizer(h.alg, center(h.alg)) == Subspace::full(3));
  CHECK(center(h.alg) == Subspace::span(3, {vec({0, 0, 1})}));
  CHECK(center(l).dim() == 0);
  CHECK(center(abelian_algebra(4)) == Subspace::full(4));
}

TEST_CASE("raising subspaces on a full-prolongation case") {
  const FilteredLieAlgebra f = ode_algebra(3, 1);
  REQUIRE(check_full_prolongation_pair(f));
  CHECK(raising_subspace(f, 1) == filtration_component(f, 1));
  CHECK(raising_subspace(f, 2).dim() == 0);
  CHECK(filtration_component(f, 2).dim() == 0);
}

TEST_CASE("degenerate zero-dimensional algebra") {
  const LieAlgebra z;
  CHECK(check_jacobi(z));
  CHECK(killing_form(z).rows() == 0);
  CHECK(center(z).dim() == 0);
  CHECK(abelian(0).dim() == 0);
}

TEST_CASE("rebase keeps the structure") {
  const LieAlgebra l = sl2();
  Matrix p = Matrix::identity(3);
  p(0, 1) = 1;  // second basis vector h + e
  const LieAlgebra r = rebase(l, p);
  CHECK(check_jacobi(r));
  CHECK(testing::naive_rank(killing_form(r)) == 3);
  CHECK(r.label(0) == "e");
}
