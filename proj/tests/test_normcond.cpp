#include "support.hpp"

#include "cartanorm/error.hpp"
#include "cartanorm/normcond.hpp"

#include <doctest.h>

using namespace cartanorm;

namespace {

FilteredLieAlgebra sl3_borel() { return parabolic_grading("sl", 3, {1, 2}); }

Rational dot(const Vector& a, const Matrix& g, const Vector& b) {
  const Vector gb = g * b;
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * gb[i];
  return s;
}

std::vector<std::size_t> all_h2(const FilteredLieAlgebra& f, int top) {
  const CochainComplex cc({f.alg, f.index}, 3);
  std::vector<std::size_t> out;
  for (int l = 1; l <= top; ++l) out.push_back(cc.cohomology_dim(2, l));
  return out;
}

// Gram matrix of Lambda^k(G_neg^{-1}) (x) G, entry by entry from minors.
Matrix hom_gram_oracle(const HomSpace& s, const Matrix& g) {
  const auto& in = s.inputs();
  Matrix gneg(in.size(), in.size());
  for (std::size_t i = 0; i < in.size(); ++i)
    for (std::size_t j = 0; j < in.size(); ++j) gneg(i, j) = g(in[i], in[j]);
  const Matrix dual = inverse(gneg);
  auto local = [&](std::size_t pos) { return static_cast<std::size_t>(std::find(in.begin(), in.end(), pos) - in.begin()); };
  Matrix out(s.dim(), s.dim());
  for (std::size_t p = 0; p < s.tuple_count(); ++p)
    for (std::size_t q = 0; q < s.tuple_count(); ++q) {
      const auto& a = s.tuple(p);
      const auto& b = s.tuple(q);
      Matrix minor(a.size(), a.size());
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) minor(i, j) = dual(local(a[i]), local(b[j]));
      Rational det = 1;
      if (a.size() == 2) det = minor(0, 0) * minor(1, 1) - minor(0, 1) * minor(1, 0);
      if (a.size() == 1) det = minor(0, 0);
      for (std::size_t t = 0; t < s.target_dim(); ++t)
        for (std::size_t u = 0; u < s.target_dim(); ++u) out(s.coordinate(p, t), s.coordinate(q, u)) = det * g(t, u);
    }
  return out;
}

// Random symmetric positive definite matrix, zero between different weights.
Matrix random_graded_metric(std::mt19937_64& gen, const std::vector<int>& w) {
  const std::size_t n = w.size();
  Matrix b = testing::random_matrix(gen, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (w[r] != w[c]) b(r, c) = 0;
  return b * b.transpose() + Matrix::identity(n);
}

struct Sr {
  FilteredLieAlgebra f;
  GradedLieAlgebra m;
  Subspace g0;
  InnerProduct ip;
};

Sr subriemannian_case() {
  const GradedLieAlgebra full = subriemannian_heisenberg(3);
  Sr s{filtered_by_grading(full), negative_part(full), Subspace(), {}};
  s.g0 = skew_derivations(s.m, Matrix::identity(2));
  s.ip = subriemannian_inner_product(s.m, Matrix::identity(2), s.g0);
  return s;
}

}  // namespace

TEST_CASE("module action") {
  std::mt19937_64 gen(3);
  const FilteredLieAlgebra f = ode_algebra(3, 1);
  const HomSpace s(f.index, 2);
  const Vector phi = testing::random_vector(gen, s.dim());
  CHECK(is_zero(module_action(f, Vector(f.dim()), s, phi)));
  // Brackets act as commutators.
  const auto g0 = positions_with_weight_at_least(f.index, 0);
  for (auto a : g0)
    for (auto b : g0) {
      const Vector ua = unit_vector(f.dim(), a);
      const Vector ub = unit_vector(f.dim(), b);
      const Vector lhs = module_action(f, f.alg.bracket(a, b), s, phi);
      const Vector ab = module_action(f, ua, s, module_action(f, ub, s, phi));
      const Vector ba = module_action(f, ub, s, module_action(f, ua, s, phi));
      Vector rhs(s.dim());
      for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = ab[i] - ba[i];
      CHECK(lhs == rhs);
    }
  // A central element of g inside g^0 acts trivially.
  LieAlgebra l({"x", "c"});
  const FilteredLieAlgebra lc{l, {-1, 0}};
  const HomSpace s1(lc.index, 1);
  CHECK(is_zero(module_action(lc, unit_vector(2, 1), s1, testing::random_vector(gen, s1.dim()))));
  CHECK_THROWS_AS(module_action(f, unit_vector(f.dim(), 2), s, phi), PreconditionError);
  CHECK(module_action_matrix(f, unit_vector(f.dim(), 1), s).apply(phi) == module_action(f, unit_vector(f.dim(), 1), s, phi));
}

TEST_CASE("check_normalization on sl(3)/Borel") {
  const FilteredLieAlgebra f = sl3_borel();
  const Codifferential c = kostant_codifferential(f);
  const Subspace n = kernel_basis(c.d2);
  const NormalizationReport ok = check_normalization(f, n);
  CHECK(ok.ok());
  CHECK(ok.invariant);
  CHECK(ok.degrees.size() == static_cast<std::size_t>(max_two_form_degree(f)));
  const NormalizationReport full = check_normalization(f, Subspace::full(c.s2.dim()));
  CHECK(full.invariant);
  CHECK_FALSE(full.ok());
  bool saw_witness = false;
  for (const auto& d : full.degrees)
    if (d.dim_im > 0) {
      CHECK_FALSE(d.complementary);
      saw_witness = saw_witness || d.witness.has_value();
    }
  CHECK(saw_witness);
  const NormalizationReport zero = check_normalization(f, Subspace(c.s2.dim()));
  CHECK_FALSE(zero.ok());
  CHECK_FALSE(zero.degrees[3].complementary);  // H^2_4 = 2
  // A non-invariant N: one vector of ker d2.
  const NormalizationReport one = check_normalization(f, Subspace::span(c.s2.dim(), {n.basis_vector(0)}));
  CHECK_FALSE(one.invariant);
  CHECK(one.invariance_witness.has_value());
  CHECK_THROWS_AS(NormalizationCondition(f, Subspace(c.s2.dim())), PreconditionError);
}

TEST_CASE("negligible submodules and quotients") {
  const FilteredLieAlgebra f = sl3_borel();
  const Codifferential c = kostant_codifferential(f);
  const NormalizationCondition nc(f, kernel_basis(c.d2));
  const NegligibleReport zero = check_negligible(Subspace(c.s2.dim()), nc);
  CHECK(zero.negligible());
  CHECK_FALSE(zero.maximal);
  const Subspace im3 = image_basis(c.d3);
  const NegligibleReport maximal = check_negligible(im3, nc);
  CHECK(maximal.negligible());
  CHECK(maximal.maximal);
  const NegligibleReport all = check_negligible(nc.space(), nc);
  CHECK(all.contained);
  CHECK_FALSE(all.trivial_intersection);
  const auto q = quotient_dims(nc, {im3, true});
  CHECK(q == all_h2(f, nc.max_degree()));
  CHECK(q == std::vector<std::size_t>{0, 0, 0, 2, 0, 0});
  CHECK_THROWS(quotient_dims(nc, {Subspace(c.s2.dim()), false}));
}

TEST_CASE("Kostant codifferential") {
  const Codifferential c2 = kostant_codifferential(parabolic_grading("sl", 2, {1}));
  CHECK(c2.s2.dim() == 0);
  CHECK(c2.d2.is_zero());
  CHECK(check_codifferential(c2).ok());
  for (const auto& f : {sl3_borel(), parabolic_grading("sl", 3, {1}), parabolic_grading("sp", 4, {1, 2})}) {
    const Codifferential c = kostant_codifferential(f);
    const CodifferentialReport r = check_codifferential(c);
    CHECK(r.ok());
    CHECK((c.d2 * c.d3).is_zero());
    const NormalizationPair p = condition_from_codifferential(c);
    CHECK(quotient_dims(p.n, p.nt) == all_h2(f, p.n.max_degree()));
  }
  const FilteredLieAlgebra heis = build_model("heisenberg", {}).members.front().second;
  CHECK_THROWS_AS(kostant_codifferential(heis), PreconditionError);
  // A filtration whose g^1 is not the Killing annihilator of g^0.
  FilteredLieAlgebra off = parabolic_grading("sl", 2, {1});
  off.index = {0, 0, -1};
  CHECK_THROWS_AS(kostant_codifferential(off), PreconditionError);
}

TEST_CASE("gr0 of the Kostant codifferential is the graded homology differential") {
  // The algebra is graded, so gr0(d2) should equal d2 itself.
  const FilteredLieAlgebra f = sl3_borel();
  const Codifferential c = kostant_codifferential(f);
  CHECK(gr0_of_map(c.d2, c.s1.weights(), c.s2.weights()) == c.d2);
  CHECK(gr0_of_map(c.d3, c.s2.weights(), c.s3.weights()) == c.d3);
}

TEST_CASE("zero maps are not a codifferential") {
  const FilteredLieAlgebra f = ode_algebra(3, 1);
  const HomSpace s1(f.index, 1), s2(f.index, 2), s3(f.index, 3);
  const Codifferential z{f, s1, s2, s3, Matrix(s1.dim(), s2.dim()), Matrix(s2.dim(), s3.dim()), "zero"};
  const CodifferentialReport r = check_codifferential(z);
  CHECK(r.equivariant);
  CHECK(r.square_zero);
  CHECK_FALSE(r.disjoint);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.failures.empty());
  CHECK_THROWS_AS(condition_from_codifferential(z), PreconditionError);
}

TEST_CASE("ode inner product") {
  for (std::size_t k = 1; k <= 5; ++k) {
    const auto c = ode_module_weights(k);
    REQUIRE(c.size() == k + 1);
    for (std::size_t i = 0; i <= k; ++i)
      CHECK(c[i] == Rational(1, testing::binomial(static_cast<long>(k), static_cast<long>(i))));
  }
  for (std::size_t k = 1; k <= 3; ++k)
    for (std::size_t m = 1; m <= 2; ++m) {
      const FilteredLieAlgebra f = ode_algebra(k, m);
      const InnerProduct ip = ode_inner_product(k, m);
      CHECK(is_valid_inner_product(ip, f.index));
      CHECK(ip.gram(0, 0) == 1);
      CHECK(ip.gram(1, 1) == 2);
      CHECK(ip.gram(2, 2) == 1);
      CHECK(ip.gram(0, 2) == 0);
      // <e v, w> = <v, f w> on V.
      const auto v = positions_with_weight_at_least(f.index, -static_cast<int>(k) - 1);
      const Matrix ade = testing::ad_oracle(f.alg, 0);
      const Matrix adf = testing::ad_oracle(f.alg, 2);
      for (std::size_t a = 3 + m * m; a < f.dim(); ++a)
        for (std::size_t b = 3 + m * m; b < f.dim(); ++b) {
          const Vector ua = unit_vector(f.dim(), a);
          const Vector ub = unit_vector(f.dim(), b);
          CHECK(dot(ade * ua, ip.gram, ub) == dot(ua, ip.gram, adf * ub));
        }
    }
  CHECK_THROWS_AS(ode_inner_product(0, 1), PreconditionError);
}

TEST_CASE("sub-Riemannian inner product") {
  // R^2 abelian with so(2).
  const GradedLieAlgebra plane = abelian(2);
  const Subspace so2 = skew_derivations(plane, Matrix::identity(2));
  const InnerProduct p = subriemannian_inner_product(plane, Matrix::identity(2), so2);
  CHECK(p.gram.rows() == 3);
  CHECK(p.gram(0, 0) == 1);
  CHECK(p.gram(1, 1) == 1);
  CHECK(p.gram(0, 1) == 0);
  CHECK(p.gram(2, 2) > 0);
  const Sr s = subriemannian_case();
  CHECK(s.ip.gram(2, 2) == 1);  // |[x, y]|^2 with the determinant metric
  CHECK(s.ip.gram(3, 3) == 2);  // -tr(J^2) on so(2)
  CHECK(is_valid_inner_product(s.ip, s.f.index));
  CHECK_THROWS_AS(subriemannian_inner_product(s.m, Matrix::identity(2), graded_derivations(s.m, 0)), PreconditionError);
  Matrix indefinite = Matrix::identity(2);
  indefinite(1, 1) = -1;
  CHECK_THROWS_AS(subriemannian_inner_product(s.m, indefinite, s.g0), PreconditionError);
  // Step three works too: the free nilpotent algebra on two generators.
  const GradedLieAlgebra f23 = free_nilpotent(2, 3);
  const InnerProduct p23 = subriemannian_inner_product(f23, Matrix::identity(2), skew_derivations(f23, Matrix::identity(2)));
  CHECK(is_positive_definite(p23.gram));
}

TEST_CASE("hom_gram agrees with the minor oracle and inverts by Cauchy-Binet") {
  std::mt19937_64 gen(21);
  const FilteredLieAlgebra f = ode_algebra(2, 1);
  const Matrix g = random_graded_metric(gen, f.index);
  for (std::size_t k = 1; k <= 2; ++k) {
    const HomSpace s(f.index, k);
    const Matrix h = hom_gram(s, g);
    CHECK(h == hom_gram_oracle(s, g));
    // Inverse: Lambda^k(G_neg) (x) G^{-1}.
    const auto& in = s.inputs();
    Matrix gneg(in.size(), in.size());
    for (std::size_t i = 0; i < in.size(); ++i)
      for (std::size_t j = 0; j < in.size(); ++j) gneg(i, j) = g(in[i], in[j]);
    Matrix shifted = inverse(g);
    for (std::size_t i = 0; i < in.size(); ++i)
      for (std::size_t j = 0; j < in.size(); ++j) shifted(in[i], in[j]) = inverse(gneg)(i, j);
    // hom_gram_oracle with (G_neg^{-1})^{-1} on inputs and G^{-1} on targets.
    Matrix inv_oracle(s.dim(), s.dim());
    {
      const Matrix dual = gneg;
      auto local = [&](std::size_t pos) { return static_cast<std::size_t>(std::find(in.begin(), in.end(), pos) - in.begin()); };
      const Matrix gi = inverse(g);
      for (std::size_t p = 0; p < s.tuple_count(); ++p)
        for (std::size_t q = 0; q < s.tuple_count(); ++q) {
          const auto& a = s.tuple(p);
          const auto& b = s.tuple(q);
          Rational det = dual(local(a[0]), local(b[0]));
          if (k == 2)
            det = dual(local(a[0]), local(b[0])) * dual(local(a[1]), local(b[1])) -
                  dual(local(a[0]), local(b[1])) * dual(local(a[1]), local(b[0]));
          for (std::size_t t = 0; t < s.target_dim(); ++t)
            for (std::size_t u = 0; u < s.target_dim(); ++u) inv_oracle(s.coordinate(p, t), s.coordinate(q, u)) = det * gi(t, u);
        }
    }
    CHECK(h * inv_oracle == Matrix::identity(s.dim()));
  }
}

TEST_CASE("adjoint codifferential on ode(3,1)") {
  const FilteredLieAlgebra f = ode_algebra(3, 1);
  const Codifferential c = adjoint_codifferential(f, ode_inner_product(3, 1));
  const CodifferentialReport r = check_codifferential(c);
  CHECK(r.ok());
  CHECK((c.d2 * c.d3).is_zero());
  const NormalizationPair p = condition_from_codifferential(c);
  CHECK(check_normalization(f, p.n.space()).ok());
  const NegligibleReport nr = check_negligible(p.nt.space, p.n);
  CHECK(nr.negligible());
  CHECK(nr.maximal);
  const auto q = quotient_dims(p.n, p.nt);
  CHECK(q == all_h2(f, p.n.max_degree()));
  CHECK(q == std::vector<std::size_t>{0, 0, 2, 2, 0, 0, 0, 0, 0});
}

TEST_CASE("adjoint codifferential equals the horizontal restriction on C(g, g)") {
  // Route through all of g: adjoint of the Chevalley-Eilenberg differential of
  // g with values in g, applied to horizontal 2-forms.
  const FilteredLieAlgebra f = ode_algebra(3, 1);
  const InnerProduct ip = ode_inner_product(3, 1);
  const std::size_t n = f.dim();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t q = 0; q < n; ++q) REQUIRE((r == q || ip.gram(r, q) == 0));
  std::vector<int> shifted(n, -1);
  const HomSpace a1(shifted, 1), a2(shifted, 2);
  const GradedLieAlgebra g{f.alg, shifted};
  Matrix d(a2.dim(), a1.dim());
  for (std::size_t col = 0; col < a1.dim(); ++col) {
    const Vector img = testing::ce_oracle(g, a1, a2, unit_vector(a1.dim(), col));
    for (std::size_t row = 0; row < a2.dim(); ++row) d(row, col) = img[row];
  }
  auto diag_gram = [&](const HomSpace& s, std::size_t coord) {
    Rational w = ip.gram(s.target_of(coord), s.target_of(coord));
    for (auto i : s.tuple(s.tuple_of(coord))) w /= ip.gram(i, i);
    return w;
  };
  const Codifferential c = adjoint_codifferential(f, ip);
  const HomSpace& h1 = c.s1;
  const HomSpace& h2 = c.s2;
  for (std::size_t col = 0; col < h2.dim(); ++col) {
    // Horizontal 2-form: the unit vector of the col-th coordinate of L(Lambda^2(g/p), g).
    Vector psi(a2.dim());
    const std::size_t p = *a2.tuple_position(h2.tuple(h2.tuple_of(col)));
    psi[a2.coordinate(p, h2.target_of(col))] = 1;
    Vector weighted(a2.dim());
    for (std::size_t i = 0; i < a2.dim(); ++i) weighted[i] = psi[i] * diag_gram(a2, i);
    Vector adj(a1.dim());
    for (std::size_t i = 0; i < a1.dim(); ++i) {
      Rational s = 0;
      for (std::size_t row = 0; row < a2.dim(); ++row) s += d(row, i) * weighted[row];
      adj[i] = s / diag_gram(a1, i);
    }
    for (std::size_t i = 0; i < a1.dim(); ++i) {
      const std::size_t input = a1.tuple(a1.tuple_of(i))[0];
      if (f.index[input] >= 0) {
        CHECK(adj[i] == 0);
      } else {
        const std::size_t hp = *h1.tuple_position({input});
        CHECK(adj[i] == c.d2(h1.coordinate(hp, a1.target_of(i)), col));
      }
    }
  }
}

TEST_CASE("adjoint identity") {
  std::mt19937_64 gen(29);
  const FilteredLieAlgebra f = ode_algebra(3, 1);
  const Sr s = subriemannian_case();
  const std::vector<std::pair<FilteredLieAlgebra, InnerProduct>> cases{
      {f, ode_inner_product(3, 1)}, {s.f, s.ip}, {f, {random_graded_metric(gen, f.index)}}};
  for (const auto& [alg, ip] : cases) {
    const Codifferential c = adjoint_codifferential(alg, ip);
    const CochainComplex cc({alg.alg, alg.index}, 3);
    const Matrix g1 = hom_gram(c.s1, ip.gram);
    const Matrix g2 = hom_gram(c.s2, ip.gram);
    const Matrix g3 = hom_gram(c.s3, ip.gram);
    for (int trial = 0; trial < 10; ++trial) {
      const Vector a1 = testing::random_vector(gen, c.s1.dim());
      const Vector b2 = testing::random_vector(gen, c.s2.dim());
      CHECK(dot(cc.apply_differential(1, a1), g2, b2) == dot(a1, g1, c.d2 * b2));
      const Vector b3 = testing::random_vector(gen, c.s3.dim());
      CHECK(dot(cc.apply_differential(2, b2), g3, b3) == dot(b2, g2, c.d3 * b3));
    }
  }
}

TEST_CASE("sub-Riemannian adjoint codifferential and rescaling") {
  const Sr s = subriemannian_case();
  const Codifferential c = adjoint_codifferential(s.f, s.ip);
  CHECK(check_codifferential(c).ok());
  const NormalizationPair p = condition_from_codifferential(c);
  const auto h2 = quotient_dims(p.n, p.nt);
  CHECK(h2 == all_h2(s.f, p.n.max_degree()));
  auto rescaled = [&](const Rational& a, const Rational& b, const Rational& z) {
    Matrix g = s.ip.gram;
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t q = 0; q < g.cols(); ++q) {
        const int d = s.f.index[r];
        g(r, q) *= d == -1 ? a : d == -2 ? b : z;
      }
    return adjoint_codifferential(s.f, {g});
  };
  // Uniform scale and the grading automorphism leave everything unchanged.
  for (const auto& [a, b, z] : std::vector<std::array<Rational, 3>>{{3, 3, 3}, {2, 4, 1}, {Rational(1, 3), Rational(1, 9), 1}}) {
    const Codifferential r = rescaled(a, b, z);
    CHECK(kernel_basis(r.d2) == kernel_basis(c.d2));
    CHECK(image_basis(r.d3) == image_basis(c.d3));
  }
  // Other block scales still give valid codifferentials with the same
  // negligible part and quotient dimensions.
  for (const auto& [a, b, z] : std::vector<std::array<Rational, 3>>{{1, 3, 1}, {1, 1, 5}, {2, 4, 7}}) {
    const Codifferential r = rescaled(a, b, z);
    CHECK(check_codifferential(r).ok());
    CHECK(image_basis(r.d3) == image_basis(c.d3));
    const NormalizationPair rp = condition_from_codifferential(r);
    CHECK(quotient_dims(rp.n, rp.nt) == h2);
  }
  CHECK_THROWS_AS(adjoint_codifferential(s.f, {Matrix::identity(3)}), PreconditionError);
}

TEST_CASE("condition_from_codifferential on sl(2)/Borel") {
  const FilteredLieAlgebra f = parabolic_grading("sl", 2, {1});
  const NormalizationPair p = condition_from_codifferential(kostant_codifferential(f));
  CHECK(p.n.space().ambient_dim() == 0);
  CHECK(p.nt.maximal);
  for (auto q : quotient_dims(p.n, p.nt)) CHECK(q == 0);
}

TEST_CASE("degree decomposition is unique") {
  std::mt19937_64 gen(31);
  const FilteredLieAlgebra f = ode_algebra(3, 1);
  const NormalizationPair p = condition_from_codifferential(adjoint_codifferential(f, ode_inner_product(3, 1)));
  const NormalizationCondition& nc = p.n;
  for (int l = 1; l <= nc.max_degree(); ++l) {
    const Matrix nb = nc.graded_image(l).basis();
    const Matrix ib = nc.complex().image_in(2, l).basis();
    const std::size_t dim = nc.complex().cochain_dim(2, l);
    if (dim == 0) continue;
    // Reversed column order changes the elimination's pivots.
    std::vector<std::size_t> rn(nb.cols()), ri(ib.cols());
    for (std::size_t i = 0; i < rn.size(); ++i) rn[i] = rn.size() - 1 - i;
    for (std::size_t i = 0; i < ri.size(); ++i) ri[i] = ri.size() - 1 - i;
    const Matrix rev = ib.select_columns(ri).hstack(nb.select_columns(rn));
    for (int trial = 0; trial < 5; ++trial) {
      const Vector w = testing::random_vector(gen, dim);
      const DegreeSplit sp = decompose_degree(nc, l, w);
      Vector sum(dim);
      for (std::size_t i = 0; i < dim; ++i) sum[i] = sp.n[i] + sp.b[i];
      CHECK(sum == w);
      CHECK(nc.graded_image(l).contains(sp.n));
      CHECK(Subspace::span(ib).contains(sp.b));
      const auto x = solve_preimage(rev, w);
      REQUIRE(x.has_value());
      Vector ipart(ib.cols()), npart(nb.cols());
      for (std::size_t i = 0; i < ib.cols(); ++i) ipart[ri[i]] = (*x)[i];
      for (std::size_t i = 0; i < nb.cols(); ++i) npart[rn[i]] = (*x)[ib.cols() + i];
      CHECK(nb * npart == sp.n);
      CHECK(ib * ipart == sp.b);
    }
  }
}

TEST_CASE("normalize_pointwise") {
  std::mt19937_64 gen(37);
  const FilteredLieAlgebra f = ode_algebra(3, 1);
  const NormalizationPair p = condition_from_codifferential(adjoint_codifferential(f, ode_inner_product(3, 1)));
  const NormalizationCondition& nc = p.n;
  const Splitting split = Splitting::canonical(f);
  const HomSpace& s2 = nc.hom2();
  const HomSpace& s1 = nc.hom1();

  // Already normalized.
  Vector inside(s2.dim());
  for (std::size_t c = 0; c < nc.space().dim(); ++c) {
    const Vector b = nc.space().basis_vector(c);
    const Rational r = testing::random_rational(gen);
    for (std::size_t i = 0; i < inside.size(); ++i) inside[i] += r * b[i];
  }
  const Vector in_pos = [&] {
    Vector v(s2.dim());
    for (auto c : s2.coordinates_of_weight_at_least(1)) v[c] = inside[c];
    return v;
  }();
  if (nc.space().contains(in_pos)) {
    const NormalizedHom r = normalize_pointwise(in_pos, nc, split);
    CHECK(r.v_norm == in_pos);
    for (const auto& corr : r.corrections) CHECK(is_zero(corr.h));
  }

  // Pure image at l = 1.
  const auto c1 = s1.coordinates_of_weight(1);
  const auto c2 = s2.coordinates_of_weight(1);
  const Vector h1 = embed(s1.dim(), c1, testing::random_vector(gen, c1.size()));
  const Vector dh = nc.complex().apply_differential(1, h1);
  REQUIRE_FALSE(is_zero(dh));
  const Vector v = lift_cochain(s2, dh, split);
  const NormalizedHom r = normalize_pointwise(v, nc, split);
  CHECK(nc.space().contains(r.v_norm));
  CHECK(is_zero(gr_ell(s2, r.v_norm, 1, split)));
  REQUIRE(!r.corrections.empty());
  CHECK(r.corrections.front().l == 1);
  const Vector dgr = nc.complex().apply_differential(1, gr_ell(s1, r.corrections.front().h, 1, split));
  Vector diff(s2.dim());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = r.v_norm[i] - v[i];
  Vector neg = dgr;
  for (auto& x : neg) x = -x;
  CHECK(gr_ell(s2, diff, 1, split) == neg);

  // Mixed: an N element plus an image lift.
  const Vector nvec = nc.filtered_basis(1) * testing::random_vector(gen, nc.filtered_basis(1).cols());
  Vector mixed(s2.dim());
  for (std::size_t i = 0; i < mixed.size(); ++i) mixed[i] = nvec[i] + v[i];
  const NormalizedHom rm = normalize_pointwise(mixed, nc, split);
  CHECK(gr_ell(s2, rm.v_norm, 1, split) == gr_ell(s2, nvec, 1, split));

  // Random inputs: v_norm in N, idempotent, gr_1 moves only by an image.
  for (int trial = 0; trial < 10; ++trial) {
    Vector w(s2.dim());
    for (auto c : s2.coordinates_of_weight_at_least(1)) w[c] = testing::random_rational(gen);
    const NormalizedHom out = normalize_pointwise(w, nc, split);
    CHECK(nc.space().contains(out.v_norm));
    const NormalizedHom again = normalize_pointwise(out.v_norm, nc, split);
    CHECK(again.v_norm == out.v_norm);
    for (const auto& corr : again.corrections) CHECK(is_zero(corr.h));
    Vector g1(s2.dim());
    for (std::size_t i = 0; i < g1.size(); ++i) g1[i] = out.v_norm[i] - w[i];
    CHECK(nc.complex().image_in(2, 1).contains(restrict_to(gr_ell(s2, g1, 1, split), c2)));
  }
  Vector bad(s2.dim());
  bad[s2.coordinates_of_weight(s2.min_weight()).front()] = 1;
  if (s2.min_weight() < 1) CHECK_THROWS_AS(normalize_pointwise(bad, nc, split), PreconditionError);
}
