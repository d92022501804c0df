#include "properties.hpp"

#include <doctest.h>

using namespace cartanorm;

namespace {

void require_clean(const testing::PropertyResult& r) {
  for (const auto& f : r.failures) FAIL_CHECK(f);
  CHECK(r.ok());
}

}  // namespace

TEST_CASE("d o d = 0 and homogeneity on the catalog") {
  std::uint64_t seed = 100;
  for (const auto& [name, f] : testing::catalog_algebras()) {
    INFO(name);
    const auto r = testing::differential_properties(name, f, 34, ++seed);
    CHECK(r.checks >= 102);
    require_clean(r);
  }
}

TEST_CASE("delta o delta = 0 on the catalog") {
  std::uint64_t seed = 200;
  for (const auto& [name, f] : testing::catalog_algebras()) {
    INFO(name);
    const auto r = testing::homology_properties(name, f, 50, ++seed);
    CHECK(r.checks >= 100);
    require_clean(r);
  }
  // The parabolic members also get the Killing dual of g^1.
  for (const auto& f : {parabolic_grading("sl", 3, {1, 2}), parabolic_grading("sp", 4, {1, 2})})
    CHECK(testing::killing_dual_basis(f).has_value());
  CHECK_FALSE(testing::killing_dual_basis(ode_algebra(3, 1)).has_value());
}

TEST_CASE("gr_l dimension identities on the catalog") {
  std::uint64_t seed = 300;
  for (const auto& [name, f] : testing::catalog_algebras()) {
    INFO(name);
    require_clean(testing::gr_ell_properties(name, f, ++seed));
  }
}

TEST_CASE("adjoint identity") {
  std::uint64_t seed = 400;
  std::mt19937_64 gen(7);
  for (const auto& c : testing::codifferential_cases()) {
    if (!c.ip) continue;
    INFO(c.name);
    require_clean(testing::adjoint_properties(c.name, c.f, *c.ip, 10, ++seed));
    require_clean(testing::adjoint_properties(c.name, c.f, {testing::random_graded_metric(gen, c.f.index)}, 5, ++seed));
  }
}

TEST_CASE("normalize_pointwise idempotence and split uniqueness") {
  std::uint64_t seed = 500;
  for (const auto& c : testing::codifferential_cases()) {
    INFO(c.name);
    require_clean(testing::normalization_properties(c.name, c.f, testing::codifferential_of(c), 5, ++seed));
  }
}
