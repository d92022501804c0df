#ifndef CARTANORM_TESTS_SUPPORT_HPP
#define CARTANORM_TESTS_SUPPORT_HPP

// Shared helpers and independent oracles for the test binaries. Nothing here
// calls the elimination routines of the library.

#include "cartanorm/cochains.hpp"
#include "cartanorm/exactla.hpp"
#include "cartanorm/liealg.hpp"
#include "cartanorm/models.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace testing {

using cartanorm::Matrix;
using cartanorm::Rational;
using cartanorm::Vector;

inline Rational random_rational(std::mt19937_64& gen) {
  const long num = static_cast<long>(gen() % 11) - 5;
  const long den = static_cast<long>(gen() % 3) + 1;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Vector random_vector(std::mt19937_64& gen, std::size_t n) {
  Vector v(n);
  for (auto& x : v) x = random_rational(gen);
  return v;
}

inline Matrix random_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols, unsigned zero_bias = 0) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = gen() % (zero_bias + 1) == 0 ? random_rational(gen) : Rational(0);
  return m;
}

// Textbook Gaussian elimination on a copy, dividing by the pivot.
inline std::size_t naive_rank(Matrix m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(rank, k));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank || m(r, c) == 0) continue;
      const Rational f = m(r, c) / m(rank, c);
      for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) -= f * m(rank, k);
    }
    ++rank;
  }
  return rank;
}

inline Matrix columns_of(const std::vector<Vector>& vs, std::size_t n) {
  Matrix m(n, vs.size());
  for (std::size_t c = 0; c < vs.size(); ++c)
    for (std::size_t r = 0; r < n; ++r) m(r, c) = vs[c][r];
  return m;
}

inline bool same_span(const Matrix& a, const Matrix& b) {
  const std::size_t ra = naive_rank(a);
  return ra == naive_rank(b) && ra == naive_rank(a.hstack(b));
}

inline Matrix ad_oracle(const cartanorm::LieAlgebra& l, std::size_t i) {
  Matrix m(l.dim(), l.dim());
  for (std::size_t j = 0; j < l.dim(); ++j) {
    const Vector v = l.bracket(i, j);
    for (std::size_t r = 0; r < l.dim(); ++r) m(r, j) = v[r];
  }
  return m;
}

inline Matrix killing_oracle(const cartanorm::LieAlgebra& l) {
  const std::size_t n = l.dim();
  Matrix k(n, n);
  std::vector<Matrix> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(ad_oracle(l, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) k(i, j) += ads[i](a, b) * ads[j](b, a);
  return k;
}

// Sign of the permutation sorting `t`, 0 on repeated entries.
inline int sort_sign(std::vector<std::size_t>& t) {
  int sign = 1;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j + 1 < t.size() - i; ++j) {
      if (t[j] == t[j + 1]) return 0;
      if (t[j] > t[j + 1]) {
        std::swap(t[j], t[j + 1]);
        sign = -sign;
      }
    }
  return sign;
}

// Value of a stored alternating cochain on an arbitrary tuple of inputs.
inline Vector evaluate(const cartanorm::HomSpace& s, const Vector& phi, std::vector<std::size_t> inputs) {
  Vector out(s.target_dim());
  const int sign = sort_sign(inputs);
  if (sign == 0) return out;
  const auto p = s.tuple_position(inputs);
  if (!p) return out;
  for (std::size_t t = 0; t < s.target_dim(); ++t) out[t] = sign * phi[s.coordinate(*p, t)];
  return out;
}

// Chevalley-Eilenberg differential by the explicit formula, evaluated tuple
// by tuple: dphi(X_0..X_k) = sum_i (-1)^i [X_i, phi(..^i..)]
// + sum_{i<j} (-1)^{i+j} phi([X_i, X_j], ..^i..^j..).
inline Vector ce_oracle(const cartanorm::GradedLieAlgebra& g, const cartanorm::HomSpace& from,
                        const cartanorm::HomSpace& to, const Vector& phi) {
  const auto& l = g.alg;
  const std::size_t n = l.dim();
  Vector out(to.dim());
  for (std::size_t p = 0; p < to.tuple_count(); ++p) {
    const auto& x = to.tuple(p);
    const std::size_t k = x.size();
    Vector val(n);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::size_t> rest;
      for (std::size_t a = 0; a < k; ++a)
        if (a != i) rest.push_back(x[a]);
      const Vector inner = evaluate(from, phi, rest);
      const Vector br = l.bracket(cartanorm::unit_vector(n, x[i]), inner);
      const int sign = i % 2 == 0 ? 1 : -1;
      for (std::size_t t = 0; t < n; ++t) val[t] += sign * br[t];
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        const Vector br = l.bracket(x[i], x[j]);
        const int sign = (i + j) % 2 == 0 ? 1 : -1;
        for (std::size_t u = 0; u < n; ++u) {
          if (br[u] == 0) continue;
          std::vector<std::size_t> rest{u};
          for (std::size_t a = 0; a < k; ++a)
            if (a != i && a != j) rest.push_back(x[a]);
          const Vector inner = evaluate(from, phi, rest);
          for (std::size_t t = 0; t < n; ++t) val[t] += sign * br[u] * inner[t];
        }
      }
    for (std::size_t t = 0; t < n; ++t) out[to.coordinate(p, t)] = val[t];
  }
  return out;
}

inline long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Number of Hall words of length k on g generators.
inline long witt_count(long g, long k) {
  auto mobius = [](long d) {
    int s = 1;
    for (long p = 2; p * p <= d; ++p)
      if (d % p == 0) {
        d /= p;
        if (d % p == 0) return 0;
        s = -s;
      }
    return d > 1 ? -s : s;
  };
  long sum = 0;
  for (long d = 1; d <= k; ++d)
    if (k % d == 0) {
      long pw = 1;
      for (long e = 0; e < k / d; ++e) pw *= g;
      sum += mobius(d) * pw;
    }
  return sum / k;
}

inline std::map<int, std::size_t> weight_counts(const std::vector<int>& w) {
  std::map<int, std::size_t> out;
  for (int x : w) ++out[x];
  return out;
}

// Every catalog member with default parameters, plus a few extra sizes.
inline std::vector<std::pair<std::string, cartanorm::FilteredLieAlgebra>> catalog_algebras() {
  std::vector<std::pair<std::string, cartanorm::FilteredLieAlgebra>> out;
  for (const auto& spec : cartanorm::model_catalog()) {
    const auto inst = cartanorm::build_model(spec.name, {});
    for (const auto& [member, f] : inst.members) out.emplace_back(spec.name + "/" + member, f);
  }
  return out;
}

}  // namespace testing

#endif  // CARTANORM_TESTS_SUPPORT_HPP
