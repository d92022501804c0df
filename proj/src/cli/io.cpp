#include "cartanorm/cli.hpp"

#include "cartanorm/cochains.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace cartanorm::cli {

using nlohmann::json;

namespace {

std::string at(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

const json& member(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

long integer_field(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  return j.get<long>();
}

std::size_t index_field(const json& j, const std::string& path, std::size_t bound) {
  const long v = integer_field(j, path);
  if (v < 0 || static_cast<std::size_t>(v) >= bound) throw ParseError(path, "index out of range");
  return static_cast<std::size_t>(v);
}

mpz_class integer_value(const json& j, const std::string& path) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      const Rational q = parse_rational(s);
      if (q.get_den() != 1 || s.find('/') != std::string::npos) throw std::invalid_argument("not an integer");
      return q.get_num();
    } catch (const std::invalid_argument&) {
      throw ParseError(path, "malformed integer '" + s + "'");
    }
  }
  throw ParseError(path, "expected an integer");
}

Rational rational_value(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
  if (!j.is_string()) throw ParseError(path, "expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  }
}

json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

std::vector<Vector> vector_list(const json& j, const std::string& path, std::size_t dim) {
  if (!j.is_array()) throw ParseError(path, "expected a list of vectors");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& v = j[i];
    if (!v.is_array() || v.size() != dim)
      throw ParseError(at(path, i), "expected " + std::to_string(dim) + " coefficients");
    Vector x(dim);
    for (std::size_t c = 0; c < dim; ++c) x[c] = rational_value(v[c], at(at(path, i), c));
    out.push_back(std::move(x));
  }
  return out;
}

json vector_list_json(const std::vector<Vector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(vector_json(v));
  return out;
}

Matrix matrix_rows(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected a list of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : (j[0].is_array() ? j[0].size() : 0);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError(at(path, r), "ragged row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_value(j[r][c], at(at(path, r), c));
  }
  return m;
}

}  // namespace

std::string rational_string(const Rational& q) { return to_fraction_string(q); }

json vector_json(std::span<const Rational> v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(rational_string(x));
  return out;
}

AlgebraFile parse_algebra(const json& j, bool require_jacobi) {
  AlgebraFile out;
  const json& name = member(j, "", "name");
  if (!name.is_string()) throw ParseError("name", "expected a string");
  out.name = name.get<std::string>();

  const json& basis = member(j, "", "basis");
  if (!basis.is_array() || basis.empty()) throw ParseError("basis", "expected a non-empty list");
  std::vector<std::string> labels;
  std::vector<int> index;
  std::optional<bool> graded;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::string path = at("basis", i);
    const json& b = basis[i];
    const json& label = member(b, path, "label");
    if (!label.is_string()) throw ParseError(path + ".label", "expected a string");
    const bool has_degree = b.contains("degree");
    const bool has_index = b.contains("index");
    if (has_degree == has_index) throw ParseError(path, "exactly one of 'degree' and 'index' is required");
    if (graded && *graded != has_degree) throw ParseError(path, "mixes 'degree' and 'index'");
    graded = has_degree;
    const std::string key = has_degree ? "degree" : "index";
    const long v = integer_field(b.at(key), path + "." + key);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
      throw ParseError(path + "." + key, "out of range");
    labels.push_back(label.get<std::string>());
    index.push_back(static_cast<int>(v));
  }
  const std::size_t n = labels.size();
  out.graded = *graded;
  out.alg.alg = LieAlgebra(labels);
  out.alg.index = index;

  const json& brackets = member(j, "", "brackets");
  if (!brackets.is_array()) throw ParseError("brackets", "expected a list");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t e = 0; e < brackets.size(); ++e) {
    const std::string path = at("brackets", e);
    const json& b = brackets[e];
    const std::size_t i = index_field(member(b, path, "i"), path + ".i", n);
    const std::size_t jj = index_field(member(b, path, "j"), path + ".j", n);
    if (i >= jj) throw ParseError(path, "requires i < j");
    if (!seen.insert({i, jj}).second) throw ParseError(path, "duplicate bracket entry");
    const json& terms = member(b, path, "terms");
    if (!terms.is_array()) throw ParseError(path + ".terms", "expected a list");
    Vector v(n);
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const std::string tp = at(path + ".terms", t);
      const std::size_t k = index_field(member(terms[t], tp, "k"), tp + ".k", n);
      const mpz_class num = integer_value(member(terms[t], tp, "num"), tp + ".num");
      const mpz_class den = terms[t].contains("den") ? integer_value(terms[t].at("den"), tp + ".den") : mpz_class(1);
      if (den <= 0) throw ParseError(tp + ".den", "denominator must be positive");
      Rational q(num, den);
      q.canonicalize();
      v[k] += q;
    }
    out.alg.alg.set_bracket(i, jj, v);
  }

  if (require_jacobi) {
    if (const auto w = jacobi_witness(out.alg.alg))
      throw ParseError("brackets", "Jacobi identity fails for (" + std::to_string((*w)[0]) + ", " +
                                       std::to_string((*w)[1]) + ", " + std::to_string((*w)[2]) + ")");
  }

  if (j.contains("g0")) out.g0 = vector_list(j.at("g0"), "g0", n * n);
  // N and Ntilde live on the algebra extended by g0.
  std::vector<int> full_index = out.alg.index;
  if (out.g0) full_index.resize(full_index.size() + out.g0->size(), 0);
  const std::size_t two_forms = HomSpace(full_index, 2).dim();
  if (j.contains("N")) out.n = vector_list(j.at("N"), "N", two_forms);
  if (j.contains("Ntilde")) out.ntilde = vector_list(j.at("Ntilde"), "Ntilde", two_forms);
  return out;
}

AlgebraFile parse_algebra_text(const std::string& text, bool require_jacobi) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_algebra(j, require_jacobi);
}

AlgebraFile read_algebra_file(const std::string& path, bool require_jacobi) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_algebra_text(ss.str(), require_jacobi);
}

json serialize_algebra(const AlgebraFile& f) {
  json out;
  out["name"] = f.name;
  const char* key = f.graded ? "degree" : "index";
  json basis = json::array();
  for (std::size_t i = 0; i < f.alg.dim(); ++i) basis.push_back({{"label", f.alg.alg.label(i)}, {key, f.alg.index[i]}});
  out["basis"] = basis;
  json brackets = json::array();
  for (std::size_t i = 0; i < f.alg.dim(); ++i)
    for (std::size_t j = i + 1; j < f.alg.dim(); ++j) {
      const auto& terms = f.alg.alg.bracket_terms(i, j);
      if (terms.empty()) continue;
      json ts = json::array();
      for (const auto& t : terms)
        ts.push_back({{"k", t.k}, {"num", integer_json(t.c.get_num())}, {"den", integer_json(t.c.get_den())}});
      brackets.push_back({{"i", i}, {"j", j}, {"terms", ts}});
    }
  out["brackets"] = brackets;
  if (f.g0) out["g0"] = vector_list_json(*f.g0);
  if (f.n) out["N"] = vector_list_json(*f.n);
  if (f.ntilde) out["Ntilde"] = vector_list_json(*f.ntilde);
  return out;
}

CodifferentialFile read_codifferential_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
  return {matrix_rows(member(j, "", "d2"), "d2"), matrix_rows(member(j, "", "d3"), "d3")};
}

std::pair<int, int> parse_degree_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw ParseError("--degrees", "expected a..b");
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, dots);
    const std::string b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    if (lo > hi) throw ParseError("--degrees", "empty range");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ParseError("--degrees", "malformed range '" + text + "'");
  }
}

std::pair<std::string, long> parse_param(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ParseError("--param", "expected key=value, got '" + text + "'");
  const std::string value = text.substr(eq + 1);
  try {
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return {text.substr(0, eq), v};
  } catch (const std::logic_error&) {
    throw ParseError("--param", "value of '" + text.substr(0, eq) + "' is not an integer");
  }
}

}  // namespace cartanorm::cli
