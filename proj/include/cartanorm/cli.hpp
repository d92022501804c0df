#ifndef CARTANORM_CLI_HPP
#define CARTANORM_CLI_HPP

// Algebra files, the verification pipeline and report rendering used by the
// cartanorm tool.

#include "cartanorm/error.hpp"
#include "cartanorm/liealg.hpp"
#include "cartanorm/models.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cartanorm::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Malformed input; `field` names the offending JSON path.
class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// {"name", "basis": [{"label", "index" | "degree"}], "brackets": [{"i", "j",
/// "terms": [{"k", "num", "den"}]}], optional "g0", "N", "Ntilde"}. A basis
/// declared with "degree" is graded, with "index" filtered. g0 holds
/// derivations of the algebra (n*n entries, u*n + t); N and Ntilde hold
/// vectors of L(Lambda^2(g/p), g).
struct AlgebraFile {
  std::string name;
  FilteredLieAlgebra alg;
  bool graded = false;
  std::optional<std::vector<Vector>> g0;
  std::optional<std::vector<Vector>> n;
  std::optional<std::vector<Vector>> ntilde;
};

/// Throws ParseError; a Jacobi failure names the witness triple.
AlgebraFile parse_algebra(const nlohmann::json& j, bool require_jacobi = true);
AlgebraFile parse_algebra_text(const std::string& text, bool require_jacobi = true);
AlgebraFile read_algebra_file(const std::string& path, bool require_jacobi = true);
nlohmann::json serialize_algebra(const AlgebraFile& f);

std::string rational_string(const Rational& q);
nlohmann::json vector_json(std::span<const Rational> v);

/// {"d2": rows, "d3": rows}, entries as rational strings.
struct CodifferentialFile {
  Matrix d2;
  Matrix d3;
};
CodifferentialFile read_codifferential_file(const std::string& path);

struct PipelineOptions {
  /// auto | none | kostant | subriem | ode | file:PATH
  std::string codiff = "auto";
  bool prolong = true;
  std::optional<std::size_t> prolong_cap;
  std::optional<std::pair<int, int>> degrees;
  std::uint64_t seed = 1;
  bool normalize_demo = true;
};

struct Target {
  enum class Kind { model, file } kind = Kind::model;
  std::string name;
  std::map<std::string, long> params;
  std::string path;
};

/// "a..b" with optional signs.
std::pair<int, int> parse_degree_range(const std::string& text);
/// "key=value" with an integer value.
std::pair<std::string, long> parse_param(const std::string& text);

/// Checks of one algebra. `default_codiff` replaces "auto".
nlohmann::json run_pipeline(const std::string& name, const FilteredLieAlgebra& f, bool graded,
                            const PipelineOptions& opts, const std::string& default_codiff,
                            const AlgebraFile* file = nullptr);

/// Builds the target (ParseError / PreconditionError on bad input) and runs
/// the pipeline on each member.
nlohmann::json run_report(const Target& target, const PipelineOptions& opts);

bool report_passed(const nlohmann::json& report);

enum class Format { text, json };
std::string emit(const nlohmann::json& report, Format format);

nlohmann::json catalog_json();
std::string catalog_text();

}  // namespace cartanorm::cli

#endif  // CARTANORM_CLI_HPP
