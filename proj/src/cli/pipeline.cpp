#include "cartanorm/cli.hpp"

#include "cartanorm/cochains.hpp"
#include "cartanorm/normcond.hpp"
#include "cartanorm/prolong.hpp"

#include <random>

namespace cartanorm::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kStages{"jacobi",       "filtration", "condition_A", "condition_B",
                                       "continuation", "h1",         "prolongation", "codifferential",
                                       "normalization", "negligible", "quotient",    "normalize_demo"};

json skip(const std::string& reason) { return {{"status", "skip"}, {"reason", reason}}; }

json failure(const std::string& error) { return {{"status", "fail"}, {"error", error}}; }

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

void skip_remaining(json& checks, const std::string& reason) {
  for (const auto& s : kStages)
    if (!checks.contains(s)) checks[s] = skip(reason);
}

json basis_json(const Subspace& s) {
  json out = json::array();
  for (std::size_t c = 0; c < s.dim(); ++c) out.push_back(vector_json(s.basis_vector(c)));
  return out;
}

bool same_structure(const LieAlgebra& a, const LieAlgebra& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      if (a.bracket(i, j) != b.bracket(i, j)) return false;
  return true;
}

std::vector<int> clamp_nonpositive(std::vector<int> w) {
  for (auto& x : w) x = std::min(x, 0);
  return w;
}

Codifferential subriemannian_codifferential(const FilteredLieAlgebra& f) {
  if (!check_graded({f.alg, f.index})) throw PreconditionError("subriem: algebra is not graded by its filtration");
  if (height(f.index) > 0) throw PreconditionError("subriem: algebra has positive degrees");
  const GradedLieAlgebra m = negative_part({f.alg, f.index});
  const auto neg = negative_positions(f.index);
  const auto zero = positions_with_weight(f.index, 0);
  const std::size_t nm = neg.size();
  Matrix ders(nm * nm, zero.size());
  for (std::size_t c = 0; c < zero.size(); ++c) {
    const Matrix ad = f.alg.ad_basis(zero[c]);
    for (std::size_t u = 0; u < nm; ++u)
      for (std::size_t t = 0; t < nm; ++t) ders(u * nm + t, c) = ad(neg[u], neg[t]);
  }
  if (rank(ders) != zero.size()) throw PreconditionError("subriem: g0 does not act faithfully on m");
  const Subspace g0 = Subspace::from_independent_columns(nm * nm, ders);
  const std::size_t low = positions_with_weight(m.degree, -1).size();
  const InnerProduct local = subriemannian_inner_product(m, Matrix::identity(low), g0);
  Matrix g(f.dim(), f.dim());
  for (std::size_t a = 0; a < nm; ++a)
    for (std::size_t b = 0; b < nm; ++b) g(neg[a], neg[b]) = local.gram(a, b);
  for (std::size_t a = 0; a < zero.size(); ++a)
    for (std::size_t b = 0; b < zero.size(); ++b) g(zero[a], zero[b]) = local.gram(nm + a, nm + b);
  Codifferential c = adjoint_codifferential(f, {g});
  c.construction = "subriem";
  return c;
}

Codifferential ode_codifferential(const FilteredLieAlgebra& f) {
  const std::size_t n = f.dim();
  for (std::size_t m = 1; 3 + m * m + 2 * m <= n; ++m)
    for (std::size_t k = 1; 3 + m * m + (k + 1) * m <= n; ++k) {
      if (3 + m * m + (k + 1) * m != n) continue;
      const FilteredLieAlgebra model = ode_algebra(k, m);
      if (model.index == f.index && same_structure(model.alg, f.alg)) {
        Codifferential c = adjoint_codifferential(f, ode_inner_product(k, m));
        c.construction = "ode";
        return c;
      }
    }
  throw PreconditionError("ode: algebra does not match any ode_algebra(k, m)");
}

Codifferential build_codifferential(const std::string& choice, const FilteredLieAlgebra& f) {
  if (choice == "kostant") return kostant_codifferential(f);
  if (choice == "subriem") return subriemannian_codifferential(f);
  if (choice == "ode") return ode_codifferential(f);
  const CodifferentialFile file = read_codifferential_file(choice.substr(5));
  Codifferential c{f, HomSpace(f.index, 1), HomSpace(f.index, 2), HomSpace(f.index, 3), file.d2, file.d3, "file"};
  if (c.d2.rows() != c.s1.dim() || c.d2.cols() != c.s2.dim() || c.d3.rows() != c.s2.dim() || c.d3.cols() != c.s3.dim())
    throw ParseError("codifferential file", "expected d2 " + std::to_string(c.s1.dim()) + "x" +
                         std::to_string(c.s2.dim()) + " and d3 " + std::to_string(c.s2.dim()) + "x" +
                         std::to_string(c.s3.dim()));
  return c;
}

json normalization_json(const NormalizationReport& r) {
  json out{{"status", verdict(r.ok())}, {"invariant", r.invariant}};
  if (r.invariance_witness) out["invariance_witness"] = vector_json(*r.invariance_witness);
  json degrees = json::array();
  for (const auto& d : r.degrees) {
    json e{{"l", d.l},          {"complementary", d.complementary}, {"dim_grN", d.dim_grN},
           {"dim_im", d.dim_im}, {"dim_C2", d.dim_c2}};
    if (d.witness) e["witness"] = vector_json(*d.witness);
    degrees.push_back(e);
  }
  out["degrees"] = degrees;
  return out;
}

json negligible_json(const NegligibleReport& r) {
  json out{{"status", verdict(r.negligible())},
           {"contained", r.contained},
           {"invariant", r.invariant},
           {"trivial_intersection", r.trivial_intersection},
           {"maximal", r.maximal}};
  json degrees = json::array();
  for (const auto& d : r.degrees)
    degrees.push_back({{"l", d.l},
                       {"trivial_intersection", d.trivial_intersection},
                       {"complementary", d.complementary},
                       {"dim_grNt", d.dim_grNt},
                       {"dim_ker", d.dim_ker},
                       {"dim_C2", d.dim_c2}});
  out["degrees"] = degrees;
  return out;
}

json normalize_demo(const FilteredLieAlgebra& f, const NormalizationCondition& nc, std::uint64_t seed) {
  const HomSpace& s2 = nc.hom2();
  std::mt19937_64 gen(seed);
  Vector v(s2.dim());
  for (auto c : s2.coordinates_of_weight_at_least(1)) v[c] = static_cast<long>(gen() % 7) - 3;
  const Splitting split = Splitting::canonical(f);
  const NormalizedHom res = normalize_pointwise(v, nc, split);
  const bool in_n = nc.space().contains(res.v_norm);
  const NormalizedHom again = normalize_pointwise(res.v_norm, nc, split);
  bool idempotent = again.v_norm == res.v_norm;
  for (const auto& c : again.corrections) idempotent = idempotent && is_zero(c.h);
  Vector diff(s2.dim());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = res.v_norm[i] - v[i];
  const Vector gr1 = restrict_to(gr_ell(s2, diff, 1, split), s2.coordinates_of_weight(1));
  const bool gr1_in_image = nc.complex().image_in(2, 1).contains(gr1);
  json corrections = json::array();
  for (const auto& c : res.corrections)
    if (!is_zero(c.h)) corrections.push_back({{"l", c.l}, {"h", vector_json(c.h)}});
  return {{"status", verdict(in_n && idempotent && gr1_in_image)},
          {"seed", seed},
          {"v", vector_json(v)},
          {"v_norm", vector_json(res.v_norm)},
          {"corrections", corrections},
          {"in_N", in_n},
          {"idempotent", idempotent},
          {"gr1_difference_in_image", gr1_in_image}};
}

void normalization_stages(json& checks, const FilteredLieAlgebra& f, const Codifferential& c,
                          const PipelineOptions& opts) {
  std::optional<NormalizationPair> pair;
  try {
    pair.emplace(condition_from_codifferential(c));
  } catch (const Error& e) {
    checks["normalization"] = failure(e.what());
    return;
  }
  checks["normalization"] = normalization_json(check_normalization(f, pair->n.space()));
  checks["normalization"]["dim_N"] = pair->n.space().dim();
  checks["negligible"] = negligible_json(check_negligible(pair->nt.space, pair->n));
  checks["negligible"]["dim_Ntilde"] = pair->nt.space.dim();
  try {
    const auto q = quotient_dims(pair->n, pair->nt);
    json h2 = json::array();
    bool equal = true;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const std::size_t h = pair->n.complex().cohomology_dim(2, static_cast<int>(i) + 1);
      h2.push_back(h);
      equal = equal && h == q[i];
    }
    checks["quotient"] = {{"status", verdict(equal)}, {"dims", q}, {"h2", h2}, {"first_degree", 1}};
  } catch (const Error& e) {
    checks["quotient"] = failure(e.what());
  }
  if (!opts.normalize_demo) {
    checks["normalize_demo"] = skip("disabled");
    return;
  }
  try {
    checks["normalize_demo"] = normalize_demo(f, pair->n, opts.seed);
  } catch (const Error& e) {
    checks["normalize_demo"] = failure(e.what());
  }
}

void file_stages(json& checks, const FilteredLieAlgebra& f, const AlgebraFile& file) {
  if (!file.n) return;
  const Subspace n = Subspace::span(HomSpace(f.index, 2).dim(), *file.n);
  const NormalizationReport r = check_normalization(f, n);
  checks["file_N"] = normalization_json(r);
  if (!file.ntilde) return;
  if (!r.ok()) {
    checks["file_Ntilde"] = skip("file_N failed");
    return;
  }
  const NormalizationCondition nc(f, n);
  checks["file_Ntilde"] = negligible_json(check_negligible(Subspace::span(n.ambient_dim(), *file.ntilde), nc));
}

}  // namespace

json run_pipeline(const std::string& name, const FilteredLieAlgebra& f, bool graded, const PipelineOptions& opts,
                  const std::string& default_codiff, const AlgebraFile* file) {
  json member{{"name", name}, {"dim", f.dim()}, {"labels", f.alg.labels()}, {"index", f.index}, {"declared_graded", graded}};
  json checks = json::object();

  if (const auto w = jacobi_witness(f.alg)) {
    const auto& l = f.alg;
    const auto [a, b, c] = *w;
    Vector jac = l.bracket(l.bracket(a, b), unit_vector(l.dim(), c));
    const Vector t1 = l.bracket(l.bracket(b, c), unit_vector(l.dim(), a));
    const Vector t2 = l.bracket(l.bracket(c, a), unit_vector(l.dim(), b));
    for (std::size_t k = 0; k < jac.size(); ++k) jac[k] += t1[k] + t2[k];
    checks["jacobi"] = {{"status", "fail"}, {"witness", {a, b, c}}, {"jacobiator", vector_json(jac)}};
    skip_remaining(checks, "jacobi failed");
  } else {
    checks["jacobi"] = {{"status", "pass"}};
  }

  if (!checks.contains("filtration")) {
    const bool filtered = check_filtered(f);
    const bool graded_ok = check_graded({f.alg, f.index});
    const bool ok = filtered && (!graded || graded_ok);
    checks["filtration"] = {{"status", verdict(ok)},
                            {"filtered", filtered},
                            {"graded_by_index", graded_ok},
                            {"depth", depth(f.index)},
                            {"height", height(f.index)}};
    if (!ok) skip_remaining(checks, "filtration failed");
  }

  if (!checks.contains("condition_A")) {
    try {
      const Subspace ideal = max_ideal_in(f);
      checks["condition_A"] = {{"status", verdict(ideal.is_zero())}, {"max_ideal_dim", ideal.dim()}};
      if (!ideal.is_zero()) checks["condition_A"]["witness"] = basis_json(ideal);
    } catch (const Error& e) {
      checks["condition_A"] = failure(e.what());
    }
    try {
      checks["condition_B"] = {{"status", verdict(check_condition_B(f))}};
    } catch (const Error& e) {
      checks["condition_B"] = failure(e.what());
    }

    json declared = json::array();
    std::vector<Subspace> want;
    for (int i = 1;; ++i) {
      want.push_back(filtration_component(f, i));
      declared.push_back(want.back().dim());
      if (want.back().is_zero()) break;
    }
    try {
      const auto got = continued_components(f.alg, clamp_nonpositive(f.index));
      json dims = json::array();
      for (const auto& s : got) dims.push_back(s.dim());
      bool same = got.size() == want.size();
      for (std::size_t i = 0; same && i < got.size(); ++i) same = got[i] == want[i];
      checks["continuation"] = {{"status", verdict(same)}, {"continued", dims}, {"declared", declared}};
    } catch (const Error& e) {
      checks["continuation"] = failure(e.what());
      checks["continuation"]["declared"] = declared;
    }

    const int mu = depth(f.index);
    const int nu = height(f.index);
    const auto [lo, hi] = opts.degrees.value_or(std::pair<int, int>{0, mu + nu});
    const auto table = h1_table(f, lo, hi);
    json rows = json::array();
    for (int l = lo; l <= hi; ++l) rows.push_back({{"l", l}, {"dim", table[static_cast<std::size_t>(l - lo)]}});
    checks["h1"] = {{"status", "pass"},
                    {"table", rows},
                    {"full_prolongation_pair", check_full_prolongation_pair(f)},
                    {"full_prolongation_of_m", check_full_prolongation_of_m(f)}};

    if (!opts.prolong) {
      checks["prolongation"] = skip("disabled");
    } else {
      try {
        const SymbolData sd = symbol_data(f);
        const ProlongationResult r = tanaka_prolongation(sd.m, sd.g0, opts.prolong_cap, sd.g0_labels);
        const FiniteType ft = r.stabilized_at ? finite_at(*r.stabilized_at) : unknown_at(r.cap);
        checks["prolongation"] = {{"status", "pass"}, {"dims", r.dims}, {"cap", r.cap}, {"finite_type", to_string(ft)}};
        if (r.total) {
          checks["prolongation"]["total_dim"] = r.total->dim();
          checks["prolongation"]["equals_gr"] = r.total->dim() == f.dim();
        }
      } catch (const Error& e) {
        checks["prolongation"] = failure(e.what());
      }
    }

    const std::string choice = opts.codiff == "auto" ? default_codiff : opts.codiff;
    if (choice == "none") {
      skip_remaining(checks, "no codifferential selected");
    } else {
      std::optional<Codifferential> c;
      try {
        c.emplace(build_codifferential(choice, f));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        checks["codifferential"] = failure(e.what());
        checks["codifferential"]["construction"] = choice.rfind("file:", 0) == 0 ? "file" : choice;
      }
      if (c) {
        const CodifferentialReport r = check_codifferential(*c);
        checks["codifferential"] = {{"status", verdict(r.ok())},
                                    {"construction", c->construction},
                                    {"equivariant", r.equivariant},
                                    {"homogeneous", r.homogeneous},
                                    {"square_zero", r.square_zero},
                                    {"image_homogeneous", r.image_homogeneous},
                                    {"disjoint", r.disjoint},
                                    {"failures", r.failures}};
        if (r.ok()) normalization_stages(checks, f, *c, opts);
      }
      skip_remaining(checks, "codifferential failed");
    }
    if (file) file_stages(checks, f, *file);
  }

  bool pass = true;
  for (const auto& [key, value] : checks.items()) pass = pass && value.at("status") != "fail";
  member["checks"] = checks;
  member["status"] = pass ? "pass" : "fail";
  return member;
}

namespace {

std::string default_codiff_for(ModelKind kind) {
  switch (kind) {
    case ModelKind::parabolic: return "kostant";
    case ModelKind::ode: return "ode";
    case ModelKind::riemannian:
    case ModelKind::subriemannian: return "subriem";
    default: return "none";
  }
}

void validate_codiff(const std::string& c) {
  static const std::vector<std::string> names{"auto", "none", "kostant", "subriem", "ode"};
  if (std::find(names.begin(), names.end(), c) != names.end()) return;
  if (c.rfind("file:", 0) == 0 && c.size() > 5) return;
  throw ParseError("--codiff", "unknown codifferential '" + c + "'");
}

json options_json(const PipelineOptions& o) {
  json out{{"codiff", o.codiff}, {"prolong", o.prolong}, {"seed", o.seed}, {"normalize_demo", o.normalize_demo}};
  out["prolong_cap"] = o.prolong_cap ? json(*o.prolong_cap) : json(nullptr);
  out["degrees"] = o.degrees ? json{o.degrees->first, o.degrees->second} : json(nullptr);
  return out;
}

}  // namespace

json run_report(const Target& target, const PipelineOptions& opts) {
  validate_codiff(opts.codiff);
  json report{{"tool", "cartanorm"},
              {"version", kToolVersion},
              {"options", options_json(opts)},
              {"caveat", "invariance under P is checked as ad(g^0)-invariance; conditions on the group P itself "
                         "(for example its components) are not checked"}};
  json members = json::array();
  bool pass = true;
  if (target.kind == Target::Kind::model) {
    if (!find_model(target.name)) throw ParseError("model", "unknown model '" + target.name + "'");
    const ModelInstance inst = build_model(target.name, target.params);
    report["target"] = {{"kind", "model"}, {"name", inst.name}, {"model_kind", to_string(inst.kind)}, {"params", inst.params}};
    for (const auto& [name, f] : inst.members) {
      members.push_back(run_pipeline(name, f, false, opts, default_codiff_for(inst.kind)));
      pass = pass && members.back()["status"] == "pass";
    }
    if (inst.members.size() > 1) {
      const GradedLieAlgebra first = associated_graded(inst.members.front().second);
      json rows = json::array();
      bool equal = true;
      for (std::size_t i = 1; i < inst.members.size(); ++i) {
        const GradedLieAlgebra gi = associated_graded(inst.members[i].second);
        const bool same = gi.degree == first.degree && same_structure(gi.alg, first.alg);
        equal = equal && same;
        rows.push_back({{"first", inst.members.front().first}, {"second", inst.members[i].first}, {"equal", same}});
      }
      report["mutation"] = {{"status", verdict(equal)}, {"gr_equal", equal}, {"pairs", rows}};
      pass = pass && equal;
    }
  } else {
    AlgebraFile file = read_algebra_file(target.path, false);
    report["target"] = {{"kind", "file"}, {"path", target.path}, {"name", file.name}};
    FilteredLieAlgebra f = file.alg;
    if (file.g0) {
      if (!file.graded || height(f.index) >= 0) throw ParseError("g0", "requires a graded algebra of negative degrees");
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < file.g0->size(); ++i) labels.push_back("A" + std::to_string(i + 1));
      const std::size_t n = f.dim();
      const Matrix cols = Matrix::from_columns(n * n, *file.g0);
      if (rank(cols) != file.g0->size()) throw ParseError("g0", "derivations are linearly dependent");
      try {
        const GradedLieAlgebra g =
            semidirect({f.alg, f.index}, Subspace::from_independent_columns(n * n, cols), std::move(labels));
        f = {g.alg, g.degree};
      } catch (const Error& e) {
        throw ParseError("g0", e.what());
      }
    }
    members.push_back(run_pipeline(file.name, f, file.graded, opts, "none", &file));
    pass = members.back()["status"] == "pass";
  }
  report["members"] = members;
  report["status"] = pass ? "pass" : "fail";
  return report;
}

bool report_passed(const json& report) { return report.value("status", "fail") == "pass"; }

json catalog_json() {
  json out = json::array();
  for (const auto& m : model_catalog())
    out.push_back({{"name", m.name}, {"kind", to_string(m.kind)}, {"summary", m.summary}, {"defaults", m.defaults}});
  return out;
}

std::string catalog_text() {
  std::string out;
  for (const auto& m : model_catalog()) {
    out += m.name + " [" + to_string(m.kind) + "]";
    for (const auto& [k, v] : m.defaults) out += " " + k + "=" + std::to_string(v);
    out += "\n    " + m.summary + "\n";
  }
  return out;
}

}  // namespace cartanorm::cli
