#include "cartanorm/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace cartanorm;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kInputError = 2;

int write_output(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return kPass;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write '" << out << "'\n";
    return kInputError;
  }
  f << text;
  return kPass;
}

// Leftover "--name value" pairs become model parameters.
void absorb_extras(const std::vector<std::string>& extras, std::map<std::string, long>& params) {
  for (std::size_t i = 0; i < extras.size(); ++i) {
    std::string key = extras[i];
    if (key.rfind("--", 0) != 0) throw cli::ParseError("arguments", "unexpected argument '" + key + "'");
    key = key.substr(2);
    std::string value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else {
      if (i + 1 >= extras.size()) throw cli::ParseError("--" + key, "missing value");
      value = extras[++i];
    }
    params[key] = cli::parse_param(key + "=" + value).second;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of normalization conditions for filtered Lie algebras"};
  app.set_version_flag("--version", std::string(cli::kToolVersion));
  app.require_subcommand(1);

  std::string target_arg, model, file, codiff = "auto", degrees, format = "text", out, member;
  std::vector<std::string> params;
  std::optional<std::size_t> cap;
  std::uint64_t seed = 1;
  bool no_prolong = false, no_demo = false;

  auto* report = app.add_subcommand("report", "Run the verification pipeline");
  report->add_option("target", target_arg, "model:NAME, NAME, or file:PATH");
  report->add_option("--model", model, "Catalog model name");
  report->add_option("--file", file, "Algebra file (JSON)");
  report->add_option("--param", params, "Model parameter key=value (repeatable)");
  report->add_option("--codiff", codiff, "auto | none | kostant | subriem | ode | file:PATH");
  report->add_option("--prolong-cap", cap, "Maximal prolongation degree");
  report->add_flag("--no-prolong", no_prolong, "Skip the Tanaka prolongation");
  report->add_option("--degrees", degrees, "H^1 degree range a..b");
  report->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  report->add_option("--seed", seed, "Seed for the normalization demo");
  report->add_flag("--no-demo", no_demo, "Skip the normalization demo");
  report->add_option("--out", out, "Write the report to PATH");
  report->allow_extras();

  auto* catalog = app.add_subcommand("catalog", "List the model catalog");
  catalog->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  catalog->add_option("--out", out, "Write to PATH");

  auto* exp = app.add_subcommand("export", "Write a catalog model as an algebra file");
  exp->add_option("model", model, "Catalog model name")->required();
  exp->add_option("--param", params, "Model parameter key=value (repeatable)");
  exp->add_option("--member", member, "Member name for multi-member models");
  exp->add_option("--out", out, "Write to PATH");
  exp->allow_extras();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (*catalog) {
      const std::string text = format == "json" ? cli::catalog_json().dump(2) + "\n" : cli::catalog_text();
      return write_output(text, out);
    }

    std::map<std::string, long> pmap;
    for (const auto& p : params) pmap.insert_or_assign(cli::parse_param(p).first, cli::parse_param(p).second);

    if (*exp) {
      absorb_extras(exp->remaining(), pmap);
      const std::string name = model.rfind("model:", 0) == 0 ? model.substr(6) : model;
      if (!find_model(name)) throw cli::ParseError("model", "unknown model '" + name + "'");
      const ModelInstance inst = build_model(name, pmap);
      const FilteredLieAlgebra* chosen = nullptr;
      for (const auto& [mname, f] : inst.members)
        if (member.empty() ? chosen == nullptr : mname == member) chosen = &f;
      if (!chosen) throw cli::ParseError("--member", "no member '" + member + "'");
      cli::AlgebraFile af{member.empty() ? inst.members.front().first : member, *chosen, false, {}, {}, {}};
      return write_output(cli::serialize_algebra(af).dump(2) + "\n", out);
    }

    absorb_extras(report->remaining(), pmap);
    cli::Target target;
    const int given = !target_arg.empty() + !model.empty() + !file.empty();
    if (given != 1) throw cli::ParseError("target", "give exactly one of TARGET, --model, --file");
    if (!file.empty() || target_arg.rfind("file:", 0) == 0) {
      target.kind = cli::Target::Kind::file;
      target.path = file.empty() ? target_arg.substr(5) : file;
    } else {
      target.name = model.empty() ? target_arg : model;
      if (target.name.rfind("model:", 0) == 0) target.name = target.name.substr(6);
      target.params = pmap;
    }
    cli::PipelineOptions opts;
    opts.codiff = codiff;
    opts.prolong = !no_prolong;
    opts.prolong_cap = cap;
    if (!degrees.empty()) opts.degrees = cli::parse_degree_range(degrees);
    opts.seed = seed;
    opts.normalize_demo = !no_demo;

    const json rep = cli::run_report(target, opts);
    const int written = write_output(cli::emit(rep, format == "json" ? cli::Format::json : cli::Format::text), out);
    if (written != kPass) return written;
    return cli::report_passed(rep) ? kPass : kCheckFailure;
  } catch (const cli::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DimensionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailure;
  }
}
