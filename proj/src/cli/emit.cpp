#include "cartanorm/cli.hpp"

#include <iomanip>
#include <sstream>

namespace cartanorm::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kOrder{"jacobi",         "filtration",    "condition_A", "condition_B",
                                      "continuation",   "h1",            "prolongation", "codifferential",
                                      "normalization",  "negligible",    "quotient",     "normalize_demo",
                                      "file_N",         "file_Ntilde"};

std::string scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  return v.dump();
}

std::string list(const json& v) {
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : " ") + scalar(x);
  return "[" + out + "]";
}

void stage_line(std::ostringstream& os, const std::string& name, const json& s) {
  os << "  " << std::left << std::setw(16) << name << s.at("status").get<std::string>();
  std::string extra;
  for (const auto& [key, value] : s.items()) {
    if (key == "status" || key == "degrees" || key == "table" || key == "v" || key == "v_norm" ||
        key == "corrections" || key == "witness" || key == "invariance_witness" || key == "failures")
      continue;
    extra += "  " + key + "=" + (value.is_array() ? list(value) : scalar(value));
  }
  os << extra << "\n";
  if (s.contains("witness")) os << "      witness: " << s.at("witness").dump() << "\n";
  if (s.contains("failures"))
    for (const auto& f : s.at("failures")) os << "      " << f.get<std::string>() << "\n";
  if (name == "h1" && s.contains("table")) {
    os << "      l   dim H^1_l\n";
    for (const auto& row : s.at("table"))
      os << "    " << std::right << std::setw(3) << row.at("l").get<int>() << "   " << row.at("dim").get<std::size_t>()
         << "\n";
  }
  if ((name == "normalization" || name == "file_N") && s.contains("degrees")) {
    os << "      l   grN  im  C2  complementary\n";
    for (const auto& d : s.at("degrees"))
      os << "    " << std::right << std::setw(3) << d.at("l").get<int>() << std::setw(6) << d.at("dim_grN").get<std::size_t>()
         << std::setw(4) << d.at("dim_im").get<std::size_t>() << std::setw(4) << d.at("dim_C2").get<std::size_t>() << "  "
         << scalar(d.at("complementary")) << "\n";
  }
}

}  // namespace

std::string emit(const json& report, Format format) {
  if (format == Format::json) return report.dump(2) + "\n";
  std::ostringstream os;
  const json& t = report.at("target");
  os << "cartanorm " << report.at("version").get<std::string>() << " report: " << t.at("kind").get<std::string>() << " "
     << t.at("name").get<std::string>();
  if (t.contains("params") && !t.at("params").empty()) {
    std::string ps;
    for (const auto& [k, v] : t.at("params").items()) ps += (ps.empty() ? "" : ", ") + k + "=" + v.dump();
    os << " (" << ps << ")";
  }
  os << "\n";
  for (const auto& m : report.at("members")) {
    os << "\nmember " << m.at("name").get<std::string>() << ": dim " << m.at("dim").get<std::size_t>() << ", "
       << m.at("status").get<std::string>() << "\n";
    const json& checks = m.at("checks");
    for (const auto& name : kOrder)
      if (checks.contains(name)) stage_line(os, name, checks.at(name));
  }
  if (report.contains("mutation")) {
    os << "\n";
    stage_line(os, "mutation", report.at("mutation"));
  }
  if (report.contains("caveat")) os << "\nnote: " << report.at("caveat").get<std::string>() << "\n";
  os << "\nstatus: " << report.at("status").get<std::string>() << "\n";
  return os.str();
}

}  // namespace cartanorm::cli
