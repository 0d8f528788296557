#include "specsum/dsl/report.hpp"

#include <sstream>

#include "specsum/errors.hpp"

namespace specsum::dsl {

namespace {

using nlohmann::ordered_json;

ordered_json tolerances_json() {
  Tolerances t;
  ordered_json j;
  j["eig_residual"] = t.eig_residual;
  j["rank_abs"] = t.rank_abs;
  j["spectra_match"] = t.spectra_match;
  j["zero_tol"] = t.zero_tol;
  j["cluster_gap"] = t.cluster_gap;
  return j;
}

std::string csv_field(const std::string& s) {
  bool quote = s.find_first_of(",\"\n\r") != std::string::npos;
  if (!quote) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string emit_json(const AnalysisReport& rep) {
  ordered_json root;
  root["schema_version"] = 1;
  root["results"] = ordered_json::array();
  for (const auto& r : rep.results) {
    ordered_json j;
    j["check"] = r.check;
    j["inputs"] = r.inputs;
    j["status"] = r.status;
    j["verdict"] = r.verdict;
    j["certificate"] = r.certificate;
    if (!r.error_kind.empty()) {
      j["error"] = {{"kind", r.error_kind}, {"message", r.error_message}};
    }
    j["tolerances"] = tolerances_json();
    j["seed"] = r.seed;
    if (r.timing_ms >= 0.0) j["timing_ms"] = r.timing_ms;
    root["results"].push_back(std::move(j));
  }
  ordered_json s;
  s["seed"] = rep.settings.seed;
  s["trunc_size"] = rep.settings.trunc_size;
  s["scan_budget"] = rep.settings.scan_budget;
  root["settings"] = std::move(s);
  return root.dump() + "\n";
}

std::string emit_csv(const AnalysisReport& rep) {
  std::ostringstream os;
  os << "check,inputs,status,verdict,certificate,value\n";
  for (const auto& r : rep.results) {
    std::string inputs;
    for (std::size_t i = 0; i < r.inputs.size(); ++i)
      inputs += (i ? " " : "") + r.inputs[i];
    os << csv_field(r.check) << ',' << csv_field(inputs) << ','
       << csv_field(r.status) << ',' << csv_field(r.verdict) << ','
       << csv_field(r.csv_key) << ',' << csv_field(r.csv_value) << '\n';
  }
  return os.str();
}

std::string emit(const AnalysisReport& rep, const std::string& format) {
  if (format == "json") return emit_json(rep);
  if (format == "csv") return emit_csv(rep);
  throw Error(ErrorKind::IoError, "unknown format '" + format + "'");
}

}  // namespace specsum::dsl
