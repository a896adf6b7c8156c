#include "latosc/report.hpp"

#include <cstdio>

namespace latosc {

nlohmann::ordered_json to_json(const CheckResult& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["family"] = r.family;
  j["params"] = r.params;
  if (r.alpha) j["alpha"] = *r.alpha;
  j["n_range"] = {r.n_begin, r.n_end};
  j["max_residual"] = r.max_residual;
  j["tolerance"] = r.tolerance;
  if (r.graded)
    j["pass"] = r.pass;
  else
    j["graded"] = false;
  for (const auto& [key, value] : r.details.items()) j[key] = value;
  return j;
}

std::string results_to_json(const std::vector<CheckResult>& results) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : results) arr.push_back(to_json(r));
  return arr.dump(2);
}

std::string results_to_csv(const std::vector<CheckResult>& results) {
  std::string out = "family,check,max_residual,tolerance,pass\r\n";
  char buf[64];
  for (const auto& r : results) {
    out += r.family;
    out += ',';
    out += r.check;
    out += ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.max_residual);
    out += buf;
    out += ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.tolerance);
    out += buf;
    out += ',';
    out += r.graded ? (r.pass ? "true" : "false") : "ungraded";
    out += "\r\n";
  }
  return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (r.graded && !r.pass) return false;
  return true;
}

}  // namespace latosc
