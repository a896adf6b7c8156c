#ifndef LATOSC_REPORT_HPP
#define LATOSC_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace latosc {

inline constexpr const char* kVersion = "0.1.0";

// One verification outcome. Serializes to
// {check, family, params, alpha?, n_range, max_residual, tolerance, pass}
// plus any extra fields (algebra_tag, C_a, ... ) in `details`.
struct CheckResult {
  std::string check;
  std::string family;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::optional<double> alpha;
  int n_begin = 0;
  int n_end = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool graded = true;  // ungraded entries are informational only
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

nlohmann::ordered_json to_json(const CheckResult& r);

std::string results_to_json(const std::vector<CheckResult>& results);

// Flat RFC-4180-style rows: family,check,max_residual,tolerance,pass.
std::string results_to_csv(const std::vector<CheckResult>& results);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace latosc

#endif  // LATOSC_REPORT_HPP
