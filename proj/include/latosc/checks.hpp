#ifndef LATOSC_CHECKS_HPP
#define LATOSC_CHECKS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latosc/algebra.hpp"
#include "latosc/families.hpp"
#include "latosc/qext.hpp"
#include "latosc/report.hpp"

namespace latosc {
namespace checks {

// Pinned tolerances of the verification suite.
inline constexpr double kTolOrthogonality = 1e-9;
inline constexpr double kTolPearson = 1e-12;          // relative
inline constexpr double kTolEigen = 1e-9;
inline constexpr double kTolDifferenceEq = 1e-9;      // relative
inline constexpr double kTolFactorization = 1e-9;
inline constexpr double kTolCommutator = 1e-10;
inline constexpr double kTolTheorem41Lambda = 1e-10;
inline constexpr double kTheorem41FailMargin = 1e-3;
inline constexpr double kTolCharlierLadder = 1e-9;
inline constexpr double kTolGroundBuild = 1e-8;
inline constexpr double kTolAlgebraConstants = 1e-12;
inline constexpr double kTolA1 = 1e-10;
inline constexpr double kTolBrackets = 1e-8;
inline constexpr double kTolCasimirRelative = 1e-7;
inline constexpr double kTolK0Eigen = 1e-8;
inline constexpr double kTolLadderCoeff = 1e-8;
inline constexpr double kTolCascade = 1e-7;
inline constexpr double kTolQEigen = 1e-7;
inline constexpr double kTolQCommutator = 1e-7;
inline constexpr double kTolQGram = 1e-7;
inline constexpr double kTolQTheorem65 = 1e-9;
inline constexpr double kTolQAdjoint = 1e-6;
inline constexpr double kTolQPearson = 1e-12;

struct Options {
  std::optional<int> n_max;          // per-check acceptance ranges when unset
  std::vector<double> alpha_set{0.0, 0.5, 1.0};
  double tail_tol = 1e-16;
  std::map<std::string, double> tol_overrides;
};

const std::vector<std::string>& check_names();
bool is_check_name(const std::string& name);
bool applicable(const FamilySpec& family, const std::string& check);

nlohmann::ordered_json family_params_json(const FamilySpec& family);

// Runners append one or more CheckResult entries.
std::vector<CheckResult> run_check(const FamilySpec& family, const std::string& check,
                                   const Options& opts);
std::vector<CheckResult> run_all(const FamilySpec& family, const Options& opts);
std::vector<CheckResult> run_qexample(const QContext& ctx, const Options& opts);

// The acceptance parameter set: the four classical families plus the
// Al-Salam & Carlitz I example point.
std::vector<FamilySpec> acceptance_families();
QContext acceptance_qcontext();

}  // namespace checks
}  // namespace latosc

#endif  // LATOSC_CHECKS_HPP
