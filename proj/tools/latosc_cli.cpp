// Command-line front end: evaluate polynomials and oscillator functions,
// run the verification suites, and emit tables or reports in CSV/JSON.
//
// Exit status: 0 all checks pass, 1 a graded check failed, 2 the requested
// check does not apply to the family.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latosc/checks.hpp"
#include "latosc/factorize.hpp"
#include "latosc/families.hpp"
#include "latosc/qext.hpp"
#include "latosc/report.hpp"

namespace {

using latosc::CheckResult;
using latosc::FamilySpec;
using nlohmann::ordered_json;

struct CommonOpts {
  std::string family;
  int n_max = 10;
  std::optional<int> n;
  std::optional<double> s;
  std::string check = "all";
  std::vector<double> alpha_set{0.0, 0.5, 1.0};
  double tail_tol = 1e-16;
  std::vector<std::string> tol_overrides;
  std::string format = "json";
  std::string out_path;
};

void write_output(const CommonOpts& opts, const std::string& text) {
  if (opts.out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream f(opts.out_path);
    if (!f) throw std::runtime_error("cannot open output file '" + opts.out_path + "'");
    f << text;
  }
}

latosc::checks::Options check_options(const CommonOpts& opts, bool n_max_given) {
  latosc::checks::Options o;
  if (n_max_given) o.n_max = opts.n_max;
  o.alpha_set = opts.alpha_set;
  o.tail_tol = opts.tail_tol;
  for (const auto& item : opts.tol_overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--tol expects <check>=<value>, got '" + item + "'");
    o.tol_overrides[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
  }
  return o;
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_q_family(const std::string& family) {
  return family.rfind("alsalam-carlitz-1:", 0) == 0;
}

// Rows of (n, s, value) for P_n or Phi_n.
std::string evaluation_table(const FamilySpec& family, const CommonOpts& opts, bool oscillator) {
  const int n_hi = opts.n ? *opts.n : std::min(opts.n_max, family.max_degree());
  const int n_lo = opts.n ? *opts.n : 0;
  const latosc::Grid grid = latosc::support_grid(family, opts.tail_tol, n_hi + 2);
  std::vector<double> points;
  if (opts.s)
    points.push_back(*opts.s);
  else
    for (int i = 0; i < grid.count; ++i) points.push_back(grid.point(i));

  const std::string value_name = oscillator ? "phi" : "P";
  if (opts.format == "csv") {
    std::string out = "n,s," + value_name + "\r\n";
    for (int n = n_lo; n <= n_hi; ++n) {
      const double dn = oscillator ? std::sqrt(latosc::squared_norm(family, n)) : 1.0;
      for (double s : points) {
        const double v = oscillator
                             ? std::sqrt(latosc::weight(family, s)) / dn * eval_monic(family, n, s)
                             : eval_monic(family, n, s);
        out += std::to_string(n) + "," + format_value(s) + "," + format_value(v) + "\r\n";
      }
    }
    return out;
  }
  ordered_json rows = ordered_json::array();
  for (int n = n_lo; n <= n_hi; ++n) {
    const double dn = oscillator ? std::sqrt(latosc::squared_norm(family, n)) : 1.0;
    for (double s : points) {
      const double v = oscillator
                           ? std::sqrt(latosc::weight(family, s)) / dn * eval_monic(family, n, s)
                           : eval_monic(family, n, s);
      rows.push_back({{"n", n}, {"s", s}, {value_name, v}});
    }
  }
  return rows.dump(2);
}

int run_verify(const CommonOpts& opts, bool n_max_given, bool report_all_families) {
  const latosc::checks::Options o = check_options(opts, n_max_given);
  std::vector<CheckResult> results;

  if (report_all_families) {
    for (const FamilySpec& family : latosc::checks::acceptance_families()) {
      auto part = latosc::checks::run_all(family, o);
      results.insert(results.end(), part.begin(), part.end());
    }
    auto part = latosc::checks::run_qexample(latosc::checks::acceptance_qcontext(), o);
    results.insert(results.end(), part.begin(), part.end());
  } else if (is_q_family(opts.family)) {
    const latosc::QContext ctx = latosc::parse_qfamily(opts.family);
    if (opts.check != "all" && opts.check != "qexample")
      throw CLI::ValidationError("check '" + opts.check +
                                 "' does not apply to alsalam-carlitz-1 (use qexample or all)");
    results = latosc::checks::run_qexample(ctx, o);
  } else {
    const FamilySpec family = latosc::parse_family(opts.family);
    if (!latosc::checks::is_check_name(opts.check)) {
      std::string names;
      for (const auto& n : latosc::checks::check_names()) names += n + " ";
      throw CLI::ValidationError("unknown check '" + opts.check + "'; available: " + names);
    }
    if (opts.check == "qexample") {
      ordered_json refusal{{"check", opts.check},
                           {"family", family.label()},
                           {"applicable", false},
                           {"reason", "qexample runs on alsalam-carlitz-1 only"}};
      write_output(opts, refusal.dump(2));
      return 2;
    }
    if (opts.check != "all" && !latosc::checks::applicable(family, opts.check)) {
      ordered_json refusal{{"check", opts.check},
                           {"family", family.label()},
                           {"applicable", false},
                           {"reason", "sigma'' != 0"}};
      write_output(opts, refusal.dump(2));
      return 2;
    }
    results = latosc::checks::run_check(family, opts.check, o);
  }

  if (report_all_families) {
    ordered_json doc;
    doc["library"] = "latosc";
    doc["version"] = latosc::kVersion;
    ordered_json cfg;
    cfg["n_max"] = n_max_given ? ordered_json(opts.n_max) : ordered_json(nullptr);
    cfg["alpha_set"] = opts.alpha_set;
    cfg["tail_tol"] = opts.tail_tol;
    cfg["format"] = opts.format;
    doc["config"] = cfg;
    ordered_json arr = ordered_json::array();
    for (const auto& r : results) arr.push_back(latosc::to_json(r));
    doc["checks"] = arr;
    doc["pass"] = latosc::all_pass(results);
    write_output(opts, opts.format == "csv" ? latosc::results_to_csv(results) : doc.dump(2));
  } else {
    write_output(opts, opts.format == "csv" ? latosc::results_to_csv(results)
                                            : latosc::results_to_json(results));
  }
  // Residual summary on stderr, 6 significant digits.
  for (const auto& r : results) {
    std::fprintf(stderr, "%-16s %-38s max_residual=%.6g tol=%.6g %s\n", r.check.c_str(),
                 r.family.c_str(), r.max_residual, r.tolerance,
                 r.graded ? (r.pass ? "pass" : "FAIL") : "info");
  }
  return latosc::all_pass(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-lattice oscillator functions, factorization operators and their verification suite"};
  app.require_subcommand(1);

  CommonOpts opts;
  bool n_max_given = false;

  auto add_common = [&](CLI::App* cmd, bool needs_family) {
    if (needs_family)
      cmd->add_option("family", opts.family,
                      "family string, e.g. charlier:mu=2 or hahn:alpha=1,beta=1,N=20")
          ->required();
    cmd->add_option("--n-max", opts.n_max, "largest polynomial degree")
        ->each([&](const std::string&) { n_max_given = true; });
    cmd->add_option("--tail-tol", opts.tail_tol, "tail tolerance for truncated supports");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opts.out_path, "write output to a file");
  };

  CLI::App* eval_cmd = app.add_subcommand("eval", "tabulate monic polynomial values");
  add_common(eval_cmd, true);
  eval_cmd->add_option("--n", opts.n, "single degree (default: 0..n-max)");
  eval_cmd->add_option("--s", opts.s, "single lattice point (default: the support grid)");

  CLI::App* phi_cmd = app.add_subcommand("phi", "tabulate normalized oscillator functions");
  add_common(phi_cmd, true);
  phi_cmd->add_option("--n", opts.n, "single degree (default: 0..n-max)");
  phi_cmd->add_option("--s", opts.s, "single lattice point (default: the support grid)");

  CLI::App* table_cmd = app.add_subcommand("table", "tabulate P_n and Phi_n over the grid");
  add_common(table_cmd, true);
  table_cmd->add_option("--n", opts.n, "single degree (default: 0..n-max)");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run a verification suite for one family");
  add_common(verify_cmd, true);
  verify_cmd->add_option("--check", opts.check, "one of: orthogonality pearson eigen factorization commutator ladder algebra casimir qexample all");
  verify_cmd->add_option("--alpha", opts.alpha_set, "alpha test set for factorization/commutator");
  verify_cmd->add_option("--tol", opts.tol_overrides, "tolerance override <check>=<value>");

  CLI::App* report_cmd =
      app.add_subcommand("report", "full machine-readable run over all families and checks");
  add_common(report_cmd, false);
  report_cmd->add_option("--tol", opts.tol_overrides, "tolerance override <check>=<value>");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval_cmd->parsed() || phi_cmd->parsed()) {
      const FamilySpec family = latosc::parse_family(opts.family);
      write_output(opts, evaluation_table(family, opts, phi_cmd->parsed()));
      return 0;
    }
    if (table_cmd->parsed()) {
      const FamilySpec family = latosc::parse_family(opts.family);
      // Both columns: P rows then phi rows under a tagged field.
      CommonOpts p_opts = opts;
      if (opts.format == "csv") {
        std::string out = evaluation_table(family, p_opts, false);
        out += evaluation_table(family, p_opts, true);
        write_output(opts, out);
      } else {
        ordered_json doc;
        doc["P"] = ordered_json::parse(evaluation_table(family, p_opts, false));
        doc["phi"] = ordered_json::parse(evaluation_table(family, p_opts, true));
        write_output(opts, doc.dump(2));
      }
      return 0;
    }
    if (verify_cmd->parsed()) return run_verify(opts, n_max_given, false);
    if (report_cmd->parsed()) return run_verify(opts, n_max_given, true);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
