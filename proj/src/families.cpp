#include "latosc/families.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace latosc {

namespace {

std::string format_param(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// lgamma in long double; all weight/norm assembly stays in extended
// precision until the final cast.
long double lgamma_l(long double x) { return lgammal(x); }

}  // namespace

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::hahn: return "hahn";
    case FamilyKind::meixner: return "meixner";
    case FamilyKind::kravchuk: return "kravchuk";
    case FamilyKind::charlier: return "charlier";
  }
  return "?";
}

FamilySpec FamilySpec::hahn(double alpha, double beta, int big_n) {
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw std::invalid_argument("hahn: requires alpha > -1 and beta > -1 (weight positive on support)");
  if (big_n < 2) throw std::invalid_argument("hahn: requires N >= 2");
  FamilySpec f;
  f.kind_ = FamilyKind::hahn;
  f.alpha_ = alpha;
  f.beta_ = beta;
  f.big_n_ = big_n;
  // sigma = x(N + alpha - x), tau = (beta+1)(N-1) - (alpha+beta+2) x
  f.sigma_ = Quadratic{0.0, static_cast<double>(big_n) + alpha, -1.0};
  f.tau_ = Quadratic{(beta + 1.0) * (big_n - 1.0), -(alpha + beta + 2.0), 0.0};
  f.support_end_ = big_n;
  return f;
}

FamilySpec FamilySpec::meixner(double gamma, double mu) {
  if (!(gamma > 0.0)) throw std::invalid_argument("meixner: requires gamma > 0");
  if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("meixner: requires mu in (0,1)");
  FamilySpec f;
  f.kind_ = FamilyKind::meixner;
  f.gamma_ = gamma;
  f.mu_ = mu;
  f.sigma_ = Quadratic{0.0, 1.0, 0.0};
  f.tau_ = Quadratic{mu * gamma, mu - 1.0, 0.0};
  return f;
}

FamilySpec FamilySpec::kravchuk(double p, int big_n) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("kravchuk: requires p in (0,1)");
  if (big_n < 1) throw std::invalid_argument("kravchuk: requires N >= 1");
  FamilySpec f;
  f.kind_ = FamilyKind::kravchuk;
  f.p_ = p;
  f.big_n_ = big_n;
  f.sigma_ = Quadratic{0.0, 1.0, 0.0};
  f.tau_ = Quadratic{big_n * p / (1.0 - p), -1.0 / (1.0 - p), 0.0};
  f.support_end_ = big_n + 1;
  return f;
}

FamilySpec FamilySpec::charlier(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("charlier: requires mu > 0");
  FamilySpec f;
  f.kind_ = FamilyKind::charlier;
  f.mu_ = mu;
  f.sigma_ = Quadratic{0.0, 1.0, 0.0};
  f.tau_ = Quadratic{mu, -1.0, 0.0};
  return f;
}

int FamilySpec::max_degree() const {
  switch (kind_) {
    case FamilyKind::hahn: return big_n_ - 1;
    case FamilyKind::kravchuk: return big_n_;
    default: return kDegreeCap;
  }
}

std::string FamilySpec::label() const {
  switch (kind_) {
    case FamilyKind::hahn:
      return "hahn:alpha=" + format_param(alpha_) + ",beta=" + format_param(beta_) +
             ",N=" + std::to_string(big_n_);
    case FamilyKind::meixner:
      return "meixner:gamma=" + format_param(gamma_) + ",mu=" + format_param(mu_);
    case FamilyKind::kravchuk:
      return "kravchuk:p=" + format_param(p_) + ",N=" + std::to_string(big_n_);
    case FamilyKind::charlier:
      return "charlier:mu=" + format_param(mu_);
  }
  return "?";
}

double pochhammer(double a, int k) {
  if (k < 0) throw std::invalid_argument("pochhammer: k must be nonnegative");
  long double r = 1.0L;
  for (int j = 0; j < k; ++j) r *= static_cast<long double>(a) + j;
  return static_cast<double>(r);
}

double hypergeometric(const HypergeometricCall& call) {
  if (call.term_cap < 0) throw std::invalid_argument("hypergeometric: negative term cap");
  // Forward terminating sum in extended precision with compensated
  // accumulation; the term recurrence keeps each term's rounding small.
  long double sum = 0.0L, comp = 0.0L;
  long double term = 1.0L;
  for (int k = 0;; ++k) {
    long double y = term - comp;
    long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (k == call.term_cap) break;
    long double factor = 1.0L;
    for (double aa : call.numerator) factor *= static_cast<long double>(aa) + k;
    for (double bb : call.denominator) {
      long double d = static_cast<long double>(bb) + k;
      if (d == 0.0L)
        throw std::domain_error("hypergeometric: denominator Pochhammer vanishes before termination");
      factor /= d;
    }
    term *= factor * static_cast<long double>(call.argument) / (k + 1);
  }
  return static_cast<double>(sum);
}

namespace {

void check_degree(const FamilySpec& family, int n, const char* where) {
  if (n < 0) throw std::invalid_argument(std::string(where) + ": n must be nonnegative");
  if (n > family.max_degree())
    throw std::invalid_argument(std::string(where) + ": degree " + std::to_string(n) +
                                " exceeds admissible maximum " + std::to_string(family.max_degree()) +
                                " for " + family.label());
}

}  // namespace

double eval_monic(const FamilySpec& family, int n, double x) {
  check_degree(family, n, "eval_monic");
  switch (family.kind()) {
    case FamilyKind::hahn: {
      const double al = family.alpha(), be = family.beta();
      const double nn = family.big_n();
      long double pref = 1.0L;
      for (int j = 0; j < n; ++j) {
        pref *= (1.0L - nn + j) * (be + 1.0L + j) / (al + be + n + 1.0L + j);
      }
      HypergeometricCall call{{-x, al + be + n + 1.0, -static_cast<double>(n)},
                              {1.0 - nn, be + 1.0},
                              1.0,
                              n};
      return static_cast<double>(pref * static_cast<long double>(hypergeometric(call)));
    }
    case FamilyKind::meixner: {
      const double g = family.gamma(), mu = family.mu();
      long double pref = 1.0L;
      for (int j = 0; j < n; ++j) pref *= (g + j) * mu / (mu - 1.0L);
      HypergeometricCall call{{-static_cast<double>(n), -x}, {g}, 1.0 - 1.0 / mu, n};
      return static_cast<double>(pref * static_cast<long double>(hypergeometric(call)));
    }
    case FamilyKind::kravchuk: {
      const double p = family.p();
      const int nn = family.big_n();
      long double pref = 1.0L;
      for (int j = 0; j < n; ++j) pref *= -p * (nn - j);
      HypergeometricCall call{{-static_cast<double>(n), -x},
                              {-static_cast<double>(nn)},
                              1.0 / p,
                              n};
      return static_cast<double>(pref * static_cast<long double>(hypergeometric(call)));
    }
    case FamilyKind::charlier: {
      const double mu = family.mu();
      long double pref = 1.0L;
      for (int j = 0; j < n; ++j) pref *= -mu;
      HypergeometricCall call{{-static_cast<double>(n), -x}, {}, -1.0 / mu, n};
      return static_cast<double>(pref * static_cast<long double>(hypergeometric(call)));
    }
  }
  return 0.0;
}

double lambda_n(const FamilySpec& family, int n) {
  check_degree(family, n, "lambda_n");
  switch (family.kind()) {
    case FamilyKind::hahn:
      return n * (n + family.alpha() + family.beta() + 1.0);
    case FamilyKind::meixner:
      return (1.0 - family.mu()) * n;
    case FamilyKind::kravchuk:
      return n / (1.0 - family.p());
    case FamilyKind::charlier:
      return n;
  }
  return 0.0;
}

double weight(const FamilySpec& family, double s) {
  const double slack = 0.5;
  if (s < family.support_begin() - slack ||
      (family.finite_support() && s > *family.support_end() - 1 + slack))
    throw std::domain_error("weight: point outside the support window of " + family.label());
  const long double sl = s;
  switch (family.kind()) {
    case FamilyKind::hahn: {
      const long double al = family.alpha(), be = family.beta(), nn = family.big_n();
      return static_cast<double>(
          expl(lgamma_l(nn + al - sl) + lgamma_l(be + sl + 1.0L) - lgamma_l(nn - sl) -
               lgamma_l(sl + 1.0L)));
    }
    case FamilyKind::meixner: {
      const long double g = family.gamma(), mu = family.mu();
      return static_cast<double>(
          expl(sl * logl(mu) + lgamma_l(g + sl) - lgamma_l(g) - lgamma_l(sl + 1.0L)));
    }
    case FamilyKind::kravchuk: {
      const long double p = family.p(), nn = family.big_n();
      return static_cast<double>(expl(lgamma_l(nn + 1.0L) - lgamma_l(sl + 1.0L) -
                                      lgamma_l(nn - sl + 1.0L) + sl * logl(p) +
                                      (nn - sl) * logl(1.0L - p)));
    }
    case FamilyKind::charlier: {
      const long double mu = family.mu();
      return static_cast<double>(expl(-mu + sl * logl(mu) - lgamma_l(sl + 1.0L)));
    }
  }
  return 0.0;
}

double weight_ratio(const FamilySpec& family, double s) {
  switch (family.kind()) {
    case FamilyKind::hahn: {
      const double al = family.alpha(), be = family.beta(), nn = family.big_n();
      return (be + s + 1.0) * (nn - 1.0 - s) / ((nn + al - s - 1.0) * (s + 1.0));
    }
    case FamilyKind::meixner:
      return family.mu() * (family.gamma() + s) / (s + 1.0);
    case FamilyKind::kravchuk:
      return family.p() * (family.big_n() - s) / ((1.0 - family.p()) * (s + 1.0));
    case FamilyKind::charlier:
      return family.mu() / (s + 1.0);
  }
  return 0.0;
}

double squared_norm(const FamilySpec& family, int n) {
  check_degree(family, n, "squared_norm");
  const long double nl = n;
  switch (family.kind()) {
    case FamilyKind::hahn: {
      // Monic norm: n! Gamma(a+n+1) Gamma(b+n+1) Gamma(a+b+N+n+1) Gamma(a+b+n+1)
      //             / [(N-n-1)! Gamma(a+b+2n+1) Gamma(a+b+2n+2)].
      const long double al = family.alpha(), be = family.beta(), nn = family.big_n();
      const long double t = al + be;
      return static_cast<double>(expl(
          lgamma_l(nl + 1.0L) + lgamma_l(al + nl + 1.0L) + lgamma_l(be + nl + 1.0L) +
          lgamma_l(t + nn + nl + 1.0L) + lgamma_l(t + nl + 1.0L) - lgamma_l(nn - nl) -
          lgamma_l(t + 2.0L * nl + 1.0L) - lgamma_l(t + 2.0L * nl + 2.0L)));
    }
    case FamilyKind::meixner: {
      const long double g = family.gamma(), mu = family.mu();
      return static_cast<double>(expl(lgamma_l(nl + 1.0L) + lgamma_l(g + nl) - lgamma_l(g) +
                                      nl * logl(mu) - (g + 2.0L * nl) * logl(1.0L - mu)));
    }
    case FamilyKind::kravchuk: {
      // Monic norm: n! N!/(N-n)! (p(1-p))^n.
      const long double p = family.p(), nn = family.big_n();
      return static_cast<double>(expl(lgamma_l(nl + 1.0L) + lgamma_l(nn + 1.0L) -
                                      lgamma_l(nn - nl + 1.0L) +
                                      nl * logl(p * (1.0L - p))));
    }
    case FamilyKind::charlier: {
      const long double mu = family.mu();
      return static_cast<double>(expl(lgamma_l(nl + 1.0L) + nl * logl(mu)));
    }
  }
  return 0.0;
}

double pearson_residual(const FamilySpec& family, int s) {
  if (s < family.support_begin() ||
      (family.finite_support() && s + 1 >= *family.support_end()))
    throw std::domain_error("pearson_residual: needs s and s+1 in the support");
  // rho(s) [sigma(s+1) r(s) - (sigma+tau)(s)] with the closed-form ratio r;
  // the factored form keeps the cancellation free of Gamma rounding.
  const double r = weight_ratio(family, s);
  return weight(family, s) * (family.sigma(s + 1.0) * r - family.sigma_plus_tau(s));
}

double pearson_relative_residual(const FamilySpec& family, int s) {
  const double r = weight_ratio(family, s);
  const double lead = family.sigma(s + 1.0) * r;
  const double res = lead - family.sigma_plus_tau(s);
  if (lead == 0.0) return res == 0.0 ? 0.0 : INFINITY;
  return std::fabs(res / lead);
}

double difference_equation_residual(const FamilySpec& family, int n, double x) {
  const double pm = eval_monic(family, n, x - 1.0);
  const double p0 = eval_monic(family, n, x);
  const double pp = eval_monic(family, n, x + 1.0);
  const double t1 = family.sigma(x) * (pp - 2.0 * p0 + pm);
  const double t2 = family.tau(x) * (pp - p0);
  const double t3 = lambda_n(family, n) * p0;
  // Scale from the uncancelled term magnitudes, so lattice points where a
  // coefficient or P_n itself vanishes do not divide noise by noise.
  const double scale =
      std::max({std::fabs(family.sigma(x)) * (std::fabs(pp) + 2.0 * std::fabs(p0) + std::fabs(pm)),
                std::fabs(family.tau(x)) * (std::fabs(pp) + std::fabs(p0)), std::fabs(t3)});
  if (scale == 0.0) return 0.0;
  return (t1 + t2 + t3) / scale;
}

int truncation_bound(const FamilySpec& family, double tail_tol, int n_max) {
  if (family.finite_support()) return *family.support_end();
  if (!(tail_tol > 0.0)) throw std::invalid_argument("truncation_bound: tail_tol must be positive");
  // g(s) = rho(s) (1+s)^{2 n_max}; once g(s+1)/g(s) <= r* < 1 the tail is
  // bounded by g(S)/(1-r(S)).
  const double power = 2.0 * n_max;
  int s = 1;
  double g = weight(family, s) * std::pow(1.0 + s, power);
  for (; s < 100000; ++s) {
    const double ratio = weight_ratio(family, s) * std::pow((2.0 + s) / (1.0 + s), power);
    if (ratio < 0.9 && g / (1.0 - ratio) < tail_tol) return s;
    g *= ratio;
  }
  throw std::runtime_error("truncation_bound: no bound below 100000 points");
}

FamilySpec parse_family(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("family string: expected '<name>:<key>=<value>[,...]' at position 0 in '" +
                                text + "'");
  const std::string name = text.substr(0, colon);
  std::vector<std::pair<std::string, std::string>> kv;
  std::string rest = text.substr(colon + 1);
  size_t pos = 0;
  while (pos < rest.size()) {
    size_t comma = rest.find(',', pos);
    if (comma == std::string::npos) comma = rest.size();
    const std::string item = rest.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("family string: expected key=value near position " +
                                  std::to_string(colon + 1 + pos) + " in '" + text + "'");
    kv.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    pos = comma + 1;
  }
  auto get = [&](const std::string& key) -> double {
    for (const auto& [k, v] : kv)
      if (k == key) {
        try {
          return std::stod(v);
        } catch (const std::exception&) {
          throw std::invalid_argument("family string: bad numeric value for '" + key + "' in '" +
                                      text + "'");
        }
      }
    throw std::invalid_argument("family string: missing parameter '" + key + "' in '" + text + "'");
  };
  if (name == "hahn") return FamilySpec::hahn(get("alpha"), get("beta"), static_cast<int>(get("N")));
  if (name == "meixner") return FamilySpec::meixner(get("gamma"), get("mu"));
  if (name == "kravchuk") return FamilySpec::kravchuk(get("p"), static_cast<int>(get("N")));
  if (name == "charlier") return FamilySpec::charlier(get("mu"));
  throw std::invalid_argument("family string: unknown family '" + name +
                              "' (expected hahn, meixner, kravchuk or charlier)");
}

}  // namespace latosc
