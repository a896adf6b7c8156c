#ifndef LATOSC_FAMILIES_HPP
#define LATOSC_FAMILIES_HPP

#include <optional>
#include <string>
#include <vector>

namespace latosc {

// Quadratic polynomial c0 + c1 x + c2 x^2, evaluable at arbitrary real
// arguments (operator coefficients need sigma, tau at half-integer points).
struct Quadratic {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double operator()(double x) const { return (c2 * x + c1) * x + c0; }
  double derivative(double x) const { return 2.0 * c2 * x + c1; }
  double second_derivative() const { return 2.0 * c2; }
};

enum class FamilyKind { hahn, meixner, kravchuk, charlier };

std::string to_string(FamilyKind kind);

// One of the four classical discrete families on the uniform lattice.
// Carries sigma, tau as polynomial coefficients, the support window and the
// family parameters. Immutable after construction; construction validates
// parameter admissibility and the weight's positivity on the support.
class FamilySpec {
 public:
  static FamilySpec hahn(double alpha, double beta, int big_n);
  static FamilySpec meixner(double gamma, double mu);
  static FamilySpec kravchuk(double p, int big_n);
  static FamilySpec charlier(double mu);

  FamilyKind kind() const { return kind_; }

  const Quadratic& sigma_poly() const { return sigma_; }
  const Quadratic& tau_poly() const { return tau_; }
  double sigma(double x) const { return sigma_(x); }
  double tau(double x) const { return tau_(x); }
  double sigma_plus_tau(double x) const { return sigma_(x) + tau_(x); }
  double tau_prime() const { return tau_.c1; }
  double sigma_dd() const { return sigma_.second_derivative(); }

  // Orthogonality sum runs over s = support_begin() .. support_end()-1;
  // support_end() is empty for the infinite families.
  int support_begin() const { return 0; }
  std::optional<int> support_end() const { return support_end_; }
  bool finite_support() const { return support_end_.has_value(); }

  // Largest admissible polynomial degree (library-wide cap for the infinite
  // families; N-1 for Hahn, N for Kravchuk).
  int max_degree() const;

  // Named parameters; meaning depends on kind.
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  double mu() const { return mu_; }
  double p() const { return p_; }
  int big_n() const { return big_n_; }

  // Canonical key=value form, e.g. "charlier:mu=2".
  std::string label() const;

 private:
  FamilySpec() = default;

  FamilyKind kind_ = FamilyKind::charlier;
  Quadratic sigma_;
  Quadratic tau_;
  std::optional<int> support_end_;
  double alpha_ = 0, beta_ = 0, gamma_ = 0, mu_ = 0, p_ = 0;
  int big_n_ = 0;
};

// Degree cap for the infinite-support families; cancellation grows with n.
inline constexpr int kDegreeCap = 30;

// (a)_k = a (a+1) ... (a+k-1), (a)_0 = 1.
double pochhammer(double a, int k);

// Terminating generalized hypergeometric sum. Some numerator parameter must
// be a nonpositive integer; term_cap is the terminating index.
struct HypergeometricCall {
  std::vector<double> numerator;
  std::vector<double> denominator;
  double argument = 0.0;
  int term_cap = 0;
};

double hypergeometric(const HypergeometricCall& call);

// Monic polynomial P_n(x) via the prefactor x hypergeometric forms.
double eval_monic(const FamilySpec& family, int n, double x);

// Eigenvalue of the difference equation; equals -n(tau' + (n-1) sigma''/2).
double lambda_n(const FamilySpec& family, int n);

// Weight rho(s), via log-Gamma internally. Real s is accepted within the
// support window (half-integer points are needed by the half-shift grids).
double weight(const FamilySpec& family, double s);

// rho(s+1)/rho(s) in closed rational form (no Gamma evaluations).
double weight_ratio(const FamilySpec& family, double s);

// Squared norm d_n^2 of the monic polynomial.
double squared_norm(const FamilySpec& family, int n);

// sigma(s+1) rho(s+1) - [sigma(s)+tau(s)] rho(s).
double pearson_residual(const FamilySpec& family, int s);

// Same residual divided by |sigma(s+1) rho(s+1)|.
double pearson_relative_residual(const FamilySpec& family, int s);

// sigma(x) [P(x+1)-2P(x)+P(x-1)] + tau(x) [P(x+1)-P(x)] + lambda_n P(x),
// divided by the largest of the three term magnitudes (0 when all vanish).
double difference_equation_residual(const FamilySpec& family, int n, double x);

// Smallest S with sum_{s>=S} rho(s) (1+s)^{2 n_max} < tail_tol, via the
// geometric tail bound on the ratio rho(s+1)/rho(s). Returns the support end
// for the finite families.
int truncation_bound(const FamilySpec& family, double tail_tol, int n_max);

// Parses "name:key=value[,key=value]*" for the four classical families.
FamilySpec parse_family(const std::string& text);

}  // namespace latosc

#endif  // LATOSC_FAMILIES_HPP
