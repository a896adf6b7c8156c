#include "latosc/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latosc {

namespace {

double clamped_sqrt(double radicand) {
  if (radicand < 0.0) {
    if (radicand > -1e-14) return 0.0;
    throw std::domain_error("negative radicand " + std::to_string(radicand) +
                            " in square-root coefficient");
  }
  return std::sqrt(radicand);
}

}  // namespace

Grid support_grid(const FamilySpec& family, double tail_tol, int n_max) {
  if (family.finite_support())
    return Grid{0.0, *family.support_end(), 2, false};
  const int s_max = truncation_bound(family, tail_tol, n_max);
  return Grid{0.0, s_max + 1, 2, true};
}

Grid half_grid(const Grid& unit_grid) {
  if (unit_grid.step2 != 2) throw std::invalid_argument("half_grid: expected a step-1 grid");
  return Grid{unit_grid.start, 2 * unit_grid.count - 1, 1, unit_grid.truncated_right};
}

FactorizationContext make_factorization_context(const FamilySpec& family, double alpha,
                                                double tail_tol, int n_max) {
  return FactorizationContext{family, alpha, support_grid(family, tail_tol, n_max)};
}

double nu(const FamilySpec& family, double s) {
  return clamped_sqrt(family.sigma(s + 1.0) * family.sigma_plus_tau(s));
}

ShiftOperator hamiltonian_h1(const FamilySpec& family) {
  auto op = ShiftOperator::term(-1.0, [family](double s) { return -nu(family, s - 1.0); });
  op = add(op, ShiftOperator::term(1.0, [family](double s) { return -nu(family, s); }));
  op = add(op, ShiftOperator::term(0.0, [family](double s) {
             return 2.0 * family.sigma(s) + family.tau(s);
           }));
  return op;
}

GridFunction phi(const FamilySpec& family, int n, const Grid& grid) {
  const double dn = std::sqrt(squared_norm(family, n));
  std::vector<double> v(grid.count);
  for (int i = 0; i < grid.count; ++i) {
    const double s = grid.point(i);
    v[i] = std::sqrt(weight(family, s)) / dn * eval_monic(family, n, s);
  }
  return GridFunction(grid, std::move(v));
}

std::vector<GridFunction> phi_basis(const FamilySpec& family, int n_max, const Grid& grid) {
  std::vector<GridFunction> basis;
  basis.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) basis.push_back(phi(family, n, grid));
  return basis;
}

ShiftOperator alpha_down(const FamilySpec& family, double alpha) {
  // e^{-alpha d} (e^{d} sqrt(sigma) - sqrt(sigma+tau) I) in normal order.
  auto op = ShiftOperator::term(
      1.0 - alpha, [family, alpha](double s) { return clamped_sqrt(family.sigma(s + 1.0 - alpha)); });
  return add(op, ShiftOperator::term(-alpha, [family, alpha](double s) {
               return -clamped_sqrt(family.sigma_plus_tau(s - alpha));
             }));
}

ShiftOperator alpha_up(const FamilySpec& family, double alpha) {
  // (sqrt(sigma) e^{-d} - sqrt(sigma+tau) I) e^{alpha d} in normal order.
  auto op = ShiftOperator::term(alpha - 1.0,
                                [family](double s) { return clamped_sqrt(family.sigma(s)); });
  return add(op, ShiftOperator::term(alpha, [family](double s) {
               return -clamped_sqrt(family.sigma_plus_tau(s));
             }));
}

double eigen_residual(const FactorizationContext& ctx, int n) {
  const GridFunction f = phi(ctx.family, n, ctx.grid);
  const GridFunction hf = hamiltonian_h1(ctx.family).apply(f);
  return max_abs_diff(hf, f.scaled(lambda_n(ctx.family, n)));
}

double factorization_residual(const FactorizationContext& ctx, int n) {
  const ShiftOperator product =
      compose(alpha_up(ctx.family, ctx.alpha), alpha_down(ctx.family, ctx.alpha));
  const GridFunction f = phi(ctx.family, n, ctx.grid);
  std::vector<GridFunction> basis{f};
  return operator_difference_residual(product, hamiltonian_h1(ctx.family), basis);
}

Theorem41Result theorem41_conditions(const FamilySpec& family, double alpha, const Grid& grid,
                                     double constancy_tol) {
  Theorem41Result out;
  bool have_value = false;
  double lo = 0.0, hi = 0.0;
  long double mean = 0.0L;
  int counted = 0;
  for (int i = 0; i < grid.measure_end(); ++i) {
    const double s = grid.point(i);
    if (s - 1.0 < grid.start) continue;  // needs s-1 in the window
    const double denom = family.sigma(s) * family.sigma_plus_tau(s - 1.0);
    if (denom == 0.0) {
      ++out.skipped_points;
      continue;
    }
    const double lhs1 =
        family.sigma(s - alpha) * family.sigma_plus_tau(s - alpha) / denom;
    out.residual1 = std::max(out.residual1, std::fabs(lhs1 - 1.0));
    const double lhs2 = family.sigma(s - alpha + 1.0) + family.sigma_plus_tau(s - alpha) -
                        2.0 * family.sigma(s) - family.tau(s);
    if (!have_value) {
      lo = hi = lhs2;
      have_value = true;
    } else {
      lo = std::min(lo, lhs2);
      hi = std::max(hi, lhs2);
    }
    mean += lhs2;
    ++counted;
  }
  if (counted == 0) throw std::domain_error("theorem41_conditions: no interior points");
  out.lambda = static_cast<double>(mean / counted);
  out.lambda_spread = hi - lo;
  out.lambda_constant = out.lambda_spread <= constancy_tol * (1.0 + std::fabs(out.lambda));
  return out;
}

LadderCheck charlier_ladder_check(double mu, int n_max, double tail_tol) {
  const FamilySpec family = FamilySpec::charlier(mu);
  const Grid grid = support_grid(family, tail_tol, n_max + 2);
  const ShiftOperator down = alpha_down(family, 0.0);
  const ShiftOperator up = alpha_up(family, 0.0);
  const auto basis = phi_basis(family, n_max + 1, grid);

  LadderCheck out;
  const GridFunction zero(grid, std::vector<double>(grid.count, 0.0));
  out.annihilation_residual = max_abs_diff(down.apply(basis[0]), zero);
  for (int n = 0; n <= n_max; ++n) {
    const GridFunction raised = up.apply(basis[n]);
    out.raise_vector_residual = std::max(
        out.raise_vector_residual, max_abs_diff(raised, basis[n + 1].scaled(std::sqrt(n + 1.0))));
    out.raise_coeff_residual =
        std::max(out.raise_coeff_residual,
                 std::fabs(inner_product(raised, basis[n + 1]) - std::sqrt(n + 1.0)));
    const GridFunction lowered = down.apply(basis[n]);
    const GridFunction& target = n == 0 ? zero : basis[n - 1];
    out.lower_vector_residual = std::max(
        out.lower_vector_residual, max_abs_diff(lowered, target.scaled(std::sqrt(double(n)))));
    if (n > 0)
      out.lower_coeff_residual =
          std::max(out.lower_coeff_residual,
                   std::fabs(inner_product(lowered, basis[n - 1]) - std::sqrt(double(n))));
  }
  return out;
}

GridFunction build_phi_from_ground(double mu, int n, const Grid& grid) {
  if (n < 0) throw std::invalid_argument("build_phi_from_ground: n must be nonnegative");
  std::vector<double> v(grid.count);
  for (int i = 0; i < grid.count; ++i) {
    const double s = grid.point(i);
    v[i] = std::exp(-0.5 * mu + 0.5 * (s * std::log(mu) - std::lgamma(s + 1.0)));
  }
  GridFunction cur(grid, std::move(v));
  const ShiftOperator up = alpha_up(FamilySpec::charlier(mu), 0.0);
  long double fact = 1.0L;
  for (int k = 1; k <= n; ++k) {
    cur = up.apply(cur);
    fact *= k;
  }
  return cur.scaled(static_cast<double>(1.0L / sqrtl(fact)));
}

namespace {

double commutator_variant_residual(double mu, int n_max, double tail_tol, bool affine) {
  const FamilySpec family = FamilySpec::charlier(mu);
  const Grid grid = support_grid(family, tail_tol, n_max + 2);
  const ShiftOperator up = alpha_up(family, 0.0);
  const ShiftOperator lhs = commutator(hamiltonian_h1(family), up);
  ShiftOperator rhs = affine ? add(scale(up, mu), ShiftOperator::constant(std::sqrt(mu) * (mu - 1.0)))
                             : up;
  const auto basis = phi_basis(family, n_max, grid);
  return operator_difference_residual(lhs, rhs, basis);
}

}  // namespace

double raising_commutator_residual(double mu, int n_max, double tail_tol) {
  return commutator_variant_residual(mu, n_max, tail_tol, false);
}

double raising_commutator_affine_variant_residual(double mu, int n_max, double tail_tol) {
  return commutator_variant_residual(mu, n_max, tail_tol, true);
}

}  // namespace latosc
