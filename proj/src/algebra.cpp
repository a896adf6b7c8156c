#include "latosc/algebra.hpp"

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

std::string to_string(AlgebraTag tag) {
  switch (tag) {
    case AlgebraTag::oscillator: return "oscillator";
    case AlgebraTag::sp2r: return "Sp2R";
    case AlgebraTag::so3: return "SO3";
  }
  return "?";
}

std::pair<ShiftOperator, ShiftOperator> half_shift_ops(const FamilySpec& family) {
  // a  = sqrt(sigma(s+1)) e^{+d/2} - sqrt(sigma(s-1)+tau(s-1)) e^{-d/2}
  // a+ = e^{-d/2} sqrt(sigma(s+1)) - e^{+d/2} sqrt(sigma(s-1)+tau(s-1))
  //    = sqrt(sigma(s+1/2)) e^{-d/2} - sqrt(sigma(s-1/2)+tau(s-1/2)) e^{+d/2}
  auto a = add(ShiftOperator::term(
                   0.5, [family](double s) { return clamped_sqrt(family.sigma(s + 1.0)); }),
               ShiftOperator::term(-0.5, [family](double s) {
                 return -clamped_sqrt(family.sigma_plus_tau(s - 1.0));
               }));
  auto a_plus =
      add(ShiftOperator::term(-0.5,
                              [family](double s) { return clamped_sqrt(family.sigma(s + 0.5)); }),
          ShiftOperator::term(0.5, [family](double s) {
            return -clamped_sqrt(family.sigma_plus_tau(s - 0.5));
          }));
  return {std::move(a), std::move(a_plus)};
}

AlgebraContext make_context(const FamilySpec& family, double tail_tol, int n_max) {
  if (family.sigma_dd() != 0.0)
    throw std::invalid_argument("make_context: sigma'' != 0 for " + family.label() +
                                "; the closed algebra needs sigma'' = 0");
  AlgebraContext ctx(family);
  ctx.grid = support_grid(family, tail_tol, n_max);
  ctx.h1 = hamiltonian_h1(family);

  const double tau_p = family.tau_prime();
  const double sig_p0 = family.sigma_poly().derivative(0.0);
  const double sig_0 = family.sigma(0.0);
  const double tau_0 = family.tau(0.0);
  if (!(tau_p < 0.0))
    throw std::domain_error("make_context: C_a^2 = -1/tau' requires tau' < 0");
  const double Ca2 = -1.0 / tau_p;
  ctx.C_a = std::sqrt(Ca2);

  // Sign of A0 before the C_b choice (positive factors dropped).
  const double a0_sign_carrier = -tau_p * sig_p0 * (sig_p0 + tau_p);
  if (a0_sign_carrier == 0.0) {
    ctx.tag = AlgebraTag::oscillator;
    ctx.A0 = 0.0;
    ctx.A1 = 0.0;
    ctx.h2 = ctx.h1;  // E = 0, C_a^2 h1 = h1 for the Charlier normalization
    if (family.kind() == FamilyKind::charlier) {
      const Grid& g = ctx.grid;
      ctx.Lambda = theorem41_conditions(family, 0.0, g).lambda;
    }
    return ctx;
  }
  ctx.tag = a0_sign_carrier > 0.0 ? AlgebraTag::sp2r : AlgebraTag::so3;

  const double denom = sig_p0 * (tau_p + sig_p0);
  if (denom == 0.0)
    throw std::domain_error("make_context: sigma'(0)[tau' + sigma'(0)] = 0 leaves C_b undefined");
  double Cb2, E;
  if (ctx.tag == AlgebraTag::sp2r) {
    Cb2 = -tau_p / denom;
    E = -Cb2 * (sig_p0 * tau_0 - sig_0 * tau_p) / (2.0 * tau_p);
  } else {
    Cb2 = tau_p / denom;
    E = Cb2 * (sig_p0 * tau_0 - sig_0 * tau_p) / (2.0 * tau_p);
  }
  ctx.C_b = std::sqrt(Cb2);
  ctx.E = E;

  const double minus_tau_ca2 = -tau_p * Ca2;  // = 1 with this normalization
  ctx.A0 = -2.0 * tau_p * sig_p0 * Cb2 * Ca2 * Ca2 * minus_tau_ca2 * (sig_p0 + tau_p);
  ctx.A1 = -E * ctx.A0 / minus_tau_ca2 +
           Cb2 * Ca2 * Ca2 * Ca2 * tau_p * tau_p * (sig_p0 * tau_0 - sig_0 * tau_p);

  ctx.h2 = add(scale(ctx.h1, Ca2), ShiftOperator::constant(E));

  const double cbca = *ctx.C_b * ctx.C_a;
  ctx.c = add(ShiftOperator::term(0.0,
                                  [family, cbca](double s) { return cbca * family.sigma(s + 1.0); }),
              ShiftOperator::term(-1.0, [family, cbca](double s) {
                return -cbca * nu(family, s - 1.0);
              }));
  ctx.c_plus =
      add(ShiftOperator::term(0.0,
                              [family, cbca](double s) { return cbca * family.sigma(s + 1.0); }),
          ShiftOperator::term(1.0, [family, cbca](double s) { return -cbca * nu(family, s); }));

  ctx.K0 = scale(ctx.h2, 1.0 / minus_tau_ca2);
  // K-+ = (-tau' C_a^2) c(+) - C_b C_a sigma'(0) (h2 - tau' C_a^2 - E).
  const ShiftOperator h2_shifted =
      add(ctx.h2, ShiftOperator::constant(-(tau_p * Ca2 + E)));
  const double u = cbca * sig_p0;
  ctx.K_minus = add(scale(*ctx.c, minus_tau_ca2), scale(h2_shifted, -u));
  ctx.K_plus = add(scale(*ctx.c_plus, minus_tau_ca2), scale(h2_shifted, -u));
  return ctx;
}

double kappa(const AlgebraContext& ctx, int n) {
  if (!ctx.E) throw std::domain_error("kappa: no ladder rule for the oscillator case");
  const double v = n * (n + 2.0 * *ctx.E - 1.0);
  return ctx.tag == AlgebraTag::sp2r ? clamped_sqrt(v) : clamped_sqrt(-v);
}

double ClosedAlgebraCheck::max_residual() const {
  return std::max({h2_c_residual, h2_c_plus_residual, c_c_plus_residual});
}

ClosedAlgebraCheck verify_closed_algebra(const AlgebraContext& ctx,
                                         std::span<const GridFunction> basis) {
  if (!ctx.c) throw std::domain_error("verify_closed_algebra: context has no c operators");
  const FamilySpec& family = ctx.family;
  const double tau_p = family.tau_prime();
  const double Ca2 = ctx.C_a * ctx.C_a;
  const double sig_p0 = family.sigma_poly().derivative(0.0);
  const double cbca = *ctx.C_b * ctx.C_a;
  const double E = *ctx.E;

  ClosedAlgebraCheck out;
  const ShiftOperator h2_part = add(ctx.h2, ShiftOperator::constant(-(tau_p * Ca2 + E)));
  out.h2_c_residual = operator_difference_residual(
      commutator(ctx.h2, *ctx.c),
      add(scale(*ctx.c, tau_p * Ca2), scale(h2_part, cbca * sig_p0)), basis);
  out.h2_c_plus_residual = operator_difference_residual(
      commutator(ctx.h2, *ctx.c_plus),
      add(scale(*ctx.c_plus, -tau_p * Ca2), scale(h2_part, -cbca * sig_p0)), basis);
  const double Cb2 = *ctx.C_b * *ctx.C_b;
  const ShiftOperator rhs3 =
      scale(add(ShiftOperator::term(0.0, [family](double s) { return family.sigma(s); }),
                scale(add(ctx.h2, ShiftOperator::constant(-E)), -sig_p0)),
            Cb2);
  out.c_c_plus_residual =
      operator_difference_residual(commutator(*ctx.c, *ctx.c_plus), rhs3, basis);
  return out;
}

double KRelationsCheck::max_residual() const {
  return std::max({k0_kplus_residual, k0_kminus_residual, kpm_residual});
}

KRelationsCheck verify_k_relations(const AlgebraContext& ctx,
                                   std::span<const GridFunction> basis) {
  if (!ctx.K0) throw std::domain_error("verify_k_relations: context has no K generators");
  KRelationsCheck out;
  out.k0_kplus_residual =
      operator_difference_residual(commutator(*ctx.K0, *ctx.K_plus), *ctx.K_plus, basis);
  out.k0_kminus_residual = operator_difference_residual(commutator(*ctx.K0, *ctx.K_minus),
                                                        scale(*ctx.K_minus, -1.0), basis);
  const ShiftOperator bracket = ctx.tag == AlgebraTag::sp2r
                                    ? commutator(*ctx.K_minus, *ctx.K_plus)
                                    : commutator(*ctx.K_plus, *ctx.K_minus);
  out.kpm_residual = operator_difference_residual(bracket, scale(*ctx.K0, 2.0), basis);
  return out;
}

ShiftOperator casimir(const AlgebraContext& ctx) {
  if (!ctx.K0) throw std::domain_error("casimir: context has no K generators");
  const ShiftOperator k0_sq = compose(*ctx.K0, *ctx.K0);
  if (ctx.tag == AlgebraTag::sp2r)
    return add(add(k0_sq, scale(*ctx.K0, -1.0)), scale(compose(*ctx.K_plus, *ctx.K_minus), -1.0));
  return add(add(k0_sq, *ctx.K0), compose(*ctx.K_minus, *ctx.K_plus));
}

LadderAction ladder_action(const AlgebraContext& ctx, int n) {
  if (!ctx.K0) throw std::domain_error("ladder_action: context has no K generators");
  LadderAction out;
  const GridFunction fn = phi(ctx.family, n, ctx.grid);
  const GridFunction raised = ctx.K_plus->apply(fn);
  const GridFunction lowered = ctx.K_minus->apply(fn);
  if (n + 1 <= ctx.family.max_degree()) {
    const GridFunction fp = phi(ctx.family, n + 1, ctx.grid);
    out.up_coeff = inner_product(raised, fp);
    out.up_residual = max_abs_diff(raised, fp.scaled(kappa(ctx, n + 1)));
  } else {
    // Ladder leaves the representation space (so(3) top rung).
    out.up_coeff = 0.0;
    out.up_residual = max_abs_diff(raised, GridFunction(ctx.grid, std::vector<double>(ctx.grid.count, 0.0)));
  }
  const GridFunction zero(ctx.grid, std::vector<double>(ctx.grid.count, 0.0));
  if (n == 0) {
    out.down_coeff = 0.0;
    out.down_residual = max_abs_diff(lowered, zero);
  } else {
    const GridFunction fm = phi(ctx.family, n - 1, ctx.grid);
    out.down_coeff = inner_product(lowered, fm);
    out.down_residual = max_abs_diff(lowered, fm.scaled(kappa(ctx, n)));
  }
  return out;
}

GridFunction build_phi_via_kplus(const AlgebraContext& ctx, int n) {
  if (!ctx.K0) throw std::domain_error("build_phi_via_kplus: context has no K generators");
  GridFunction cur = phi(ctx.family, 0, ctx.grid);
  long double norm = 1.0L;
  for (int k = 1; k <= n; ++k) {
    const double kk = kappa(ctx, k);
    if (kk == 0.0) throw std::domain_error("build_phi_via_kplus: kappa product vanishes at n = " +
                                           std::to_string(k));
    cur = ctx.K_plus->apply(cur);
    norm *= kk;
  }
  return cur.scaled(static_cast<double>(1.0L / norm));
}

ExampleGenerators explicit_example_operators(const FamilySpec& family) {
  ExampleGenerators out;
  if (family.kind() == FamilyKind::meixner) {
    const double g = family.gamma(), mu = family.mu();
    const double m1 = 1.0 - mu;
    out.K0 = add(add(ShiftOperator::term(-1.0,
                                         [=](double s) {
                                           return -std::sqrt(s * (s - 1.0 + g)) * std::sqrt(mu) / m1;
                                         }),
                     ShiftOperator::term(1.0,
                                         [=](double s) {
                                           return -std::sqrt((s + 1.0) * (s + g)) * std::sqrt(mu) / m1;
                                         })),
                 ShiftOperator::term(0.0, [=](double s) {
                   return (s + 0.5 * g) * (1.0 + mu) / m1;
                 }));
    out.K_plus = add(add(ShiftOperator::term(-1.0,
                                             [=](double s) { return std::sqrt(s * (s - 1.0 + g)) / m1; }),
                         ShiftOperator::term(1.0,
                                             [=](double s) {
                                               return mu * std::sqrt((s + 1.0) * (s + g)) / m1;
                                             })),
                     ShiftOperator::term(0.0, [=](double s) {
                       return -std::sqrt(mu) / m1 * (2.0 * s + g);
                     }));
    out.K_minus = add(add(ShiftOperator::term(-1.0,
                                              [=](double s) {
                                                return mu * std::sqrt(s * (s - 1.0 + g)) / m1;
                                              }),
                          ShiftOperator::term(1.0,
                                              [=](double s) {
                                                return std::sqrt((s + 1.0) * (s + g)) / m1;
                                              })),
                      ShiftOperator::term(0.0, [=](double s) {
                        return -std::sqrt(mu) / m1 * (2.0 * s + g);
                      }));
    return out;
  }
  if (family.kind() == FamilyKind::kravchuk) {
    const double p = family.p();
    const double nn = family.big_n();
    out.K0 = add(add(ShiftOperator::term(-1.0,
                                         [=](double s) {
                                           return -std::sqrt(p * (1.0 - p) * s * (nn - s + 1.0));
                                         }),
                     ShiftOperator::term(1.0,
                                         [=](double s) {
                                           return -std::sqrt(p * (1.0 - p) * (s + 1.0) * (nn - s));
                                         })),
                 ShiftOperator::term(0.0, [=](double s) {
                   return nn * (p - 0.5) - s * (2.0 * p - 1.0);
                 }));
    out.K_plus = add(add(ShiftOperator::term(-1.0,
                                             [=](double s) {
                                               return (1.0 - p) * std::sqrt(s * (nn - s + 1.0));
                                             }),
                         ShiftOperator::term(1.0,
                                             [=](double s) {
                                               return -p * std::sqrt((s + 1.0) * (nn - s));
                                             })),
                     ShiftOperator::term(0.0, [=](double s) {
                       return std::sqrt(p * (1.0 - p)) * (2.0 * s - nn);
                     }));
    out.K_minus = add(add(ShiftOperator::term(-1.0,
                                              [=](double s) {
                                                return -p * std::sqrt(s * (nn - s + 1.0));
                                              }),
                          ShiftOperator::term(1.0,
                                              [=](double s) {
                                                return (1.0 - p) * std::sqrt((s + 1.0) * (nn - s));
                                              })),
                      ShiftOperator::term(0.0, [=](double s) {
                        return std::sqrt(p * (1.0 - p)) * (2.0 * s - nn);
                      }));
    return out;
  }
  throw std::invalid_argument("explicit_example_operators: worked examples exist for meixner and kravchuk");
}

}  // namespace latosc
