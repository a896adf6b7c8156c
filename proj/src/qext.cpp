#include "latosc/qext.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latosc {

namespace {

// Application of a branch operator together with the per-point scale
// max(|term|), for residuals measured relative to the local term size.
// For repeated applications, passing the previous step's scales propagates
// the conditioning of the whole product (an input whose value has already
// cancelled to noise still carries the magnitude it was assembled from).
struct ScaledApply {
  std::vector<double> values;
  std::vector<double> scales;
};

ScaledApply apply_with_scale(const ShiftOperator& op, const GridFunction& f,
                             const std::vector<double>* input_scales = nullptr) {
  const Grid& g = f.grid();
  ScaledApply out;
  out.values.assign(g.count, 0.0);
  out.scales.assign(g.count, 0.0);
  for (int i = 0; i < g.count; ++i) {
    const double s = g.point(i);
    double acc = 0.0, scl = 0.0;
    for (const auto& t : op.terms()) {
      if (t.shift2 % 2 != 0) throw std::domain_error("q lattice operators use integer shifts");
      const int j = i + t.shift2 / 2;
      if (j < 0 || j >= g.count) continue;
      const double c = t.coeff(s);
      acc += c * f[j];
      const double in = std::max(std::fabs(f[j]), input_scales ? (*input_scales)[j] : 0.0);
      scl = std::max(scl, std::fabs(c) * in);
    }
    out.values[i] = acc;
    out.scales[i] = scl;
  }
  return out;
}

}  // namespace

double QContext::point(int branch, int k) const {
  return branch_x0(branch) * std::pow(q, k);
}

QContext make_qcontext(double q, double a, double tail_tol) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("qcontext: requires q in (0,1)");
  if (!(a < 0.0)) throw std::invalid_argument("qcontext: requires a < 0");
  if (!(tail_tol > 0.0)) throw std::invalid_argument("qcontext: tail_tol must be positive");
  QContext ctx;
  ctx.q = q;
  ctx.a = a;
  ctx.k_q = std::sqrt(q) - 1.0 / std::sqrt(q);
  ctx.varsigma = 1.0 / q;
  ctx.Lambda = 1.0 / ctx.k_q;
  ctx.depth = static_cast<int>(std::ceil(std::log(tail_tol) / std::log(q))) + 8;
  return ctx;
}

QContext parse_qfamily(const std::string& text) {
  const std::string prefix = "alsalam-carlitz-1:";
  if (text.rfind(prefix, 0) != 0)
    throw std::invalid_argument("q family string: expected 'alsalam-carlitz-1:q=...,a=...'");
  double q = 0.0, a = 0.0;
  bool have_q = false, have_a = false;
  std::string rest = text.substr(prefix.size());
  size_t pos = 0;
  while (pos < rest.size()) {
    size_t comma = rest.find(',', pos);
    if (comma == std::string::npos) comma = rest.size();
    const std::string item = rest.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("q family string: expected key=value in '" + text + "'");
    const std::string key = item.substr(0, eq);
    const double val = std::stod(item.substr(eq + 1));
    if (key == "q") {
      q = val;
      have_q = true;
    } else if (key == "a") {
      a = val;
      have_a = true;
    } else {
      throw std::invalid_argument("q family string: unknown parameter '" + key + "'");
    }
    pos = comma + 1;
  }
  if (!have_q || !have_a)
    throw std::invalid_argument("q family string: needs both q and a in '" + text + "'");
  return make_qcontext(q, a);
}

double q_pochhammer(double z, double q, int n) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q_pochhammer: requires q in (0,1)");
  long double r = 1.0L;
  long double zz = z;
  for (int k = 0;; ++k) {
    if (n >= 0 && k >= n) break;
    if (n < 0 && std::fabs(static_cast<double>(zz)) < 1e-17) break;
    r *= 1.0L - zz;
    zz *= q;
  }
  return static_cast<double>(r);
}

double q_hypergeometric_2phi1(const QContext& ctx, int n, double x) {
  // sum_k (q^{-n};q)_k (1/x;q)_k / (q;q)_k * (qx/a)^k, terminating at k = n.
  const double q = ctx.q;
  long double sum = 0.0L, term = 1.0L;
  for (int k = 0;; ++k) {
    sum += term;
    if (k == n) break;
    term *= (1.0L - powl(q, k - n)) * (1.0L - powl(q, k) / x) / (1.0L - powl(q, k + 1)) *
            (q * static_cast<long double>(x) / ctx.a);
  }
  return static_cast<double>(sum);
}

double asc_polynomial(const QContext& ctx, int n, double x) {
  if (n < 0) throw std::invalid_argument("asc_polynomial: n must be nonnegative");
  // U_{m+1} = (x - (1+a) q^m) U_m + a q^{m-1} (1 - q^m) U_{m-1}.
  const double q = ctx.q, a = ctx.a;
  double prev = 0.0, cur = 1.0;
  for (int m = 0; m < n; ++m) {
    const double qm = std::pow(q, m);
    const double next = (x - (1.0 + a) * qm) * cur + a * (qm / q) * (1.0 - qm) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double sigma_q(const QContext& ctx, double x) { return (x - 1.0) * (x - ctx.a); }

double tau_q(const QContext& ctx, double x) { return (1.0 + ctx.a - x) / ctx.k_q; }

double weight_q(const QContext& ctx, double x) {
  return q_pochhammer(ctx.q * x, ctx.q) * q_pochhammer(ctx.q * x / ctx.a, ctx.q);
}

double squared_norm_q(const QContext& ctx, int n) {
  const double q = ctx.q, a = ctx.a;
  return std::pow(-a, n) * (1.0 - q) * q_pochhammer(q, q, n) * q_pochhammer(q, q) *
         q_pochhammer(a, q) * q_pochhammer(q / a, q) * std::pow(q, 0.5 * n * (n - 1));
}

double phi_q(const QContext& ctx, int n, double x) {
  return std::sqrt(weight_q(ctx, x)) * asc_polynomial(ctx, n, x) /
         std::sqrt(squared_norm_q(ctx, n));
}

GridFunction phi_q_branch(const QContext& ctx, int n, int branch) {
  std::vector<double> v(ctx.depth);
  for (int k = 0; k < ctx.depth; ++k) v[k] = phi_q(ctx, n, ctx.point(branch, k));
  return GridFunction(ctx.branch_grid(), std::move(v));
}

double jackson_weight(const QContext& ctx, int branch, int k) {
  const double w = (1.0 - ctx.q) * std::pow(ctx.q, k);
  return branch == 0 ? w : -ctx.a * w;
}

double jackson_inner_product(const QContext& ctx, const GridFunction& f_pos,
                             const GridFunction& f_neg, const GridFunction& g_pos,
                             const GridFunction& g_neg) {
  long double sum = 0.0L;
  for (int k = 0; k < ctx.depth; ++k) {
    sum += static_cast<long double>(jackson_weight(ctx, 0, k)) * f_pos[k] * g_pos[k];
    sum += static_cast<long double>(jackson_weight(ctx, 1, k)) * f_neg[k] * g_neg[k];
  }
  return static_cast<double>(sum);
}

double lambda_q(const QContext& ctx, int n) {
  const double q = ctx.q;
  return std::pow(q, 1.5) * (1.0 - std::pow(q, -n)) / ((1.0 - q) * (1.0 - q));
}

ShiftOperator hamiltonian_q(const QContext& ctx, int branch) {
  const double q = ctx.q, a = ctx.a;
  const double x0 = ctx.branch_x0(branch);
  const double d = (q - 1.0) * (q - 1.0);
  auto at = [x0, q](double s) { return x0 * std::pow(q, s); };
  auto sig = [a](double x) { return (x - 1.0) * (x - a); };
  auto op = ShiftOperator::term(-1.0, [=](double s) {
    const double x = at(s);
    return std::pow(q, 1.5) * std::sqrt(a * sig(x)) / (d * x * x);
  });
  op = add(op, ShiftOperator::term(1.0, [=](double s) {
             const double x = at(s);
             return std::sqrt(q) * std::sqrt(a * (1.0 - q * x) * (a - q * x)) / (d * x * x);
           }));
  op = add(op, ShiftOperator::term(0.0, [=](double s) {
             const double x = at(s);
             return std::sqrt(q) * (q * (x - 1.0) * x + a * (1.0 + q - q * x)) / (d * x * x);
           }));
  return op;
}

QLadderOps q_ladder_ops(const QContext& ctx, int branch) {
  const double q = ctx.q, a = ctx.a, k_q = ctx.k_q;
  const double x0 = ctx.branch_x0(branch);
  auto at = [x0, q](double s) { return x0 * std::pow(q, s); };
  auto sig = [a](double x) { return (x - 1.0) * (x - a); };
  auto prefactor = [k_q, q](double x) { return std::pow(q, 0.25) / (k_q * x); };
  QLadderOps out;
  out.down = add(ShiftOperator::term(1.0,
                                     [=](double s) {
                                       const double x = at(s);
                                       return prefactor(x) * std::sqrt(std::fabs(sig(q * x))) /
                                              std::sqrt(q);
                                     }),
                 ShiftOperator::term(0.0, [=](double s) {
                   return -prefactor(at(s)) * std::sqrt(std::fabs(a) / q);
                 }));
  out.up = add(ShiftOperator::term(-1.0,
                                   [=](double s) {
                                     const double x = at(s);
                                     return prefactor(x) * std::sqrt(std::fabs(sig(x))) /
                                            std::sqrt(q);
                                   }),
               ShiftOperator::term(0.0, [=](double s) {
                 return -prefactor(at(s)) * std::sqrt(std::fabs(a) / q);
               }));
  return out;
}

double q_eigen_residual(const QContext& ctx, int n) {
  const double lam = lambda_q(ctx, n);
  double worst = 0.0;
  for (int branch = 0; branch < 2; ++branch) {
    const GridFunction f = phi_q_branch(ctx, n, branch);
    const ScaledApply hf = apply_with_scale(hamiltonian_q(ctx, branch), f);
    const Grid& g = f.grid();
    for (int k = 0; k < g.measure_end(); ++k) {
      const double target = lam * f[k];
      const double scale = std::max({hf.scales[k], std::fabs(target), 1e-300});
      worst = std::max(worst, std::fabs(hf.values[k] - target) / scale);
    }
  }
  return worst;
}

double q_factorization_residual(const QContext& ctx, int n) {
  // a_up a_down = (i R_up)(i R_down) = -R_up R_down, applied in sequence so
  // the per-point scale reflects the sizes actually summed.
  double worst = 0.0;
  for (int branch = 0; branch < 2; ++branch) {
    const QLadderOps ops = q_ladder_ops(ctx, branch);
    const GridFunction f = phi_q_branch(ctx, n, branch);
    const ScaledApply df = apply_with_scale(ops.down, f);
    const ScaledApply lhs =
        apply_with_scale(ops.up, GridFunction(f.grid(), df.values), &df.scales);
    const ScaledApply rhs = apply_with_scale(hamiltonian_q(ctx, branch), f);
    const Grid& g = f.grid();
    for (int k = 0; k < g.measure_end(); ++k) {
      const double scale = std::max({lhs.scales[k], rhs.scales[k], 1e-300});
      worst = std::max(worst, std::fabs(-lhs.values[k] - rhs.values[k]) / scale);
    }
  }
  return worst;
}

double q_varsigma_commutator_residual(const QContext& ctx, int n) {
  // [a_down, a_up]_{1/q} = -[R_down, R_up]_{1/q} = (1/k_q) I.
  double worst = 0.0;
  for (int branch = 0; branch < 2; ++branch) {
    const QLadderOps ops = q_ladder_ops(ctx, branch);
    const GridFunction f = phi_q_branch(ctx, n, branch);
    const ScaledApply uf = apply_with_scale(ops.up, f);
    const ScaledApply df = apply_with_scale(ops.down, f);
    const ScaledApply du =
        apply_with_scale(ops.down, GridFunction(f.grid(), uf.values), &uf.scales);
    const ScaledApply ud =
        apply_with_scale(ops.up, GridFunction(f.grid(), df.values), &df.scales);
    const Grid& g = f.grid();
    for (int k = 0; k < g.measure_end(); ++k) {
      const double target = ctx.Lambda * f[k];
      const double value = -(du.values[k] - ctx.varsigma * ud.values[k]);
      const double scale = std::max(
          {du.scales[k], ctx.varsigma * ud.scales[k], std::fabs(target), 1e-300});
      worst = std::max(worst, std::fabs(value - target) / scale);
    }
  }
  return worst;
}

double q_adjoint_defect(const QContext& ctx, int n_max) {
  std::vector<std::array<GridFunction, 2>> basis;
  std::vector<std::array<GridFunction, 2>> down_img, up_img;
  for (int n = 0; n <= n_max; ++n) {
    std::array<GridFunction, 2> f{phi_q_branch(ctx, n, 0), phi_q_branch(ctx, n, 1)};
    std::array<GridFunction, 2> df{q_ladder_ops(ctx, 0).down.apply(f[0]),
                                   q_ladder_ops(ctx, 1).down.apply(f[1])};
    std::array<GridFunction, 2> uf{q_ladder_ops(ctx, 0).up.apply(f[0]),
                                   q_ladder_ops(ctx, 1).up.apply(f[1])};
    basis.push_back(std::move(f));
    down_img.push_back(std::move(df));
    up_img.push_back(std::move(uf));
  }
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n)
    for (int m = 0; m <= n_max; ++m) {
      const double lhs = jackson_inner_product(ctx, down_img[n][0], down_img[n][1],
                                               basis[m][0], basis[m][1]);
      const double rhs =
          jackson_inner_product(ctx, basis[n][0], basis[n][1], up_img[m][0], up_img[m][1]);
      worst = std::max(worst, std::fabs(lhs - rhs));
    }
  return worst;
}

double q_gram_deviation(const QContext& ctx, int n_max) {
  std::vector<std::array<GridFunction, 2>> basis;
  for (int n = 0; n <= n_max; ++n)
    basis.push_back({phi_q_branch(ctx, n, 0), phi_q_branch(ctx, n, 1)});
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n)
    for (int m = n; m <= n_max; ++m) {
      const double g =
          jackson_inner_product(ctx, basis[n][0], basis[n][1], basis[m][0], basis[m][1]);
      worst = std::max(worst, std::fabs(g - (n == m ? 1.0 : 0.0)));
    }
  return worst;
}

double q_pearson_constant_residual(const QContext& ctx) {
  double worst = 0.0;
  for (int branch = 0; branch < 2; ++branch)
    for (int k = 0; k < ctx.depth; ++k) {
      const double x = ctx.point(branch, k);
      const double value = sigma_q(ctx, x) + tau_q(ctx, x) * (x * ctx.k_q);
      worst = std::max(worst, std::fabs(value - ctx.a) / std::fabs(ctx.a));
    }
  return worst;
}

Theorem65Result theorem65_conditions(const QContext& ctx, double alpha, double varsigma,
                                     double Lambda) {
  Theorem65Result out;
  const double q = ctx.q, k_q = ctx.k_q;
  auto mirrored = [&](double x) { return sigma_q(ctx, x) + tau_q(ctx, x) * (x * k_q); };
  for (int branch = 0; branch < 2; ++branch)
    for (int k = 1; k < ctx.depth - 2; ++k) {
      const double x = ctx.point(branch, k);
      const double x_shift = x * std::pow(q, -alpha);  // x(s - alpha)
      const double nabla_x = x * (q - 1.0) / q;
      const double delta_x = x * (q - 1.0);
      const double nabla_x1 = x * k_q;
      const double nabla_x1_m1 = (x / q) * k_q;
      const double nabla_x1_shift = x_shift * k_q;
      const double nabla_x_shift = x_shift * (q - 1.0) / q;
      const double delta_x_shift = x_shift * (q - 1.0);
      const double denom = sigma_q(ctx, x) * mirrored(x / q);
      if (denom == 0.0) {
        ++out.skipped_points;
        continue;
      }
      const double ratio_rad = sigma_q(ctx, x_shift) * mirrored(x_shift) / denom;
      const double grid_rad = nabla_x1_m1 * nabla_x1 / (nabla_x_shift * delta_x_shift);
      if (ratio_rad < 0.0 || grid_rad < 0.0) {
        ++out.skipped_points;
        continue;
      }
      const double lhs1 =
          (nabla_x / nabla_x1_shift) * std::sqrt(grid_rad) * std::sqrt(ratio_rad);
      out.residual_varsigma = std::max(out.residual_varsigma, std::fabs(lhs1 - varsigma));
      // The second condition is a cancellation of terms growing like
      // q^{-2k}; its deviation is measured relative to their size.
      const double a1 = sigma_q(ctx, q * x_shift) / (q * x_shift * k_q) / delta_x_shift;
      const double a2 = mirrored(x_shift) / nabla_x1_shift / delta_x_shift;
      const double b1 = varsigma * sigma_q(ctx, x) / nabla_x / nabla_x1;
      const double b2 = varsigma * mirrored(x) / delta_x / nabla_x1;
      const double lhs2 = (a1 + a2) - (b1 + b2);
      const double scale = std::max({std::fabs(a1), std::fabs(a2), std::fabs(b1), std::fabs(b2),
                                     std::fabs(Lambda), 1e-300});
      out.residual_lambda = std::max(out.residual_lambda, std::fabs(lhs2 - Lambda) / scale);
    }
  return out;
}

Theorem65Result theorem65_conditions(const QContext& ctx, double alpha) {
  return theorem65_conditions(ctx, alpha, ctx.varsigma, ctx.Lambda);
}

}  // namespace latosc
