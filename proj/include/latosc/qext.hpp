#ifndef LATOSC_QEXT_HPP
#define LATOSC_QEXT_HPP

#include <array>
#include <string>
#include <vector>

#include "latosc/gridops.hpp"

namespace latosc {

// Al-Salam & Carlitz I data on the q-linear lattice x(s) = q^s. The lattice
// has two branches, x = q^k and x = a q^k, k = 0..depth-1, both accumulating
// at 0. In the working frame the normalized functions are real and the
// natural inner product is the plain Jackson integral over [a, 1].
struct QContext {
  double q = 0.5;
  double a = -1.0;
  double k_q = 0.0;      // q^{1/2} - q^{-1/2} (< 0)
  double varsigma = 0.0; // q^{-1}
  double Lambda = 0.0;   // 1/k_q
  int depth = 0;         // points per branch

  double branch_x0(int branch) const { return branch == 0 ? 1.0 : a; }
  double point(int branch, int k) const;
  Grid branch_grid() const { return Grid{0.0, depth, 2, true}; }
};

// depth chosen so the discarded q-geometric tail is below tail_tol.
QContext make_qcontext(double q, double a, double tail_tol = 1e-12);

// Parses "alsalam-carlitz-1:q=...,a=...".
QContext parse_qfamily(const std::string& text);

// (z; q)_n = prod_{k<n} (1 - z q^k); n < 0 means the infinite product,
// truncated once the running factor is within 1e-17 of 1.
double q_pochhammer(double z, double q, int n = -1);

// Terminating 2phi1(q^{-n}, 1/x; 0 | q; qx/a) (the polynomial factor's
// hypergeometric form; used as the cross-check oracle).
double q_hypergeometric_2phi1(const QContext& ctx, int n, double x);

// Monic Al-Salam & Carlitz I polynomial via its three-term recurrence
// (accurate down to the accumulation point, unlike the direct sum).
double asc_polynomial(const QContext& ctx, int n, double x);

// sigma(x) = (x-1)(x-a); tau(x) = (1+a-x)/k_q; sigma + tau * nabla x1 == a.
double sigma_q(const QContext& ctx, double x);
double tau_q(const QContext& ctx, double x);

// Orthogonality weight (qx; q)_inf (qx/a; q)_inf, positive on the lattice.
double weight_q(const QContext& ctx, double x);

// d_n^2 = (-a)^n (1-q) (q;q)_n (q, a, q/a; q)_inf q^{n(n-1)/2}.
double squared_norm_q(const QContext& ctx, int n);

// Phi_n(x) = sqrt(weight) * P_n / d_n (the A(s) factor of the displayed
// normalized functions pairs against the measure and is left out).
double phi_q(const QContext& ctx, int n, double x);
GridFunction phi_q_branch(const QContext& ctx, int n, int branch);

// Jackson weight of lattice point (branch, k) for the plain q-integral
// int_a^1 f d_q x.
double jackson_weight(const QContext& ctx, int branch, int k);

// int_a^1 f g d_q x over the truncated lattice.
double jackson_inner_product(const QContext& ctx, const GridFunction& f_pos,
                             const GridFunction& f_neg, const GridFunction& g_pos,
                             const GridFunction& g_neg);

// Eigenvalue of the q-Hamiltonian: q^{3/2} (1 - q^{-n}) / (1-q)^2.
double lambda_q(const QContext& ctx, int n);

// The q-Hamiltonian on one branch, acting in s (shifts move x -> q^{+-1} x).
ShiftOperator hamiltonian_q(const QContext& ctx, int branch);

// Real parts of the lowering/raising pair: the operators themselves carry a
// common imaginary unit (a_down = i R_down, a_up = i R_up), so any product
// of two of them acquires a factor -1.
struct QLadderOps {
  ShiftOperator down;
  ShiftOperator up;
};
QLadderOps q_ladder_ops(const QContext& ctx, int branch);

// Residuals measured relative to the largest contributing term per lattice
// point (the three-term coefficients grow like q^{-2k} with depth).
double q_eigen_residual(const QContext& ctx, int n);
double q_factorization_residual(const QContext& ctx, int n);
double q_varsigma_commutator_residual(const QContext& ctx, int n);

// max over basis pairs of |<R_down f, g> - <f, R_up g>| under the Jackson
// inner product.
double q_adjoint_defect(const QContext& ctx, int n_max);

// Entrywise deviation of the Jackson Gram matrix of Phi_0..Phi_{n_max} from
// the identity.
double q_gram_deviation(const QContext& ctx, int n_max);

// max |sigma + tau * nabla x1 - a| / |a| over the lattice.
double q_pearson_constant_residual(const QContext& ctx);

struct Theorem65Result {
  double residual_varsigma = 0.0;
  double residual_lambda = 0.0;
  int skipped_points = 0;
};

// Deviations of the two closure conditions from varsigma and Lambda at a
// given alpha (the mirrored sigma argument is identified with
// sigma + tau * nabla x1 evaluated at the shifted point).
Theorem65Result theorem65_conditions(const QContext& ctx, double alpha, double varsigma,
                                     double Lambda);
Theorem65Result theorem65_conditions(const QContext& ctx, double alpha);

}  // namespace latosc

#endif  // LATOSC_QEXT_HPP
