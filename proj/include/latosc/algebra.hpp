#ifndef LATOSC_ALGEBRA_HPP
#define LATOSC_ALGEBRA_HPP

#include <optional>
#include <span>
#include <string>

#include "latosc/factorize.hpp"
#include "latosc/families.hpp"
#include "latosc/gridops.hpp"

namespace latosc {

enum class AlgebraTag { oscillator, sp2r, so3 };

std::string to_string(AlgebraTag tag);

// Half-shift pair a, a+ with a a+ = h1 - (tau' - sigma'') I.
std::pair<ShiftOperator, ShiftOperator> half_shift_ops(const FamilySpec& family);

// Dynamical-algebra data for a sigma''=0 family. For the oscillator case
// (A0 = 0) the K generators do not exist and the optional fields are empty.
struct AlgebraContext {
  explicit AlgebraContext(FamilySpec f) : family(std::move(f)) {}

  FamilySpec family;
  AlgebraTag tag = AlgebraTag::oscillator;
  double C_a = 0.0;
  std::optional<double> C_b;
  std::optional<double> E;
  double A0 = 0.0;
  double A1 = 0.0;
  std::optional<double> Lambda;  // Theorem 4.1 constant, oscillator case only
  ShiftOperator h1, h2;
  std::optional<ShiftOperator> c, c_plus;
  std::optional<ShiftOperator> K0, K_plus, K_minus;
  Grid grid;
};

AlgebraContext make_context(const FamilySpec& family, double tail_tol = 1e-16, int n_max = 20);

// kappa_n of the ladder rule: sqrt(n(n+2E-1)) for Sp(2,R),
// sqrt(-n(n+2E-1)) for so(3).
double kappa(const AlgebraContext& ctx, int n);

struct ClosedAlgebraCheck {
  double h2_c_residual = 0.0;       // [h2,c] relation
  double h2_c_plus_residual = 0.0;  // its c+ counterpart
  double c_c_plus_residual = 0.0;   // [c,c+] relation
  double max_residual() const;
};

ClosedAlgebraCheck verify_closed_algebra(const AlgebraContext& ctx,
                                         std::span<const GridFunction> basis);

struct KRelationsCheck {
  double k0_kplus_residual = 0.0;   // [K0,K+] = +K+
  double k0_kminus_residual = 0.0;  // [K0,K-] = -K-
  double kpm_residual = 0.0;        // [K-,K+] = 2K0 (Sp2R) or [K+,K-] = 2K0 (so3)
  double max_residual() const;
};

KRelationsCheck verify_k_relations(const AlgebraContext& ctx,
                                   std::span<const GridFunction> basis);

// K0^2 - K0 - K+K- (Sp2R) or K0^2 + K0 + K-K+ (so3); acts as E(E-1) I.
ShiftOperator casimir(const AlgebraContext& ctx);

struct LadderAction {
  double up_coeff = 0.0;       // <K+ Phi_n, Phi_{n+1}>
  double down_coeff = 0.0;     // <K- Phi_n, Phi_{n-1}> (0 for n = 0)
  double up_residual = 0.0;    // ||K+ Phi_n - kappa_{n+1} Phi_{n+1}||_inf
  double down_residual = 0.0;  // ||K- Phi_n - kappa_n Phi_{n-1}||_inf
};

LadderAction ladder_action(const AlgebraContext& ctx, int n);

// (1/(kappa_1...kappa_n)) K+^n Phi_0.
GridFunction build_phi_via_kplus(const AlgebraContext& ctx, int n);

// Hand-written closed forms of the generators for the two worked examples;
// make_context's composed construction must agree coefficient-wise.
struct ExampleGenerators {
  ShiftOperator K0, K_plus, K_minus;
};

ExampleGenerators explicit_example_operators(const FamilySpec& family);

}  // namespace latosc

#endif  // LATOSC_ALGEBRA_HPP
