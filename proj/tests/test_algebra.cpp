#include <doctest.h>

#include <cmath>
#include <vector>

#include "latosc/algebra.hpp"

using namespace latosc;

TEST_CASE("half-shift pair reproduces h1 up to the constant") {
  // h1 = a a+ + (tau' - sigma'') I on phi_0..phi_10
  for (const auto& fam : {FamilySpec::meixner(3.0, 0.4), FamilySpec::kravchuk(0.3, 20),
                          FamilySpec::charlier(2.0)}) {
    const auto [a, a_plus] = half_shift_ops(fam);
    const ShiftOperator lhs = compose(a, a_plus);
    const ShiftOperator rhs =
        add(hamiltonian_h1(fam),
            ShiftOperator::constant(-(fam.tau_prime() - fam.sigma_dd())));
    const Grid grid = support_grid(fam, 1e-16, 14);
    const auto basis = phi_basis(fam, 10, grid);
    CHECK(operator_difference_residual(lhs, rhs, basis) < 1e-9);
  }
}

TEST_CASE("meixner b matches its displayed coefficients at s = 2") {
  const double g = 3.0, mu = 0.4;
  const auto fam = FamilySpec::meixner(g, mu);
  const AlgebraContext ctx = make_context(fam);
  const auto [a, a_plus] = half_shift_ops(fam);
  const ShiftOperator b = scale(a, ctx.C_a);
  const double s = 2.0;
  CHECK(b.coefficient(0.5, s) ==
        doctest::Approx(std::sqrt((s + 1.0) / (1.0 - mu))).epsilon(1e-14));
  CHECK(b.coefficient(-0.5, s) ==
        doctest::Approx(-std::sqrt((s - 1.0 + g) * mu / (1.0 - mu))).epsilon(1e-14));
  // and b+ from the general half-shift form
  const ShiftOperator b_plus = scale(a_plus, ctx.C_a);
  CHECK(b_plus.coefficient(-0.5, s) ==
        doctest::Approx(std::sqrt((s + 0.5) / (1.0 - mu))).epsilon(1e-14));
  CHECK(b_plus.coefficient(0.5, s) ==
        doctest::Approx(-std::sqrt((s - 0.5 + g) * mu / (1.0 - mu))).epsilon(1e-14));
}

TEST_CASE("kravchuk b matches its displayed coefficients") {
  const double p = 0.3;
  const int nn = 20;
  const auto fam = FamilySpec::kravchuk(p, nn);
  const AlgebraContext ctx = make_context(fam);
  const auto [a, a_plus] = half_shift_ops(fam);
  const ShiftOperator b = scale(a, ctx.C_a);
  for (double s : {1.0, 2.0, 5.0}) {
    CHECK(b.coefficient(0.5, s) ==
          doctest::Approx(std::sqrt((1.0 - p) * (s + 1.0))).epsilon(1e-14));
    CHECK(b.coefficient(-0.5, s) ==
          doctest::Approx(-std::sqrt(p * (nn - s + 1.0))).epsilon(1e-14));
  }
}

TEST_CASE("charlier commutator of the half-shift pair has the hand closed form") {
  // a a+ - a+ a = 1/2 I + sqrt(mu) [ (sqrt(s+1/2)-sqrt(s)) e^{-d}
  //                                + (sqrt(s+3/2)-sqrt(s+1)) e^{+d} ]
  const double mu = 2.0;
  const auto fam = FamilySpec::charlier(mu);
  const auto [a, a_plus] = half_shift_ops(fam);
  const ShiftOperator lhs = commutator(a, a_plus);
  ShiftOperator rhs = ShiftOperator::constant(0.5);
  rhs = add(rhs, ShiftOperator::term(-1.0, [mu](double s) {
              return std::sqrt(mu) * (std::sqrt(s + 0.5) - std::sqrt(s));
            }));
  rhs = add(rhs, ShiftOperator::term(1.0, [mu](double s) {
              return std::sqrt(mu) * (std::sqrt(s + 1.5) - std::sqrt(s + 1.0));
            }));
  const Grid grid = support_grid(fam, 1e-16, 12);
  const auto basis = phi_basis(fam, 8, grid);
  CHECK(operator_difference_residual(lhs, rhs, basis) < 1e-9);
}

TEST_CASE("context constants match the worked examples") {
  const AlgebraContext mei = make_context(FamilySpec::meixner(3.0, 0.4));
  CHECK(mei.tag == AlgebraTag::sp2r);
  CHECK(mei.C_a == doctest::Approx(std::sqrt(1.0 / 0.6)).epsilon(1e-12));
  CHECK(*mei.C_b == doctest::Approx(std::sqrt(0.6 / 0.4)).epsilon(1e-12));
  CHECK(*mei.E == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(std::fabs(std::fabs(mei.A0) - 2.0) < 1e-12);
  CHECK(std::fabs(mei.A1) < 1e-10);

  const AlgebraContext kra = make_context(FamilySpec::kravchuk(0.3, 20));
  CHECK(kra.tag == AlgebraTag::so3);
  CHECK(kra.C_a == doctest::Approx(std::sqrt(0.7)).epsilon(1e-12));
  CHECK(*kra.C_b == doctest::Approx(std::sqrt(1.0 / 0.3)).epsilon(1e-12));
  CHECK(*kra.E == doctest::Approx(-10.0).epsilon(1e-12));
  CHECK(std::fabs(std::fabs(kra.A0) - 2.0) < 1e-12);
  CHECK(std::fabs(kra.A1) < 1e-10);

  const AlgebraContext cha = make_context(FamilySpec::charlier(2.0));
  CHECK(cha.tag == AlgebraTag::oscillator);
  CHECK(cha.A0 == 0.0);
  CHECK_FALSE(cha.K0.has_value());
  REQUIRE(cha.Lambda.has_value());
  CHECK(*cha.Lambda == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(make_context(FamilySpec::hahn(1.0, 1.0, 12)), std::invalid_argument);
}

TEST_CASE("classification sweep over parameters") {
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      const double mu = 0.1 + 0.15 * i;
      const double g = 0.5 * j;
      CHECK(make_context(FamilySpec::meixner(g, mu)).tag == AlgebraTag::sp2r);
      const double p = 0.1 + 0.15 * j;
      CHECK(make_context(FamilySpec::kravchuk(p, 4 + 3 * i)).tag == AlgebraTag::so3);
    }
  for (double mu : {0.5, 1.0, 2.0, 3.0, 4.0})
    CHECK(make_context(FamilySpec::charlier(mu)).tag == AlgebraTag::oscillator);
}

TEST_CASE("h2 eigenvalues") {
  for (const auto& fam : {FamilySpec::meixner(3.0, 0.4), FamilySpec::kravchuk(0.3, 20)}) {
    const AlgebraContext ctx = make_context(fam, 1e-16, 14);
    for (int n = 0; n <= 10; ++n) {
      const GridFunction f = phi(fam, n, ctx.grid);
      const double expected = ctx.C_a * ctx.C_a * lambda_n(fam, n) + *ctx.E;
      CHECK(max_abs_diff(ctx.h2.apply(f), f.scaled(expected)) < 1e-8);
      const double simple = fam.kind() == FamilyKind::meixner ? n + 1.5 : n - 10.0;
      CHECK(expected == doctest::Approx(simple).epsilon(1e-12));
    }
  }
}

TEST_CASE("c operators: closed form equals the composed construction") {
  for (const auto& fam : {FamilySpec::meixner(3.0, 0.4), FamilySpec::kravchuk(0.3, 20)}) {
    const AlgebraContext ctx = make_context(fam);
    const auto [a, a_plus] = half_shift_ops(fam);
    // c = C_b b e^{-d/2} sqrt(sigma(s+1)), c+ = C_b sqrt(sigma(s+1)) e^{d/2} b+
    const ShiftOperator b = scale(a, ctx.C_a);
    const ShiftOperator b_plus = scale(a_plus, ctx.C_a);
    const ShiftOperator half_right = ShiftOperator::term(
        -0.5, [fam](double s) { return std::sqrt(fam.sigma(s + 0.5)); });
    const ShiftOperator half_left = ShiftOperator::term(
        0.5, [fam](double s) { return std::sqrt(fam.sigma(s + 1.5)); });
    const ShiftOperator c_composed = scale(compose(b, half_right), *ctx.C_b);
    const ShiftOperator c_plus_composed = scale(compose(half_left, b_plus), *ctx.C_b);
    for (double s : {1.0, 2.0, 5.0})
      for (double shift : {-1.0, 0.0, 1.0}) {
        CHECK(c_composed.coefficient(shift, s) ==
              doctest::Approx(ctx.c->coefficient(shift, s)).epsilon(1e-12).scale(1.0));
        CHECK(c_plus_composed.coefficient(shift, s) ==
              doctest::Approx(ctx.c_plus->coefficient(shift, s)).epsilon(1e-12).scale(1.0));
      }
  }
}

TEST_CASE("closed algebra and bracket relations") {
  for (const auto& fam : {FamilySpec::meixner(3.0, 0.4), FamilySpec::kravchuk(0.3, 20)}) {
    const AlgebraContext ctx = make_context(fam, 1e-16, 12);
    const auto basis = phi_basis(fam, 8, ctx.grid);
    CHECK(verify_closed_algebra(ctx, basis).max_residual() < 1e-8);
    CHECK(verify_k_relations(ctx, basis).max_residual() < 1e-8);
    // [c, c] is identically zero
    const GridFunction f = basis[3];
    const GridFunction z = commutator(*ctx.c, *ctx.c).apply(f);
    for (int i = 0; i < z.size(); ++i) CHECK(z[i] == 0.0);
  }
}

TEST_CASE("casimir eigenvalue and K0 spectrum") {
  const AlgebraContext mei = make_context(FamilySpec::meixner(3.0, 0.4), 1e-16, 12);
  const ShiftOperator k2_mei = casimir(mei);
  for (int n = 0; n <= 8; ++n) {
    const GridFunction f = phi(mei.family, n, mei.grid);
    CHECK(max_abs_diff(k2_mei.apply(f), f.scaled(0.75)) < 1e-8);
    CHECK(max_abs_diff(mei.K0->apply(f), f.scaled(n + 1.5)) < 1e-8);
  }
  const AlgebraContext kra = make_context(FamilySpec::kravchuk(0.3, 20), 1e-16, 12);
  const ShiftOperator k2_kra = casimir(kra);
  for (int n = 0; n <= 8; ++n) {
    const GridFunction f = phi(kra.family, n, kra.grid);
    CHECK(max_abs_diff(k2_kra.apply(f), f.scaled(110.0)) / 110.0 < 1e-7);
    CHECK(max_abs_diff(kra.K0->apply(f), f.scaled(n - 10.0)) < 1e-8);
  }
}

TEST_CASE("ladder coefficients follow the kappa rule") {
  const AlgebraContext mei = make_context(FamilySpec::meixner(3.0, 0.4), 1e-16, 14);
  for (int n = 0; n <= 10; ++n) {
    const LadderAction act = ladder_action(mei, n);
    CHECK(act.up_coeff ==
          doctest::Approx(std::sqrt((n + 1.0) * (n + 3.0))).epsilon(1e-10).scale(1.0));
    CHECK(act.up_residual < 1e-8);
    if (n > 0) {
      CHECK(act.down_coeff ==
            doctest::Approx(std::sqrt(n * (n + 2.0))).epsilon(1e-10).scale(1.0));
      CHECK(act.down_residual < 1e-8);
    } else {
      CHECK(act.down_residual < 1e-9);
    }
  }
  const AlgebraContext kra = make_context(FamilySpec::kravchuk(0.3, 20), 1e-16, 14);
  for (int n = 0; n <= 10; ++n) {
    const LadderAction act = ladder_action(kra, n);
    CHECK(act.up_coeff ==
          doctest::Approx(std::sqrt((n + 1.0) * (20.0 - n))).epsilon(1e-10).scale(1.0));
    CHECK(act.up_residual < 1e-8);
  }
  // measured coefficient vs rule, n = 2 hand values
  CHECK(ladder_action(mei, 2).up_coeff == doctest::Approx(std::sqrt(15.0)).epsilon(1e-8));
  CHECK(ladder_action(kra, 2).up_coeff == doctest::Approx(std::sqrt(54.0)).epsilon(1e-8));
}

TEST_CASE("kappa respects the so(3) domain") {
  const AlgebraContext kra = make_context(FamilySpec::kravchuk(0.4, 10), 1e-16, 12);
  CHECK(kappa(kra, 0) == 0.0);
  CHECK(kappa(kra, 11) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(kappa(kra, 12), std::domain_error);
}

TEST_CASE("so(3) hard boundary at n = N") {
  const AlgebraContext kra = make_context(FamilySpec::kravchuk(0.4, 10), 1e-16, 12);
  const GridFunction top = phi(kra.family, 10, kra.grid);
  const GridFunction raised = kra.K_plus->apply(top);
  double norm = 0.0;
  for (int i = 0; i < raised.size(); ++i) norm += raised[i] * raised[i];
  CHECK(std::sqrt(norm) < 1e-7);
}

TEST_CASE("adjointness of the K pair") {
  for (const auto& fam : {FamilySpec::meixner(3.0, 0.4), FamilySpec::kravchuk(0.3, 20)}) {
    const AlgebraContext ctx = make_context(fam, 1e-16, 14);
    const auto basis = phi_basis(fam, 10, ctx.grid);
    CHECK(adjoint_defect(*ctx.K_minus, *ctx.K_plus, basis) < 1e-8);
  }
}

TEST_CASE("cascade reconstruction via K_plus") {
  for (const auto& fam : {FamilySpec::meixner(3.0, 0.4), FamilySpec::kravchuk(0.3, 20)}) {
    const AlgebraContext ctx = make_context(fam, 1e-16, 12);
    CHECK(max_abs_diff(build_phi_via_kplus(ctx, 0), phi(fam, 0, ctx.grid)) == 0.0);
    for (int n = 1; n <= 8; ++n)
      CHECK(max_abs_diff(build_phi_via_kplus(ctx, n), phi(fam, n, ctx.grid)) < 1e-7);
  }
}

TEST_CASE("explicit generators agree with the composed construction") {
  for (const auto& fam : {FamilySpec::meixner(3.0, 0.4), FamilySpec::kravchuk(0.3, 20)}) {
    const AlgebraContext ctx = make_context(fam);
    const ExampleGenerators ex = explicit_example_operators(fam);
    for (double s : {1.0, 2.0, 5.0})
      for (double shift : {-1.0, 0.0, 1.0}) {
        CHECK(ex.K0.coefficient(shift, s) ==
              doctest::Approx(ctx.K0->coefficient(shift, s)).epsilon(1e-10).scale(1.0));
        CHECK(ex.K_plus.coefficient(shift, s) ==
              doctest::Approx(ctx.K_plus->coefficient(shift, s)).epsilon(1e-10).scale(1.0));
        CHECK(ex.K_minus.coefficient(shift, s) ==
              doctest::Approx(ctx.K_minus->coefficient(shift, s)).epsilon(1e-10).scale(1.0));
      }
  }
  // displayed magnitude of the Meixner K+ identity coefficient at s = 2
  const ExampleGenerators mei = explicit_example_operators(FamilySpec::meixner(3.0, 0.4));
  CHECK(std::fabs(mei.K_plus.coefficient(0.0, 2.0)) ==
        doctest::Approx(std::sqrt(0.4) / 0.6 * 7.0).epsilon(1e-12));
  // Kravchuk K0 identity coefficient: N(p-1/2) - s(2p-1)
  const ExampleGenerators kra = explicit_example_operators(FamilySpec::kravchuk(0.3, 20));
  CHECK(kra.K0.coefficient(0.0, 1.0) ==
        doctest::Approx(20.0 * (0.3 - 0.5) - 1.0 * (2.0 * 0.3 - 1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(explicit_example_operators(FamilySpec::charlier(1.0)), std::invalid_argument);
}
