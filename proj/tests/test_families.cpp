#include <doctest.h>

#include <cmath>
#include <vector>

#include "latosc/families.hpp"
#include "latosc/factorize.hpp"

using namespace latosc;

namespace {

// Brute-force oracle for d_n^2: the plain orthogonality sum over the
// (truncated) support, independent of the closed-form path.
double norm_by_summation(const FamilySpec& f, int n) {
  const int end = f.finite_support() ? *f.support_end() : truncation_bound(f, 1e-18, n + 1);
  long double sum = 0.0L;
  for (int s = 0; s < end; ++s) {
    const long double p = eval_monic(f, n, s);
    sum += p * p * static_cast<long double>(weight(f, s));
  }
  return static_cast<double>(sum);
}

double cross_by_summation(const FamilySpec& f, int n, int m) {
  const int end =
      f.finite_support() ? *f.support_end() : truncation_bound(f, 1e-18, std::max(n, m) + 1);
  long double sum = 0.0L;
  for (int s = 0; s < end; ++s)
    sum += static_cast<long double>(eval_monic(f, n, s)) * eval_monic(f, m, s) * weight(f, s);
  return static_cast<double>(sum);
}

std::vector<FamilySpec> test_families() {
  return {FamilySpec::charlier(2.0),      FamilySpec::meixner(3.0, 0.4),
          FamilySpec::kravchuk(0.3, 20),  FamilySpec::hahn(1.0, 1.0, 20),
          FamilySpec::hahn(0.5, -0.3, 12), FamilySpec::meixner(1.5, 0.7),
          FamilySpec::kravchuk(0.5, 4),   FamilySpec::charlier(1.0)};
}

}  // namespace

TEST_CASE("pochhammer basics") {
  CHECK(pochhammer(3.7, 0) == 1.0);
  CHECK(pochhammer(1.0, 4) == 24.0);
  CHECK(pochhammer(-2.0, 3) == 0.0);
  CHECK(pochhammer(0.5, 2) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("terminating hypergeometric sums") {
  // leading numerator parameter 0 truncates at k = 0
  CHECK(hypergeometric({{0.0, -7.0}, {}, 2.5, 7}) == 1.0);
  // 2F0(-1,-5;;-1/2) = 1 - 5/2
  CHECK(hypergeometric({{-1.0, -5.0}, {}, -0.5, 1}) == doctest::Approx(-1.5).epsilon(1e-15));
  // 2F1(-1,-3;-4;2) = 1 - 3/(4*0.5)
  CHECK(hypergeometric({{-1.0, -3.0}, {-4.0}, 2.0, 1}) == doctest::Approx(-0.5).epsilon(1e-15));
  // denominator Pochhammer vanishing before termination is an error
  CHECK_THROWS_AS(hypergeometric({{-5.0, 2.0}, {-2.0}, 1.0, 5}), std::domain_error);
}

TEST_CASE("monic degree-one values") {
  CHECK(eval_monic(FamilySpec::charlier(2.0), 0, 11.0) == 1.0);
  CHECK(eval_monic(FamilySpec::charlier(2.0), 1, 5.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(eval_monic(FamilySpec::kravchuk(0.5, 4), 1, 3.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eval_monic(FamilySpec::meixner(2.0, 0.5), 1, 3.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("monic leading behavior at large argument") {
  const double x = 1e6;
  for (const auto& f : test_families()) {
    const int n_hi = std::min(12, f.max_degree());
    for (int n = 1; n <= n_hi; ++n) {
      const double ratio = eval_monic(f, n, x) / std::pow(x, n);
      CHECK(ratio == doctest::Approx(1.0).epsilon(1e-4));
    }
  }
}

TEST_CASE("lambda_n closed form vs -n(tau' + (n-1) sigma''/2)") {
  for (const auto& f : test_families()) {
    for (int n = 0; n <= std::min(12, f.max_degree()); ++n) {
      const double direct = -n * (f.tau_prime() + 0.5 * (n - 1) * f.sigma_dd());
      CHECK(lambda_n(f, n) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
  CHECK(lambda_n(FamilySpec::charlier(1.0), 7) == 7.0);
  CHECK(lambda_n(FamilySpec::meixner(2.0, 0.4), 3) == doctest::Approx(1.8).epsilon(1e-15));
  CHECK(lambda_n(FamilySpec::hahn(1e-12, 1e-12, 10), 2) == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("weights") {
  CHECK(weight(FamilySpec::charlier(1.0), 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(weight(FamilySpec::meixner(3.0, 0.4), 0) == doctest::Approx(1.0).epsilon(1e-14));
  // binomial weights sum to one
  const auto kr = FamilySpec::kravchuk(0.3, 9);
  long double sum = 0.0L;
  for (int s = 0; s <= 9; ++s) sum += weight(kr, s);
  CHECK(static_cast<double>(sum) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(weight(kr, 11.0), std::domain_error);
  // lgamma path against the closed-form ratio
  for (const auto& f : test_families()) {
    const int end = f.finite_support() ? *f.support_end() - 1 : 40;
    for (int s = 0; s + 1 < end; ++s)
      CHECK(weight(f, s + 1) / weight(f, s) ==
            doctest::Approx(weight_ratio(f, s)).epsilon(1e-10));
  }
}

TEST_CASE("squared norms against brute-force orthogonality sums") {
  CHECK(squared_norm(FamilySpec::charlier(1.0), 2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(squared_norm(FamilySpec::kravchuk(0.5, 4), 1) == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& f : test_families())
    for (int n = 0; n <= std::min(8, f.max_degree()); ++n)
      CHECK(squared_norm(f, n) == doctest::Approx(norm_by_summation(f, n)).epsilon(1e-10));
}

TEST_CASE("orthogonality of distinct degrees") {
  for (const auto& f : test_families()) {
    const int n_hi = std::min(12, f.max_degree());
    for (int n = 0; n <= n_hi; ++n)
      for (int m = n + 1; m <= n_hi; ++m) {
        const double bound =
            1e-9 * std::sqrt(squared_norm(f, n)) * std::sqrt(squared_norm(f, m));
        CHECK(std::fabs(cross_by_summation(f, n, m)) <= bound);
      }
  }
}

TEST_CASE("pearson relation") {
  CHECK(pearson_relative_residual(FamilySpec::charlier(2.0), 3) <= 1e-12);
  CHECK(pearson_relative_residual(FamilySpec::kravchuk(0.3, 6), 0) <= 1e-12);
  CHECK(pearson_relative_residual(FamilySpec::hahn(1.0, 1.0, 8), 4) <= 1e-12);
  for (const auto& f : test_families()) {
    const int end = f.finite_support() ? *f.support_end() - 1 : 60;
    for (int s = 0; s < end; ++s) CHECK(pearson_relative_residual(f, s) <= 1e-12);
  }
}

TEST_CASE("difference equation is the evaluation oracle") {
  for (const auto& f : test_families())
    for (int n = 0; n <= std::min(10, f.max_degree()); ++n)
      for (int x = 0; x <= 10; ++x)
        CHECK(std::fabs(difference_equation_residual(f, n, x)) <= 1e-9);
  // n = 0: every term vanishes
  CHECK(difference_equation_residual(FamilySpec::charlier(2.0), 0, 4.0) == 0.0);
  // hand expansion at mu=2, n=1, x=5 (C_1 = x - 2)
  const auto ch = FamilySpec::charlier(2.0);
  const double t = ch.sigma(5.0) * (4.0 - 2.0 * 3.0 + 2.0) + ch.tau(5.0) * (4.0 - 3.0) +
                   lambda_n(ch, 1) * 3.0;
  CHECK(t == doctest::Approx(0.0));
}

TEST_CASE("truncation bound covers the weighted tail") {
  for (const auto& f : {FamilySpec::charlier(1.0), FamilySpec::meixner(3.0, 0.4)}) {
    const int n_max = 20;
    const int s0 = truncation_bound(f, 1e-16, n_max);
    long double tail = 0.0L;
    for (int s = s0; s < s0 + 400; ++s)
      tail += static_cast<long double>(weight(f, s)) * powl(1.0L + s, 2 * n_max);
    CHECK(static_cast<double>(tail) < 1e-16);
  }
  CHECK(truncation_bound(FamilySpec::kravchuk(0.2, 17), 1e-16, 20) == 18);
}

TEST_CASE("parameter admissibility") {
  CHECK_THROWS_AS(FamilySpec::charlier(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(FamilySpec::meixner(0.0, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(FamilySpec::meixner(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(FamilySpec::kravchuk(1.2, 5), std::invalid_argument);
  CHECK_THROWS_AS(FamilySpec::hahn(-1.0, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(eval_monic(FamilySpec::hahn(1.0, 1.0, 6), 6, 1.0), std::invalid_argument);
  // Kravchuk admits n = N (the so(3) top rung)
  CHECK_NOTHROW(eval_monic(FamilySpec::kravchuk(0.3, 6), 6, 1.0));
}

TEST_CASE("family boundary structure") {
  for (const auto& f : test_families()) {
    CHECK(f.tau_prime() != 0.0);
    CHECK(f.sigma(0.0) == 0.0);
    if (f.finite_support()) CHECK(std::fabs(f.sigma_plus_tau(*f.support_end() - 1.0)) < 1e-12);
    if (f.kind() == FamilyKind::hahn)
      CHECK(f.sigma_dd() == -2.0);
    else
      CHECK(f.sigma_dd() == 0.0);
  }
}

TEST_CASE("family string parsing") {
  const FamilySpec f = parse_family("kravchuk:p=0.3,N=30");
  CHECK(f.kind() == FamilyKind::kravchuk);
  CHECK(f.p() == 0.3);
  CHECK(f.big_n() == 30);
  CHECK(parse_family("charlier:mu=2").mu() == 2.0);
  CHECK(parse_family("hahn:alpha=1,beta=1,N=20").big_n() == 20);
  CHECK(parse_family("meixner:gamma=3,mu=0.4").gamma() == 3.0);
  CHECK_THROWS_AS(parse_family("legendre:a=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("charlier"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("charlier:mu"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("meixner:gamma=3"), std::invalid_argument);
}
