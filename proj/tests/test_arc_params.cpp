#include <doctest.h>

#include <cmath>
#include <random>

#include "smoothweyl/arc_params.hpp"
#include "smoothweyl/table1.hpp"

using namespace smoothweyl;

TEST_CASE("constants") {
  const double phi = phi_constant(kLemma32D);
  CHECK(phi == doctest::Approx(8.021123334604845).epsilon(1e-15));
  CHECK(std::abs(phi - 8.0211233) <= 1e-7);
  // The published constant is phi rounded up in the fifth decimal.
  CHECK(std::ceil(phi * 1e5) / 1e5 == doctest::Approx(kRhoConstant).epsilon(1e-15));

  CHECK(tau_lemma32(6) == doctest::Approx(0.018461286070196101).epsilon(1e-15));
  CHECK(tau_lemma32(20) == doctest::Approx(0.0055383858210588304).epsilon(1e-15));
  CHECK(rho_of(6) == doctest::Approx(0.016984463871656932).epsilon(1e-15));
  CHECK(rho_of(20) == doctest::Approx(0.004538497328774377).epsilon(1e-15));
  CHECK_THROWS_AS(rho_of(5), std::invalid_argument);
  CHECK_THROWS_AS(phi_constant(0.0), std::invalid_argument);
}

TEST_CASE("stationary point of the root objective") {
  const auto p6 = theorem21_stationary_point(6, tau_lemma32(6));
  CHECK(p6.t == doctest::Approx(25.337835733567958).epsilon(1e-13));
  const auto p20 = theorem21_stationary_point(20, tau_lemma32(20));
  CHECK(p20.t == doctest::Approx(109.6113118293138).epsilon(1e-13));

  // F(t) = t + (1 + k delta_t)/(2 tau) is smallest at t*.
  for (int k : {6, 10, 15}) {
    const double tau = 0.02;
    const auto p = theorem21_stationary_point(k, tau);
    auto F = [&](double t) { return t + (1.0 + k * solve_delta(k, t).delta) / (2.0 * tau); };
    CHECK(F(p.t) <= F(p.t - 0.01));
    CHECK(F(p.t) <= F(p.t + 0.01));
    CHECK(F(p.t) == doctest::Approx(p.objective).epsilon(1e-12));
  }
  CHECK_THROWS_AS(theorem21_stationary_point(6, 0.6), std::invalid_argument);
}

TEST_CASE("optimiser matches the closed form for the analytic bound") {
  const double phi = phi_constant(kLemma32D);
  for (int k = 6; k <= 20; ++k) {
    const ExponentProvider provider(k, Provenance::AnalyticBound);
    const auto [lo, hi] = default_sigma_range(k);
    const auto s = sigma_optimize(k, tau_lemma32(k), provider, lo, hi);
    const double logk = std::log(static_cast<double>(k));
    CHECK(std::abs(s.objective - (k * logk + k * phi)) <= 1e-6);
    CHECK(std::abs(s.witness_t - (k * logk + k * (1.0 + std::log(kLemma32D)))) <= 1e-4);
    CHECK(s.bracket == BracketVerdict::Interior);
    CHECK(s.sigma == doctest::Approx(1.0 / s.objective));
  }
  const ExponentProvider p6(6, Provenance::AnalyticBound);
  const auto [lo, hi] = default_sigma_range(6);
  CHECK(sigma_optimize(6, tau_lemma32(6), p6, lo, hi).objective ==
        doctest::Approx(58.8772968229974).epsilon(1e-12));
}

TEST_CASE("optimiser input validation") {
  const ExponentProvider p(6, Provenance::Theorem21);
  CHECK_THROWS_AS(sigma_optimize(6, 0.0, p, 8.0, 20.0), std::invalid_argument);
  CHECK_THROWS_AS(sigma_optimize(6, 0.02, p, 6.5, 20.0), std::invalid_argument);
  CHECK_THROWS_AS(sigma_optimize(6, 0.02, p, 20.0, 10.0), std::invalid_argument);
  ExponentTable table(6);
  table.add(30.0, 0.1);
  table.add(40.0, 0.05);
  const ExponentProvider tab(6, Provenance::TableData, table);
  CHECK_THROWS_AS(sigma_optimize(6, 0.02, tab, 8.0, 20.0), std::invalid_argument);
}

TEST_CASE("table parameters reproduce T and S") {
  for (const auto& row : load_table1()) {
    const ExponentProvider provider(row.k, Provenance::TableData, row_exponent_table(row));
    const auto tau = tau_from_exponents(row.k, provider, default_w_max(row.k));
    CHECK(tau.witness_w * 2 == row.two_w);
    const double T = 1.0 / tau.tau;
    CHECK(T <= row.T.value() + 1e-12);
    CHECK(row.T.value() - T < 1e-4);

    const auto p = minor_arc_params(row.k, provider);
    CHECK(p.sigma_witness_t == doctest::Approx(row.t));
    CHECK(1.0 / p.sigma <= row.S.value() + 1e-9);
    CHECK(p.sigma >= 1.0 / row.S.value() - 1e-12);
    CHECK(p.provenance == Provenance::TableData);
    const auto lam = lambda_of(p.sigma, p.tau);
    CHECK(lam.valid);
  }
}

TEST_CASE("tau from exponents") {
  const ExponentProvider th(6, Provenance::Theorem21);
  const auto t = tau_from_exponents(6, th, default_w_max(6));
  CHECK(t.tau > 0.0);
  for (int w = 2; w <= 30; ++w) {
    CHECK((6 - 2 * *th(2.0 * w)) / (4.0 * w * w) <= t.tau);
  }
  ExponentTable bad(6);
  bad.add(4.0, 5.0);
  bad.add(6.0, 4.0);
  const ExponentProvider none(6, Provenance::TableData, bad);
  CHECK_THROWS_AS(tau_from_exponents(6, none, 30), std::domain_error);
  CHECK_THROWS_AS(tau_from_exponents(6, th, 0), std::invalid_argument);
}

TEST_CASE("lambda") {
  const auto l = lambda_of(0.02, 0.025);
  CHECK(l.lambda == doctest::Approx(0.6));
  CHECK(l.valid);
  CHECK_FALSE(lambda_of(0.04, 0.025).valid);
  CHECK_THROWS_AS(lambda_of(0.0, 0.02), std::invalid_argument);
}

TEST_CASE("bound evaluation") {
  // Direct evaluation is safe at these sizes.
  const int k = 6;
  const double P = 1e4, M = 100.0, q = 50.0, t = 22.0, d = 0.086042;
  const auto b = lemma31_bound(k, P, M, q, t, d);
  const double direct =
      M + P * std::pow((1.0 / M) * std::pow(P / M, d) * (1.0 + q * std::pow(P / M, -k)), 1.0 / t);
  CHECK(b.value == doctest::Approx(direct).epsilon(1e-12));
  CHECK(b.m_term == doctest::Approx(M));
  CHECK(b.dominant_term == BoundTerm::MainTerm);

  const auto huge = lemma31_bound(k, 1e300, 1e200, 1e150, t, d);
  CHECK(std::isfinite(huge.log_value));

  const auto m_dominant = lemma31_bound(k, 1e4, 9e3, 1.0, 8.0, 0.0);
  CHECK(m_dominant.dominant_term == BoundTerm::MTerm);

  CHECK_THROWS_AS(lemma31_bound(k, 10.0, 20.0, 1.0, t, d), std::invalid_argument);
  CHECK_THROWS_AS(lemma31_bound(k, 100.0, 10.0, 0.5, t, d), std::invalid_argument);
  CHECK_THROWS_AS(lemma31_bound(k, 100.0, 10.0, 1.0, 6.5, d), std::invalid_argument);
}

TEST_CASE("sigma verdicts with published parameters") {
  for (int k = 6; k <= 20; ++k) {
    const auto p = table1_params(k);
    const auto v = check_section5(k, p.sigma, p.tau, p.lambda);
    CHECK(v.pass());
    CHECK(std::abs(v.lhs - v.middle) <= 1e-12);
    CHECK(v.nu == doctest::Approx((p.sigma - rho_of(k)) / 2));
  }
}

TEST_CASE("sigma identity on random parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const int k = 6 + static_cast<int>(unit(rng) * 15);
    const double tau = 0.001 + 0.05 * unit(rng);
    const double sigma = tau * (0.01 + 0.9 * unit(rng));
    const double lambda = 1.0 - sigma / (2.0 * tau);
    const auto v = check_section5(k, sigma, tau, lambda);
    CHECK(std::abs(v.lhs - v.middle) <= 1e-12 * std::max(1.0, std::abs(v.middle)));
    CHECK(v.first_holds);
  }
}

TEST_CASE("crossover against k(k-1)") {
  for (int k = 6; k <= 9; ++k) CHECK_FALSE(vinogradov_crossover(k).smooth_bound_wins);
  for (int k = 10; k <= 20; ++k) CHECK(vinogradov_crossover(k).smooth_bound_wins);
  CHECK(vinogradov_crossover(10).vinogradov == 90);
  CHECK_THROWS_AS(vinogradov_crossover(21), std::out_of_range);
}

TEST_CASE("table exponent beats the fractional-part exponent") {
  for (int k = 6; k <= 20; ++k) CHECK(table1_row(k).S.value() < 1.0 / rho_of(k));
}
