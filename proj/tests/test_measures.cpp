#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "sineq/measures.hpp"
#include "sineq/oracles.hpp"

using namespace sineq;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<MeasureSpec> all_families() {
  return {MeasureSpec::nu_p(1.0),           MeasureSpec::nu_p(0.5),
          MeasureSpec::mu_p_alpha(0.5, 2.0), MeasureSpec::mu_p_alpha(1.0, 0.7),
          MeasureSpec::weibull(2.0),         MeasureSpec::weibull(0.5),
          MeasureSpec::gamma_sym(1.0),       MeasureSpec::gamma_sym(2.5)};
}

}  // namespace

TEST_CASE("construction validates parameters") {
  CHECK_THROWS_AS(MeasureSpec::nu_p(0.0), std::domain_error);
  CHECK_THROWS_AS(MeasureSpec::weibull(-1.0), std::domain_error);
  CHECK_THROWS_AS(MeasureSpec::mu_p_alpha(1.0, kInf), std::domain_error);
  CHECK_NOTHROW(MeasureSpec::gamma_sym(0.5));  // exploration only
}

TEST_CASE("support flags") {
  CHECK(MeasureSpec::nu_p(1.0).s_supported());
  CHECK(MeasureSpec::nu_p(0.25).s_supported());
  CHECK_FALSE(MeasureSpec::nu_p(1.5).s_supported());
  CHECK(MeasureSpec::mu_p_alpha(0.75, 4.0).s_supported());
  CHECK_FALSE(MeasureSpec::mu_p_alpha(1.25, 4.0).s_supported());
  CHECK(MeasureSpec::weibull(0.3).s_supported());
  CHECK(MeasureSpec::weibull(7.0).s_supported());
  CHECK(MeasureSpec::gamma_sym(1.0).s_supported());
  CHECK_FALSE(MeasureSpec::gamma_sym(0.5).s_supported());
}

TEST_CASE("density anchors") {
  CHECK(MeasureSpec::nu_p(1.0).density(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(MeasureSpec::weibull(1.0).density(2.0) ==
        doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-14));
  CHECK(MeasureSpec::gamma_sym(1.0).density(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  // Integrable singularities at the origin.
  CHECK(std::isinf(MeasureSpec::weibull(0.5).density(0.0)));
  CHECK(std::isinf(MeasureSpec::gamma_sym(0.5).density(0.0)));
  CHECK(std::isinf(MeasureSpec::mu_p_alpha(1.0, 0.5).density(0.0)));
  // Evenness.
  for (const auto& m : all_families()) {
    CHECK(m.density(1.3) == m.density(-1.3));
  }
}

TEST_CASE("densities are probability densities") {
  for (const auto& m : all_families()) {
    CHECK(std::fabs(integrate_density(m) - 1.0) <= 1e-10);
  }
  CHECK(std::fabs(integrate_density(MeasureSpec::gamma_sym(0.5)) - 1.0) <= 1e-10);
}

TEST_CASE("interval mass anchors") {
  for (const auto& m : all_families()) {
    CHECK(m.interval_mass(0.0) == 0.0);
    CHECK(m.interval_mass(kInf) == 1.0);
  }
  CHECK(MeasureSpec::nu_p(1.0).interval_mass(std::log(2.0)) ==
        doctest::Approx(0.5).epsilon(1e-13));
  CHECK(MeasureSpec::weibull(2.0).interval_mass(1.0) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-13));
}

TEST_CASE("interval mass inverse") {
  CHECK(MeasureSpec::gamma_sym(2.0).interval_mass_inv(0.0) == 0.0);
  CHECK(MeasureSpec::nu_p(1.0).interval_mass_inv(0.25) ==
        doctest::Approx(-std::log(0.75)).epsilon(1e-12));
  CHECK(MeasureSpec::weibull(2.0).interval_mass_inv(1.0 - std::exp(-1.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS((void)MeasureSpec::nu_p(1.0).interval_mass_inv(1.0), std::domain_error);
  CHECK_THROWS_AS((void)MeasureSpec::nu_p(1.0).interval_mass_inv(-0.1), std::domain_error);

  for (const auto& m : all_families()) {
    for (int i = 1; i <= 100; ++i) {
      const double mass = static_cast<double>(i) / 101.0;
      const double w = m.interval_mass_inv(mass);
      CHECK(std::fabs(m.interval_mass(w) - mass) <= 1e-10);
    }
  }
}

TEST_CASE("weibull and gamma reduce to mu_p_alpha") {
  const MeasureSpec w = MeasureSpec::weibull(2.0);
  const MeasureSpec w_mu = MeasureSpec::mu_p_alpha(1.0, 2.0);
  const MeasureSpec g = MeasureSpec::gamma_sym(2.5);
  const MeasureSpec g_mu = MeasureSpec::mu_p_alpha(1.0 / 2.5, 2.5);
  for (double x : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    CHECK(std::fabs(w.density(x) - w_mu.density(x)) <= 1e-12);
    CHECK(std::fabs(w.interval_mass(x) - w_mu.interval_mass(x)) <= 1e-12);
    CHECK(std::fabs(g.density(x) - g_mu.density(x)) <= 1e-12);
    CHECK(std::fabs(g.interval_mass(x) - g_mu.interval_mass(x)) <= 1e-12);
  }
  for (double r : {0.5, 1.0, 2.0, 4.0}) {
    CHECK(std::fabs(w.abs_moment(r) - w_mu.abs_moment(r)) <= 1e-12 * w.abs_moment(r));
    CHECK(std::fabs(g.abs_moment(r) - g_mu.abs_moment(r)) <= 1e-12 * g.abs_moment(r));
  }
}

TEST_CASE("absolute moments: anchors, quadrature, monotone ratio") {
  CHECK(MeasureSpec::nu_p(1.0).abs_moment(2.0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(MeasureSpec::weibull(1.0).abs_moment(1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(MeasureSpec::gamma_sym(2.0).abs_moment(1.0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK_THROWS_AS((void)MeasureSpec::nu_p(1.0).abs_moment(0.0), std::domain_error);
  CHECK_THROWS_AS((void)MeasureSpec::nu_p(0.25).abs_moment(500.0), std::overflow_error);

  for (const auto& m : all_families()) {
    for (double r : {0.5, 1.0, 2.0, 4.0}) {
      const double closed = m.abs_moment(r);
      const double quad = abs_moment_quadrature(m, r);
      CHECK(std::fabs(closed - quad) <= 1e-8 * closed);
    }
    double prev = 0.0;
    for (double r = 0.25; r <= 6.0; r += 0.25) {
      const double normalized = std::pow(m.abs_moment(r), 1.0 / r);
      CHECK(normalized >= prev - 1e-12);
      prev = normalized;
    }
  }
}

TEST_CASE("sampler matches moments and median coverage") {
  constexpr std::size_t kN = 1000000;

  const MeasureSpec nu1 = MeasureSpec::nu_p(1.0);
  const auto draws = nu1.sample(kN, 12345);
  double sum_abs = 0.0;
  const double w_half = nu1.interval_mass_inv(0.5);
  std::size_t covered = 0;
  for (double x : draws) {
    sum_abs += std::fabs(x);
    if (std::fabs(x) <= w_half) ++covered;
  }
  const double mean_abs = sum_abs / static_cast<double>(kN);
  // Var|X| = 1 for the exponential magnitude, so 4 sigma = 4e-3.
  CHECK(std::fabs(mean_abs - 1.0) <= 4e-3);
  const double coverage = static_cast<double>(covered) / static_cast<double>(kN);
  CHECK(std::fabs(coverage - 0.5) <= 4.0 * std::sqrt(0.25 / static_cast<double>(kN)));

  const MeasureSpec w2 = MeasureSpec::weibull(2.0);
  const auto draws2 = w2.sample(kN, 777);
  double sum_sq = 0.0;
  for (double x : draws2) sum_sq += x * x;
  const double second = sum_sq / static_cast<double>(kN);
  // Var(X^2) = Gamma(3) - Gamma(2)^2 = 1, so 4 sigma = 4e-3.
  CHECK(std::fabs(second - 1.0) <= 4e-3);

  // Signs are symmetric and independent of the magnitude stream.
  std::size_t negatives = 0;
  for (double x : draws2) {
    if (x < 0.0) ++negatives;
  }
  CHECK(std::fabs(static_cast<double>(negatives) / static_cast<double>(kN) - 0.5) <=
        4.0 * std::sqrt(0.25 / static_cast<double>(kN)));
}

TEST_CASE("sampling is deterministic per seed") {
  const MeasureSpec m = MeasureSpec::gamma_sym(2.5);
  const auto a = m.sample(64, 99);
  const auto b = m.sample(64, 99);
  const auto c = m.sample(64, 100);
  CHECK(a == b);
  CHECK(a != c);
  CHECK_THROWS_AS((void)m.sample(0, 1), std::domain_error);
}
