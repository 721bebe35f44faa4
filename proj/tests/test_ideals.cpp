#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "sineq/generators.hpp"
#include "sineq/ideals.hpp"
#include "sineq/oracles.hpp"
#include "sineq/rng.hpp"

using namespace sineq;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<MeasureSpec> family_reps() {
  return {MeasureSpec::nu_p(0.5), MeasureSpec::mu_p_alpha(0.5, 2.0),
          MeasureSpec::weibull(2.0), MeasureSpec::gamma_sym(2.0)};
}

}  // namespace

TEST_CASE("step ideal validation") {
  CHECK_THROWS_AS(StepIdeal2D({1.0, 1.0}, {2.0, 1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(StepIdeal2D({2.0, 1.0}, {2.0, 1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(StepIdeal2D({-1.0}, {2.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(StepIdeal2D({1.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(StepIdeal2D({1.0}, {1.0}), std::invalid_argument);
  CHECK_NOTHROW(StepIdeal2D({1.0, 2.0}, {kInf, 1.0, 1.0}));
}

TEST_CASE("boundary lookup is right-continuous") {
  const StepIdeal2D k({1.0, 2.0}, {3.0, 2.0, 0.5});
  CHECK(k.boundary_at(0.0) == 3.0);
  CHECK(k.boundary_at(0.999) == 3.0);
  CHECK(k.boundary_at(1.0) == 2.0);
  CHECK(k.boundary_at(2.0) == 0.5);
  CHECK(k.boundary_at(-1.5) == 2.0);
  CHECK(k.contains(0.5, -2.9));
  CHECK_FALSE(k.contains(1.5, 2.5));
}

TEST_CASE("step measure closed forms") {
  const MeasureSpec nu1 = MeasureSpec::nu_p(1.0);
  const double side = std::log(2.0);
  CHECK(measure_step2d(StepIdeal2D::box(side, side), nu1) ==
        doctest::Approx(0.25).epsilon(1e-12));
  // Strip mass is the interval mass for every family.
  for (const auto& m : family_reps()) {
    const double w = m.interval_mass_inv(0.37);
    CHECK(measure_step2d(StepIdeal2D::strip(w), m) ==
          doctest::Approx(0.37).epsilon(1e-10));
  }
  // Two-segment example: psi(1)*1 + (1 - psi(1))*psi(0.5) = 1 - e^{-1.5}.
  const StepIdeal2D k({1.0}, {kInf, 0.5});
  CHECK(measure_step2d(k, nu1) == doctest::Approx(1.0 - std::exp(-1.5)).epsilon(1e-12));
}

TEST_CASE("dilation scales parameters and is monotone") {
  const StepIdeal2D strip = StepIdeal2D::strip(0.7);
  CHECK(strip.dilated(3.0).breakpoints()[0] == doctest::Approx(2.1));
  CHECK(std::isinf(strip.dilated(3.0).heights()[0]));

  const MeasureSpec m = MeasureSpec::weibull(2.0);
  Rng rng(2024);
  for (int i = 0; i < 25; ++i) {
    const StepIdeal2D k = random_step_ideal(m, rng);
    double prev = measure_step2d(k, m);
    for (double t : {1.2, 1.7, 2.5, 4.0}) {
      const double mass = measure_step2d(k.dilated(t), m);
      CHECK(mass >= prev - 1e-14);
      prev = mass;
    }
  }
  CHECK_THROWS_AS((void)strip.dilated(0.0), std::domain_error);
}

TEST_CASE("merging equal-height segments does not change the measure") {
  const MeasureSpec m = MeasureSpec::gamma_sym(2.0);
  const StepIdeal2D merged({2.0}, {1.5, 0.5});
  const StepIdeal2D split({1.0, 2.0}, {1.5, 1.5, 0.5});
  CHECK(std::fabs(measure_step2d(merged, m) - measure_step2d(split, m)) <= 1e-14);
}

TEST_CASE("boundary sample discretization clamps to nonincreasing") {
  const StepIdeal2D k =
      StepIdeal2D::from_boundary_samples({1.0, 2.0, 3.0}, {2.0, 2.5, 1.0, 0.0});
  CHECK(k.heights() == std::vector<double>{2.0, 2.0, 1.0, 0.0});
}

TEST_CASE("box union: single box, nesting, cross") {
  const MeasureSpec nu1 = MeasureSpec::nu_p(1.0);
  const double a = std::log(2.0);

  const BoxUnionIdeal box(2, {{a, a}});
  CHECK(measure_boxes(box, nu1) == doctest::Approx(0.25).epsilon(1e-12));

  const BoxUnionIdeal nested(2, {{a, a}, {a / 2, a / 2}});
  CHECK(measure_boxes(nested, nu1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(nested.pruned().corners().size() == 1);

  const BoxUnionIdeal cross(2, {{a, kInf}, {kInf, a}});
  CHECK(measure_boxes(cross, nu1) == doctest::Approx(0.75).epsilon(1e-12));

  const BoxUnionIdeal empty(3, {});
  CHECK(measure_boxes(empty, nu1) == 0.0);
}

TEST_CASE("pruning leaves the measure unchanged") {
  Rng rng(555);
  for (const auto& m : family_reps()) {
    for (int dim : {2, 3, 4}) {
      for (int i = 0; i < 10; ++i) {
        const BoxUnionIdeal k = random_box_union(m, dim, rng);
        // Duplicate a corner and add a dominated one; measure must not move.
        auto corners = k.corners();
        corners.push_back(corners.front());
        auto shrunk = corners.front();
        for (double& v : shrunk) v = std::isinf(v) ? 1.0 : v * 0.5;
        corners.push_back(shrunk);
        const BoxUnionIdeal padded(dim, corners);
        CHECK(std::fabs(measure_boxes(padded, m) - measure_boxes(k, m)) <= 1e-14);
        CHECK(std::fabs(measure_boxes(padded.pruned(), m) - measure_boxes(k, m)) <= 1e-14);
      }
    }
  }
}

TEST_CASE("box sections") {
  const BoxUnionIdeal box(3, {{1.0, 2.0, 3.0}});
  const BoxUnionIdeal below = box.section(2.5);
  REQUIRE(below.corners().size() == 1);
  CHECK(below.corners()[0] == std::vector<double>{1.0, 2.0});
  CHECK(box.section(3.5).empty());
  CHECK_THROWS_AS((void)BoxUnionIdeal(1, {{1.0}}).section(0.5), std::domain_error);

  // dilate-then-section equals section-then-dilate on the corner lists
  Rng rng(31);
  const MeasureSpec m = MeasureSpec::nu_p(0.5);
  for (int i = 0; i < 20; ++i) {
    const BoxUnionIdeal k = random_box_union(m, 3, rng);
    const double t = 1.0 + 2.0 * rng.uniform();
    const double level = 0.3 + rng.uniform();
    const BoxUnionIdeal lhs = k.dilated(t).section(level);
    const BoxUnionIdeal rhs = k.section(level / t).dilated(t);
    CHECK(lhs.corners() == rhs.corners());
  }
}

TEST_CASE("tilde transform: identity, powers, homogeneity, mass correspondence") {
  const StepIdeal2D square = StepIdeal2D::box(2.0, 2.0);
  CHECK(square.tilde_transformed(1.0).breakpoints() == square.breakpoints());
  CHECK(square.tilde_transformed(1.0).heights() == square.heights());
  CHECK(square.tilde_transformed(4.0).breakpoints()[0] ==
        doctest::Approx(std::sqrt(std::sqrt(2.0))).epsilon(1e-15));

  Rng rng(91);
  const MeasureSpec nu = MeasureSpec::nu_p(0.5);
  for (int i = 0; i < 30; ++i) {
    const StepIdeal2D k = random_step_ideal(nu, rng);
    const double alpha = 0.4 + 2.6 * rng.uniform_pos();
    const double t = 1.0 + 3.0 * rng.uniform();
    const StepIdeal2D via_dilate = k.dilated(t).tilde_transformed(alpha);
    const StepIdeal2D via_tilde = k.tilde_transformed(alpha).dilated(std::pow(t, 1.0 / alpha));
    REQUIRE(via_dilate.breakpoints().size() == via_tilde.breakpoints().size());
    for (std::size_t j = 0; j < via_dilate.breakpoints().size(); ++j) {
      CHECK(via_dilate.breakpoints()[j] ==
            doctest::Approx(via_tilde.breakpoints()[j]).epsilon(1e-12));
    }
    for (std::size_t j = 0; j < via_dilate.heights().size(); ++j) {
      const double a = via_dilate.heights()[j];
      const double b = via_tilde.heights()[j];
      if (std::isinf(a) || std::isinf(b)) {
        CHECK(std::isinf(a));
        CHECK(std::isinf(b));
      } else {
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
      }
    }

    // Mass correspondence: nu_p of K equals mu_{p,alpha} of the transport.
    const MeasureSpec mu = MeasureSpec::mu_p_alpha(0.5, alpha);
    CHECK(std::fabs(measure_step2d(k, nu) -
                    measure_step2d(k.tilde_transformed(alpha), mu)) <= 1e-9);
  }

  // Same correspondence for box unions.
  for (int i = 0; i < 10; ++i) {
    const BoxUnionIdeal k = random_box_union(nu, 3, rng);
    const double alpha = 0.5 + 2.0 * rng.uniform_pos();
    const MeasureSpec mu = MeasureSpec::mu_p_alpha(0.5, alpha);
    CHECK(std::fabs(measure_boxes(k, nu) -
                    measure_boxes(k.tilde_transformed(alpha), mu)) <= 1e-9);
  }
}

TEST_CASE("lq ball sections") {
  const LqBallIdeal ball(3, 2.0, 1.0);
  const LqBallIdeal cut = ball.section(0.6);
  CHECK(cut.dim() == 2);
  CHECK(cut.r() == doctest::Approx(0.8).epsilon(1e-14));
  CHECK_THROWS_AS((void)ball.section(1.2), std::domain_error);
}

TEST_CASE("lq ball measures") {
  const MeasureSpec nu1 = MeasureSpec::nu_p(1.0);
  CHECK(measure_lqball(LqBallIdeal(1, 2.0, 1.0), nu1) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));

  // l1 ball of radius 1: |X|+|Y| is Gamma(2), so the mass is P(2, 1).
  CHECK(measure_lqball(LqBallIdeal(2, 1.0, 1.0), nu1) ==
        doctest::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-8));

  // Large s approximates the box.
  const double psi = nu1.interval_mass(1.0);
  CHECK(measure_lqball(LqBallIdeal(2, 150.0, 1.0), nu1) ==
        doctest::Approx(psi * psi).epsilon(2e-2));

  // Monte Carlo cross-checks within 4 sigma.
  for (const auto& m : family_reps()) {
    const LqBallIdeal ball2(2, 1.5, 1.2);
    const auto mc2 = mc_measure(ball2, m, 200000, 404);
    CHECK(std::fabs(measure_lqball(ball2, m) - mc2.estimate) <= 4.0 * mc2.std_error);
    const LqBallIdeal ball3(3, 2.0, 1.5);
    const auto mc3 = mc_measure(ball3, m, 200000, 405);
    CHECK(std::fabs(measure_lqball(ball3, m) - mc3.estimate) <= 4.0 * mc3.std_error);
  }
  CHECK_THROWS_AS((void)measure_lqball(LqBallIdeal(4, 2.0, 1.0), MeasureSpec::nu_p(1.0)),
                  DimensionLimitError);
}

TEST_CASE("dimension limit for the box calculus") {
  std::vector<std::vector<double>> corner{{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0}};
  CHECK_THROWS_AS((void)measure_boxes(BoxUnionIdeal(7, corner), MeasureSpec::nu_p(1.0)),
                  DimensionLimitError);

  std::vector<std::vector<double>> many;
  for (int i = 1; i <= 65; ++i) many.push_back({static_cast<double>(i), 66.0 - i});
  CHECK_THROWS_AS((void)measure_boxes(BoxUnionIdeal(2, many), MeasureSpec::nu_p(1.0)),
                  std::invalid_argument);
}

TEST_CASE("monte carlo oracle hits closed forms") {
  const MeasureSpec nu1 = MeasureSpec::nu_p(1.0);
  const double a = std::log(2.0);

  const auto square = mc_measure(StepIdeal2D::box(a, a), nu1, 1000000, 17);
  CHECK(std::fabs(square.estimate - 0.25) <= 4.0 * square.std_error);
  CHECK(square.std_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 1e6)).epsilon(0.05));

  const BoxUnionIdeal strip3(3, {{a, kInf, kInf}});
  const auto strip = mc_measure(strip3, nu1, 1000000, 18);
  CHECK(std::fabs(strip.estimate - 0.5) <= 4.0 * strip.std_error);

  const auto empty = mc_measure(BoxUnionIdeal(2, {}), nu1, 1000, 19);
  CHECK(empty.estimate == 0.0);
  CHECK(empty.std_error == 0.0);
}

TEST_CASE("exact step calculus agrees with monte carlo") {
  Rng rng(808);
  for (const auto& m : family_reps()) {
    for (int i = 0; i < 10; ++i) {
      const StepIdeal2D k = random_step_ideal(m, rng);
      const double exact = measure_step2d(k, m);
      const auto mc = mc_measure(k, m, 50000, mix_seed(808, static_cast<uint64_t>(i)));
      CHECK(std::fabs(exact - mc.estimate) <=
            std::max(4.0 * mc.std_error, 2e-4));
    }
  }
}

TEST_CASE("grid disjointification agrees with the fubini recursion") {
  Rng rng(909);
  for (const auto& m : family_reps()) {
    for (int dim : {2, 3, 4}) {
      for (int i = 0; i < 3; ++i) {
        const BoxUnionIdeal k = random_box_union(m, dim, rng);
        CHECK(std::fabs(measure_boxes(k, m) - measure_boxes_fubini(k, m)) <= 1e-7);
      }
    }
  }
}

TEST_CASE("variant helpers") {
  const Ideal step = StepIdeal2D::strip(1.0);
  const Ideal boxes = BoxUnionIdeal(4, {{1.0, 1.0, 1.0, 1.0}});
  const Ideal ball = LqBallIdeal(3, 2.0, 1.0);
  CHECK(ideal_dim(step) == 2);
  CHECK(ideal_dim(boxes) == 4);
  CHECK(ideal_dim(ball) == 3);
  const MeasureSpec m = MeasureSpec::weibull(2.0);
  CHECK(ideal_measure(dilated(step, 2.0), m) ==
        doctest::Approx(m.interval_mass(2.0)).epsilon(1e-12));
}
