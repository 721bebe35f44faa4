#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "sineq/core_fns.hpp"
#include "sineq/generators.hpp"
#include "sineq/s_inequality.hpp"

using namespace sineq;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const std::vector<double> kPGrid{0.25, 0.5, 0.75, 1.0};

}  // namespace

TEST_CASE("s_bound anchors") {
  CHECK(s_bound(MeasureSpec::gamma_sym(2.0), 0.5, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-10));
  CHECK(s_bound(MeasureSpec::nu_p(1.0), 0.25, 2.0) ==
        doctest::Approx(0.4375).epsilon(1e-11));
  CHECK(s_bound(MeasureSpec::weibull(2.0), 1.0 - std::exp(-1.0), 2.0) ==
        doctest::Approx(1.0 - std::exp(-4.0)).epsilon(1e-11));
  CHECK_THROWS_AS((void)s_bound(MeasureSpec::nu_p(1.0), 0.0, 2.0), std::domain_error);
  CHECK_THROWS_AS((void)s_bound(MeasureSpec::nu_p(1.0), 1.0, 2.0), std::domain_error);
}

TEST_CASE("verify_ideal on the exponential square fixture") {
  const MeasureSpec nu1 = MeasureSpec::nu_p(1.0);
  const double side = std::log(2.0);
  const Ideal square = StepIdeal2D::box(side, side);
  const std::vector<double> t_grid{1.0, 2.0};
  const auto report = verify_ideal(nu1, square, 2, t_grid, 1e-8);
  CHECK(report.pass);
  CHECK(report.base_mass == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(report.records[1].lhs == doctest::Approx(0.5625).epsilon(1e-11));
  CHECK(report.records[1].rhs == doctest::Approx(0.4375).epsilon(1e-11));
  CHECK(report.records[1].margin == doctest::Approx(0.125).epsilon(1e-9));
  CHECK(report.records[0].margin == doctest::Approx(0.0).epsilon(1e-11));
}

TEST_CASE("strips are their own comparison set") {
  const std::vector<double> t_grid{1.0, 1.5, 2.0, 5.0};
  for (const auto& m : {MeasureSpec::nu_p(0.5), MeasureSpec::weibull(0.5),
                        MeasureSpec::gamma_sym(3.0)}) {
    const Ideal strip = StepIdeal2D::strip(m.interval_mass_inv(0.3));
    const auto report = verify_ideal(m, strip, 2, t_grid, 1e-8);
    CHECK(report.pass);
    for (const auto& rec : report.records) {
      CHECK(std::fabs(rec.margin) <= 1e-9);
    }
  }
}

TEST_CASE("verify_ideal mode gating") {
  const MeasureSpec hot = MeasureSpec::nu_p(1.5);
  const Ideal strip = StepIdeal2D::strip(1.0);
  const std::vector<double> ts{1.0, 2.0};
  CHECK_THROWS_AS((void)verify_ideal(hot, strip, 2, ts, 1e-8, VerifyMode::Assert),
                  UnsupportedAssertionError);
  const auto explored = verify_ideal(hot, strip, 2, ts, 1e-8, VerifyMode::Explore);
  CHECK(explored.records.size() == 2);

  const MeasureSpec nu1 = MeasureSpec::nu_p(1.0);
  const std::vector<double> shrink{0.5};
  CHECK_THROWS_AS((void)verify_ideal(nu1, strip, 2, shrink, 1e-8, VerifyMode::Assert),
                  std::domain_error);
  CHECK_NOTHROW((void)verify_ideal(nu1, strip, 2, shrink, 1e-8, VerifyMode::Explore));
  CHECK_THROWS_AS((void)verify_ideal(nu1, strip, 3, ts, 1e-8), std::invalid_argument);
}

TEST_CASE("random box unions pass under gamma") {
  const MeasureSpec g2 = MeasureSpec::gamma_sym(2.0);
  const std::vector<double> ts{1.5, 3.0};
  Rng rng(4242);
  for (int i = 0; i < 25; ++i) {
    const auto report = verify_ideal(g2, Ideal{random_box_union(g2, 3, rng)}, 3, ts, 1e-8);
    CHECK(report.min_margin >= -1e-8);
  }
}

TEST_CASE("degenerate ideals verify trivially") {
  const MeasureSpec nu1 = MeasureSpec::nu_p(1.0);
  const std::vector<double> ts{1.0, 2.0};
  const auto report = verify_ideal(nu1, Ideal{BoxUnionIdeal(2, {})}, 2, ts, 1e-8);
  CHECK(report.pass);
  CHECK(report.base_mass == 0.0);
  for (const auto& rec : report.records) {
    CHECK(rec.lhs == 0.0);
    CHECK(rec.rhs == 0.0);
  }
}

TEST_CASE("lq balls verify through the quadrature route") {
  // Quadrature-backed comparisons run at the 1e-6 tolerance tier.
  const std::vector<double> ts{1.0, 1.5, 2.0};
  for (const auto& m : {MeasureSpec::nu_p(1.0), MeasureSpec::weibull(2.0)}) {
    const auto report = verify_ideal(m, Ideal{LqBallIdeal(2, 1.5, 1.0)}, 2, ts, 1e-6);
    CHECK(report.pass);
    CHECK(report.min_margin >= -1e-6);
  }
}

TEST_CASE("M_p closed forms") {
  const double w = 0.8;
  for (double p : kPGrid) {
    CHECK(mp_step2d(p, StepIdeal2D::strip(w)) ==
          doctest::Approx(mp_strip(p, w)).epsilon(1e-12));
  }
  // Separability oracle for the square: M_1 = 2 S(a) psi(a).
  const double a = std::log(2.0);
  const double by_separability =
      2.0 * partial_moment_S(1.0, a) * MeasureSpec::nu_p(1.0).interval_mass(a);
  CHECK(mp_step2d(1.0, StepIdeal2D::box(a, a)) ==
        doctest::Approx(by_separability).epsilon(1e-12));
  CHECK(by_separability == doctest::Approx(0.1534264097).epsilon(1e-9));

  // Full plane: d/dt of the total mass vanishes, so M_p must equal 2/p.
  for (double p : kPGrid) {
    const StepIdeal2D plane({}, {kInf});
    CHECK(mp_step2d(p, plane) == doctest::Approx(2.0 / p).epsilon(1e-12));
    CHECK(derivative_at_one(p, plane) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("dilation derivative at t=1") {
  const double a = std::log(2.0);
  CHECK(derivative_at_one(1.0, StepIdeal2D::box(a, a)) ==
        doctest::Approx(0.3465735903).epsilon(1e-9));
  // Strip: d/dt psi(t w)|_1 = w psi'(w) = w e^{-w} for the exponential case.
  CHECK(derivative_at_one(1.0, StepIdeal2D::strip(a)) ==
        doctest::Approx(a * std::exp(-a)).epsilon(1e-12));

  constexpr double kH = 1e-4;
  Rng rng(515);
  for (int i = 0; i < 32; ++i) {
    const double p = kPGrid[static_cast<std::size_t>(i) % 4];
    const MeasureSpec nu = MeasureSpec::nu_p(p);
    const StepIdeal2D k = random_step_ideal(nu, rng);
    const double fd = (measure_step2d(k.dilated(1.0 + kH), nu) -
                       measure_step2d(k.dilated(1.0 - kH), nu)) /
                      (2.0 * kH);
    CHECK(derivative_at_one(p, k) == doctest::Approx(fd).epsilon(1e-5));

    // Mass-matched strips maximize the derivative, i.e. minimize M_p.
    const double mass = measure_step2d(k, nu);
    CHECK(mp_step2d(p, k) <= mp_strip(p, nu.interval_mass_inv(mass)) + 1e-10);
  }
}

TEST_CASE("monotone step validation and lookup") {
  CHECK_THROWS_AS(MonotoneStep({1.0, 0.5}, {0.1, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(MonotoneStep({0.5, 1.0}, {0.3, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(MonotoneStep({0.5}, {1.2}), std::invalid_argument);
  const MonotoneStep g({0.5, 1.0}, {0.25, 0.75});
  CHECK(g.value_at(0.0) == 0.0);
  CHECK(g.value_at(0.5) == 0.25);
  CHECK(g.value_at(2.0) == 0.75);
  CHECK(MonotoneStep::indicator(kInf).jumps().empty());
}

TEST_CASE("lemma1: equality on indicators, zero on zero, frozen composite value") {
  for (double p : kPGrid) {
    CHECK(lemma1_gap(p, MonotoneStep()) == 0.0);
    for (double u : {0.02, 0.2, 0.5, 0.9, 0.98}) {
      const double gap = lemma1_gap(p, MonotoneStep::indicator(inv_T(p, u)));
      CHECK(std::fabs(gap) <= 1e-10);
    }
    CHECK(std::fabs(lemma1_gap(p, MonotoneStep::indicator(0.0))) <= 1e-12);
  }

  // p = 1, g = 0.5 on [0.5, 1), 1 on [1, inf): closed-form oracle via
  // T = e^{-u}, S = 1-(1+u)e^{-u}, Phi = 1-v+v ln v.
  const auto T = [](double u) { return std::exp(-u); };
  const auto S = [](double u) { return 1.0 - (1.0 + u) * std::exp(-u); };
  const auto Phi = [](double v) { return v == 0.0 ? 1.0 : 1.0 - v + v * std::log(v); };
  const double m0 = 1.0 - T(0.5);
  const double m1 = T(0.5) - T(1.0);
  const double m2 = T(1.0);
  const double lhs =
      m0 * Phi(0.0) + m1 * Phi(0.5) + m2 * Phi(1.0) - Phi(0.5 * m1 + m2);
  const double rhs = 0.5 * ((S(1.0) - S(0.5)) - m1) + ((1.0 - S(1.0)) - m2);
  const double oracle = lhs - rhs;

  const double gap = lemma1_gap(1.0, MonotoneStep({0.5, 1.0}, {0.5, 1.0}));
  CHECK(gap == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(gap == doctest::Approx(-0.06794796384978514).epsilon(1e-11));
  CHECK(gap <= 0.0);
}

TEST_CASE("lemma1 gap stays nonpositive on random step functions") {
  for (std::size_t pi = 0; pi < kPGrid.size(); ++pi) {
    const double p = kPGrid[pi];
    Rng rng(mix_seed(606, pi));
    for (int i = 0; i < 200; ++i) {
      CHECK(lemma1_gap(p, random_monotone_step(p, rng)) <= 1e-10);
    }
  }
}

TEST_CASE("convexity probe") {
  const MonotoneStep g1({0.3, 1.2}, {0.2, 0.9});
  const MonotoneStep g2({0.7}, {0.6});
  const std::vector<double> endpoints{0.0, 1.0};
  CHECK(convexity_probe(1.0, g1, g2, endpoints) == 0.0);
  const std::vector<double> lam{0.3};
  CHECK(std::fabs(convexity_probe(0.5, g1, g1, lam)) <= 1e-12);

  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(static_cast<double>(i) / 10.0);
  Rng rng(717);
  for (int i = 0; i < 50; ++i) {
    const MonotoneStep a = MonotoneStep::indicator(inv_T(0.5, 0.02 + 0.96 * rng.uniform_pos()));
    const MonotoneStep b = MonotoneStep::indicator(inv_T(0.5, 0.02 + 0.96 * rng.uniform_pos()));
    CHECK(convexity_probe(0.5, a, b, grid) <= 1e-10);
  }
  CHECK_THROWS_AS((void)convexity_probe(0.5, g1, g2, std::vector<double>{1.5}),
                  std::domain_error);
}

TEST_CASE("transport consistency") {
  const StepIdeal2D square = StepIdeal2D::box(1.0, 1.0);
  CHECK(transport_check(1.0, 1.0, square, 2.0) == 0.0);
  CHECK(transport_check(1.0, 2.0, square, 4.0) <= 1e-9);

  Rng rng(818);
  for (int i = 0; i < 20; ++i) {
    const double q = 2.0;  // gamma reduction: p = 1/q, alpha = q
    const StepIdeal2D k = random_step_ideal(MeasureSpec::nu_p(1.0 / q), rng);
    CHECK(transport_check(1.0 / q, q, k, 1.5) <= 1e-9);
  }
}

TEST_CASE("mass identity: complement equals the tail integral of T о f") {
  for (double p : kPGrid) {
    const MeasureSpec nu = MeasureSpec::nu_p(p);
    Rng rng(mix_seed(919, static_cast<std::uint64_t>(p * 100)));
    for (int i = 0; i < 20; ++i) {
      const StepIdeal2D k = random_step_ideal(nu, rng);
      const auto& bp = k.breakpoints();
      const auto& hs = k.heights();
      double integral = 0.0;
      double t_lo = 1.0;
      for (std::size_t j = 0; j < hs.size(); ++j) {
        const double t_hi = (j < bp.size()) ? tail_T(p, bp[j]) : 0.0;
        integral += (t_lo - t_hi) * tail_T(p, hs[j]);
        t_lo = t_hi;
      }
      CHECK(std::fabs((1.0 - measure_step2d(k, nu)) - integral) <= 1e-12);
    }
  }
}
