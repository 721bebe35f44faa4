#include "sineq/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "sineq/core_fns.hpp"
#include "sineq/extremal_search.hpp"
#include "sineq/generators.hpp"
#include "sineq/ideals.hpp"
#include "sineq/measures.hpp"
#include "sineq/moments.hpp"
#include "sineq/oracles.hpp"
#include "sineq/parallel.hpp"
#include "sineq/rng.hpp"
#include "sineq/s_inequality.hpp"

namespace sineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSupportedP[] = {0.25, 0.5, 0.75, 1.0};

std::vector<MeasureSpec> sweep_measures() {
  std::vector<MeasureSpec> ms;
  for (double p : {0.25, 0.5, 0.75, 1.0}) ms.push_back(MeasureSpec::nu_p(p));
  for (double a : {0.5, 1.0, 2.0, 4.0}) ms.push_back(MeasureSpec::weibull(a));
  for (double q : {1.0, 2.0, 5.0}) ms.push_back(MeasureSpec::gamma_sym(q));
  return ms;
}

std::vector<MeasureSpec> family_representatives() {
  return {MeasureSpec::nu_p(0.5), MeasureSpec::mu_p_alpha(0.5, 2.0),
          MeasureSpec::weibull(2.0), MeasureSpec::gamma_sym(2.0)};
}

std::string fmt(double v) { return format_g17(v); }

}  // namespace

CheckResult criterion_closed_form_fixture() {
  const MeasureSpec nu1 = MeasureSpec::nu_p(1.0);
  const double side = std::log(2.0);
  const StepIdeal2D square = StepIdeal2D::box(side, side);

  const double mass = measure_step2d(square, nu1);
  const double width = nu1.interval_mass_inv(0.25);
  const double dilated = measure_step2d(square.dilated(2.0), nu1);
  const double bound = s_bound(nu1, 0.25, 2.0);

  const double err = std::max(
      std::max(std::fabs(mass - 0.25), std::fabs(width + std::log(0.75))),
      std::max(std::fabs(dilated - 0.5625), std::fabs(bound - 0.4375)));

  CheckResult out;
  out.name = "closed_form_fixture";
  out.pass = err <= 1e-9;
  out.detail = "mass=" + fmt(mass) + " width=" + fmt(width) + " dilated=" + fmt(dilated) +
               " bound=" + fmt(bound) + " max_err=" + fmt(err);
  return out;
}

CheckResult criterion_phi_signs() {
  bool pass = true;
  double min_d2 = kInf;
  double max_inv_d2_d2 = -kInf;
  for (double p : kSupportedP) {
    for (int i = 0; i < 1000; ++i) {
      const double v = 0.001 + 0.998 * (static_cast<double>(i) + 0.5) / 1000.0;
      const PhiStack stack = phi_stack(p, v);
      min_d2 = std::min(min_d2, stack.d2);
      max_inv_d2_d2 = std::max(max_inv_d2_d2, stack.inv_d2_d2);
      if (!(stack.d2 > 0.0) || !(stack.inv_d2_d2 <= 1e-9)) pass = false;
    }
  }
  double min_explore = kInf;
  for (int i = 0; i < 1000; ++i) {
    const double v = 0.001 + 0.998 * (static_cast<double>(i) + 0.5) / 1000.0;
    const PhiStack stack = phi_stack(1.5, v);
    min_explore = std::min(min_explore, stack.inv_d2_d2);
    if (!(stack.inv_d2_d2 > 0.0)) pass = false;
  }
  CheckResult out;
  out.name = "phi_signs";
  out.pass = pass;
  out.detail = "min_d2=" + fmt(min_d2) + " max_inv_d2_d2=" + fmt(max_inv_d2_d2) +
               " min_inv_d2_d2_at_p1.5=" + fmt(min_explore);
  return out;
}

CheckResult criterion_lemma1(std::uint64_t seed) {
  double max_gap = -kInf;
  double max_indicator_gap = 0.0;
  bool pass = true;
  for (std::size_t pi = 0; pi < 4; ++pi) {
    const double p = kSupportedP[pi];
    Rng rng(mix_seed(seed, pi));
    for (int i = 0; i < 1000; ++i) {
      const double gap = lemma1_gap(p, random_monotone_step(p, rng));
      max_gap = std::max(max_gap, gap);
      if (!(gap <= 1e-10)) pass = false;
    }
    for (int i = 0; i <= 100; ++i) {
      const double u = 0.005 + 0.99 * static_cast<double>(i) / 100.0;
      const double a = inv_T(p, u);
      const double gap = lemma1_gap(p, MonotoneStep::indicator(a));
      max_indicator_gap = std::max(max_indicator_gap, std::fabs(gap));
      if (!(std::fabs(gap) <= 1e-10)) pass = false;
    }
    const double gap_zero = lemma1_gap(p, MonotoneStep());
    if (gap_zero != 0.0) pass = false;
  }
  CheckResult out;
  out.name = "lemma1_gap";
  out.pass = pass;
  out.detail =
      "max_gap=" + fmt(max_gap) + " max_indicator_abs_gap=" + fmt(max_indicator_gap);
  return out;
}

CheckResult criterion_convexity(std::uint64_t seed) {
  double worst = -kInf;
  bool pass = true;
  for (std::size_t pi = 0; pi < 4; ++pi) {
    const double p = kSupportedP[pi];
    Rng rng(mix_seed(seed, 100 + pi));
    for (int i = 0; i < 500; ++i) {
      const MonotoneStep g1 = random_monotone_step(p, rng);
      const MonotoneStep g2 = random_monotone_step(p, rng);
      const double lambda = rng.uniform();
      const double violation = convexity_probe(p, g1, g2, std::vector<double>{lambda});
      worst = std::max(worst, violation);
      if (!(violation <= 1e-10)) pass = false;
    }
  }
  CheckResult out;
  out.name = "psi_phi_convexity";
  out.pass = pass;
  out.detail = "max_violation=" + fmt(worst);
  return out;
}

CheckResult criterion_derivative(std::uint64_t seed) {
  constexpr double kH = 1e-4;
  double max_rel = 0.0;
  double max_mp_excess = -kInf;
  bool pass = true;
  Rng rng(mix_seed(seed, 7));
  for (int i = 0; i < 100; ++i) {
    const double p = kSupportedP[i % 4];
    const MeasureSpec nu = MeasureSpec::nu_p(p);
    const StepIdeal2D ideal = random_step_ideal(nu, rng);

    const double deriv = derivative_at_one(p, ideal);
    const double fd = (measure_step2d(ideal.dilated(1.0 + kH), nu) -
                       measure_step2d(ideal.dilated(1.0 - kH), nu)) /
                      (2.0 * kH);
    const double rel = std::fabs(deriv - fd) / std::max(std::fabs(fd), 1e-12);
    max_rel = std::max(max_rel, rel);
    if (!(rel <= 1e-5)) pass = false;

    const double mass = measure_step2d(ideal, nu);
    const double strip_mp = mp_strip(p, nu.interval_mass_inv(mass));
    const double excess = mp_step2d(p, ideal) - strip_mp;
    max_mp_excess = std::max(max_mp_excess, excess);
    if (!(excess <= 1e-10)) pass = false;
  }
  CheckResult out;
  out.name = "dilation_derivative";
  out.pass = pass;
  out.detail = "max_fd_rel_err=" + fmt(max_rel) + " max_mp_excess=" + fmt(max_mp_excess);
  return out;
}

CheckResult criterion_sweep(std::uint64_t seed, int threads) {
  const auto measures = sweep_measures();
  const std::vector<double> t_grid{1.0, 1.25, 2.0, 4.0};
  constexpr double kTol = 1e-8;

  std::vector<double> min_margin(measures.size(), kInf);
  std::vector<bool> ok(measures.size(), true);
  parallel_for(measures.size(), threads, [&](std::size_t mi) {
    const MeasureSpec& m = measures[mi];
    Rng rng(mix_seed(seed, 200 + mi));
    for (int i = 0; i < 200; ++i) {
      const auto report = verify_ideal(m, Ideal{random_step_ideal(m, rng)}, 2, t_grid,
                                       kTol, VerifyMode::Assert, 0);
      min_margin[mi] = std::min(min_margin[mi], report.min_margin);
      if (!report.pass) ok[mi] = false;
    }
    for (int dim : {3, 4}) {
      for (int i = 0; i < 25; ++i) {
        const auto report = verify_ideal(m, Ideal{random_box_union(m, dim, rng)}, dim,
                                         t_grid, kTol, VerifyMode::Assert, 0);
        min_margin[mi] = std::min(min_margin[mi], report.min_margin);
        if (!report.pass) ok[mi] = false;
      }
    }
  });

  CheckResult out;
  out.name = "s_inequality_sweep";
  out.pass = std::all_of(ok.begin(), ok.end(), [](bool b) { return b; });
  out.detail =
      "min_margin=" + fmt(*std::min_element(min_margin.begin(), min_margin.end()));
  return out;
}

CheckResult criterion_transport(std::uint64_t seed) {
  Rng rng(mix_seed(seed, 11));
  double worst = 0.0;
  bool pass = true;
  for (int i = 0; i < 100; ++i) {
    double p, alpha;
    if (i % 4 == 0) {
      p = 1.0;  // Weibull reduction
      alpha = 0.4 + 2.6 * rng.uniform_pos();
    } else if (i % 4 == 1) {
      p = kSupportedP[(i / 4) % 4];  // Gamma reduction: alpha = 1/p
      alpha = 1.0 / p;
    } else {
      p = 0.25 + 0.75 * rng.uniform_pos();
      alpha = 0.4 + 2.6 * rng.uniform_pos();
    }
    const double t = 1.0 + 3.0 * rng.uniform();
    const StepIdeal2D ideal = random_step_ideal(MeasureSpec::nu_p(p), rng);
    const double residual = transport_check(p, alpha, ideal, t);
    worst = std::max(worst, residual);
    if (!(residual <= 1e-9)) pass = false;
  }
  CheckResult out;
  out.name = "transport_consistency";
  out.pass = pass;
  out.detail = "max_residual=" + fmt(worst);
  return out;
}

CheckResult criterion_moments(std::uint64_t seed, int threads) {
  constexpr std::size_t kSamples = 100000;
  const auto families = family_representatives();
  const std::pair<double, double> pq_grid[] = {{2.0, 1.0}, {4.0, 2.0}, {3.0, 1.5}};

  const double c21 = optimal_constant(MeasureSpec::nu_p(1.0), 2.0, 1.0);
  const bool constant_exact = std::fabs(c21 - std::sqrt(2.0)) <= 1e-12;

  struct Job {
    MeasureSpec m;
    UnconditionalNorm norm;
    int n;
    double p;
    double q;
  };
  std::vector<Job> jobs;
  for (const auto& m : families) {
    for (const auto& [p, q] : pq_grid) {
      jobs.push_back(Job{m, UnconditionalNorm::coordinate(1), 2, p, q});
      for (double s : {1.0, 2.0, kInf}) {
        for (int n : {2, 3}) {
          jobs.push_back(Job{m, UnconditionalNorm::ls(s), n, p, q});
        }
      }
    }
  }

  std::vector<bool> ok(jobs.size(), true);
  std::vector<double> slack(jobs.size(), 0.0);
  parallel_for(jobs.size(), threads, [&](std::size_t i) {
    const Job& job = jobs[i];
    const auto report = verify_comparison(job.m, job.n, job.norm, job.p, job.q, kSamples,
                                          mix_seed(seed, 300 + i), VerifyMode::Assert);
    slack[i] = report.slack;
    ok[i] = report.holds && (!report.sharpness_checked || report.sharp);
  });

  CheckResult out;
  out.name = "moment_comparison";
  out.pass = constant_exact && std::all_of(ok.begin(), ok.end(), [](bool b) { return b; });
  std::size_t failures = 0;
  for (bool b : ok) {
    if (!b) ++failures;
  }
  out.detail = "c21_err=" + fmt(std::fabs(c21 - std::sqrt(2.0))) + " checks=" +
               std::to_string(jobs.size()) + " failures=" + std::to_string(failures);
  return out;
}

CheckResult criterion_oracles(std::uint64_t seed, int threads) {
  constexpr std::size_t kSamples = 100000;
  const auto families = family_representatives();

  std::vector<bool> ok(families.size(), true);
  std::vector<double> worst_sigma(families.size(), 0.0);
  std::vector<double> worst_fubini(families.size(), 0.0);
  parallel_for(families.size(), threads, [&](std::size_t fi) {
    const MeasureSpec& m = families[fi];
    Rng rng(mix_seed(seed, 400 + fi));
    for (int i = 0; i < 50; ++i) {
      double exact;
      McEstimate mc;
      if (i < 30) {
        const StepIdeal2D ideal = random_step_ideal(m, rng);
        exact = measure_step2d(ideal, m);
        mc = mc_measure(ideal, m, kSamples, mix_seed(seed, 500 + 100 * fi + i));
      } else {
        const BoxUnionIdeal ideal = random_box_union(m, 3, rng);
        exact = measure_boxes(ideal, m);
        mc = mc_measure(ideal, m, kSamples, mix_seed(seed, 500 + 100 * fi + i));
      }
      const double tol =
          std::max(4.0 * mc.std_error, 10.0 / static_cast<double>(kSamples));
      const double sigmas = std::fabs(exact - mc.estimate) /
                            std::max(mc.std_error, 1e-12);
      worst_sigma[fi] = std::max(worst_sigma[fi], sigmas);
      if (!(std::fabs(exact - mc.estimate) <= tol)) ok[fi] = false;
    }
    for (int dim : {2, 3, 4}) {
      for (int i = 0; i < 3; ++i) {
        const BoxUnionIdeal ideal = random_box_union(m, dim, rng);
        const double diff =
            std::fabs(measure_boxes(ideal, m) - measure_boxes_fubini(ideal, m));
        worst_fubini[fi] = std::max(worst_fubini[fi], diff);
        if (!(diff <= 1e-7)) ok[fi] = false;
      }
    }
  });

  CheckResult out;
  out.name = "oracle_agreement";
  out.pass = std::all_of(ok.begin(), ok.end(), [](bool b) { return b; });
  out.detail =
      "max_mc_sigmas=" + fmt(*std::max_element(worst_sigma.begin(), worst_sigma.end())) +
      " max_fubini_diff=" +
      fmt(*std::max_element(worst_fubini.begin(), worst_fubini.end()));
  return out;
}

CheckResult criterion_search(std::uint64_t seed, int threads) {
  struct Config {
    MeasureSpec m;
    double mass;
    double t;
    int k;
  };
  std::vector<Config> configs;
  for (double mass : {0.1, 0.25, 0.5, 0.9}) {
    for (double t : {1.25, 2.0, 4.0}) {
      for (int k : {2, 5, 8}) {
        configs.push_back(Config{MeasureSpec::nu_p(1.0), mass, t, k});
      }
    }
  }
  for (const auto& m : {MeasureSpec::weibull(0.5), MeasureSpec::gamma_sym(2.0)}) {
    for (int k : {2, 5}) configs.push_back(Config{m, 0.25, 2.0, k});
  }

  std::vector<double> gaps(configs.size(), 0.0);
  parallel_for(configs.size(), threads, [&](std::size_t i) {
    SearchConfig cfg{configs[i].m};
    cfg.target_mass = configs[i].mass;
    cfg.t = configs[i].t;
    cfg.breakpoints = configs[i].k;
    cfg.iterations = 60;
    cfg.restarts = 20;
    cfg.seed = mix_seed(seed, 600 + i);
    gaps[i] = search_min_dilation(cfg).gap;
  });

  const double min_gap = *std::min_element(gaps.begin(), gaps.end());
  CheckResult out;
  out.name = "extremal_search";
  out.pass = min_gap >= -1e-7;
  out.detail = "min_gap=" + fmt(min_gap) + " configs=" + std::to_string(configs.size());
  return out;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, int threads) {
  SuiteResult result;
  result.suite = name;
  result.seed = seed;

  const auto timed = [&](auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult check = fn();
    check.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    result.checks.push_back(std::move(check));
  };

  if (name == "core") {
    timed([&] { return criterion_closed_form_fixture(); });
    timed([&] { return criterion_derivative(seed); });
    timed([&] { return criterion_sweep(seed, threads); });
    timed([&] { return criterion_transport(seed); });
    timed([&] { return criterion_oracles(seed, threads); });
  } else if (name == "lemmas") {
    timed([&] { return criterion_phi_signs(); });
    timed([&] { return criterion_lemma1(seed); });
    timed([&] { return criterion_convexity(seed); });
  } else if (name == "moments") {
    timed([&] { return criterion_moments(seed, threads); });
  } else if (name == "search") {
    timed([&] { return criterion_search(seed, threads); });
  } else {
    throw std::invalid_argument("unknown suite '" + name +
                                "'; expected core|lemmas|moments|search");
  }
  result.all_pass = std::all_of(result.checks.begin(), result.checks.end(),
                                [](const CheckResult& c) { return c.pass; });
  return result;
}

std::vector<std::string> suite_names() { return {"core", "lemmas", "moments", "search"}; }

nlohmann::ordered_json suite_to_json(const SuiteResult& result, const RunManifest& manifest) {
  nlohmann::ordered_json j;
  j["manifest"] = manifest.to_json();
  j["suite"] = result.suite;
  j["seed"] = result.seed;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& check : result.checks) {
    nlohmann::ordered_json c;
    c["name"] = check.name;
    c["pass"] = check.pass;
    c["detail"] = check.detail;
    checks.push_back(c);
  }
  j["checks"] = checks;
  j["all_pass"] = result.all_pass;
  return j;
}

}  // namespace sineq
