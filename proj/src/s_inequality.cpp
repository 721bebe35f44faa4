#include "sineq/s_inequality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sineq/core_fns.hpp"

namespace sineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Step function on [0, ∞) as parallel segment arrays: values[i] holds on
// [bounds[i], bounds[i+1]) with bounds[0] = 0 and an implicit final ∞.
struct HalfLineStep {
  std::vector<double> bounds;
  std::vector<double> values;
};

HalfLineStep to_segments(const MonotoneStep& g) {
  HalfLineStep seg;
  const auto& jumps = g.jumps();
  const auto& values = g.values();
  if (jumps.empty() || jumps.front() > 0.0) {
    seg.bounds.push_back(0.0);
    seg.values.push_back(0.0);
  }
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    seg.bounds.push_back(jumps[i]);
    seg.values.push_back(values[i]);
  }
  return seg;
}

double psi_phi_segments(double p, const HalfLineStep& seg) {
  double integral_phi = 0.0;
  double integral_g = 0.0;
  double t_lo = 1.0;
  for (std::size_t i = 0; i < seg.values.size(); ++i) {
    const double t_hi =
        (i + 1 < seg.bounds.size()) ? tail_T(p, seg.bounds[i + 1]) : 0.0;
    const double mass = t_lo - t_hi;
    integral_phi += mass * phi_value(p, seg.values[i]);
    integral_g += mass * seg.values[i];
    t_lo = t_hi;
  }
  integral_g = std::clamp(integral_g, 0.0, 1.0);
  return integral_phi - phi_value(p, integral_g);
}

}  // namespace

std::string to_string(VerifyMode mode) {
  return mode == VerifyMode::Assert ? "assert" : "explore";
}

double s_bound(const MeasureSpec& m, double mass, double t) {
  if (!(mass > 0.0) || mass >= 1.0) {
    throw std::domain_error("s_bound: mass must be in (0, 1)");
  }
  if (!(t > 0.0)) throw std::domain_error("s_bound: t must be positive");
  return m.interval_mass(t * m.interval_mass_inv(mass));
}

VerificationReport verify_ideal(const MeasureSpec& m, const Ideal& ideal, int dim,
                                std::span<const double> t_grid, double tol,
                                VerifyMode mode, std::uint64_t seed) {
  if (mode == VerifyMode::Assert && !m.s_supported()) {
    throw UnsupportedAssertionError("UNSUPPORTED_ASSERTION: " + m.describe() +
                                    " carries no dilation guarantee; use explore mode");
  }
  if (dim != ideal_dim(ideal)) {
    throw std::invalid_argument("verify_ideal: dim does not match the ideal");
  }
  if (!(tol >= 0.0)) throw std::domain_error("verify_ideal: tol must be >= 0");

  VerificationReport report;
  report.measure_desc = m.describe();
  report.mode = mode;
  report.tol = tol;
  report.seed = seed;
  report.base_mass = ideal_measure(ideal, m);

  report.min_margin = kInf;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw std::domain_error("verify_ideal: t must be positive");
    if (mode == VerifyMode::Assert && t < 1.0) {
      throw std::domain_error("verify_ideal: t < 1 requires explore mode");
    }
    VerifyRecord rec;
    rec.t = t;
    rec.lhs = ideal_measure(dilated(ideal, t), m);
    if (report.base_mass <= 0.0) {
      rec.rhs = 0.0;
    } else if (report.base_mass >= 1.0) {
      rec.rhs = 1.0;
    } else {
      rec.rhs = s_bound(m, report.base_mass, t);
    }
    rec.margin = rec.lhs - rec.rhs;
    report.min_margin = std::min(report.min_margin, rec.margin);
    report.records.push_back(rec);
  }
  if (report.records.empty()) report.min_margin = 0.0;
  report.pass = report.min_margin >= -tol;
  return report;
}

double mp_step2d(double p, const StepIdeal2D& ideal) {
  const auto& bp = ideal.breakpoints();
  const auto& hs = ideal.heights();
  double result = 1.0 / p;
  double t_lo = 1.0;  // T(x_{i-1})
  double s_lo = 0.0;  // S(x_{i-1})
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double t_hi = (i < bp.size()) ? tail_T(p, bp[i]) : 0.0;
    const double s_hi = (i < bp.size()) ? partial_moment_S(p, bp[i]) : 1.0 / p;
    result -= tail_T(p, hs[i]) * (s_hi - s_lo);
    result += partial_moment_S(p, hs[i]) * (t_lo - t_hi);
    t_lo = t_hi;
    s_lo = s_hi;
  }
  return result;
}

double mp_strip(double p, double width) {
  return 1.0 / p + partial_moment_S(p, width) - tail_T(p, width) / p;
}

double derivative_at_one(double p, const StepIdeal2D& ideal) {
  return 2.0 * measure_step2d(ideal, MeasureSpec::nu_p(p)) - p * mp_step2d(p, ideal);
}

MonotoneStep::MonotoneStep(std::vector<double> jumps, std::vector<double> values)
    : jumps_(std::move(jumps)), values_(std::move(values)) {
  if (jumps_.size() != values_.size()) {
    throw std::invalid_argument("MonotoneStep: jumps/values size mismatch");
  }
  double prev_jump = -kInf;
  for (double a : jumps_) {
    if (std::isnan(a) || a < 0.0 || std::isinf(a) || a <= prev_jump) {
      throw std::invalid_argument(
          "MonotoneStep: jumps must be finite, >= 0, strictly increasing");
    }
    prev_jump = a;
  }
  double prev_value = 0.0;
  for (double v : values_) {
    if (std::isnan(v) || v < prev_value || v > 1.0) {
      throw std::invalid_argument("MonotoneStep: values must be nondecreasing in [0, 1]");
    }
    prev_value = v;
  }
}

MonotoneStep MonotoneStep::indicator(double a) {
  if (std::isnan(a) || a < 0.0) {
    throw std::invalid_argument("MonotoneStep::indicator: a must be in [0, inf]");
  }
  if (std::isinf(a)) return MonotoneStep();
  return MonotoneStep({a}, {1.0});
}

double MonotoneStep::value_at(double x) const {
  const auto it = std::upper_bound(jumps_.begin(), jumps_.end(), x);
  const auto idx = static_cast<std::size_t>(it - jumps_.begin());
  return idx == 0 ? 0.0 : values_[idx - 1];
}

double psi_phi(double p, const MonotoneStep& g) {
  return psi_phi_segments(p, to_segments(g));
}

double lemma1_gap(double p, const MonotoneStep& g) {
  const HalfLineStep seg = to_segments(g);
  const double lhs = psi_phi_segments(p, seg);

  double rhs = 0.0;
  double t_lo = 1.0;
  double s_lo = 0.0;
  for (std::size_t i = 0; i < seg.values.size(); ++i) {
    const bool last = (i + 1 == seg.bounds.size());
    const double t_hi = last ? 0.0 : tail_T(p, seg.bounds[i + 1]);
    const double s_hi = last ? 1.0 / p : partial_moment_S(p, seg.bounds[i + 1]);
    rhs += seg.values[i] * ((s_hi - s_lo) - (t_lo - t_hi) / p);
    t_lo = t_hi;
    s_lo = s_hi;
  }
  return lhs - rhs;
}

double convexity_probe(double p, const MonotoneStep& g1, const MonotoneStep& g2,
                       std::span<const double> lambdas) {
  // Both functions re-sampled on the merged jump grid.
  std::vector<double> bounds{0.0};
  for (double a : g1.jumps()) bounds.push_back(a);
  for (double a : g2.jumps()) bounds.push_back(a);
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

  HalfLineStep f1, f2;
  f1.bounds = f2.bounds = bounds;
  f1.values.reserve(bounds.size());
  f2.values.reserve(bounds.size());
  for (double b : bounds) {
    f1.values.push_back(g1.value_at(b));
    f2.values.push_back(g2.value_at(b));
  }

  const double psi1 = psi_phi_segments(p, f1);
  const double psi2 = psi_phi_segments(p, f2);

  double worst = -kInf;
  HalfLineStep combo;
  combo.bounds = bounds;
  combo.values.resize(bounds.size());
  for (double lambda : lambdas) {
    if (std::isnan(lambda) || lambda < 0.0 || lambda > 1.0) {
      throw std::domain_error("convexity_probe: lambda must be in [0, 1]");
    }
    for (std::size_t i = 0; i < bounds.size(); ++i) {
      combo.values[i] = lambda * f1.values[i] + (1.0 - lambda) * f2.values[i];
    }
    const double violation =
        psi_phi_segments(p, combo) - lambda * psi1 - (1.0 - lambda) * psi2;
    worst = std::max(worst, violation);
  }
  return worst;
}

double transport_check(double p, double alpha, const StepIdeal2D& ideal, double t) {
  const double lhs = measure_step2d(ideal.dilated(t), MeasureSpec::nu_p(p));
  const StepIdeal2D transported =
      ideal.tilde_transformed(alpha).dilated(std::pow(t, 1.0 / alpha));
  const double rhs = measure_step2d(transported, MeasureSpec::mu_p_alpha(p, alpha));
  return std::fabs(lhs - rhs);
}

}  // namespace sineq
