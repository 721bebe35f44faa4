#pragma once

#include <cmath>
#include <limits>

namespace sineq {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int levels = 0;
};

namespace quad_detail {

// Non-finite integrand values (integrable endpoint singularities) are
// treated as zero; the double-exponential weights vanish fast enough there.
inline double guarded(double fx) { return std::isfinite(fx) ? fx : 0.0; }

}  // namespace quad_detail

/// Tanh-sinh (double exponential) quadrature of f over the finite interval
/// (a, b). Nodes are placed as distances from the endpoints, so integrable
/// endpoint singularities and infinite endpoint derivatives are handled.
/// Refines by level doubling until the estimate moves by less than abs_tol.
template <typename F>
QuadResult tanh_sinh(F&& f, double a, double b, double abs_tol = 1e-12) {
  constexpr double kPiHalf = 1.5707963267948966;
  constexpr double kTMax = 6.1;
  const double hw = 0.5 * (b - a);

  // weight and node offsets from each endpoint at abscissa t >= 0
  const auto eval_pair = [&](double t) {
    const double u = kPiHalf * std::sinh(t);
    const double e2 = std::exp(-2.0 * u);             // in (0,1]
    const double delta = hw * 2.0 * e2 / (1.0 + e2);  // distance from endpoint
    const double sech2 = 4.0 * e2 / ((1.0 + e2) * (1.0 + e2));
    const double w = hw * kPiHalf * std::cosh(t) * sech2;
    if (w == 0.0 || delta == 0.0) return 0.0;  // node collapsed onto an endpoint
    double s = quad_detail::guarded(f(b - delta)) * w;
    if (t > 0.0) s += quad_detail::guarded(f(a + delta)) * w;
    return s;
  };

  QuadResult out;
  double h = 1.0;
  double sum = eval_pair(0.0);
  for (double t = h; t <= kTMax; t += h) sum += eval_pair(t);
  double integral = h * sum;

  for (int level = 1; level <= 12; ++level) {
    h *= 0.5;
    for (double t = h; t <= kTMax; t += 2.0 * h) sum += eval_pair(t);
    const double refined = h * sum;
    out.error_estimate = std::fabs(refined - integral);
    integral = refined;
    out.levels = level;
    if (level >= 3 &&
        out.error_estimate <= std::fmax(abs_tol * 0.25, std::fabs(integral) * 1e-15)) {
      break;
    }
  }
  out.value = integral;
  return out;
}

/// Exp-sinh quadrature of f over (0, ∞): x = exp((π/2)·sinh t). Suited to
/// integrands with an integrable singularity at 0 and (super)exponential
/// decay at infinity.
template <typename F>
QuadResult exp_sinh_halfline(F&& f, double abs_tol = 1e-12) {
  constexpr double kPiHalf = 1.5707963267948966;
  constexpr double kTMax = 6.7;

  const auto eval_at = [&](double t) {
    const double u = kPiHalf * std::sinh(t);
    if (u > 700.0 || u < -740.0) return 0.0;
    const double x = std::exp(u);
    const double w = x * kPiHalf * std::cosh(t);
    return quad_detail::guarded(f(x)) * w;
  };

  QuadResult out;
  double h = 1.0;
  double sum = eval_at(0.0);
  for (double t = h; t <= kTMax; t += h) sum += eval_at(t) + eval_at(-t);
  double integral = h * sum;

  for (int level = 1; level <= 12; ++level) {
    h *= 0.5;
    for (double t = h; t <= kTMax; t += 2.0 * h) sum += eval_at(t) + eval_at(-t);
    const double refined = h * sum;
    out.error_estimate = std::fabs(refined - integral);
    integral = refined;
    out.levels = level;
    if (level >= 3 &&
        out.error_estimate <= std::fmax(abs_tol * 0.25, std::fabs(integral) * 1e-15)) {
      break;
    }
  }
  out.value = integral;
  return out;
}

}  // namespace sineq
