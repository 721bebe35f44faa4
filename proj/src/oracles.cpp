#include "sineq/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sineq/core_fns.hpp"
#include "sineq/quadrature.hpp"
#include "sineq/special_functions.hpp"

namespace sineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double halfline_density_integral(const MeasureSpec& m, double lo, double hi,
                                 double abs_tol) {
  if (std::isinf(hi)) {
    return exp_sinh_halfline([&](double y) { return 2.0 * m.density(lo + y); }, abs_tol)
        .value;
  }
  return tanh_sinh([&](double x) { return 2.0 * m.density(x); }, lo, hi, abs_tol).value;
}

}  // namespace

double integrate_density(const MeasureSpec& m, double abs_tol) {
  return exp_sinh_halfline([&](double x) { return 2.0 * m.density(x); }, abs_tol).value;
}

double abs_moment_quadrature(const MeasureSpec& m, double r, double abs_tol) {
  return exp_sinh_halfline(
             [&](double x) { return 2.0 * std::pow(x, r) * m.density(x); }, abs_tol)
      .value;
}

double reg_gamma_p_quadrature(double s, double x) {
  if (x == 0.0) return 0.0;
  const double log_norm = log_gamma(s);
  const auto integrand = [&](double t) {
    return std::exp((s - 1.0) * std::log(t) - t - log_norm);
  };
  return tanh_sinh(integrand, 0.0, x, 1e-13).value;
}

double tail_T_quadrature(double p, double u) {
  const double c_p = normalization_c(p);
  return exp_sinh_halfline(
             [&](double y) { return c_p * std::exp(-std::pow(u + y, p)); }, 1e-13)
      .value;
}

double partial_S_quadrature(double p, double u) {
  const double c_p = normalization_c(p);
  if (std::isinf(u)) {
    return exp_sinh_halfline(
               [&](double x) { return c_p * std::pow(x, p) * std::exp(-std::pow(x, p)); },
               1e-13)
        .value;
  }
  return tanh_sinh(
             [&](double x) { return c_p * std::pow(x, p) * std::exp(-std::pow(x, p)); },
             0.0, u, 1e-13)
      .value;
}

double measure_boxes_fubini(const BoxUnionIdeal& ideal, const MeasureSpec& m) {
  if (ideal.empty()) return 0.0;
  if (ideal.dim() == 1) {
    double extent = 0.0;
    for (const auto& c : ideal.corners()) extent = std::max(extent, c[0]);
    return halfline_density_integral(m, 0.0, extent, 1e-11);
  }

  // Sections are constant between consecutive last-coordinate extents.
  std::vector<double> grid{0.0};
  for (const auto& c : ideal.corners()) {
    if (!std::isinf(c.back())) grid.push_back(c.back());
  }
  grid.push_back(kInf);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double lo = grid[i];
    const double hi = grid[i + 1];
    const double probe = std::isinf(hi) ? lo + 1.0 : 0.5 * (lo + hi);
    const BoxUnionIdeal section = ideal.section(probe);
    if (section.empty()) continue;
    const double section_mass = measure_boxes_fubini(section, m);
    if (section_mass == 0.0) continue;
    total += section_mass * halfline_density_integral(m, lo, hi, 1e-11);
  }
  return total;
}

}  // namespace sineq
