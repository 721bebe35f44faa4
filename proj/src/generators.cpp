#include "sineq/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "sineq/core_fns.hpp"

namespace sineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Distinct uniforms in (lo, hi); distinctness keeps quantile maps strictly
// monotone.
std::vector<double> distinct_uniforms(Rng& rng, int count, double lo, double hi) {
  std::vector<double> us;
  us.reserve(static_cast<std::size_t>(count));
  int guard = 0;
  while (static_cast<int>(us.size()) < count && guard < 10000) {
    const double u = lo + (hi - lo) * rng.uniform_pos();
    if (std::find(us.begin(), us.end(), u) == us.end()) us.push_back(u);
    ++guard;
  }
  return us;
}

}  // namespace

StepIdeal2D random_step_ideal(const MeasureSpec& m, Rng& rng) {
  if (rng.uniform() < 0.1) {
    return StepIdeal2D::strip(m.interval_mass_inv(0.05 + 0.9 * rng.uniform()));
  }
  const int k = 1 + static_cast<int>(rng.uniform() * 8.0);
  return random_step_ideal_k(m, std::min(k, 8), rng);
}

StepIdeal2D random_step_ideal_k(const MeasureSpec& m, int k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("random_step_ideal_k: k must be >= 1");
  auto bp_quantiles = distinct_uniforms(rng, k, 0.02, 0.98);
  std::sort(bp_quantiles.begin(), bp_quantiles.end());
  std::vector<double> breakpoints;
  breakpoints.reserve(bp_quantiles.size());
  for (double u : bp_quantiles) breakpoints.push_back(m.interval_mass_inv(u));

  auto h_quantiles = distinct_uniforms(rng, k + 1, 0.02, 0.98);
  std::sort(h_quantiles.begin(), h_quantiles.end(), std::greater<>());
  std::vector<double> heights;
  heights.reserve(h_quantiles.size());
  for (double u : h_quantiles) heights.push_back(m.interval_mass_inv(u));

  return StepIdeal2D(std::move(breakpoints), std::move(heights));
}

BoxUnionIdeal random_box_union(const MeasureSpec& m, int dim, Rng& rng) {
  const int n_boxes = 1 + static_cast<int>(rng.uniform() * 4.0);
  std::vector<std::vector<double>> corners;
  corners.reserve(static_cast<std::size_t>(n_boxes));
  for (int b = 0; b < std::min(n_boxes, 4); ++b) {
    std::vector<double> corner(static_cast<std::size_t>(dim));
    for (double& c : corner) {
      c = (rng.uniform() < 0.1) ? kInf
                                : m.interval_mass_inv(0.05 + 0.9 * rng.uniform_pos());
    }
    corners.push_back(std::move(corner));
  }
  return BoxUnionIdeal(dim, std::move(corners)).pruned();
}

MonotoneStep random_monotone_step(double p, Rng& rng) {
  const int r = 1 + static_cast<int>(rng.uniform() * 6.0);
  auto tails = distinct_uniforms(rng, std::min(r, 6), 0.02, 0.98);
  // Descending tail values map to ascending jump points through T^{-1}.
  std::sort(tails.begin(), tails.end(), std::greater<>());
  std::vector<double> jumps;
  jumps.reserve(tails.size());
  for (double u : tails) jumps.push_back(inv_T(p, u));

  std::vector<double> values(jumps.size());
  for (double& v : values) v = rng.uniform();
  std::sort(values.begin(), values.end());
  return MonotoneStep(std::move(jumps), std::move(values));
}

}  // namespace sineq
