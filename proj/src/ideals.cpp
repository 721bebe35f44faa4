#include "sineq/ideals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sineq/quadrature.hpp"
#include "sineq/rng.hpp"

namespace sineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_scale(double t, const char* what) {
  if (!(t > 0.0) || std::isinf(t)) {
    throw std::domain_error(std::string(what) + ": factor must be positive and finite");
  }
}

double pow_or_inf(double x, double e) {
  return std::isinf(x) ? kInf : std::pow(x, e);
}

}  // namespace

// ---------------------------------------------------------------------------
// StepIdeal2D

StepIdeal2D::StepIdeal2D(std::vector<double> breakpoints, std::vector<double> heights)
    : breakpoints_(std::move(breakpoints)), heights_(std::move(heights)) {
  if (heights_.size() != breakpoints_.size() + 1) {
    throw std::invalid_argument("StepIdeal2D: need one more height than breakpoints");
  }
  double prev = 0.0;
  for (double x : breakpoints_) {
    if (std::isnan(x) || std::isinf(x) || x <= prev) {
      throw std::invalid_argument(
          "StepIdeal2D: breakpoints must be finite, positive, strictly increasing");
    }
    prev = x;
  }
  double prev_h = kInf;
  for (double h : heights_) {
    if (std::isnan(h) || h < 0.0 || h > prev_h) {
      throw std::invalid_argument("StepIdeal2D: heights must be nonincreasing in [0, inf]");
    }
    prev_h = h;
  }
}

StepIdeal2D StepIdeal2D::strip(double width) {
  if (!(width > 0.0) || std::isinf(width)) {
    throw std::invalid_argument("StepIdeal2D::strip: width must be positive and finite");
  }
  return StepIdeal2D({width}, {kInf, 0.0});
}

StepIdeal2D StepIdeal2D::box(double half_width, double half_height) {
  return StepIdeal2D({half_width}, {half_height, 0.0});
}

StepIdeal2D StepIdeal2D::from_boundary_samples(const std::vector<double>& xs,
                                               const std::vector<double>& samples) {
  if (samples.size() != xs.size() + 1) {
    throw std::invalid_argument("from_boundary_samples: need xs.size()+1 samples");
  }
  std::vector<double> heights = samples;
  for (std::size_t i = 1; i < heights.size(); ++i) {
    heights[i] = std::min(heights[i], heights[i - 1]);
  }
  return StepIdeal2D(xs, std::move(heights));
}

double StepIdeal2D::boundary_at(double x) const {
  const double ax = std::fabs(x);
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), ax);
  return heights_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

bool StepIdeal2D::contains(double x, double y) const {
  return std::fabs(y) <= boundary_at(x);
}

std::optional<double> StepIdeal2D::strip_width() const {
  double width = 0.0;
  for (std::size_t i = 0; i < heights_.size(); ++i) {
    const double h = heights_[i];
    if (h != 0.0 && !std::isinf(h)) return std::nullopt;
    if (std::isinf(h)) {
      width = (i < breakpoints_.size()) ? breakpoints_[i] : kInf;
    }
  }
  return width;
}

StepIdeal2D StepIdeal2D::dilated(double t) const {
  require_scale(t, "StepIdeal2D::dilated");
  std::vector<double> bp(breakpoints_.size());
  std::vector<double> hs(heights_.size());
  for (std::size_t i = 0; i < bp.size(); ++i) bp[i] = t * breakpoints_[i];
  for (std::size_t i = 0; i < hs.size(); ++i) hs[i] = t * heights_[i];
  return StepIdeal2D(std::move(bp), std::move(hs));
}

StepIdeal2D StepIdeal2D::tilde_transformed(double alpha) const {
  require_scale(alpha, "StepIdeal2D::tilde_transformed");
  const double e = 1.0 / alpha;
  std::vector<double> bp(breakpoints_.size());
  std::vector<double> hs(heights_.size());
  for (std::size_t i = 0; i < bp.size(); ++i) bp[i] = std::pow(breakpoints_[i], e);
  for (std::size_t i = 0; i < hs.size(); ++i) hs[i] = pow_or_inf(heights_[i], e);
  return StepIdeal2D(std::move(bp), std::move(hs));
}

double measure_step2d(const StepIdeal2D& ideal, const MeasureSpec& m) {
  const auto& bp = ideal.breakpoints();
  const auto& hs = ideal.heights();
  double mass = 0.0;
  double psi_lo = 0.0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double psi_hi = (i < bp.size()) ? m.interval_mass(bp[i]) : 1.0;
    if (hs[i] > 0.0) mass += (psi_hi - psi_lo) * m.interval_mass(hs[i]);
    psi_lo = psi_hi;
  }
  return mass;
}

// ---------------------------------------------------------------------------
// BoxUnionIdeal

BoxUnionIdeal::BoxUnionIdeal(int dim, std::vector<std::vector<double>> corners)
    : dim_(dim), corners_(std::move(corners)) {
  if (dim_ < 1) throw std::invalid_argument("BoxUnionIdeal: dim must be >= 1");
  for (const auto& c : corners_) {
    if (static_cast<int>(c.size()) != dim_) {
      throw std::invalid_argument("BoxUnionIdeal: corner dimension mismatch");
    }
    for (double v : c) {
      if (std::isnan(v) || v <= 0.0) {
        throw std::invalid_argument("BoxUnionIdeal: corner entries must be in (0, inf]");
      }
    }
  }
}

bool BoxUnionIdeal::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) {
    throw std::invalid_argument("BoxUnionIdeal::contains: point dimension mismatch");
  }
  for (const auto& c : corners_) {
    bool inside = true;
    for (int j = 0; j < dim_; ++j) {
      if (std::fabs(x[j]) > c[static_cast<std::size_t>(j)]) {
        inside = false;
        break;
      }
    }
    if (inside) return true;
  }
  return false;
}

BoxUnionIdeal BoxUnionIdeal::pruned() const {
  std::vector<std::vector<double>> kept;
  for (std::size_t i = 0; i < corners_.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < corners_.size(); ++j) {
      if (i == j) continue;
      bool le = true;
      bool equal = true;
      for (int d = 0; d < dim_; ++d) {
        const double a = corners_[i][static_cast<std::size_t>(d)];
        const double b = corners_[j][static_cast<std::size_t>(d)];
        if (a > b) {
          le = false;
          break;
        }
        if (a != b) equal = false;
      }
      // Exact duplicates: keep only the first occurrence.
      if (le && (!equal || j < i)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(corners_[i]);
  }
  return BoxUnionIdeal(dim_, std::move(kept));
}

BoxUnionIdeal BoxUnionIdeal::dilated(double t) const {
  require_scale(t, "BoxUnionIdeal::dilated");
  auto corners = corners_;
  for (auto& c : corners) {
    for (double& v : c) v *= t;
  }
  return BoxUnionIdeal(dim_, std::move(corners));
}

BoxUnionIdeal BoxUnionIdeal::tilde_transformed(double alpha) const {
  require_scale(alpha, "BoxUnionIdeal::tilde_transformed");
  const double e = 1.0 / alpha;
  auto corners = corners_;
  for (auto& c : corners) {
    for (double& v : c) v = pow_or_inf(v, e);
  }
  return BoxUnionIdeal(dim_, std::move(corners));
}

BoxUnionIdeal BoxUnionIdeal::section(double level) const {
  if (dim_ < 2) throw std::domain_error("BoxUnionIdeal::section: dim must be >= 2");
  const double a = std::fabs(level);
  std::vector<std::vector<double>> kept;
  for (const auto& c : corners_) {
    if (c.back() >= a) kept.emplace_back(c.begin(), c.end() - 1);
  }
  return BoxUnionIdeal(dim_ - 1, std::move(kept));
}

double measure_boxes(const BoxUnionIdeal& ideal, const MeasureSpec& m) {
  const int n = ideal.dim();
  if (n > 6) throw DimensionLimitError("measure_boxes: dim must be <= 6");
  const auto& corners = ideal.corners();
  if (corners.empty()) return 0.0;
  if (corners.size() > 64) {
    throw std::invalid_argument("measure_boxes: at most 64 boxes supported");
  }

  // Per-axis grid of distinct coordinates (plus 0 and ∞) and, for every
  // grid interval, the set of boxes whose extent covers it.
  std::vector<std::vector<double>> psi(static_cast<std::size_t>(n));
  std::vector<std::vector<std::uint64_t>> covers(static_cast<std::size_t>(n));
  std::vector<std::size_t> cells(static_cast<std::size_t>(n));
  for (int axis = 0; axis < n; ++axis) {
    std::vector<double> grid{0.0, kInf};
    for (const auto& c : corners) grid.push_back(c[static_cast<std::size_t>(axis)]);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const std::size_t intervals = grid.size() - 1;
    auto& psi_axis = psi[static_cast<std::size_t>(axis)];
    psi_axis.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) psi_axis[i] = m.interval_mass(grid[i]);

    auto& cover_axis = covers[static_cast<std::size_t>(axis)];
    cover_axis.assign(intervals, 0);
    for (std::size_t b = 0; b < corners.size(); ++b) {
      const double extent = corners[b][static_cast<std::size_t>(axis)];
      for (std::size_t i = 0; i < intervals; ++i) {
        if (grid[i + 1] <= extent) cover_axis[i] |= (1ULL << b);
      }
    }
    cells[static_cast<std::size_t>(axis)] = intervals;
  }

  double mass = 0.0;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  for (;;) {
    std::uint64_t cover = ~0ULL;
    double cell_mass = 1.0;
    for (int axis = 0; axis < n; ++axis) {
      const std::size_t i = idx[static_cast<std::size_t>(axis)];
      cover &= covers[static_cast<std::size_t>(axis)][i];
      if (cover == 0) break;
      const auto& psi_axis = psi[static_cast<std::size_t>(axis)];
      cell_mass *= psi_axis[i + 1] - psi_axis[i];
    }
    if (cover != 0) mass += cell_mass;

    int axis = 0;
    while (axis < n) {
      if (++idx[static_cast<std::size_t>(axis)] < cells[static_cast<std::size_t>(axis)]) break;
      idx[static_cast<std::size_t>(axis)] = 0;
      ++axis;
    }
    if (axis == n) break;
  }
  return mass;
}

// ---------------------------------------------------------------------------
// LqBallIdeal

LqBallIdeal::LqBallIdeal(int dim, double s, double r) : dim_(dim), s_(s), r_(r) {
  if (dim_ < 1) throw std::invalid_argument("LqBallIdeal: dim must be >= 1");
  if (!(s_ > 0.0) || std::isinf(s_)) {
    throw std::invalid_argument("LqBallIdeal: s must be positive and finite");
  }
  if (!(r_ > 0.0) || std::isinf(r_)) {
    throw std::invalid_argument("LqBallIdeal: r must be positive and finite");
  }
}

bool LqBallIdeal::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) {
    throw std::invalid_argument("LqBallIdeal::contains: point dimension mismatch");
  }
  double sum = 0.0;
  for (double v : x) sum += std::pow(std::fabs(v) / r_, s_);
  return sum <= 1.0;
}

LqBallIdeal LqBallIdeal::dilated(double t) const {
  require_scale(t, "LqBallIdeal::dilated");
  return LqBallIdeal(dim_, s_, r_ * t);
}

LqBallIdeal LqBallIdeal::section(double level) const {
  if (dim_ < 2) throw std::domain_error("LqBallIdeal::section: dim must be >= 2");
  const double a = std::fabs(level);
  if (a >= r_) throw std::domain_error("LqBallIdeal::section: |level| must be < r");
  const double rho = r_ * std::pow(1.0 - std::pow(a / r_, s_), 1.0 / s_);
  return LqBallIdeal(dim_ - 1, s_, rho);
}

double measure_lqball(const LqBallIdeal& ideal, const MeasureSpec& m) {
  if (ideal.dim() == 1) return m.interval_mass(ideal.r());
  const double r = ideal.r();
  const double s = ideal.s();
  const auto section_radius = [&](double x) {
    if (x >= r) return 0.0;
    return r * std::pow(1.0 - std::pow(x / r, s), 1.0 / s);
  };
  if (ideal.dim() == 2) {
    const auto integrand = [&](double x) {
      return 2.0 * m.density(x) * m.interval_mass(section_radius(x));
    };
    return tanh_sinh(integrand, 0.0, r, 1e-10).value;
  }
  if (ideal.dim() == 3) {
    const auto integrand = [&](double x) {
      const double rho = section_radius(x);
      if (!(rho > 0.0)) return 0.0;
      return 2.0 * m.density(x) * measure_lqball(LqBallIdeal(2, s, rho), m);
    };
    return tanh_sinh(integrand, 0.0, r, 1e-8).value;
  }
  throw DimensionLimitError("measure_lqball: dim must be <= 3");
}

// ---------------------------------------------------------------------------
// Monte Carlo oracle

namespace {

template <typename Contains>
McEstimate mc_estimate(int dim, const MeasureSpec& m, std::size_t n_samples,
                       std::uint64_t seed, Contains&& inside) {
  Rng rng(seed);
  std::vector<double> x(static_cast<std::size_t>(dim));
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    for (double& v : x) v = m.sample_one(rng);
    if (inside(x)) ++hits;
  }
  McEstimate out;
  out.estimate = static_cast<double>(hits) / static_cast<double>(n_samples);
  out.std_error =
      std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(n_samples));
  return out;
}

}  // namespace

McEstimate mc_measure(const StepIdeal2D& ideal, const MeasureSpec& m,
                      std::size_t n_samples, std::uint64_t seed) {
  return mc_estimate(2, m, n_samples, seed,
                     [&](const std::vector<double>& x) { return ideal.contains(x[0], x[1]); });
}

McEstimate mc_measure(const BoxUnionIdeal& ideal, const MeasureSpec& m,
                      std::size_t n_samples, std::uint64_t seed) {
  return mc_estimate(ideal.dim(), m, n_samples, seed,
                     [&](const std::vector<double>& x) { return ideal.contains(x); });
}

McEstimate mc_measure(const LqBallIdeal& ideal, const MeasureSpec& m,
                      std::size_t n_samples, std::uint64_t seed) {
  return mc_estimate(ideal.dim(), m, n_samples, seed,
                     [&](const std::vector<double>& x) { return ideal.contains(x); });
}

// ---------------------------------------------------------------------------
// Variant helpers

int ideal_dim(const Ideal& ideal) {
  return std::visit(
      [](const auto& k) -> int {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, StepIdeal2D>) {
          return 2;
        } else {
          return k.dim();
        }
      },
      ideal);
}

Ideal dilated(const Ideal& ideal, double t) {
  return std::visit([&](const auto& k) -> Ideal { return k.dilated(t); }, ideal);
}

double ideal_measure(const Ideal& ideal, const MeasureSpec& m) {
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, StepIdeal2D>) {
          return measure_step2d(k, m);
        } else if constexpr (std::is_same_v<T, BoxUnionIdeal>) {
          return measure_boxes(k, m);
        } else {
          return measure_lqball(k, m);
        }
      },
      ideal);
}

McEstimate mc_measure(const Ideal& ideal, const MeasureSpec& m, std::size_t n_samples,
                      std::uint64_t seed) {
  return std::visit(
      [&](const auto& k) -> McEstimate { return mc_measure(k, m, n_samples, seed); }, ideal);
}

}  // namespace sineq
