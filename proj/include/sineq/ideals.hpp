#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "sineq/measures.hpp"

namespace sineq {

class DimensionLimitError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A 2-D ideal {(x,y) : |y| <= f(|x|)} with a nonincreasing right-continuous
/// step boundary f: heights[i] on [breakpoints[i-1], breakpoints[i]) with
/// x_0 = 0, and heights[k] on [breakpoints[k-1], ∞). Heights may be ∞
/// (strips) and the final height may be 0 (compact ideals).
class StepIdeal2D {
 public:
  /// The empty ideal (boundary identically zero).
  StepIdeal2D() : heights_{0.0} {}
  StepIdeal2D(std::vector<double> breakpoints, std::vector<double> heights);

  static StepIdeal2D strip(double width);
  static StepIdeal2D box(double half_width, double half_height);

  /// Step discretization of a sampled nonincreasing boundary: value
  /// samples[i] applies on [xs[i-1], xs[i]) and samples[k] beyond xs[k-1].
  /// Minor monotonicity violations in the samples are clamped.
  static StepIdeal2D from_boundary_samples(const std::vector<double>& xs,
                                           const std::vector<double>& samples);

  [[nodiscard]] const std::vector<double>& breakpoints() const { return breakpoints_; }
  [[nodiscard]] const std::vector<double>& heights() const { return heights_; }
  [[nodiscard]] std::size_t segment_count() const { return heights_.size(); }

  [[nodiscard]] double boundary_at(double x) const;
  [[nodiscard]] bool contains(double x, double y) const;

  /// Width when the ideal is a strip / full plane (all heights in {0, ∞});
  /// nullopt otherwise. An all-zero ideal reports width 0.
  [[nodiscard]] std::optional<double> strip_width() const;

  [[nodiscard]] StepIdeal2D dilated(double t) const;
  [[nodiscard]] StepIdeal2D tilde_transformed(double alpha) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> heights_;
};

/// An n-D ideal given as a finite union of symmetric boxes; corners are the
/// positive corner of each box, entries in (0, ∞].
class BoxUnionIdeal {
 public:
  BoxUnionIdeal(int dim, std::vector<std::vector<double>> corners);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const std::vector<std::vector<double>>& corners() const { return corners_; }
  [[nodiscard]] bool empty() const { return corners_.empty(); }

  [[nodiscard]] bool contains(std::span<const double> x) const;

  /// Removes corners dominated componentwise by another corner.
  [[nodiscard]] BoxUnionIdeal pruned() const;

  [[nodiscard]] BoxUnionIdeal dilated(double t) const;
  [[nodiscard]] BoxUnionIdeal tilde_transformed(double alpha) const;

  /// Section {y : (y, level) ∈ K}, an ideal of dimension dim-1.
  [[nodiscard]] BoxUnionIdeal section(double level) const;

 private:
  int dim_;
  std::vector<std::vector<double>> corners_;
};

/// {x : Σ|x_j|^s <= r^s}; down-closed for every s > 0.
class LqBallIdeal {
 public:
  LqBallIdeal(int dim, double s, double r);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] double s() const { return s_; }
  [[nodiscard]] double r() const { return r_; }

  [[nodiscard]] bool contains(std::span<const double> x) const;
  [[nodiscard]] LqBallIdeal dilated(double t) const;
  /// Section at |level| < r: the (dim-1)-ball of radius (r^s - |level|^s)^{1/s}.
  [[nodiscard]] LqBallIdeal section(double level) const;

 private:
  int dim_;
  double s_;
  double r_;
};

/// Exact product mass of a step ideal: Σ_i (Ψ(x_i) - Ψ(x_{i-1}))·Ψ(h_i).
[[nodiscard]] double measure_step2d(const StepIdeal2D& ideal, const MeasureSpec& m);

/// Exact product mass of a box union by grid disjointification (dim <= 6).
[[nodiscard]] double measure_boxes(const BoxUnionIdeal& ideal, const MeasureSpec& m);

/// Quadrature mass of an lq ball: exact in dim 1, tanh-sinh in dim 2 (abs
/// error <= 1e-9) and nested in dim 3 (<= 1e-7).
[[nodiscard]] double measure_lqball(const LqBallIdeal& ideal, const MeasureSpec& m);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

[[nodiscard]] McEstimate mc_measure(const StepIdeal2D& ideal, const MeasureSpec& m,
                                    std::size_t n_samples, std::uint64_t seed);
[[nodiscard]] McEstimate mc_measure(const BoxUnionIdeal& ideal, const MeasureSpec& m,
                                    std::size_t n_samples, std::uint64_t seed);
[[nodiscard]] McEstimate mc_measure(const LqBallIdeal& ideal, const MeasureSpec& m,
                                    std::size_t n_samples, std::uint64_t seed);

using Ideal = std::variant<StepIdeal2D, BoxUnionIdeal, LqBallIdeal>;

[[nodiscard]] int ideal_dim(const Ideal& ideal);
[[nodiscard]] Ideal dilated(const Ideal& ideal, double t);
[[nodiscard]] double ideal_measure(const Ideal& ideal, const MeasureSpec& m);
[[nodiscard]] McEstimate mc_measure(const Ideal& ideal, const MeasureSpec& m,
                                    std::size_t n_samples, std::uint64_t seed);

}  // namespace sineq
