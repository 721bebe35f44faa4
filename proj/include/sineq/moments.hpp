#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sineq/measures.hpp"
#include "sineq/s_inequality.hpp"

namespace sineq {

/// A norm on ℝⁿ invariant under coordinate sign flips: an l_s norm
/// (s in [1, ∞]), a weighted max, or a single-coordinate seminorm used as
/// the sharpness witness.
class UnconditionalNorm {
 public:
  enum class Kind { LsNorm, WeightedMax, Coordinate };

  static UnconditionalNorm ls(double s);
  static UnconditionalNorm weighted_max(std::vector<double> weights);
  static UnconditionalNorm coordinate(int j);  // 1-based

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double operator()(std::span<const double> x) const;
  [[nodiscard]] std::string describe() const;

 private:
  Kind kind_;
  double s_ = 0.0;
  std::vector<double> weights_;
  int coordinate_ = 0;
};

/// C_{p,q} = (E|X|^p)^{1/p} / (E|X|^q)^{1/q} via closed-form gamma ratios;
/// >= 1 and attained by the coordinate norm.
[[nodiscard]] double optimal_constant(const MeasureSpec& m, double p, double q);

struct MomentEstimate {
  double value = 0.0;
  double std_error = 0.0;  // delta-method standard error of value
};

/// Monte Carlo estimate of (E‖X‖^r)^{1/r} over μⁿ, deterministic per seed.
[[nodiscard]] MomentEstimate norm_moment(const MeasureSpec& m, int n,
                                         const UnconditionalNorm& norm, double r,
                                         std::size_t n_samples, std::uint64_t seed);

struct ComparisonReport {
  std::string measure_desc;
  std::string norm_desc;
  int n = 0;
  double p = 0.0;
  double q = 0.0;
  double lhs = 0.0;           // (E‖X‖^p)^{1/p}
  double rhs = 0.0;           // C_{p,q}·(E‖X‖^q)^{1/q}
  double constant = 0.0;      // C_{p,q}
  double slack = 0.0;         // rhs - lhs
  double std_error = 0.0;     // combined standard error
  bool holds = false;         // lhs <= rhs within 4σ
  double sharpness_ratio = 0.0;
  bool sharpness_checked = false;
  bool sharp = false;         // ratio equals the constant within 4σ
};

/// Checks the moment comparison at the given parameters; the coordinate
/// norm additionally checks that the ratio attains C_{p,q}.
[[nodiscard]] ComparisonReport verify_comparison(const MeasureSpec& m, int n,
                                                 const UnconditionalNorm& norm, double p,
                                                 double q, std::size_t n_samples,
                                                 std::uint64_t seed,
                                                 VerifyMode mode = VerifyMode::Assert);

}  // namespace sineq
