#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sineq/ideals.hpp"
#include "sineq/measures.hpp"

namespace sineq {

class UnsupportedAssertionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class VerifyMode { Assert, Explore };

[[nodiscard]] std::string to_string(VerifyMode mode);

/// Concentration bound Ψ(t·Ψ^{-1}(mass)): the dilated mass of the strip
/// holding the given mass; equals mass at t = 1.
[[nodiscard]] double s_bound(const MeasureSpec& m, double mass, double t);

struct VerifyRecord {
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

struct VerificationReport {
  std::string measure_desc;
  std::string ideal_desc;
  VerifyMode mode = VerifyMode::Assert;
  double tol = 0.0;
  std::uint64_t seed = 0;
  double base_mass = 0.0;
  std::vector<VerifyRecord> records;
  double min_margin = 0.0;
  bool pass = false;
};

/// For each t computes μⁿ(tK) by the exact calculus (quadrature for lq
/// balls) and the margin against s_bound. Assert mode requires a supported
/// measure and t >= 1 throughout.
[[nodiscard]] VerificationReport verify_ideal(const MeasureSpec& m, const Ideal& ideal,
                                              int dim, std::span<const double> t_grid,
                                              double tol,
                                              VerifyMode mode = VerifyMode::Assert,
                                              std::uint64_t seed = 0);

/// M_p(K) = ∫_K (|x|^p + |y|^p) dν²_p, exact for step ideals:
/// 1/p - Σ_i T(h_i)(S(x_i) - S(x_{i-1})) + Σ_i S(h_i)(T(x_{i-1}) - T(x_i)).
[[nodiscard]] double mp_step2d(double p, const StepIdeal2D& ideal);

/// M_p of the strip of the given width: 1/p + S(w) - T(w)/p.
[[nodiscard]] double mp_strip(double p, double width);

/// d/dt ν²_p(tK) at t = 1, namely 2·ν²_p(K) - p·M_p(K).
[[nodiscard]] double derivative_at_one(double p, const StepIdeal2D& ideal);

/// Nondecreasing right-continuous step function g: [0, ∞) -> [0, 1];
/// g = 0 before the first jump and values[i] on [jumps[i], jumps[i+1]).
class MonotoneStep {
 public:
  MonotoneStep() = default;
  MonotoneStep(std::vector<double> jumps, std::vector<double> values);

  /// 1_{[a, ∞)}; a = ∞ yields the zero function.
  static MonotoneStep indicator(double a);

  [[nodiscard]] const std::vector<double>& jumps() const { return jumps_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] double value_at(double x) const;

 private:
  std::vector<double> jumps_;
  std::vector<double> values_;
};

/// Ψ_Φ(g) = ∫ Φ(g) dμ₊ - Φ(∫ g dμ₊), evaluated in closed form on the
/// step segments with masses T(a_i) - T(a_{i+1}).
[[nodiscard]] double psi_phi(double p, const MonotoneStep& g);

/// LHS - RHS of the functional inequality
///   Ψ_Φ(g) <= ∫ g(x)(x^p - 1/p) dμ₊(x);
/// nonpositive (up to round-off) for p <= 1, zero on indicators.
[[nodiscard]] double lemma1_gap(double p, const MonotoneStep& g);

/// Max over the lambda grid of
///   Ψ_Φ(λg₁ + (1-λ)g₂) - λΨ_Φ(g₁) - (1-λ)Ψ_Φ(g₂);
/// nonpositive (up to round-off) whenever 1/Φ'' is concave (p <= 1).
[[nodiscard]] double convexity_probe(double p, const MonotoneStep& g1,
                                     const MonotoneStep& g2,
                                     std::span<const double> lambdas);

/// |ν_p²(tK) - μ_{p,α}²(t^{1/α}·K̃)| where K̃ is the coordinatewise power
/// transport of K; zero in exact arithmetic for every p, α.
[[nodiscard]] double transport_check(double p, double alpha, const StepIdeal2D& ideal,
                                     double t);

}  // namespace sineq
