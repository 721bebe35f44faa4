#pragma once

namespace sineq {

/// Normalization c_p = 1/Γ(1+1/p) of the half-line density c_p·e^{-x^p}.
[[nodiscard]] double normalization_c(double p);

/// The probability measure μ₊ with density c_p·e^{-x^p} on [0, ∞).
class HalfLineMeasure {
 public:
  explicit HalfLineMeasure(double p);

  [[nodiscard]] double p() const { return p_; }
  [[nodiscard]] double c_p() const { return c_p_; }
  [[nodiscard]] double density(double x) const;

 private:
  double p_;
  double c_p_;
};

/// Tail T(u) = c_p ∫_u^∞ e^{-x^p} dx = Q(1/p, u^p).
/// Strictly decreasing, T(0) = 1, T(∞) = 0. u = ∞ is a first-class input.
[[nodiscard]] double tail_T(double p, double u);

/// Partial p-moment S(u) = c_p ∫_0^u x^p e^{-x^p} dx = (1/p)·P(1+1/p, u^p).
/// Strictly increasing, S(0) = 0, S(∞) = 1/p.
[[nodiscard]] double partial_moment_S(double p, double u);

/// Residual of the integration-by-parts identity
///   S(u) = -(c_p/p)·u·e^{-u^p} + (1/p)(1 - T(u)).
[[nodiscard]] double s_identity_residual(double p, double u);

/// F(v) = T^{-1}(v) for v in (0,1]: monotone bracketing plus
/// bisection/secant refinement until |T(F(v)) - v| <= 1e-12. F(1) = 0.
[[nodiscard]] double inv_T(double p, double v);

/// Φ(v) = S(T^{-1}(v)) with the boundary conventions Φ(0) = 1/p, Φ(1) = 0.
[[nodiscard]] double phi_value(double p, double v);

/// Φ = S∘T⁻¹ together with its derivative stack at one point:
///   Φ'      = -F^p
///   Φ''     = (p/c_p)·F^{p-1}·e^{F^p}                  (> 0 on (0,1))
///   (1/Φ'')'  = 1 - ((1-p)/p)·F^{-p}
///   (1/Φ'')'' = -((1-p)/c_p)·F^{-p-1}·e^{F^p}          (≤ 0 iff p ≤ 1)
struct PhiStack {
  double value;
  double d1;
  double d2;
  double inv_d2_d1;
  double inv_d2_d2;
  double f_point;
};

/// Evaluates the Φ stack at v in [0,1]; v in {0,1} yields the limit values.
[[nodiscard]] PhiStack phi_stack(double p, double v);

}  // namespace sineq
