#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sineq/rng.hpp"

namespace sineq {

enum class MeasureFamily { NuP, MuPAlpha, Weibull, GammaSym };

/// One of the four symmetric one-dimensional measure families:
///   nu_p       : (c_p/2)·e^{-|x|^p}
///   mu_p_alpha : (α·c_p/2)·|x|^{α-1}·e^{-|x|^{αp}}
///   weibull    : (α/2)·|x|^{α-1}·e^{-|x|^α}            (= mu_{1,α})
///   gamma      : |x|^{q-1}·e^{-|x|} / (2·Γ(q))          (= mu_{1/q,q})
/// with c_p = 1/Γ(1+1/p).
class MeasureSpec {
 public:
  static MeasureSpec nu_p(double p);
  static MeasureSpec mu_p_alpha(double p, double alpha);
  static MeasureSpec weibull(double alpha);
  static MeasureSpec gamma_sym(double q);

  [[nodiscard]] MeasureFamily family() const { return family_; }
  [[nodiscard]] double p() const { return p_; }
  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double q() const { return q_; }

  /// Parameters of the canonical mu_{p,alpha} form of this measure.
  [[nodiscard]] double reduced_p() const;
  [[nodiscard]] double reduced_alpha() const;

  /// True iff the family/parameter combination carries the dilation
  /// guarantee (nu_p, mu_p_alpha: p <= 1; weibull: always; gamma: q >= 1).
  [[nodiscard]] bool s_supported() const;

  [[nodiscard]] double density(double x) const;

  /// Ψ(x) = μ([-x, x]); Ψ(0) = 0, Ψ(∞) = 1, strictly increasing.
  [[nodiscard]] double interval_mass(double x) const;

  /// Ψ^{-1}(mass) for mass in [0, 1); closed form for weibull, bracketed
  /// root refinement otherwise. |Ψ(w) - mass| <= 1e-12.
  [[nodiscard]] double interval_mass_inv(double mass) const;

  /// E|X|^r by closed-form gamma ratios; throws std::overflow_error when
  /// the ratio exceeds double range.
  [[nodiscard]] double abs_moment(double r) const;

  /// One draw; magnitude via the gamma-variate identity, sign uniform.
  [[nodiscard]] double sample_one(Rng& rng) const;

  /// count i.i.d. draws, deterministic for a given seed.
  [[nodiscard]] std::vector<double> sample(std::size_t count, std::uint64_t seed) const;

  [[nodiscard]] std::string family_name() const;
  [[nodiscard]] std::string params_string() const;
  [[nodiscard]] std::string describe() const;

 private:
  MeasureSpec(MeasureFamily family, double p, double alpha, double q);

  MeasureFamily family_;
  double p_ = 0.0;
  double alpha_ = 0.0;
  double q_ = 0.0;
  double c_p_ = 0.0;  // normalization of the reduced form
};

}  // namespace sineq
