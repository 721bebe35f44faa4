#pragma once

#include "sineq/ideals.hpp"
#include "sineq/measures.hpp"

namespace sineq {

// Quadrature-backed reference routes, independent of the closed-form
// implementations they are compared against.

/// ∫_ℝ density dx by double-exponential quadrature on each half line.
[[nodiscard]] double integrate_density(const MeasureSpec& m, double abs_tol = 1e-11);

/// ∫_ℝ |x|^r density dx by quadrature.
[[nodiscard]] double abs_moment_quadrature(const MeasureSpec& m, double r,
                                           double abs_tol = 1e-11);

/// P(s,x) as a direct integral of the gamma density.
[[nodiscard]] double reg_gamma_p_quadrature(double s, double x);

/// T(u) = c_p ∫_u^∞ e^{-x^p} dx by quadrature.
[[nodiscard]] double tail_T_quadrature(double p, double u);

/// S(u) = c_p ∫_0^u x^p e^{-x^p} dx by quadrature.
[[nodiscard]] double partial_S_quadrature(double p, double u);

/// μⁿ(K) through the Fubini recursion ∫ μ^{n-1}(K_x) dμ(x): sections over
/// the distinct last-coordinate extents, per-piece density quadrature, and
/// recursion down to dimension one. Shares no code path with the grid
/// disjointification in measure_boxes.
[[nodiscard]] double measure_boxes_fubini(const BoxUnionIdeal& ideal, const MeasureSpec& m);

}  // namespace sineq
