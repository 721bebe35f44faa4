#pragma once

#include "sineq/ideals.hpp"
#include "sineq/measures.hpp"
#include "sineq/rng.hpp"
#include "sineq/s_inequality.hpp"

namespace sineq {

/// Random step ideal: strip with probability 0.1, otherwise 1-8 breakpoints
/// drawn from the measure's own quantiles with heights sorted decreasing
/// from the same quantile pool.
[[nodiscard]] StepIdeal2D random_step_ideal(const MeasureSpec& m, Rng& rng);

/// Random step ideal with exactly k breakpoints (no strip shortcut).
[[nodiscard]] StepIdeal2D random_step_ideal_k(const MeasureSpec& m, int k, Rng& rng);

/// Random union of 1-4 symmetric boxes with quantile corners; a coordinate
/// is ∞ with probability 0.1 (cylinder faces). Dominated corners pruned.
[[nodiscard]] BoxUnionIdeal random_box_union(const MeasureSpec& m, int dim, Rng& rng);

/// Random nondecreasing step function with 1-6 jumps at μ₊ quantiles.
[[nodiscard]] MonotoneStep random_monotone_step(double p, Rng& rng);

}  // namespace sineq
