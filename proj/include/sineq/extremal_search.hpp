#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sineq/ideals.hpp"
#include "sineq/measures.hpp"
#include "sineq/s_inequality.hpp"

namespace sineq {

class ProjectionInfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rescales heights through the Ψ-coordinate (a common factor on each
/// Ψ(h_i), clipped to [0,1], inverted back) until |μ²(K') - mass| <= 1e-10.
/// Strip-like ideals (heights all in {0,∞}) have no height freedom and are
/// projected by uniform dilation of the width instead. Throws
/// ProjectionInfeasibleError when the target is unreachable.
[[nodiscard]] StepIdeal2D project_to_mass(const StepIdeal2D& ideal, const MeasureSpec& m,
                                          double mass);

struct SearchConfig {
  MeasureSpec measure;
  double target_mass = 0.5;
  double t = 2.0;
  int breakpoints = 3;
  int iterations = 120;  // coordinate sweeps per restart
  int restarts = 20;
  std::uint64_t seed = 1;
  double initial_step = 0.15;  // step size in Ψ-coordinates
  double min_step = 1e-6;
  VerifyMode mode = VerifyMode::Assert;
};

enum class SearchStatus { Converged, BudgetExhausted };

struct SearchTraceEntry {
  int iteration = 0;
  double objective = 0.0;
  double mass_residual = 0.0;
  bool accepted = false;
};

struct SearchResult {
  StepIdeal2D best;
  double objective = 0.0;        // μ²(t·best)
  double strip_objective = 0.0;  // s_bound(m, mass, t)
  double gap = 0.0;              // objective - strip_objective
  SearchStatus status = SearchStatus::Converged;
  bool anomaly = false;          // gap below -1e-6 survived re-evaluation
  int best_restart = 0;
  std::vector<SearchTraceEntry> trace;  // accepted/rejected moves, best restart
};

/// Derivative-free local search over mass-constrained step ideals,
/// minimizing the dilated mass. Restart 0 starts from the strip itself;
/// the remaining restarts start from random ideals. Deterministic per seed.
[[nodiscard]] SearchResult search_min_dilation(const SearchConfig& cfg);

}  // namespace sineq
