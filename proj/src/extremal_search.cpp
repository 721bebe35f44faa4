#include "sineq/extremal_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sineq/generators.hpp"
#include "sineq/rng.hpp"

namespace sineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassTol = 1e-10;

double psi_or_one(const MeasureSpec& m, double h) {
  return std::isinf(h) ? 1.0 : m.interval_mass(h);
}

double inv_or_inf(const MeasureSpec& m, double u) {
  if (u >= 1.0) return kInf;
  if (u <= 0.0) return 0.0;
  return m.interval_mass_inv(u);
}

// Parameter vector in Ψ-coordinates: ux strictly increasing in (0,1),
// uh nonincreasing in [0,1] with one more entry than ux.
struct PsiParams {
  std::vector<double> ux;
  std::vector<double> uh;
};

PsiParams encode(const StepIdeal2D& ideal, const MeasureSpec& m) {
  PsiParams p;
  p.ux.reserve(ideal.breakpoints().size());
  for (double x : ideal.breakpoints()) p.ux.push_back(m.interval_mass(x));
  p.uh.reserve(ideal.heights().size());
  for (double h : ideal.heights()) p.uh.push_back(psi_or_one(m, h));
  return p;
}

StepIdeal2D decode(const PsiParams& p, const MeasureSpec& m) {
  std::vector<double> bp;
  bp.reserve(p.ux.size());
  for (double u : p.ux) bp.push_back(m.interval_mass_inv(u));
  std::vector<double> hs;
  hs.reserve(p.uh.size());
  for (double u : p.uh) hs.push_back(inv_or_inf(m, u));
  // Breakpoint quantiles are kept separated, but the Ψ-inverse can still
  // collapse adjacent values; nudge them apart.
  for (std::size_t i = 1; i < bp.size(); ++i) {
    if (bp[i] <= bp[i - 1]) bp[i] = std::nexttoward(bp[i - 1], kInf);
  }
  for (std::size_t i = 1; i < hs.size(); ++i) {
    if (hs[i] > hs[i - 1]) hs[i] = hs[i - 1];
  }
  return StepIdeal2D(std::move(bp), std::move(hs));
}

}  // namespace

StepIdeal2D project_to_mass(const StepIdeal2D& ideal, const MeasureSpec& m, double mass) {
  if (!(mass > 0.0) || mass >= 1.0) {
    throw std::domain_error("project_to_mass: mass must be in (0, 1)");
  }
  const double current = measure_step2d(ideal, m);
  if (std::fabs(current - mass) <= 1e-12) return ideal;
  if (current <= 0.0) {
    throw ProjectionInfeasibleError("project_to_mass: ideal has zero measure");
  }

  if (auto width = ideal.strip_width()) {
    // Heights carry no freedom; the width is the single free parameter.
    if (std::isinf(*width) || *width <= 0.0) {
      throw ProjectionInfeasibleError("project_to_mass: degenerate strip-like ideal");
    }
    return ideal.dilated(m.interval_mass_inv(mass) / *width);
  }

  const auto& bp = ideal.breakpoints();
  const auto& hs = ideal.heights();
  std::vector<double> seg_mass(hs.size());
  std::vector<double> psi_h(hs.size());
  double psi_lo = 0.0;
  double reachable = 0.0;
  double min_pos_psi = kInf;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double psi_hi = (i < bp.size()) ? m.interval_mass(bp[i]) : 1.0;
    seg_mass[i] = psi_hi - psi_lo;
    psi_h[i] = psi_or_one(m, hs[i]);
    psi_lo = psi_hi;
    if (psi_h[i] > 0.0) {
      reachable += seg_mass[i];
      min_pos_psi = std::min(min_pos_psi, psi_h[i]);
    }
  }
  if (mass > reachable) {
    throw ProjectionInfeasibleError(
        "project_to_mass: target mass exceeds the reachable height-scaling range");
  }

  // mass(c) = Σ seg_i·min(1, c·Ψ(h_i)) is piecewise linear in c with knots
  // at 1/Ψ(h_i): on each piece mass(c) = A + B·c where A sums the saturated
  // segments and B the unsaturated seg·Ψ products. Solve the containing
  // piece exactly.
  struct Knot {
    double c;
    double seg;
    double psi;
  };
  std::vector<Knot> knots;
  double intercept = 0.0;
  double slope = 0.0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (psi_h[i] > 0.0) {
      knots.push_back(Knot{1.0 / psi_h[i], seg_mass[i], psi_h[i]});
      slope += seg_mass[i] * psi_h[i];
    }
  }
  std::sort(knots.begin(), knots.end(),
            [](const Knot& a, const Knot& b) { return a.c < b.c; });

  double c = 1.0 / min_pos_psi;  // saturates every positive height
  for (const Knot& knot : knots) {
    const double at_knot = intercept + slope * knot.c;
    if (mass <= at_knot) {
      c = (slope > 0.0) ? (mass - intercept) / slope : knot.c;
      break;
    }
    intercept += knot.seg;
    slope -= knot.seg * knot.psi;
  }

  std::vector<double> heights(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) {
    heights[i] = inv_or_inf(m, std::min(1.0, c * psi_h[i]));
  }
  for (std::size_t i = 1; i < heights.size(); ++i) {
    if (heights[i] > heights[i - 1]) heights[i] = heights[i - 1];
  }
  return StepIdeal2D(bp, std::move(heights));
}

SearchResult search_min_dilation(const SearchConfig& cfg) {
  const MeasureSpec& m = cfg.measure;
  if (cfg.mode == VerifyMode::Assert && !m.s_supported()) {
    throw UnsupportedAssertionError("UNSUPPORTED_ASSERTION: " + m.describe() +
                                    " carries no dilation guarantee; use explore mode");
  }
  if (!(cfg.target_mass > 0.0) || cfg.target_mass >= 1.0) {
    throw std::domain_error("search_min_dilation: target_mass must be in (0, 1)");
  }
  if (!(cfg.t > 0.0) || (cfg.mode == VerifyMode::Assert && cfg.t < 1.0)) {
    throw std::domain_error("search_min_dilation: t must be >= 1 in assert mode");
  }
  if (cfg.breakpoints < 1 || cfg.iterations < 1 || cfg.restarts < 1) {
    throw std::domain_error("search_min_dilation: invalid budget configuration");
  }

  const int k = cfg.breakpoints;
  const double strip_objective = s_bound(m, cfg.target_mass, cfg.t);

  const auto objective_of = [&](const StepIdeal2D& ideal) {
    return measure_step2d(ideal.dilated(cfg.t), m);
  };

  SearchResult result;
  result.strip_objective = strip_objective;
  result.objective = kInf;

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(restart)));

    StepIdeal2D current = [&]() {
      if (restart == 0) {
        // Start at the conjectured extremal set itself and let the moves
        // probe its neighborhood.
        std::vector<double> ux(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
          ux[static_cast<std::size_t>(i)] =
              cfg.target_mass * static_cast<double>(i + 1) / static_cast<double>(k);
        }
        std::vector<double> uh(static_cast<std::size_t>(k) + 1, 1.0);
        uh.back() = 0.0;
        return decode(PsiParams{std::move(ux), std::move(uh)}, m);
      }
      for (int attempt = 0; attempt < 50; ++attempt) {
        try {
          return project_to_mass(random_step_ideal_k(m, k, rng), m, cfg.target_mass);
        } catch (const ProjectionInfeasibleError&) {
        }
      }
      throw ProjectionInfeasibleError(
          "search_min_dilation: could not draw a feasible starting ideal");
    }();
    current = project_to_mass(current, m, cfg.target_mass);

    PsiParams params = encode(current, m);
    double obj = objective_of(current);
    double step = cfg.initial_step;
    SearchStatus status = SearchStatus::BudgetExhausted;
    std::vector<SearchTraceEntry> trace;

    const int n_coords = 2 * k + 1;
    for (int sweep = 0; sweep < cfg.iterations; ++sweep) {
      bool improved = false;
      for (int coord = 0; coord < n_coords; ++coord) {
        for (double direction : {+1.0, -1.0}) {
          PsiParams cand = params;
          if (coord < k) {
            const auto i = static_cast<std::size_t>(coord);
            const double lo = (i == 0) ? 1e-9 : cand.ux[i - 1] + 1e-12;
            const double hi = (i + 1 < cand.ux.size()) ? cand.ux[i + 1] - 1e-12 : 1.0 - 1e-9;
            if (lo >= hi) continue;
            cand.ux[i] = std::clamp(cand.ux[i] + direction * step, lo, hi);
            if (cand.ux[i] == params.ux[i]) continue;
          } else {
            const auto i = static_cast<std::size_t>(coord - k);
            const double hi = (i == 0) ? 1.0 : cand.uh[i - 1];
            const double lo = (i + 1 < cand.uh.size()) ? cand.uh[i + 1] : 0.0;
            if (lo > hi) continue;
            cand.uh[i] = std::clamp(cand.uh[i] + direction * step, lo, hi);
            if (cand.uh[i] == params.uh[i]) continue;
          }

          StepIdeal2D projected = current;
          try {
            projected = project_to_mass(decode(cand, m), m, cfg.target_mass);
          } catch (const ProjectionInfeasibleError&) {
            continue;
          }
          const double cand_obj = objective_of(projected);
          const double residual =
              std::fabs(measure_step2d(projected, m) - cfg.target_mass);
          const bool accept = cand_obj < obj - 1e-15;
          trace.push_back(SearchTraceEntry{sweep, cand_obj, residual, accept});
          if (accept) {
            current = projected;
            params = encode(current, m);
            obj = cand_obj;
            improved = true;
            break;
          }
        }
      }
      if (!improved) {
        step *= 0.5;
        if (step < cfg.min_step) {
          status = SearchStatus::Converged;
          break;
        }
      }
    }

    if (obj < result.objective) {
      result.objective = obj;
      result.best = current;
      result.status = status;
      result.best_restart = restart;
      result.trace = std::move(trace);
    }
  }

  result.gap = result.objective - result.strip_objective;
  if (result.gap < -1e-6) {
    // High-precision re-evaluation before reporting an anomaly.
    const double recheck = objective_of(result.best);
    result.objective = recheck;
    result.gap = recheck - s_bound(m, cfg.target_mass, cfg.t);
    result.anomaly = result.gap < -1e-6;
  }
  return result;
}

}  // namespace sineq
