#include "sineq/core_fns.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sineq/special_functions.hpp"

namespace sineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_exponent(double p) {
  if (!(p > 0.0) || std::isinf(p)) {
    throw std::domain_error("exponent p must be positive and finite");
  }
}

}  // namespace

double normalization_c(double p) {
  require_exponent(p);
  return std::exp(-log_gamma(1.0 + 1.0 / p));
}

HalfLineMeasure::HalfLineMeasure(double p) : p_(p), c_p_(normalization_c(p)) {}

double HalfLineMeasure::density(double x) const {
  if (std::isnan(x) || x < 0.0) {
    throw std::domain_error("HalfLineMeasure::density: x must be >= 0");
  }
  return c_p_ * std::exp(-std::pow(x, p_));
}

double tail_T(double p, double u) {
  require_exponent(p);
  if (std::isnan(u) || u < 0.0) {
    throw std::domain_error("tail_T: u must be >= 0");
  }
  if (u == 0.0) return 1.0;
  if (std::isinf(u)) return 0.0;
  return reg_gamma_q(1.0 / p, std::pow(u, p));
}

double partial_moment_S(double p, double u) {
  require_exponent(p);
  if (std::isnan(u) || u < 0.0) {
    throw std::domain_error("partial_moment_S: u must be >= 0");
  }
  if (u == 0.0) return 0.0;
  if (std::isinf(u)) return 1.0 / p;
  return reg_gamma_p(1.0 + 1.0 / p, std::pow(u, p)) / p;
}

double s_identity_residual(double p, double u) {
  require_exponent(p);
  if (!(u > 0.0) || std::isinf(u)) {
    throw std::domain_error("s_identity_residual: u must be in (0, inf)");
  }
  const double c_p = normalization_c(p);
  const double rhs =
      -(c_p / p) * u * std::exp(-std::pow(u, p)) + (1.0 - tail_T(p, u)) / p;
  return partial_moment_S(p, u) - rhs;
}

double inv_T(double p, double v) {
  require_exponent(p);
  if (!(v > 0.0) || v > 1.0) {
    throw std::domain_error("inv_T: v must be in (0, 1]");
  }
  if (v == 1.0) return 0.0;

  // Grow the bracket until T(hi) < v. T is strictly decreasing with
  // T(0) = 1 > v, so [lo, hi] straddles the root once the loop exits.
  double lo = 0.0;
  double hi = 1.0;
  double t_lo = 1.0;
  double t_hi = tail_T(p, hi);
  while (t_hi >= v) {
    lo = hi;
    t_lo = t_hi;
    hi *= 2.0;
    if (hi > 1e300) return kInf;  // v below the representable tail
    t_hi = tail_T(p, hi);
  }

  for (int iter = 0; iter < 200; ++iter) {
    double mid;
    // Secant candidate, safeguarded by bisection.
    if (t_lo != t_hi) {
      mid = lo + (t_lo - v) * (hi - lo) / (t_lo - t_hi);
      const double width = hi - lo;
      if (!(mid > lo + 0.01 * width) || !(mid < hi - 0.01 * width)) {
        mid = 0.5 * (lo + hi);
      }
    } else {
      mid = 0.5 * (lo + hi);
    }
    const double t_mid = tail_T(p, mid);
    if (t_mid == v) return mid;
    if (t_mid > v) {
      lo = mid;
      t_lo = t_mid;
    } else {
      hi = mid;
      t_hi = t_mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * (std::fabs(lo) + 1e-300)) {
      break;
    }
  }
  return 0.5 * (lo + hi);
}

double phi_value(double p, double v) {
  require_exponent(p);
  if (std::isnan(v) || v < 0.0 || v > 1.0) {
    throw std::domain_error("phi_value: v must be in [0, 1]");
  }
  if (v == 0.0) return 1.0 / p;
  if (v == 1.0) return 0.0;
  return partial_moment_S(p, inv_T(p, v));
}

PhiStack phi_stack(double p, double v) {
  require_exponent(p);
  if (std::isnan(v) || v < 0.0 || v > 1.0) {
    throw std::domain_error("phi_stack: v must be in [0, 1]");
  }
  const double c_p = normalization_c(p);

  if (v == 0.0) {
    const double tail_sign = (p < 1.0) ? -kInf : (p > 1.0 ? kInf : 0.0);
    return PhiStack{1.0 / p, -kInf, kInf, 1.0, tail_sign, kInf};
  }
  if (v == 1.0) {
    double d2;
    if (p < 1.0) {
      d2 = kInf;
    } else if (p == 1.0) {
      d2 = p / c_p;
    } else {
      d2 = 0.0;
    }
    const double slope = (p < 1.0) ? -kInf : (p > 1.0 ? kInf : 1.0);
    const double curv = (p < 1.0) ? -kInf : (p > 1.0 ? kInf : 0.0);
    return PhiStack{0.0, 0.0, d2, slope, curv, 0.0};
  }

  const double f = inv_T(p, v);
  const double fp = std::pow(f, p);
  const double efp = (fp > 700.0) ? kInf : std::exp(fp);
  PhiStack out;
  out.f_point = f;
  out.value = partial_moment_S(p, f);
  out.d1 = -fp;
  out.d2 = (p / c_p) * std::pow(f, p - 1.0) * efp;
  if (p == 1.0) {
    out.inv_d2_d1 = 1.0;
    out.inv_d2_d2 = 0.0;
  } else {
    out.inv_d2_d1 = 1.0 - ((1.0 - p) / p) * std::pow(f, -p);
    out.inv_d2_d2 = -((1.0 - p) / c_p) * std::pow(f, -p - 1.0) * efp;
  }
  return out;
}

}  // namespace sineq
