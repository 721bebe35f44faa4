#include "sineq/measures.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sineq/core_fns.hpp"
#include "sineq/special_functions.hpp"

namespace sineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_param(double value, const char* name) {
  if (!(value > 0.0) || std::isinf(value)) {
    std::ostringstream msg;
    msg << "MeasureSpec: parameter " << name << " must be positive and finite";
    throw std::domain_error(msg.str());
  }
}

std::string num_to_string(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

}  // namespace

MeasureSpec::MeasureSpec(MeasureFamily family, double p, double alpha, double q)
    : family_(family), p_(p), alpha_(alpha), q_(q) {
  c_p_ = normalization_c(reduced_p());
}

MeasureSpec MeasureSpec::nu_p(double p) {
  require_param(p, "p");
  return MeasureSpec(MeasureFamily::NuP, p, 1.0, 0.0);
}

MeasureSpec MeasureSpec::mu_p_alpha(double p, double alpha) {
  require_param(p, "p");
  require_param(alpha, "alpha");
  return MeasureSpec(MeasureFamily::MuPAlpha, p, alpha, 0.0);
}

MeasureSpec MeasureSpec::weibull(double alpha) {
  require_param(alpha, "alpha");
  return MeasureSpec(MeasureFamily::Weibull, 0.0, alpha, 0.0);
}

MeasureSpec MeasureSpec::gamma_sym(double q) {
  require_param(q, "q");
  return MeasureSpec(MeasureFamily::GammaSym, 0.0, 0.0, q);
}

double MeasureSpec::reduced_p() const {
  switch (family_) {
    case MeasureFamily::NuP:
    case MeasureFamily::MuPAlpha:
      return p_;
    case MeasureFamily::Weibull:
      return 1.0;
    case MeasureFamily::GammaSym:
      return 1.0 / q_;
  }
  return 0.0;
}

double MeasureSpec::reduced_alpha() const {
  switch (family_) {
    case MeasureFamily::NuP:
      return 1.0;
    case MeasureFamily::MuPAlpha:
    case MeasureFamily::Weibull:
      return alpha_;
    case MeasureFamily::GammaSym:
      return q_;
  }
  return 0.0;
}

bool MeasureSpec::s_supported() const {
  switch (family_) {
    case MeasureFamily::NuP:
    case MeasureFamily::MuPAlpha:
      return p_ <= 1.0;
    case MeasureFamily::Weibull:
      return true;
    case MeasureFamily::GammaSym:
      return q_ >= 1.0;
  }
  return false;
}

double MeasureSpec::density(double x) const {
  if (std::isnan(x)) throw std::domain_error("density: x is NaN");
  const double ax = std::fabs(x);
  switch (family_) {
    case MeasureFamily::NuP:
      return 0.5 * c_p_ * std::exp(-std::pow(ax, p_));
    case MeasureFamily::Weibull:
      // α < 1 has an integrable singularity at 0 (pow(0, negative) = inf)
      return 0.5 * alpha_ * std::pow(ax, alpha_ - 1.0) * std::exp(-std::pow(ax, alpha_));
    case MeasureFamily::GammaSym:
      return 0.5 * std::exp(-log_gamma(q_)) * std::pow(ax, q_ - 1.0) * std::exp(-ax);
    case MeasureFamily::MuPAlpha:
      return 0.5 * alpha_ * c_p_ * std::pow(ax, alpha_ - 1.0) *
             std::exp(-std::pow(ax, alpha_ * p_));
  }
  return 0.0;
}

double MeasureSpec::interval_mass(double x) const {
  if (std::isnan(x) || x < 0.0) {
    throw std::domain_error("interval_mass: x must be >= 0");
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  switch (family_) {
    case MeasureFamily::NuP:
      return reg_gamma_p(1.0 / p_, std::pow(x, p_));
    case MeasureFamily::Weibull:
      return -std::expm1(-std::pow(x, alpha_));
    case MeasureFamily::GammaSym:
      return reg_gamma_p(q_, x);
    case MeasureFamily::MuPAlpha:
      return reg_gamma_p(1.0 / p_, std::pow(x, alpha_ * p_));
  }
  return 0.0;
}

double MeasureSpec::interval_mass_inv(double mass) const {
  if (std::isnan(mass) || mass < 0.0 || mass >= 1.0) {
    throw std::domain_error("interval_mass_inv: mass must be in [0, 1)");
  }
  if (mass == 0.0) return 0.0;
  if (family_ == MeasureFamily::Weibull) {
    return std::pow(-std::log1p(-mass), 1.0 / alpha_);
  }

  double lo = 0.0;
  double hi = 1.0;
  double m_lo = 0.0;
  double m_hi = interval_mass(hi);
  while (m_hi <= mass) {
    lo = hi;
    m_lo = m_hi;
    hi *= 2.0;
    if (hi > 1e300) return kInf;
    m_hi = interval_mass(hi);
  }

  for (int iter = 0; iter < 200; ++iter) {
    double mid;
    if (m_lo != m_hi) {
      mid = lo + (mass - m_lo) * (hi - lo) / (m_hi - m_lo);
      const double width = hi - lo;
      if (!(mid > lo + 0.01 * width) || !(mid < hi - 0.01 * width)) {
        mid = 0.5 * (lo + hi);
      }
    } else {
      mid = 0.5 * (lo + hi);
    }
    const double m_mid = interval_mass(mid);
    if (m_mid == mass) return mid;
    if (m_mid < mass) {
      lo = mid;
      m_lo = m_mid;
    } else {
      hi = mid;
      m_hi = m_mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * (std::fabs(lo) + 1e-300)) {
      break;
    }
  }
  return 0.5 * (lo + hi);
}

double MeasureSpec::abs_moment(double r) const {
  if (!(r > 0.0)) throw std::domain_error("abs_moment: r must be positive");
  const double rp = reduced_p();
  const double ra = reduced_alpha();
  const double log_ratio = log_gamma((r / ra + 1.0) / rp) - log_gamma(1.0 / rp);
  if (log_ratio > 709.0) {
    throw std::overflow_error("abs_moment: gamma ratio exceeds double range");
  }
  return std::exp(log_ratio);
}

double MeasureSpec::sample_one(Rng& rng) const {
  // |X|^{αp} is Gamma(1/p)-distributed in the reduced parameterization,
  // so |X| = G^{1/(αp)}.
  const double shape = 1.0 / reduced_p();
  const double kappa = 1.0 / (reduced_alpha() * reduced_p());
  const double magnitude = std::pow(rng.gamma_variate(shape), kappa);
  return rng.uniform() < 0.5 ? -magnitude : magnitude;
}

std::vector<double> MeasureSpec::sample(std::size_t count, std::uint64_t seed) const {
  if (count == 0) throw std::domain_error("sample: count must be >= 1");
  Rng rng(seed);
  std::vector<double> draws(count);
  for (double& d : draws) d = sample_one(rng);
  return draws;
}

std::string MeasureSpec::family_name() const {
  switch (family_) {
    case MeasureFamily::NuP:
      return "nu_p";
    case MeasureFamily::MuPAlpha:
      return "mu_p_alpha";
    case MeasureFamily::Weibull:
      return "weibull";
    case MeasureFamily::GammaSym:
      return "gamma";
  }
  return "?";
}

std::string MeasureSpec::params_string() const {
  switch (family_) {
    case MeasureFamily::NuP:
      return "p=" + num_to_string(p_);
    case MeasureFamily::MuPAlpha:
      return "p=" + num_to_string(p_) + ",alpha=" + num_to_string(alpha_);
    case MeasureFamily::Weibull:
      return "alpha=" + num_to_string(alpha_);
    case MeasureFamily::GammaSym:
      return "q=" + num_to_string(q_);
  }
  return "";
}

std::string MeasureSpec::describe() const {
  return family_name() + "(" + params_string() + ")";
}

}  // namespace sineq
