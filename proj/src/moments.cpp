#include "sineq/moments.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sineq/rng.hpp"

namespace sineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

UnconditionalNorm UnconditionalNorm::ls(double s) {
  if (!(s >= 1.0)) throw std::domain_error("UnconditionalNorm::ls: s must be >= 1");
  UnconditionalNorm norm;
  norm.kind_ = Kind::LsNorm;
  norm.s_ = s;
  return norm;
}

UnconditionalNorm UnconditionalNorm::weighted_max(std::vector<double> weights) {
  if (weights.empty()) {
    throw std::invalid_argument("UnconditionalNorm::weighted_max: empty weights");
  }
  for (double w : weights) {
    if (!(w > 0.0) || std::isinf(w)) {
      throw std::domain_error("UnconditionalNorm::weighted_max: weights must be in (0, inf)");
    }
  }
  UnconditionalNorm norm;
  norm.kind_ = Kind::WeightedMax;
  norm.weights_ = std::move(weights);
  return norm;
}

UnconditionalNorm UnconditionalNorm::coordinate(int j) {
  if (j < 1) throw std::domain_error("UnconditionalNorm::coordinate: j must be >= 1");
  UnconditionalNorm norm;
  norm.kind_ = Kind::Coordinate;
  norm.coordinate_ = j;
  return norm;
}

double UnconditionalNorm::operator()(std::span<const double> x) const {
  switch (kind_) {
    case Kind::LsNorm: {
      if (std::isinf(s_)) {
        double best = 0.0;
        for (double v : x) best = std::max(best, std::fabs(v));
        return best;
      }
      if (s_ == 1.0) {
        double sum = 0.0;
        for (double v : x) sum += std::fabs(v);
        return sum;
      }
      double sum = 0.0;
      for (double v : x) sum += std::pow(std::fabs(v), s_);
      return std::pow(sum, 1.0 / s_);
    }
    case Kind::WeightedMax: {
      if (weights_.size() != x.size()) {
        throw std::invalid_argument("weighted_max: dimension mismatch");
      }
      double best = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        best = std::max(best, weights_[j] * std::fabs(x[j]));
      }
      return best;
    }
    case Kind::Coordinate: {
      if (static_cast<std::size_t>(coordinate_) > x.size()) {
        throw std::invalid_argument("coordinate norm: index exceeds dimension");
      }
      return std::fabs(x[static_cast<std::size_t>(coordinate_ - 1)]);
    }
  }
  return 0.0;
}

std::string UnconditionalNorm::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::LsNorm:
      if (std::isinf(s_)) {
        out << "ls(inf)";
      } else {
        out << "ls(" << s_ << ")";
      }
      break;
    case Kind::WeightedMax:
      out << "wmax[";
      for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (i) out << ",";
        out << weights_[i];
      }
      out << "]";
      break;
    case Kind::Coordinate:
      out << "coord(" << coordinate_ << ")";
      break;
  }
  return out.str();
}

double optimal_constant(const MeasureSpec& m, double p, double q) {
  if (!(q > 0.0) || !(p >= q)) {
    throw std::domain_error("optimal_constant: require p >= q > 0");
  }
  return std::pow(m.abs_moment(p), 1.0 / p) / std::pow(m.abs_moment(q), 1.0 / q);
}

MomentEstimate norm_moment(const MeasureSpec& m, int n, const UnconditionalNorm& norm,
                           double r, std::size_t n_samples, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("norm_moment: n must be >= 1");
  if (!(r > 0.0)) throw std::domain_error("norm_moment: r must be positive");
  if (n_samples < 1000) throw std::domain_error("norm_moment: need at least 10^3 samples");

  Rng rng(seed);
  std::vector<double> x(static_cast<std::size_t>(n));
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    for (double& v : x) v = m.sample_one(rng);
    const double y = std::pow(norm(x), r);
    const double delta = y - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (y - mean);
  }
  const double variance = m2 / static_cast<double>(n_samples - 1);
  const double se_mean = std::sqrt(variance / static_cast<double>(n_samples));

  MomentEstimate est;
  est.value = std::pow(mean, 1.0 / r);
  est.std_error = (mean > 0.0) ? std::pow(mean, 1.0 / r - 1.0) * se_mean / r : kInf;
  return est;
}

ComparisonReport verify_comparison(const MeasureSpec& m, int n,
                                   const UnconditionalNorm& norm, double p, double q,
                                   std::size_t n_samples, std::uint64_t seed,
                                   VerifyMode mode) {
  if (mode == VerifyMode::Assert && !m.s_supported()) {
    throw UnsupportedAssertionError("UNSUPPORTED_ASSERTION: " + m.describe() +
                                    " carries no dilation guarantee; use explore mode");
  }
  if (!(q > 0.0) || !(p >= q)) {
    throw std::domain_error("verify_comparison: require p >= q > 0");
  }

  ComparisonReport report;
  report.measure_desc = m.describe();
  report.norm_desc = norm.describe();
  report.n = n;
  report.p = p;
  report.q = q;
  report.constant = optimal_constant(m, p, q);

  const MomentEstimate mp = norm_moment(m, n, norm, p, n_samples, mix_seed(seed, 1));
  const MomentEstimate mq = norm_moment(m, n, norm, q, n_samples, mix_seed(seed, 2));
  report.lhs = mp.value;
  report.rhs = report.constant * mq.value;
  report.slack = report.rhs - report.lhs;
  report.std_error = std::sqrt(mp.std_error * mp.std_error +
                               report.constant * report.constant * mq.std_error * mq.std_error);
  report.holds = report.lhs <= report.rhs + 4.0 * report.std_error;

  if (norm.kind() == UnconditionalNorm::Kind::Coordinate) {
    report.sharpness_checked = true;
    report.sharpness_ratio = mp.value / mq.value;
    const double rel_se = std::sqrt(std::pow(mp.std_error / mp.value, 2) +
                                    std::pow(mq.std_error / mq.value, 2));
    const double ratio_se = report.sharpness_ratio * rel_se;
    report.sharp = std::fabs(report.sharpness_ratio - report.constant) <= 4.0 * ratio_se;
  }
  return report;
}

}  // namespace sineq
