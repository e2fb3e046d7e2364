#include "structbandit/expfamily.hpp"

#include <algorithm>
#include <cmath>

#include "structbandit/errors.hpp"

namespace structbandit {

namespace {

constexpr double kClamp = 1e-12;
// Halving [0, 1] this often reaches double resolution, so the threshold
// round-trips to rounding error rather than to a mean tolerance.
constexpr int kBisectSteps = 64;

}  // namespace

Family Family::gaussian(double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance))
    throw DomainError("gaussian variance must be positive");
  return Family(Kind::Gaussian, variance);
}

Family Family::bernoulli() { return Family(Kind::Bernoulli, 0.25); }

std::string Family::name() const {
  return kind_ == Kind::Gaussian ? "gaussian" : "bernoulli";
}

double Family::sub_gaussian_variance() const { return variance_; }

bool Family::in_domain(double mean) const {
  if (kind_ == Kind::Gaussian) return std::isfinite(mean);
  return mean > 0.0 && mean < 1.0;
}

// Empirical Bernoulli means can sit on {0, 1}; anything further out is a bug.
double Family::clamp_mean(double x) const {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("bernoulli mean outside [0, 1]");
  return std::clamp(x, kClamp, 1.0 - kClamp);
}

double Family::kl(double x, double y) const {
  if (kind_ == Kind::Gaussian) {
    if (!std::isfinite(x) || !std::isfinite(y))
      throw DomainError("gaussian mean not finite");
    double d = x - y;
    return d * d / (2.0 * variance_);
  }
  x = clamp_mean(x);
  y = clamp_mean(y);
  if (x == y) return 0.0;
  double v = x * std::log(x / y) + (1.0 - x) * std::log((1.0 - x) / (1.0 - y));
  return std::max(v, 0.0);
}

double Family::kl_dy(double x, double y) const {
  if (kind_ == Kind::Gaussian) return (y - x) / variance_;
  x = clamp_mean(x);
  y = clamp_mean(y);
  return (y - x) / (y * (1.0 - y));
}

double Family::kl_dyy(double x, double y) const {
  if (kind_ == Kind::Gaussian) return 1.0 / variance_;
  x = clamp_mean(x);
  y = clamp_mean(y);
  return x / (y * y) + (1.0 - x) / ((1.0 - y) * (1.0 - y));
}

double Family::sample(double mean, Rng& rng) const {
  if (!in_domain(mean)) throw DomainError("sample mean outside parameter space");
  if (kind_ == Kind::Gaussian) {
    std::normal_distribution<double> dist(mean, std::sqrt(variance_));
    return dist(rng);
  }
  std::bernoulli_distribution dist(mean);
  return dist(rng) ? 1.0 : 0.0;
}

double Family::kl_inverse_upper(double mu_hat, double threshold,
                                double count) const {
  if (!(threshold >= 0.0) || !(count > 0.0))
    throw DomainError("kl inverse needs threshold >= 0 and count > 0");
  if (threshold == 0.0) return mu_hat;
  if (kind_ == Kind::Gaussian)
    return mu_hat + std::sqrt(2.0 * variance_ * threshold / count);
  double lo = clamp_mean(mu_hat);
  double hi = 1.0;
  if (count * kl(lo, hi) <= threshold) return 1.0;
  for (int i = 0; i < kBisectSteps; ++i) {
    double mid = 0.5 * (lo + hi);
    if (count * kl(mu_hat, mid) <= threshold)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double Family::kl_inverse_lower(double mu_hat, double threshold,
                                double count) const {
  if (!(threshold >= 0.0) || !(count > 0.0))
    throw DomainError("kl inverse needs threshold >= 0 and count > 0");
  if (threshold == 0.0) return mu_hat;
  if (kind_ == Kind::Gaussian)
    return mu_hat - std::sqrt(2.0 * variance_ * threshold / count);
  double lo = 0.0;
  double hi = clamp_mean(mu_hat);
  if (count * kl(hi, lo) <= threshold) return 0.0;
  for (int i = 0; i < kBisectSteps; ++i) {
    double mid = 0.5 * (lo + hi);
    if (count * kl(mu_hat, mid) <= threshold)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace structbandit
