#pragma once

#include <random>
#include <string>

namespace structbandit {

using Rng = std::mt19937_64;

// One-parameter exponential family, parametrised by the mean.
class Family {
 public:
  enum class Kind { Gaussian, Bernoulli };

  static Family gaussian(double variance = 1.0);
  static Family bernoulli();

  Kind kind() const { return kind_; }
  double variance() const { return variance_; }
  std::string name() const;

  // Constant sigma^2 with d(x, y) >= (x - y)^2 / (2 sigma^2).
  double sub_gaussian_variance() const;

  bool in_domain(double mean) const;

  double kl(double x, double y) const;
  // Partial derivatives of kl(x, y) in its second argument.
  double kl_dy(double x, double y) const;
  double kl_dyy(double x, double y) const;

  double sample(double mean, Rng& rng) const;

  // Largest (smallest) x with count * kl(mu_hat, x) <= threshold.
  double kl_inverse_upper(double mu_hat, double threshold, double count) const;
  double kl_inverse_lower(double mu_hat, double threshold, double count) const;

  bool operator==(const Family&) const = default;

 private:
  Family(Kind kind, double variance) : kind_(kind), variance_(variance) {}
  double clamp_mean(double x) const;

  Kind kind_;
  double variance_;
};

}  // namespace structbandit
