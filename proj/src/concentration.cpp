#include "structbandit/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "structbandit/errors.hpp"

namespace structbandit {

double w_bar(double x) {
  if (!(x > 1.0)) throw DomainError("w_bar needs x > 1");
  double y = x + std::log(x);
  for (int it = 0; it < 100; ++it) {
    double r = y - std::log(y) - x;
    if (std::abs(r) <= 1e-13) break;
    y -= r / (1.0 - 1.0 / y);
  }
  return y;
}

double beta(double t, double delta, std::size_t arms) {
  if (!(t >= 2.0)) throw DomainError("beta needs t >= 2");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("beta needs delta in (0, 1)");
  const double e = std::numbers::e;
  const double k = static_cast<double>(arms);
  double arg = std::log(e / delta) / (2.0 * k) +
               0.5 * std::log(8.0 * e * k * std::log(t));
  if (!(arg > 1.0)) throw DomainError("beta: w_bar argument <= 1");
  return 2.0 * k * w_bar(arg);
}

double exploit_threshold(double t, std::size_t arms) {
  double s = std::max(t, 3.0);
  return beta(s, 1.0 / (s * std::log(s)), arms);
}

double g_threshold(const ThresholdConfig& cfg, double t, double n) {
  double v;
  if (cfg.ci_mode == CiMode::Experiment) {
    v = std::log(std::max(n, 2.0));
  } else {
    double k = static_cast<double>(cfg.arms);
    double lt = std::log(t);
    v = (1.0 + cfg.eta) *
        (std::log(n) + std::log(2.0 * k * k * lt * lt / std::log1p(cfg.eta)));
  }
  return std::max(v, 0.0);
}

std::pair<double, double> confidence_interval(const Family& family,
                                              double mu_hat, double count,
                                              double threshold) {
  return {family.kl_inverse_lower(mu_hat, threshold, count),
          family.kl_inverse_upper(mu_hat, threshold, count)};
}

}  // namespace structbandit
