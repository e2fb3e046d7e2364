#include "altmin_detail.hpp"

namespace structbandit::detail {

std::vector<double> altmin_unconstrained(const Family&,
                                         std::span<const double> mu,
                                         std::span<const double> w,
                                         std::size_t j, std::size_t k) {
  std::vector<double> lambda(mu.begin(), mu.end());
  if (mu[k] < mu[j]) {
    double v = (w[j] * mu[j] + w[k] * mu[k]) / (w[j] + w[k]);
    lambda[j] = v;
    lambda[k] = v;
  }
  return lambda;
}

}  // namespace structbandit::detail
