#include <algorithm>
#include <numeric>

#include "altmin_detail.hpp"

namespace structbandit::detail {

namespace {

struct Candidate {
  std::vector<double> lambda;
  double cost;
};

}  // namespace

// Three placements of (j, k) relative to the support: k in, j out; both in;
// k out (which drags j down to the level). Remaining support slots go to the
// arms that save the most by leaving the level.
std::vector<double> altmin_sparse(const Sparse& sparse, const Family& family,
                                  std::span<const double> mu,
                                  std::span<const double> w, std::size_t j,
                                  std::size_t k) {
  const std::size_t K = mu.size();
  const double g = sparse.level;
  auto at_level = [&](std::size_t i) { return w[i] * family.kl(mu[i], g); };
  auto in_support = [&](std::size_t i) {
    return mu[i] >= g ? 0.0 : at_level(i);
  };

  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < K; ++i)
    if (i != j && i != k) others.push_back(i);
  // Non-support first: smallest saving, lowest index on ties.
  std::stable_sort(others.begin(), others.end(), [&](std::size_t a, std::size_t b) {
    return at_level(a) - in_support(a) < at_level(b) - in_support(b);
  });

  auto fill = [&](std::vector<double>& lambda, std::size_t slots) {
    double cost = 0.0;
    std::size_t n = others.size();
    std::size_t first_in = n > slots ? n - slots : 0;
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t i = others[r];
      if (r >= first_in) {
        lambda[i] = std::max(mu[i], g);
        cost += in_support(i);
      } else {
        lambda[i] = g;
        cost += at_level(i);
      }
    }
    return cost;
  };

  std::vector<Candidate> options;
  const std::size_t s = sparse.support;
  {
    std::vector<double> lambda(K);
    lambda[j] = g;
    lambda[k] = std::max(mu[k], g);
    double cost = at_level(j) + in_support(k) + fill(lambda, s - 1);
    options.push_back({std::move(lambda), cost});
  }
  if (s >= 2) {
    std::vector<double> lambda(K);
    double cost = 0.0;
    if (mu[k] >= mu[j]) {
      lambda[j] = std::max(mu[j], g);
      lambda[k] = std::max(mu[k], g);
      cost = in_support(j) + in_support(k);
    } else {
      double v = std::max((w[j] * mu[j] + w[k] * mu[k]) / (w[j] + w[k]), g);
      lambda[j] = v;
      lambda[k] = v;
      cost = w[j] * family.kl(mu[j], v) + w[k] * family.kl(mu[k], v);
    }
    cost += fill(lambda, s - 2);
    options.push_back({std::move(lambda), cost});
  }
  {
    std::vector<double> lambda(K);
    lambda[j] = g;
    lambda[k] = g;
    double cost = at_level(j) + at_level(k) + fill(lambda, s);
    options.push_back({std::move(lambda), cost});
  }
  auto best = std::min_element(options.begin(), options.end(),
                               [](const Candidate& a, const Candidate& b) {
                                 return a.cost < b.cost;
                               });
  return best->lambda;
}

}  // namespace structbandit::detail
