#include <algorithm>
#include <cmath>
#include <optional>

#include "altmin_detail.hpp"

namespace structbandit::detail {

namespace {

// A coordinate, or the (j, k) pair pooled at its weighted mean when the order
// constraint binds. A pair split across categories with j's on top is pinned
// to the level itself.
enum class Side { Top, Bottom, Level };

struct Item {
  double mean;
  double weight;
  Side side;
  std::size_t first, second;  // second == first for single arms
};

constexpr int kLevelSteps = 200;

std::vector<double> solve_orientation(const Categorised& cat,
                                      std::span<const double> mu,
                                      std::span<const double> w, int top_id,
                                      std::size_t j, std::size_t k) {
  const std::size_t K = mu.size();
  auto side_of = [&](std::size_t i) {
    return cat.category[i] == top_id ? Side::Top : Side::Bottom;
  };
  const bool pinned = side_of(j) == Side::Top && side_of(k) == Side::Bottom;
  const bool pool =
      pinned || (cat.category[j] == cat.category[k] && mu[k] < mu[j]);
  std::vector<Item> items;
  for (std::size_t i = 0; i < K; ++i) {
    if (pool && (i == j || i == k)) continue;
    items.push_back({mu[i], w[i], side_of(i), i, i});
  }
  if (pool) {
    double sw = w[j] + w[k];
    items.push_back({(w[j] * mu[j] + w[k] * mu[k]) / sw, sw,
                     pinned ? Side::Level : side_of(j), j, k});
  }

  // Derivative sign of the cost in the separating level.
  auto slope = [&](double level) {
    double s = 0.0;
    for (const Item& it : items) {
      bool active = it.side == Side::Level ||
                    (it.side == Side::Top ? it.mean < level : it.mean > level);
      if (active) s += it.weight * (level - it.mean);
    }
    return s;
  };
  auto [lo, hi] = std::minmax_element(mu.begin(), mu.end());
  double level = bisect_nondecreasing(slope, *lo, *hi, kLevelSteps);

  std::vector<double> lambda(K);
  for (const Item& it : items) {
    double v = it.side == Side::Level ? level
               : it.side == Side::Top ? std::max(it.mean, level)
                                      : std::min(it.mean, level);
    lambda[it.first] = v;
    lambda[it.second] = v;
  }
  return lambda;
}

}  // namespace

// Try each category on top. With j's category on top and k's below, j and k
// meet at the separating level.
std::vector<double> altmin_categorised(const Categorised& cat,
                                       const Family& family,
                                       std::span<const double> mu,
                                       std::span<const double> w,
                                       std::size_t j, std::size_t k) {
  const int ck = cat.category[k];
  int other = ck;
  for (int c : cat.category)
    if (c != ck) other = c;
  std::vector<double> best = solve_orientation(cat, mu, w, ck, j, k);
  std::vector<double> alt = solve_orientation(cat, mu, w, other, j, k);
  if (weighted_divergence(family, mu, w, alt) <
      weighted_divergence(family, mu, w, best))
    best = std::move(alt);
  return best;
}

}  // namespace structbandit::detail
