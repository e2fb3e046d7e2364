#include <algorithm>
#include <cmath>

#include "altmin_detail.hpp"
#include "isotonic.hpp"

namespace structbandit::detail {

namespace {

using Vec = std::vector<double>;

Vec slice(std::span<const double> x, std::size_t lo, std::size_t hi) {
  return Vec(x.begin() + lo, x.begin() + hi);
}

// Monotone fit of x[lo, hi) where positions [pool_lo, pool_hi] (absolute,
// inside the range) are forced to share one value.
Vec monotone_fit(std::span<const double> mu, std::span<const double> w,
                 std::size_t lo, std::size_t hi, bool increasing,
                 std::size_t pool_lo = 1, std::size_t pool_hi = 0) {
  Vec y, wt;
  std::vector<std::size_t> width;
  for (std::size_t i = lo; i < hi;) {
    if (pool_lo <= pool_hi && i == pool_lo) {
      double sw = 0.0, sy = 0.0;
      for (std::size_t t = pool_lo; t <= pool_hi; ++t) {
        sw += w[t];
        sy += w[t] * mu[t];
      }
      y.push_back(sy / sw);
      wt.push_back(sw);
      width.push_back(pool_hi - pool_lo + 1);
      i = pool_hi + 1;
    } else {
      y.push_back(mu[i]);
      wt.push_back(w[i]);
      width.push_back(1);
      ++i;
    }
  }
  Vec fit = increasing ? isotonic_increasing(y, wt) : isotonic_decreasing(y, wt);
  Vec out;
  out.reserve(hi - lo);
  for (std::size_t r = 0; r < fit.size(); ++r) out.insert(out.end(), width[r], fit[r]);
  return out;
}

struct Segment {
  std::size_t lo;
  Vec fit;
  bool cap_above;  // clip to <= c when true, to >= c otherwise
};

// Prefix nondecreasing and suffix nonincreasing, coupled only through
// lambda_a = lambda_b = c with a in the prefix and b in the suffix.
Vec coupled_fit(std::span<const double> mu, std::span<const double> w,
                std::size_t p, std::size_t a, std::size_t b) {
  const std::size_t K = mu.size();
  std::vector<Segment> segs = {
      {0, isotonic_increasing(slice(mu, 0, a), slice(w, 0, a)), true},
      {a + 1, isotonic_increasing(slice(mu, a + 1, p + 1), slice(w, a + 1, p + 1)), false},
      {p + 1, isotonic_decreasing(slice(mu, p + 1, b), slice(w, p + 1, b)), false},
      {b + 1, isotonic_decreasing(slice(mu, b + 1, K), slice(w, b + 1, K)), true},
  };
  auto slope = [&](double c) {
    double s = w[a] * (c - mu[a]) + w[b] * (c - mu[b]);
    for (const Segment& seg : segs)
      for (std::size_t r = 0; r < seg.fit.size(); ++r) {
        double f = seg.fit[r];
        if (seg.cap_above ? f > c : f < c) s += w[seg.lo + r] * (c - mu[seg.lo + r]);
      }
    return s;
  };
  auto [lo, hi] = std::minmax_element(mu.begin(), mu.end());
  double c = bisect_nondecreasing(slope, *lo, *hi, 200);
  Vec lambda(K);
  lambda[a] = c;
  lambda[b] = c;
  for (const Segment& seg : segs)
    for (std::size_t r = 0; r < seg.fit.size(); ++r)
      lambda[seg.lo + r] = seg.cap_above ? std::min(seg.fit[r], c) : std::max(seg.fit[r], c);
  return lambda;
}

}  // namespace

// A unimodal vector is a nondecreasing prefix [0, p] followed by a
// nonincreasing suffix; each split is solved exactly and the best kept.
std::vector<double> altmin_unimodal(const Family& family,
                                    std::span<const double> mu,
                                    std::span<const double> w, std::size_t j,
                                    std::size_t k) {
  const std::size_t K = mu.size();
  Vec best;
  double best_cost = INFINITY;
  for (std::size_t p = 0; p < K; ++p) {
    const bool j_pre = j <= p;
    const bool k_pre = k <= p;
    Vec lambda;
    if (j_pre && k_pre) {
      lambda = k < j ? monotone_fit(mu, w, 0, p + 1, true, k, j)
                     : monotone_fit(mu, w, 0, p + 1, true);
      Vec suf = monotone_fit(mu, w, p + 1, K, false);
      lambda.insert(lambda.end(), suf.begin(), suf.end());
    } else if (!j_pre && !k_pre) {
      lambda = monotone_fit(mu, w, 0, p + 1, true);
      Vec suf = j < k ? monotone_fit(mu, w, p + 1, K, false, j, k)
                      : monotone_fit(mu, w, p + 1, K, false);
      lambda.insert(lambda.end(), suf.begin(), suf.end());
    } else {
      lambda = monotone_fit(mu, w, 0, p + 1, true);
      Vec suf = monotone_fit(mu, w, p + 1, K, false);
      lambda.insert(lambda.end(), suf.begin(), suf.end());
      if (lambda[k] < lambda[j])
        lambda = j_pre ? coupled_fit(mu, w, p, j, k) : coupled_fit(mu, w, p, k, j);
    }
    double cost = weighted_divergence(family, mu, w, lambda);
    if (best.empty() || cost < best_cost - 1e-13 * (1.0 + best_cost)) {
      best_cost = cost;
      best = std::move(lambda);
    }
  }
  return best;
}

}  // namespace structbandit::detail
