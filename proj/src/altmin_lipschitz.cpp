#include <array>
#include <algorithm>
#include <cmath>

#include "altmin_detail.hpp"

namespace structbandit::detail {

namespace {

// Half-space coef_a * x[a] + coef_b * x[b] <= rhs (coef_b may be 0).
struct HalfSpace {
  std::size_t a, b;
  double coef_a, coef_b, rhs;
};

constexpr int kMaxSweeps = 100000;

// Projection of z onto the intersection of half-spaces in the metric
// sum_i h_i (x_i - z_i)^2, by Dykstra's alternating projections.
std::vector<double> project(const std::vector<HalfSpace>& cons,
                            std::span<const double> h, std::vector<double> x) {
  std::vector<std::array<double, 2>> incr(cons.size(), {0.0, 0.0});
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double moved = 0.0;
    for (std::size_t c = 0; c < cons.size(); ++c) {
      const HalfSpace& hs = cons[c];
      double ya = x[hs.a] + incr[c][0];
      double yb = x[hs.b] + incr[c][1];
      double lhs = hs.coef_a * ya + hs.coef_b * yb;
      double na = ya, nb = yb;
      if (lhs > hs.rhs) {
        double denom = hs.coef_a * hs.coef_a / h[hs.a] + hs.coef_b * hs.coef_b / h[hs.b];
        double step = (lhs - hs.rhs) / denom;
        na = ya - step * hs.coef_a / h[hs.a];
        nb = yb - step * hs.coef_b / h[hs.b];
      }
      moved = std::max({moved, std::abs(na - x[hs.a]), std::abs(nb - x[hs.b])});
      incr[c] = {ya - na, yb - nb};
      x[hs.a] = na;
      if (hs.b != hs.a) x[hs.b] = nb;
    }
    if (moved < 1e-14) break;
  }
  return x;
}

}  // namespace

// Diagonally scaled projected Newton. For gaussian arms the objective is an
// exact diagonal quadratic, so the first projection is already the answer.
std::vector<double> altmin_lipschitz(const Lipschitz& lip, const Box& box,
                                     const Family& family,
                                     std::span<const double> mu,
                                     std::span<const double> w, std::size_t j,
                                     std::size_t k) {
  const std::size_t K = mu.size();
  std::vector<HalfSpace> cons;
  for (std::size_t i = 0; i + 1 < K; ++i) {
    cons.push_back({i, i + 1, 1.0, -1.0, lip.constant});
    cons.push_back({i, i + 1, -1.0, 1.0, lip.constant});
  }
  cons.push_back({j, k, 1.0, -1.0, 0.0});
  for (std::size_t i = 0; i < K; ++i) {
    cons.push_back({i, i, 1.0, 0.0, box.hi});
    cons.push_back({i, i, -1.0, 0.0, -box.lo});
  }

  auto objective = [&](std::span<const double> x) {
    return weighted_divergence(family, mu, w, x);
  };

  std::vector<double> h(K), lambda(K);
  for (std::size_t i = 0; i < K; ++i) {
    double start = std::clamp(mu[i], box.lo, box.hi);
    h[i] = w[i] * family.kl_dyy(mu[i], start);
  }
  lambda = project(cons, h, std::vector<double>(mu.begin(), mu.end()));
  if (family.kind() == Family::Kind::Gaussian) return lambda;

  double f = objective(lambda);
  for (int it = 0; it < 200; ++it) {
    std::vector<double> z(K);
    for (std::size_t i = 0; i < K; ++i) {
      h[i] = w[i] * family.kl_dyy(mu[i], lambda[i]);
      z[i] = lambda[i] - w[i] * family.kl_dy(mu[i], lambda[i]) / h[i];
    }
    std::vector<double> target = project(cons, h, z);
    double slope = 0.0;
    for (std::size_t i = 0; i < K; ++i)
      slope += w[i] * family.kl_dy(mu[i], lambda[i]) * (target[i] - lambda[i]);
    if (slope >= 0.0) break;
    double step = 1.0;
    std::vector<double> next(K);
    double fn = f;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < K; ++i)
        next[i] = lambda[i] + step * (target[i] - lambda[i]);
      fn = objective(next);
      if (fn <= f + 1e-4 * step * slope) break;
      step *= 0.5;
    }
    if (!(fn < f)) break;
    lambda = next;
    bool done = f - fn < 1e-12;
    f = fn;
    if (done) break;
  }
  return lambda;
}

}  // namespace structbandit::detail
