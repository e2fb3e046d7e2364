#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "structbandit/errors.hpp"
#include "structbandit/saddle.hpp"

namespace structbandit {

namespace {

constexpr double kMaxGridPoints = 4e6;

using Point = std::vector<double>;

// Points not dominated coordinatewise by another point. Only these can be
// best responses of the minimising player.
std::vector<Point> pareto_front(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) return pts;
  const std::size_t K = pts.front().size();
  std::vector<Point> front;
  if (K == 1) {
    front.push_back(pts.front());
  } else if (K == 2) {
    double best = INFINITY;
    for (Point& p : pts)
      if (p[1] < best) {
        best = p[1];
        front.push_back(std::move(p));
      }
  } else if (K == 3) {
    // Staircase over (p1, p2) of points already kept; p0 is nondecreasing.
    std::map<double, double> stair;
    for (Point& p : pts) {
      auto it = stair.upper_bound(p[1]);
      if (it != stair.begin() && std::prev(it)->second <= p[2]) continue;
      auto rm = stair.lower_bound(p[1]);
      while (rm != stair.end() && rm->second >= p[2]) rm = stair.erase(rm);
      stair[p[1]] = p[2];
      front.push_back(std::move(p));
    }
  } else {
    for (Point& p : pts) {
      bool dominated = std::any_of(front.begin(), front.end(), [&](const Point& q) {
        for (std::size_t k = 0; k < K; ++k)
          if (q[k] > p[k]) return false;
        return true;
      });
      if (!dominated) front.push_back(std::move(p));
    }
  }
  return front;
}

}  // namespace

double solve_finite_game(const std::vector<std::vector<double>>& payoffs) {
  if (payoffs.empty()) throw DomainError("finite game needs at least one row");
  const std::size_t K = payoffs.front().size();
  if (K > 4) throw ResourceError("finite game solver supports at most four arms");
  std::vector<Point> front = pareto_front(payoffs);
  auto phi = [&](std::span<const double> w) {
    double m = INFINITY;
    for (const Point& p : front) {
      double v = 0.0;
      for (std::size_t k = 0; k < K; ++k) v += w[k] * p[k];
      m = std::min(m, v);
    }
    return m;
  };
  return maximise_on_simplex(phi, K).value;
}

double brute_force_value(const Instance& inst, double eps, double grid_step) {
  if (!(grid_step > 0.0)) throw DomainError("grid step must be positive");
  const std::size_t K = inst.arms();
  const auto& mu = inst.means();
  const std::vector<double> gaps = perturbed_gaps(mu, eps);

  // Optimal confusing points stay inside the hull of the means (and the
  // sparse level), so that is the box we grid; the means are added as nodes.
  double lo = *std::min_element(mu.begin(), mu.end());
  double hi = *std::max_element(mu.begin(), mu.end());
  if (const auto* s = std::get_if<Sparse>(&inst.structure().spec())) {
    lo = std::min(lo, s->level);
    hi = std::max(hi, s->level);
  }
  std::vector<double> nodes;
  for (double x = lo; x < hi + 0.5 * grid_step; x += grid_step) nodes.push_back(std::min(x, hi));
  nodes.insert(nodes.end(), mu.begin(), mu.end());
  if (const auto* s = std::get_if<Sparse>(&inst.structure().spec())) nodes.push_back(s->level);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  const std::size_t G = nodes.size();
  if (std::pow(static_cast<double>(G), static_cast<double>(K)) > kMaxGridPoints)
    throw ResourceError("brute-force grid exceeds the point budget");
  long long total = 1;
  for (std::size_t k = 0; k < K; ++k) total *= static_cast<long long>(G);

  std::vector<std::vector<double>> table(K, std::vector<double>(G));
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t g = 0; g < G; ++g)
      table[k][g] = inst.family().kl(mu[k], nodes[g]) / gaps[k];

  const std::size_t star = inst.best_arm();
  std::vector<char> keep(static_cast<std::size_t>(total), 0);
#pragma omp parallel for schedule(static)
  for (long long idx = 0; idx < total; ++idx) {
    std::vector<double> lambda(K);
    long long r = idx;
    for (std::size_t k = 0; k < K; ++k) {
      lambda[k] = nodes[static_cast<std::size_t>(r % static_cast<long long>(G))];
      r /= static_cast<long long>(G);
    }
    bool alt = false;
    for (std::size_t k = 0; k < K && !alt; ++k)
      alt = k != star && lambda[k] >= lambda[star];
    keep[static_cast<std::size_t>(idx)] =
        alt && membership(inst.structure(), lambda, 1e-12);
  }

  std::vector<Point> rows;
  for (long long idx = 0; idx < total; ++idx) {
    if (!keep[static_cast<std::size_t>(idx)]) continue;
    Point p(K);
    long long r = idx;
    for (std::size_t k = 0; k < K; ++k) {
      p[k] = table[k][static_cast<std::size_t>(r % static_cast<long long>(G))];
      r /= static_cast<long long>(G);
    }
    rows.push_back(std::move(p));
  }
  if (rows.empty()) throw InfeasibleError("no grid point lies in the alternative set");
  return solve_finite_game(rows);
}

}  // namespace structbandit
