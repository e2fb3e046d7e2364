#include <algorithm>
#include <cmath>

#include "structbandit/errors.hpp"
#include "structbandit/learners.hpp"

namespace structbandit {

namespace {

constexpr double kClip = 1e6;

}  // namespace

AdaHedge::AdaHedge(std::size_t experts) : losses_(experts, 0.0) {
  if (experts == 0) throw DomainError("hedge needs at least one expert");
}

double AdaHedge::learning_rate() const {
  if (gap_ <= 0.0) return INFINITY;
  return std::log(static_cast<double>(experts())) / gap_;
}

std::vector<double> AdaHedge::weights() const {
  return weights(std::vector<bool>(experts(), true));
}

std::vector<double> AdaHedge::weights(const std::vector<bool>& active) const {
  const std::size_t n = experts();
  std::vector<double> p(n, 0.0);
  double best = INFINITY;
  for (std::size_t i = 0; i < n; ++i)
    if (active[i]) best = std::min(best, losses_[i]);
  if (!std::isfinite(best)) throw InfeasibleError("hedge has no active expert");
  const double eta = learning_rate();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    if (std::isinf(eta))
      p[i] = losses_[i] == best ? 1.0 : 0.0;
    else
      p[i] = std::exp(-eta * (losses_[i] - best));
    total += p[i];
  }
  for (double& x : p) x /= total;
  return p;
}

void AdaHedge::update(std::span<const double> v, Direction dir) {
  update(v, dir, std::vector<bool>(experts(), true));
}

void AdaHedge::update(std::span<const double> v, Direction dir,
                      const std::vector<bool>& active) {
  const std::size_t n = experts();
  if (v.size() != n) throw DimensionError("hedge vector length differs from expert count");
  std::vector<double> loss(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(v[i])) throw DomainError("hedge received a non-finite entry");
    double x = dir == Direction::MaximiseGain ? -v[i] : v[i];
    loss[i] = std::clamp(x, -kClip, kClip);
  }
  const std::vector<double> p = weights(active);
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < n; ++i)
    if (active[i]) {
      lo = std::min(lo, loss[i]);
      hi = std::max(hi, loss[i]);
    }
  // Inactive experts are charged the worst active loss.
  for (std::size_t i = 0; i < n; ++i)
    if (!active[i]) loss[i] = hi;

  // Hedge loss and mix loss, both measured from the round minimum.
  double h = 0.0;
  for (std::size_t i = 0; i < n; ++i) h += p[i] * (loss[i] - lo);
  double m;
  const double eta = learning_rate();
  if (std::isinf(eta)) {
    m = INFINITY;
    for (std::size_t i = 0; i < n; ++i)
      if (p[i] > 0.0) m = std::min(m, loss[i] - lo);
  } else {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (p[i] > 0.0) s += p[i] * std::exp(-eta * (loss[i] - lo));
    m = -std::log(s) / eta;
  }
  gap_ += std::max(h - m, 0.0);
  for (std::size_t i = 0; i < n; ++i) losses_[i] += loss[i];
}

}  // namespace structbandit
