#include <cmath>

#include "structbandit/algos.hpp"
#include "structbandit/errors.hpp"

namespace structbandit {

std::size_t track(std::span<const std::int64_t> counts, std::span<const double> target) {
  if (counts.size() != target.size() || counts.empty())
    throw DimensionError("track needs equal, nonempty vectors");
  std::size_t best = 0;
  double best_val = static_cast<double>(counts[0]) - target[0];
  for (std::size_t k = 1; k < counts.size(); ++k) {
    double v = static_cast<double>(counts[k]) - target[k];
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  return best;
}

double EpsilonSchedule::at(double n) const {
  double m = std::max(n, 1.0);
  switch (mode) {
    case Mode::Constant:
      return eps0;
    case Mode::Power:
      return std::min(eps0, std::pow(m, -1.0 / power));
    case Mode::Harmonic:
      break;
  }
  return std::min(eps0, c / m);
}

}  // namespace structbandit
