#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace structbandit::detail {

// Weighted isotonic (nondecreasing) fit by pool-adjacent-violators. Pooled
// values are weighted means, which is the exact minimiser for any
// exponential-family divergence.
std::vector<double> isotonic_increasing(std::span<const double> y,
                                        std::span<const double> w);

std::vector<double> isotonic_decreasing(std::span<const double> y,
                                        std::span<const double> w);

}  // namespace structbandit::detail
