#include "isotonic.hpp"

#include <algorithm>

namespace structbandit::detail {

std::vector<double> isotonic_increasing(std::span<const double> y,
                                        std::span<const double> w) {
  struct Block {
    double mean;
    double weight;
    std::size_t count;
  };
  std::vector<Block> stack;
  stack.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    Block b{y[i], w[i], 1};
    while (!stack.empty() && stack.back().mean > b.mean) {
      const Block& top = stack.back();
      double total = top.weight + b.weight;
      b.mean = total > 0.0 ? (top.mean * top.weight + b.mean * b.weight) / total
                           : 0.5 * (top.mean + b.mean);
      b.weight = total;
      b.count += top.count;
      stack.pop_back();
    }
    stack.push_back(b);
  }
  std::vector<double> fit;
  fit.reserve(y.size());
  for (const Block& b : stack) fit.insert(fit.end(), b.count, b.mean);
  return fit;
}

std::vector<double> isotonic_decreasing(std::span<const double> y,
                                        std::span<const double> w) {
  std::vector<double> ry(y.rbegin(), y.rend());
  std::vector<double> rw(w.rbegin(), w.rend());
  std::vector<double> fit = isotonic_increasing(ry, rw);
  std::reverse(fit.begin(), fit.end());
  return fit;
}

}  // namespace structbandit::detail
