#pragma once

#include <span>
#include <vector>

#include "structbandit/structure.hpp"

namespace structbandit::detail {

// Each solver receives strictly positive weights (see effective_weights in
// structure.cpp) and returns the minimiser only.

std::vector<double> altmin_unconstrained(const Family& family,
                                         std::span<const double> mu,
                                         std::span<const double> w,
                                         std::size_t j, std::size_t k);

std::vector<double> altmin_sparse(const Sparse& sparse, const Family& family,
                                  std::span<const double> mu,
                                  std::span<const double> w, std::size_t j,
                                  std::size_t k);

std::vector<double> altmin_linear(const Linear& linear, const Family& family,
                                  std::span<const double> mu,
                                  std::span<const double> w, std::size_t j,
                                  std::size_t k);

std::vector<double> altmin_unimodal(const Family& family,
                                    std::span<const double> mu,
                                    std::span<const double> w, std::size_t j,
                                    std::size_t k);

std::vector<double> altmin_lipschitz(const Lipschitz& lip, const Box& box,
                                     const Family& family,
                                     std::span<const double> mu,
                                     std::span<const double> w, std::size_t j,
                                     std::size_t k);

std::vector<double> altmin_categorised(const Categorised& cat,
                                       const Family& family,
                                       std::span<const double> mu,
                                       std::span<const double> w,
                                       std::size_t j, std::size_t k);

// Sup-norm residual of the unweighted least-squares fit of lambda by A eta.
double linear_residual(const Linear& linear, std::span<const double> lambda);

// Bisection for the root of a nondecreasing function on [lo, hi]; returns the
// smallest point where it is >= 0 (up to the step count).
template <class F>
double bisect_nondecreasing(F&& f, double lo, double hi, int steps) {
  if (f(lo) >= 0.0) return lo;
  if (f(hi) < 0.0) return hi;
  for (int i = 0; i < steps && hi > lo; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace structbandit::detail
