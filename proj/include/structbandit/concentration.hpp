#pragma once

#include <cstddef>
#include <utility>

#include "structbandit/expfamily.hpp"

namespace structbandit {

enum class CiMode { Theory, Experiment };

struct ThresholdConfig {
  std::size_t arms = 2;
  double eta = 0.5;
  CiMode ci_mode = CiMode::Experiment;
};

// Solution y >= 1 of y - ln y = x, for x > 1.
double w_bar(double x);

// Deviation threshold holding uniformly over arms with probability 1 - delta.
double beta(double t, double delta, std::size_t arms);

// Explore/exploit threshold f(t) = beta(t, 1 / (t ln t)); frozen at t = 3 below.
double exploit_threshold(double t, std::size_t arms);

// Radius g_t(n) of the small confidence intervals.
double g_threshold(const ThresholdConfig& cfg, double t, double n);

std::pair<double, double> confidence_interval(const Family& family,
                                              double mu_hat, double count,
                                              double threshold);

}  // namespace structbandit
