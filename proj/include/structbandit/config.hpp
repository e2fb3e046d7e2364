#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "structbandit/algos.hpp"
#include "structbandit/saddle.hpp"

namespace structbandit {

// Parsed experiment file. Grammar (INI-style, `#` or `;` comments):
//
//   family = gaussian | bernoulli       variance = 1
//   means = 0, 0.33, 0.67, 1            horizon = 5000
//   repetitions = 50                    seed = 7
//   algorithms = spk, splambda, ossb, ucb
//   checkpoints = 50
//   [structure]   kind, support, level, lipschitz, categories, arms, theta, box
//   [epsilon]     mode = harmonic | power | constant, eps0, c, power
//   [confidence]  mode = experiment | theory, eta
//   [ossb]        gamma, iterations, eps
//
// Linear arm vectors are rows separated by `|`: `arms = 1 0 | 0 1`. With
// `theta` given and `means` absent, means are A * theta.
struct ExperimentConfig {
  Family family = Family::gaussian(1.0);
  Structure structure{2, Unconstrained{}};
  std::vector<double> means;
  std::int64_t horizon = 1000;
  std::int64_t repetitions = 1;
  std::uint64_t seed = 1;
  std::vector<std::string> algorithms;
  std::size_t checkpoint_count = 50;
  PolicyOptions options;

  Instance instance() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

// Throws ConfigError when the instance or run parameters are unusable.
void validate(const ExperimentConfig& cfg);

// `count` log-spaced integer rounds in [10, T] (or [1, T] for tiny T),
// deduplicated and always ending at T.
std::vector<std::int64_t> checkpoint_grid(std::int64_t horizon, std::size_t count);

}  // namespace structbandit
