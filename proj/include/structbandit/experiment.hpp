#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "structbandit/config.hpp"

namespace structbandit {

struct RegretTrace {
  std::string algorithm;
  std::size_t rep = 0;
  std::uint64_t seed = 0;
  std::vector<double> regret;  // cumulative pseudo-regret at each checkpoint
  std::vector<std::int64_t> final_counts;
  std::int64_t explore_rounds = 0;
  std::int64_t exploit_rounds = 0;
  std::string error;  // empty unless the run aborted
};

struct AlgorithmSummary {
  std::string algorithm;
  std::vector<double> mean;
  std::vector<double> stddev;
  std::size_t runs = 0;
};

struct ExperimentResult {
  std::vector<std::int64_t> checkpoints;
  std::vector<AlgorithmSummary> summaries;
  std::vector<RegretTrace> traces;  // ordered by (algorithm, rep)
  std::vector<std::string> failures;
};

// splitmix64-style mix of (master, FNV-1a(algorithm), rep).
std::uint64_t child_seed(std::uint64_t master, const std::string& algorithm,
                         std::uint64_t rep);

RegretTrace simulate_run(const ExperimentConfig& cfg, const std::string& algorithm,
                         std::size_t rep, const std::vector<std::int64_t>& checkpoints);

// Repetitions run concurrently under OpenMP; the reduction is in fixed order.
ExperimentResult run_experiment(const ExperimentConfig& cfg);
// Single-threaded reference used to check the parallel runner.
ExperimentResult run_experiment_serial(const ExperimentConfig& cfg);

struct ReferenceCurves {
  std::vector<std::int64_t> checkpoints;
  double unconstrained_rate;  // sum_k Delta_k / d(mu_k, mu*)
  double structured_rate;     // V from the noise-free solver
  std::vector<double> unconstrained;
  std::vector<double> structured;
};

ReferenceCurves reference_curves(const ExperimentConfig& cfg);

}  // namespace structbandit
