#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "structbandit/config.hpp"
#include "structbandit/csv.hpp"
#include "structbandit/errors.hpp"
#include "structbandit/experiment.hpp"
#include "structbandit/saddle.hpp"
#include "structbandit/structure.hpp"

namespace sb = structbandit;

namespace {

std::string join(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += sb::format_number(v[i]);
  }
  return s + "]";
}

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> horizon;
  std::optional<std::int64_t> repetitions;
};

sb::ExperimentConfig load(const std::string& path, const Overrides& o) {
  sb::ExperimentConfig cfg = sb::load_config(path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.horizon) cfg.horizon = *o.horizon;
  if (o.repetitions) cfg.repetitions = *o.repetitions;
  sb::validate(cfg);
  return cfg;
}

int solve(const sb::ExperimentConfig& cfg, double eps, std::size_t iters,
          const std::string& solver, double step) {
  const sb::Instance inst = cfg.instance();
  if (solver == "brute") {
    double v = sb::brute_force_value(inst, eps, step);
    std::cout << "value = " << sb::format_number(v) << '\n'
              << "rate = " << sb::format_number(1.0 / v) << '\n';
    return 0;
  }
  sb::GameValueResult r = solver == "k" ? sb::solve_k_learner(inst, eps, iters)
                                        : sb::solve_lambda_learner(inst, eps, iters);
  std::cout << "value_lower = " << sb::format_number(r.value_lower) << '\n'
            << "value_upper = " << sb::format_number(r.value_upper) << '\n'
            << "rate = " << sb::format_number(r.rate()) << '\n'
            << "pull_proportions = " << join(r.pull_proportions) << '\n'
            << "regret_proportions = " << join(r.regret_proportions) << '\n'
            << "iterations = " << r.iterations << '\n';
  return 0;
}

int altmin(const sb::ExperimentConfig& cfg, std::size_t j, std::size_t k,
           const std::vector<double>& weights, const std::vector<double>& means) {
  const std::vector<double>& mu = means.empty() ? cfg.means : means;
  const std::size_t K = cfg.structure.arms();
  if (j < 1 || j > K || k < 1 || k > K || j == k)
    throw sb::ConfigError("--j and --k must be distinct arms in 1.." + std::to_string(K));
  sb::AltMinResult r = sb::alt_min(cfg.structure, cfg.family, mu, weights, j - 1, k - 1);
  std::cout << "lambda = " << join(r.minimiser) << '\n'
            << "value = " << sb::format_number(r.value) << '\n';
  return 0;
}

int run(const sb::ExperimentConfig& cfg, const std::string& out) {
  sb::ExperimentResult result = sb::run_experiment(cfg);
  sb::write_results(out, result, sb::reference_curves(cfg));
  for (const auto& f : result.failures) std::cerr << "run aborted: " << f << '\n';
  std::cout << "wrote " << result.traces.size() << " runs to " << out << '\n';
  return result.failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structured bandit simulator and lower-bound solver"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Override the master seed");

  std::string config;
  auto* solve_cmd = app.add_subcommand("solve", "Print value certificates for the config instance");
  double eps = 1e-3, step = 0.05;
  std::size_t iters = 5000;
  std::string solver = "k";
  solve_cmd->add_option("--config", config, "Experiment config")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--eps", eps, "Perturbation")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--iters", iters, "Solver iterations")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--solver", solver)->check(CLI::IsMember({"k", "lambda", "brute"}));
  solve_cmd->add_option("--step", step, "Grid step for the brute-force solver")
      ->check(CLI::PositiveNumber);

  auto* alt_cmd = app.add_subcommand("altmin", "Evaluate the alternative-minimisation oracle");
  std::size_t j = 0, k = 0;
  std::vector<double> weights, means;
  alt_cmd->add_option("--config", config, "Experiment config")->required()->check(CLI::ExistingFile);
  alt_cmd->add_option("--j", j, "Candidate best arm (1-based)")->required();
  alt_cmd->add_option("--k", k, "Challenger arm (1-based)")->required();
  alt_cmd->add_option("--weights", weights, "One weight per arm")->required()->delimiter(',');
  alt_cmd->add_option("--means", means, "Empirical means (default: config means)")->delimiter(',');

  auto* run_cmd = app.add_subcommand("run", "Run the experiment and write CSVs");
  std::string out;
  std::int64_t horizon = 0, reps = 0;
  run_cmd->add_option("--config", config, "Experiment config")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", out, "Output directory")->required();
  auto* horizon_opt = run_cmd->add_option("--horizon", horizon, "Override the horizon");
  auto* reps_opt = run_cmd->add_option("--reps", reps, "Override the repetition count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }
  if (*seed_opt) o.seed = seed;
  if (*horizon_opt) o.horizon = horizon;
  if (*reps_opt) o.repetitions = reps;

  try {
    sb::ExperimentConfig cfg = load(config, o);
    if (*solve_cmd) return solve(cfg, eps, iters, solver, step);
    if (*alt_cmd) return altmin(cfg, j, k, weights, means);
    return run(cfg, out);
  } catch (const sb::ConfigError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const sb::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const sb::DimensionError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
