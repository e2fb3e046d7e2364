#include "structbandit/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace structbandit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct Task {
  std::string algorithm;
  std::size_t rep;
};

std::vector<Task> tasks_of(const ExperimentConfig& cfg) {
  std::vector<Task> tasks;
  for (const auto& a : cfg.algorithms)
    for (std::int64_t r = 0; r < cfg.repetitions; ++r)
      tasks.push_back({a, static_cast<std::size_t>(r)});
  return tasks;
}

ExperimentResult aggregate(const ExperimentConfig& cfg, std::vector<std::int64_t> checkpoints,
                           std::vector<RegretTrace> traces) {
  ExperimentResult out;
  out.checkpoints = std::move(checkpoints);
  const std::size_t C = out.checkpoints.size();
  for (const auto& a : cfg.algorithms) {
    AlgorithmSummary s{a, std::vector<double>(C, 0.0), std::vector<double>(C, 0.0), 0};
    for (const RegretTrace& tr : traces) {
      if (tr.algorithm != a || !tr.error.empty()) continue;
      ++s.runs;
      for (std::size_t c = 0; c < C; ++c) s.mean[c] += tr.regret[c];
    }
    if (s.runs > 0)
      for (double& m : s.mean) m /= static_cast<double>(s.runs);
    if (s.runs > 1) {
      for (const RegretTrace& tr : traces) {
        if (tr.algorithm != a || !tr.error.empty()) continue;
        for (std::size_t c = 0; c < C; ++c) {
          double d = tr.regret[c] - s.mean[c];
          s.stddev[c] += d * d;
        }
      }
      for (double& v : s.stddev) v = std::sqrt(v / static_cast<double>(s.runs - 1));
    }
    out.summaries.push_back(std::move(s));
  }
  for (const RegretTrace& tr : traces)
    if (!tr.error.empty())
      out.failures.push_back(tr.algorithm + " rep " + std::to_string(tr.rep) + ": " + tr.error);
  out.traces = std::move(traces);
  return out;
}

}  // namespace

std::uint64_t child_seed(std::uint64_t master, const std::string& algorithm,
                         std::uint64_t rep) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ fnv1a(algorithm));
  return splitmix64(h ^ rep);
}

RegretTrace simulate_run(const ExperimentConfig& cfg, const std::string& algorithm,
                         std::size_t rep, const std::vector<std::int64_t>& checkpoints) {
  RegretTrace tr;
  tr.algorithm = algorithm;
  tr.rep = rep;
  tr.seed = child_seed(cfg.seed, algorithm, rep);
  try {
    const Instance inst = cfg.instance();
    const std::vector<double> gaps = inst.gaps();
    auto policy = make_policy(algorithm, inst.structure(), inst.family(), cfg.horizon, cfg.options);
    Rng rng(tr.seed);
    double regret = 0.0;
    std::size_t next = 0;
    for (std::int64_t t = 1; t <= cfg.horizon; ++t) {
      std::size_t arm = policy->choose();
      policy->observe(arm, inst.family().sample(inst.means()[arm], rng));
      regret += gaps[arm];
      while (next < checkpoints.size() && checkpoints[next] == t) {
        tr.regret.push_back(regret);
        ++next;
      }
    }
    tr.final_counts = policy->stats().counts;
    tr.explore_rounds = policy->explore_rounds();
    tr.exploit_rounds = policy->exploit_rounds();
  } catch (const std::exception& e) {
    tr.error = e.what();
    tr.regret.assign(checkpoints.size(), NAN);
  }
  return tr;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto checkpoints = checkpoint_grid(cfg.horizon, cfg.checkpoint_count);
  const std::vector<Task> tasks = tasks_of(cfg);
  std::vector<RegretTrace> traces(tasks.size());
  const auto n = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const Task& task = tasks[static_cast<std::size_t>(i)];
    traces[static_cast<std::size_t>(i)] = simulate_run(cfg, task.algorithm, task.rep, checkpoints);
  }
  return aggregate(cfg, checkpoints, std::move(traces));
}

ExperimentResult run_experiment_serial(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto checkpoints = checkpoint_grid(cfg.horizon, cfg.checkpoint_count);
  std::vector<RegretTrace> traces;
  for (const Task& task : tasks_of(cfg))
    traces.push_back(simulate_run(cfg, task.algorithm, task.rep, checkpoints));
  return aggregate(cfg, checkpoints, std::move(traces));
}

ReferenceCurves reference_curves(const ExperimentConfig& cfg) {
  validate(cfg);
  const Instance inst = cfg.instance();
  ReferenceCurves rc;
  rc.checkpoints = checkpoint_grid(cfg.horizon, cfg.checkpoint_count);
  rc.unconstrained_rate = unconstrained_rate(inst);
  rc.structured_rate = solve_k_learner(inst, 1e-3, 5000).rate();
  for (std::int64_t t : rc.checkpoints) {
    double lt = std::log(static_cast<double>(t));
    rc.unconstrained.push_back(rc.unconstrained_rate * lt);
    rc.structured.push_back(rc.structured_rate * lt);
  }
  return rc;
}

}  // namespace structbandit
