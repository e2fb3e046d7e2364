#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "structbandit/concentration.hpp"
#include "structbandit/learners.hpp"
#include "structbandit/structure.hpp"

namespace structbandit {

// Smallest-index minimiser of counts^k - target^k.
std::size_t track(std::span<const std::int64_t> counts, std::span<const double> target);

struct EpsilonSchedule {
  enum class Mode { Constant, Power, Harmonic };
  Mode mode = Mode::Harmonic;
  double eps0 = 0.5;
  double c = 1.0;
  double power = 4.0;

  // Perturbation level after n exploration rounds of the current candidate.
  double at(double n) const;
};

// First arm i (lowest index) with min over the alternative to i of
// sum_k N^k d(mu_hat^k, lambda^k) above `threshold`.
std::optional<std::size_t> explore_exploit_test(const Structure& structure,
                                                const Family& family,
                                                std::span<const double> mu_hat,
                                                std::span<const std::int64_t> counts,
                                                double threshold);

// max over xi in [lo, hi] of E_q d(xi, lambda) / max(eps, gap(xi)) where
// gap(xi) = top_upper - xi for non-candidate arms and 0 for the candidate.
// The ratio is quasi-convex, so the ends and the kink top_upper - eps suffice.
double optimistic_ratio(const Family& family, double lo, double hi,
                        std::span<const double> lambdas,
                        std::span<const double> lambda_weights, bool candidate,
                        double top_upper, double eps);

struct ArmStats {
  std::vector<std::int64_t> counts;
  std::vector<double> sums;
  std::vector<double> means;
  std::int64_t rounds = 0;

  explicit ArmStats(std::size_t arms)
      : counts(arms, 0), sums(arms, 0.0), means(arms, 0.0) {}
  void record(std::size_t arm, double reward);
};

class Policy {
 public:
  Policy(const Family& family, std::size_t arms);
  virtual ~Policy() = default;

  virtual std::string name() const = 0;

  // One pull per arm first, then the algorithm proper.
  std::size_t choose();
  void observe(std::size_t arm, double reward);

  const ArmStats& stats() const { return stats_; }
  std::int64_t explore_rounds() const { return explore_; }
  std::int64_t exploit_rounds() const { return exploit_; }

 protected:
  virtual std::size_t select() = 0;
  std::size_t empirical_best() const;

  Family family_;
  ArmStats stats_;
  std::int64_t explore_ = 0;
  std::int64_t exploit_ = 0;
};

struct SaddleParams {
  EpsilonSchedule schedule;
  CiMode ci_mode = CiMode::Experiment;
  double eta = 0.5;
};

// Shared skeleton of SP_k and SP_lambda: exploit test, forced pulls of the
// empirical leader on even counters, otherwise an optimistic saddle step
// followed by tracking.
class SaddlePolicy : public Policy {
 public:
  SaddlePolicy(const Structure& structure, const Family& family,
               SaddleParams params);

  const std::vector<std::int64_t>& exploration_counters() const { return n_; }
  const std::vector<std::int64_t>& tracked_counts() const { return tracked_; }
  const std::vector<double>& tracked_target() const { return target_; }
  // Perturbed gap estimates of the last saddle step.
  const std::vector<double>& last_gap_estimates() const { return last_gaps_; }
  double last_epsilon() const { return last_eps_; }

 protected:
  struct Intervals {
    std::vector<double> lower, upper;
  };

  std::size_t select() final;
  // Pull proportions for this round given candidate j.
  virtual std::vector<double> saddle_step(std::size_t j, const Intervals& ci,
                                          const std::vector<double>& gaps,
                                          double eps) = 0;

  const Structure* structure_;
  SaddleParams params_;
  std::vector<std::int64_t> n_;
  std::vector<std::int64_t> tracked_;
  std::vector<double> target_;
  std::vector<double> last_gaps_;
  double last_eps_ = 0.0;
};

class SpK final : public SaddlePolicy {
 public:
  using SaddlePolicy::SaddlePolicy;
  std::string name() const override { return "spk"; }

 private:
  std::vector<double> saddle_step(std::size_t j, const Intervals& ci,
                                  const std::vector<double>& gaps, double eps) override;
  std::vector<std::unique_ptr<AdaHedge>> learners_;
};

class SpLambda final : public SaddlePolicy {
 public:
  using SaddlePolicy::SaddlePolicy;
  std::string name() const override { return "splambda"; }

 private:
  std::vector<double> saddle_step(std::size_t j, const Intervals& ci,
                                  const std::vector<double>& gaps, double eps) override;
  std::vector<std::unique_ptr<LambdaLearner>> learners_;
};

struct OssbParams {
  double gamma = 0.0;
  std::size_t solver_iterations = 50;
  double solver_eps = 1e-3;
};

class Ossb final : public Policy {
 public:
  Ossb(const Structure& structure, const Family& family, std::int64_t horizon,
       OssbParams params = {});
  std::string name() const override { return "ossb"; }

  double forced_rate() const { return forced_rate_; }
  // Primal value of the last plug-in proportions (solver residual proxy).
  double last_plugin_value() const { return last_plugin_value_; }

 private:
  std::size_t select() override;
  std::vector<double> plugin_proportions(std::size_t best);

  const Structure* structure_;
  OssbParams params_;
  double forced_rate_;
  std::int64_t explorations_ = 0;
  std::vector<std::unique_ptr<AdaHedge>> solvers_;
  double last_plugin_value_ = 0.0;
};

class KlUcb final : public Policy {
 public:
  KlUcb(const Family& family, std::size_t arms) : Policy(family, arms) {}
  std::string name() const override { return "ucb"; }

 private:
  std::size_t select() override;
};

struct PolicyOptions {
  SaddleParams saddle;
  OssbParams ossb;
};

std::unique_ptr<Policy> make_policy(const std::string& name, const Structure& structure,
                                    const Family& family, std::int64_t horizon,
                                    const PolicyOptions& options = {});

}  // namespace structbandit
