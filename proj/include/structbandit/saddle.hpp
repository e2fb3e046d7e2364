#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "structbandit/structure.hpp"

namespace structbandit {

// A structured bandit problem with known means.
class Instance {
 public:
  // Rejects means outside M (tol 1e-7) and best-arm margins below 1e-6.
  Instance(Family family, Structure structure, std::vector<double> means);

  const Family& family() const { return family_; }
  const Structure& structure() const { return structure_; }
  const std::vector<double>& means() const { return means_; }
  std::size_t arms() const { return means_.size(); }
  std::size_t best_arm() const { return best_; }
  std::vector<double> gaps() const;

 private:
  Family family_;
  Structure structure_;
  std::vector<double> means_;
  std::size_t best_;
};

// Gaps max(Delta_k, eps); the best arm's entry is eps.
std::vector<double> perturbed_gaps(std::span<const double> means, double eps);

struct DualAtom {
  std::size_t witness;
  std::vector<double> lambda;
  double weight;
};

// Bracket value_lower <= D_eps <= value_upper on the information-per-regret
// value. value_lower comes from pull proportions (primal), value_upper from a
// mixture of confusing instances (dual).
struct GameValueResult {
  double value_lower = 0.0;
  double value_upper = 0.0;
  std::vector<double> pull_proportions;
  std::vector<double> regret_proportions;
  std::size_t iterations = 0;
  std::vector<DualAtom> dual_mixture;

  // Regret-rate coefficient V = 1/D from the primal certificate.
  double rate() const { return 1.0 / value_lower; }
};

GameValueResult solve_k_learner(const Instance& inst, double eps, std::size_t n);
GameValueResult solve_lambda_learner(const Instance& inst, double eps,
                                     std::size_t n);

// inf_lambda sum_k w^k d(mu^k, lambda^k) / sum_k w^k gap^k at fixed w.
double primal_value(const Instance& inst, std::span<const double> w,
                    std::span<const double> gaps);

// Value of the finite game: rows are the confusing points, entry k is the
// payoff d(mu^k, lambda^k) / gap^k; the arm player maximises.
double solve_finite_game(const std::vector<std::vector<double>>& payoffs);

// Grid discretisation of every cell, then the finite game. K <= 4.
double brute_force_value(const Instance& inst, double eps, double grid_step);

// Maximiser of a concave function over the probability simplex, by nested
// golden-section search. Practical for dim <= 4.
struct SimplexMax {
  double value;
  std::vector<double> argmax;
};
SimplexMax maximise_on_simplex(const std::function<double(std::span<const double>)>& f,
                               std::size_t dim, int iterations = 60);

// D_eps to near machine precision for K <= 4 by maximising the concave
// regret-proportion objective directly.
double small_k_value(const Instance& inst, double eps);

// sum_{k != *} Delta_k / d(mu_k, mu*): the rate without structure.
double unconstrained_rate(const Instance& inst);

struct PerturbationRow {
  double eps;
  double value;
  double scaled_loss;  // (D - D_eps) / sqrt(eps)
};

struct PerturbationReport {
  double reference;  // D
  std::vector<PerturbationRow> rows;
  double fitted_constant;  // mean scaled loss over the two largest eps
  bool below_reference;
  bool monotone;
  double spread;  // max / min scaled loss
  bool shape_ok() const { return below_reference && monotone && spread <= 3.0; }
};

PerturbationReport perturbation_check(const Instance& inst,
                                      std::span<const double> eps_list,
                                      std::optional<double> reference = std::nullopt);

}  // namespace structbandit
