#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "structbandit/structure.hpp"

namespace structbandit {

enum class Direction { MinimiseLoss, MaximiseGain };

// AdaHedge: exponential weights with learning rate ln K / (cumulative
// mixability gap).
class AdaHedge {
 public:
  explicit AdaHedge(std::size_t experts);

  std::size_t experts() const { return losses_.size(); }
  std::vector<double> weights() const;
  // Weights restricted to active experts; inactive ones get 0.
  std::vector<double> weights(const std::vector<bool>& active) const;

  void update(std::span<const double> v, Direction dir = Direction::MinimiseLoss);
  void update(std::span<const double> v, Direction dir,
              const std::vector<bool>& active);

  double learning_rate() const;
  double mixability_gap() const { return gap_; }
  const std::vector<double>& cumulative_losses() const { return losses_; }

 private:
  std::vector<double> losses_;
  double gap_ = 0.0;
};

// Mixture over the cells {lambda_k >= lambda_j} of one candidate arm j.
struct LambdaMixture {
  std::vector<std::size_t> witnesses;          // arm k of each feasible cell
  std::vector<double> weights;                 // probability over those cells
  std::vector<std::vector<double>> leaders;    // one mean vector per cell
};

// Follow-the-Leader per cell, aggregated by AdaHedge.
//
// Each cell's objective is sum_s sum_i w_s^i d(mu_{s-1}^i, lambda^i). For an
// exponential family this equals W^i d(m^i, lambda^i) up to a constant, with
// W the summed weights and m the weight-averaged mean snapshots, so the
// leader is one alt_min call.
class LambdaLearner {
 public:
  LambdaLearner(const Structure& structure, const Family& family,
                std::size_t candidate);

  std::size_t candidate() const { return candidate_; }

  // Uses `mu_hat` for coordinates that have received no weight yet.
  LambdaMixture propose(std::span<const double> mu_hat);

  // Loss of each cell is d(mu_hat^arm, leader^arm) for the last proposal.
  void update(std::size_t arm, std::span<const double> mu_hat,
              std::span<const double> w_increment);

  const std::vector<double>& cumulative_weights() const { return weight_; }

 private:
  void refresh(std::span<const double> mu_hat);

  const Structure* structure_;
  Family family_;
  std::size_t candidate_;
  std::vector<std::size_t> cells_;
  std::vector<bool> active_;
  std::vector<std::vector<double>> leaders_;
  std::vector<double> weight_;
  std::vector<double> weighted_means_;
  AdaHedge hedge_;
  bool fresh_ = true;
};

}  // namespace structbandit
