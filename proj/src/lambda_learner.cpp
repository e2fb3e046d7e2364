#include "structbandit/errors.hpp"
#include "structbandit/learners.hpp"

namespace structbandit {

namespace {

std::vector<std::size_t> witnesses_of(std::size_t arms, std::size_t candidate) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < arms; ++k)
    if (k != candidate) out.push_back(k);
  return out;
}

}  // namespace

LambdaLearner::LambdaLearner(const Structure& structure, const Family& family,
                             std::size_t candidate)
    : structure_(&structure),
      family_(family),
      candidate_(candidate),
      cells_(witnesses_of(structure.arms(), candidate)),
      active_(cells_.size(), true),
      leaders_(cells_.size()),
      weight_(structure.arms(), 0.0),
      weighted_means_(structure.arms(), 0.0),
      hedge_(cells_.size()) {
  if (candidate >= structure.arms()) throw DimensionError("candidate arm out of range");
}

void LambdaLearner::refresh(std::span<const double> mu_hat) {
  std::vector<double> m(mu_hat.begin(), mu_hat.end());
  for (std::size_t i = 0; i < m.size(); ++i)
    if (weight_[i] > 0.0) m[i] = weighted_means_[i] / weight_[i];
  bool any = false;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (!active_[c]) continue;
    try {
      leaders_[c] = alt_min(*structure_, family_, m, weight_, candidate_, cells_[c]).minimiser;
      any = true;
    } catch (const InfeasibleError&) {
      active_[c] = false;
    }
  }
  if (!any) throw InfeasibleError("every cell of the alternative set is empty");
}

LambdaMixture LambdaLearner::propose(std::span<const double> mu_hat) {
  if (fresh_) {
    refresh(mu_hat);
    fresh_ = false;
  }
  LambdaMixture q;
  std::vector<double> p = hedge_.weights(active_);
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (!active_[c]) continue;
    q.witnesses.push_back(cells_[c]);
    q.weights.push_back(p[c]);
    q.leaders.push_back(leaders_[c]);
  }
  return q;
}

void LambdaLearner::update(std::size_t arm, std::span<const double> mu_hat,
                           std::span<const double> w_increment) {
  if (arm >= weight_.size()) throw DimensionError("arm index out of range");
  if (w_increment.size() != weight_.size() || mu_hat.size() != weight_.size())
    throw DimensionError("update vectors must have K entries");
  if (fresh_) {
    refresh(mu_hat);
    fresh_ = false;
  }
  std::vector<double> loss(cells_.size(), 0.0);
  for (std::size_t c = 0; c < cells_.size(); ++c)
    if (active_[c]) loss[c] = family_.kl(mu_hat[arm], leaders_[c][arm]);
  hedge_.update(loss, Direction::MinimiseLoss, active_);
  for (std::size_t i = 0; i < weight_.size(); ++i) {
    weight_[i] += w_increment[i];
    weighted_means_[i] += w_increment[i] * mu_hat[i];
  }
  refresh(mu_hat);
}

}  // namespace structbandit
