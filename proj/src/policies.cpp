#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "structbandit/algos.hpp"
#include "structbandit/errors.hpp"
#include "structbandit/saddle.hpp"

namespace structbandit {

namespace {

std::size_t argmax_lowest(std::span<const double> v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

std::vector<double> as_weights(std::span<const std::int64_t> counts) {
  return {counts.begin(), counts.end()};
}

}  // namespace

std::optional<std::size_t> explore_exploit_test(const Structure& structure,
                                                const Family& family,
                                                std::span<const double> mu_hat,
                                                std::span<const std::int64_t> counts,
                                                double threshold) {
  const std::vector<double> w = as_weights(counts);
  // If mu_hat is itself structured, it lies in the alternative to every arm
  // other than its leader, so only the leader can pass.
  if (membership(structure, mu_hat, 0.0)) {
    std::size_t lead = argmax_lowest(mu_hat);
    if (alternative_exceeds(structure, family, mu_hat, w, lead, threshold)) return lead;
    return std::nullopt;
  }
  for (std::size_t i = 0; i < mu_hat.size(); ++i)
    if (alternative_exceeds(structure, family, mu_hat, w, i, threshold)) return i;
  return std::nullopt;
}

double optimistic_ratio(const Family& family, double lo, double hi,
                        std::span<const double> lambdas,
                        std::span<const double> lambda_weights, bool candidate,
                        double top_upper, double eps) {
  auto ratio = [&](double xi) {
    double num = 0.0;
    for (std::size_t a = 0; a < lambdas.size(); ++a)
      if (lambda_weights[a] > 0.0) num += lambda_weights[a] * family.kl(xi, lambdas[a]);
    double den = candidate ? eps : std::max(eps, top_upper - xi);
    return num / den;
  };
  double kink = std::clamp(top_upper - eps, lo, hi);
  return std::max({ratio(lo), ratio(hi), ratio(kink)});
}

void ArmStats::record(std::size_t arm, double reward) {
  counts[arm] += 1;
  sums[arm] += reward;
  means[arm] = sums[arm] / static_cast<double>(counts[arm]);
  rounds += 1;
}

Policy::Policy(const Family& family, std::size_t arms) : family_(family), stats_(arms) {}

std::size_t Policy::choose() {
  if (stats_.rounds < static_cast<std::int64_t>(stats_.counts.size()))
    return static_cast<std::size_t>(stats_.rounds);
  return select();
}

void Policy::observe(std::size_t arm, double reward) { stats_.record(arm, reward); }

std::size_t Policy::empirical_best() const { return argmax_lowest(stats_.means); }

SaddlePolicy::SaddlePolicy(const Structure& structure, const Family& family,
                           SaddleParams params)
    : Policy(family, structure.arms()),
      structure_(&structure),
      params_(params),
      n_(structure.arms(), 0),
      tracked_(structure.arms(), 0),
      target_(structure.arms(), 0.0) {}

std::size_t SaddlePolicy::select() {
  const std::size_t K = stats_.counts.size();
  const double t = static_cast<double>(stats_.rounds);
  const auto& mu = stats_.means;

  double f = exploit_threshold(t, K);
  if (auto i = explore_exploit_test(*structure_, family_, mu, stats_.counts, f)) {
    ++exploit_;
    return *i;
  }
  ++explore_;
  const std::size_t j = empirical_best();
  if (n_[j] % 2 == 0) {
    ++n_[j];
    return j;
  }

  const double eps = params_.schedule.at(static_cast<double>(n_[j]));
  ThresholdConfig cfg{K, params_.eta, params_.ci_mode};
  const double radius = g_threshold(cfg, std::max(t, 2.0), static_cast<double>(n_[j]));
  Intervals ci{std::vector<double>(K), std::vector<double>(K)};
  for (std::size_t k = 0; k < K; ++k) {
    auto [lo, hi] = confidence_interval(family_, mu[k],
                                        static_cast<double>(stats_.counts[k]), radius);
    ci.lower[k] = lo;
    ci.upper[k] = hi;
  }
  std::vector<double> gaps(K);
  for (std::size_t k = 0; k < K; ++k) gaps[k] = std::max(eps, ci.upper[j] - ci.upper[k]);
  gaps[j] = eps;

  std::vector<double> w = saddle_step(j, ci, gaps, eps);
  for (std::size_t k = 0; k < K; ++k) target_[k] += w[k];
  std::size_t pull = track(tracked_, target_);
  ++tracked_[pull];
  ++n_[j];
  last_gaps_ = std::move(gaps);
  last_eps_ = eps;
  return pull;
}

std::vector<double> SpK::saddle_step(std::size_t j, const Intervals& ci,
                                     const std::vector<double>& gaps, double eps) {
  const std::size_t K = gaps.size();
  if (learners_.size() < K) learners_.resize(K);
  if (!learners_[j]) learners_[j] = std::make_unique<AdaHedge>(K);
  AdaHedge& hedge = *learners_[j];

  std::vector<double> w = hedge.weights();
  double total = 0.0;
  for (std::size_t k = 0; k < K; ++k) total += (w[k] /= gaps[k]);
  double scale = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    w[k] /= total;
    scale += w[k] * gaps[k];
  }

  CellResponse br = best_response_neg(*structure_, family_, stats_.means, w, j);
  std::vector<double> gain(K);
  const double one = 1.0;
  for (std::size_t k = 0; k < K; ++k) {
    double lam = br.result.minimiser[k];
    gain[k] = scale * optimistic_ratio(family_, ci.lower[k], ci.upper[k],
                                       std::span<const double>(&lam, 1),
                                       std::span<const double>(&one, 1), k == j,
                                       ci.upper[j], eps);
    if (!std::isfinite(gain[k])) {
      std::ostringstream msg;
      msg << "non-finite gain at round " << stats_.rounds + 1 << " arm " << k
          << " (interval [" << ci.lower[k] << ", " << ci.upper[k] << "], lambda " << lam
          << ", eps " << eps << ")";
      throw std::runtime_error(msg.str());
    }
  }
  hedge.update(gain, Direction::MaximiseGain);
  return w;
}

std::vector<double> SpLambda::saddle_step(std::size_t j, const Intervals& ci,
                                          const std::vector<double>& gaps, double eps) {
  const std::size_t K = gaps.size();
  if (learners_.size() < K) learners_.resize(K);
  if (!learners_[j]) learners_[j] = std::make_unique<LambdaLearner>(*structure_, family_, j);
  LambdaLearner& learner = *learners_[j];

  LambdaMixture q = learner.propose(stats_.means);
  std::vector<double> ucb(K);
  std::vector<double> coord(q.leaders.size());
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t c = 0; c < q.leaders.size(); ++c) coord[c] = q.leaders[c][k];
    ucb[k] = optimistic_ratio(family_, ci.lower[k], ci.upper[k], coord, q.weights, k == j,
                              ci.upper[j], eps);
    if (!std::isfinite(ucb[k])) {
      std::ostringstream msg;
      msg << "non-finite optimistic ratio at round " << stats_.rounds + 1 << " arm " << k;
      throw std::runtime_error(msg.str());
    }
  }
  std::size_t response = argmax_lowest(ucb);
  std::vector<double> w(K, 0.0);
  w[response] = 1.0;
  learner.update(response, stats_.means, w);
  return w;
}

Ossb::Ossb(const Structure& structure, const Family& family, std::int64_t horizon,
           OssbParams params)
    : Policy(family, structure.arms()),
      structure_(&structure),
      params_(params),
      forced_rate_(0.02 / std::sqrt(std::log(static_cast<double>(std::max<std::int64_t>(horizon, 3))))) {}

// Warm-started AdaHedge on the plug-in game at mu_hat; returns the averaged
// pull proportions of this round's iterations.
std::vector<double> Ossb::plugin_proportions(std::size_t best) {
  const std::size_t K = stats_.counts.size();
  if (solvers_.size() < K) solvers_.resize(K);
  if (!solvers_[best]) solvers_[best] = std::make_unique<AdaHedge>(K);
  AdaHedge& hedge = *solvers_[best];
  const auto& mu = stats_.means;
  const std::vector<double> gaps = perturbed_gaps(mu, params_.solver_eps);

  std::vector<double> avg(K, 0.0);
  for (std::size_t it = 0; it < params_.solver_iterations; ++it) {
    std::vector<double> w = hedge.weights();
    double total = 0.0;
    for (std::size_t k = 0; k < K; ++k) total += (w[k] /= gaps[k]);
    double scale = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      w[k] /= total;
      scale += w[k] * gaps[k];
      avg[k] += w[k];
    }
    CellResponse br = best_response_neg(*structure_, family_, mu, w, best);
    std::vector<double> gain(K);
    for (std::size_t k = 0; k < K; ++k)
      gain[k] = scale * family_.kl(mu[k], br.result.minimiser[k]) / gaps[k];
    hedge.update(gain, Direction::MaximiseGain);
  }
  double s = std::accumulate(avg.begin(), avg.end(), 0.0);
  for (double& x : avg) x /= s;

  double denom = 0.0;
  for (std::size_t k = 0; k < K; ++k) denom += avg[k] * gaps[k];
  last_plugin_value_ =
      best_response_neg(*structure_, family_, mu, avg, best).result.value / denom;
  return avg;
}

std::size_t Ossb::select() {
  const std::size_t K = stats_.counts.size();
  const double t = static_cast<double>(stats_.rounds);
  const std::size_t best = empirical_best();
  const std::vector<double> w = as_weights(stats_.counts);
  const double f = (1.0 + params_.gamma) * std::log1p(t);
  if (alternative_exceeds(*structure_, family_, stats_.means, w, best, f)) {
    ++exploit_;
    return best;
  }
  ++explore_;
  ++explorations_;
  auto least = std::min_element(stats_.counts.begin(), stats_.counts.end());
  if (static_cast<double>(*least) < forced_rate_ * static_cast<double>(explorations_))
    return static_cast<std::size_t>(least - stats_.counts.begin());

  std::vector<double> prop = plugin_proportions(best);
  std::size_t pick = 0;
  double pick_val = INFINITY;
  for (std::size_t k = 0; k < K; ++k) {
    if (prop[k] <= 0.0) continue;
    double v = static_cast<double>(stats_.counts[k]) / prop[k];
    if (v < pick_val) {
      pick_val = v;
      pick = k;
    }
  }
  return pick;
}

std::size_t KlUcb::select() {
  const double t = static_cast<double>(stats_.rounds);
  const double level = std::log(t) + 3.0 * std::log(std::log(std::max(t, 3.0)));
  std::vector<double> index(stats_.counts.size());
  for (std::size_t k = 0; k < index.size(); ++k)
    index[k] = family_.kl_inverse_upper(stats_.means[k], std::max(level, 0.0),
                                        static_cast<double>(stats_.counts[k]));
  return argmax_lowest(index);
}

std::unique_ptr<Policy> make_policy(const std::string& name, const Structure& structure,
                                    const Family& family, std::int64_t horizon,
                                    const PolicyOptions& options) {
  if (name == "spk") return std::make_unique<SpK>(structure, family, options.saddle);
  if (name == "splambda") return std::make_unique<SpLambda>(structure, family, options.saddle);
  if (name == "ossb") return std::make_unique<Ossb>(structure, family, horizon, options.ossb);
  if (name == "ucb") return std::make_unique<KlUcb>(family, structure.arms());
  throw ConfigError("unknown algorithm '" + name + "'");
}

}  // namespace structbandit
