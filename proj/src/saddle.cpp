#include "structbandit/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "structbandit/errors.hpp"
#include "structbandit/learners.hpp"

namespace structbandit {

namespace {

constexpr double kBestMargin = 1e-6;

std::vector<double> normalised(std::vector<double> v) {
  double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= s;
  return v;
}

// Pull proportions from regret proportions: w^k proportional to wt^k / gap^k.
std::vector<double> to_pull(std::span<const double> wt, std::span<const double> gaps) {
  std::vector<double> w(wt.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = wt[k] / gaps[k];
  return normalised(std::move(w));
}

std::vector<double> to_regret(std::span<const double> w, std::span<const double> gaps) {
  std::vector<double> wt(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) wt[k] = w[k] * gaps[k];
  return normalised(std::move(wt));
}

std::size_t check_means(const Family& family, const Structure& structure,
                        const std::vector<double>& means) {
  if (means.size() != structure.arms())
    throw DimensionError("mean vector length differs from the structure's K");
  for (double m : means)
    if (!family.in_domain(m)) throw DomainError("mean outside the parameter space");
  if (!membership(structure, means, 1e-7))
    throw DomainError("means do not belong to the structure");
  std::size_t best = 0;
  for (std::size_t k = 1; k < means.size(); ++k)
    if (means[k] > means[best]) best = k;
  for (std::size_t k = 0; k < means.size(); ++k)
    if (k != best && means[best] - means[k] < kBestMargin)
      throw DomainError("best arm is not unique (margin below 1e-6)");
  return best;
}

}  // namespace

Instance::Instance(Family family, Structure structure, std::vector<double> means)
    : family_(family),
      structure_(std::move(structure)),
      means_(std::move(means)),
      best_(check_means(family_, structure_, means_)) {}

std::vector<double> Instance::gaps() const {
  std::vector<double> g(means_.size());
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = means_[best_] - means_[k];
  return g;
}

std::vector<double> perturbed_gaps(std::span<const double> means, double eps) {
  if (!(eps > 0.0)) throw DomainError("perturbation eps must be positive");
  double top = *std::max_element(means.begin(), means.end());
  std::vector<double> g(means.size());
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = std::max(top - means[k], eps);
  return g;
}

double primal_value(const Instance& inst, std::span<const double> w,
                    std::span<const double> gaps) {
  double denom = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) denom += w[k] * gaps[k];
  CellResponse br = best_response_neg(inst.structure(), inst.family(), inst.means(),
                                      w, inst.best_arm());
  return br.result.value / denom;
}

GameValueResult solve_k_learner(const Instance& inst, double eps, std::size_t n) {
  if (n == 0) throw DomainError("solver needs at least one iteration");
  const std::size_t K = inst.arms();
  const std::vector<double> gaps = perturbed_gaps(inst.means(), eps);
  const auto& mu = inst.means();
  AdaHedge hedge(K);

  GameValueResult out;
  std::vector<double> wt_sum(K, 0.0), gain_sum(K, 0.0);
  double scale_sum = 0.0;
  double best_round = 0.0;
  double best_atom = INFINITY;
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<double> wt = hedge.weights();
    std::vector<double> w = to_pull(wt, gaps);
    double scale = 0.0;
    for (std::size_t k = 0; k < K; ++k) scale += w[k] * gaps[k];
    CellResponse br = best_response_neg(inst.structure(), inst.family(), mu, w,
                                        inst.best_arm());
    best_round = std::max(best_round, br.result.value / scale);

    std::vector<double> gain(K);
    double atom = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      double ratio = inst.family().kl(mu[k], br.result.minimiser[k]) / gaps[k];
      gain[k] = scale * ratio;
      atom = std::max(atom, ratio);
      wt_sum[k] += wt[k];
      gain_sum[k] += gain[k];
    }
    best_atom = std::min(best_atom, atom);
    scale_sum += scale;
    hedge.update(gain, Direction::MaximiseGain);
    out.dual_mixture.push_back({br.witness, std::move(br.result.minimiser), scale});
  }
  for (DualAtom& a : out.dual_mixture) a.weight /= scale_sum;

  out.regret_proportions = normalised(wt_sum);
  out.pull_proportions = to_pull(out.regret_proportions, gaps);
  out.value_lower = std::max(best_round, primal_value(inst, out.pull_proportions, gaps));
  double mixture = *std::max_element(gain_sum.begin(), gain_sum.end()) / scale_sum;
  out.value_upper = std::min(mixture, best_atom);
  out.iterations = n;
  return out;
}

GameValueResult solve_lambda_learner(const Instance& inst, double eps,
                                     std::size_t n) {
  if (n == 0) throw DomainError("solver needs at least one iteration");
  const std::size_t K = inst.arms();
  const std::vector<double> gaps = perturbed_gaps(inst.means(), eps);
  const auto& mu = inst.means();
  LambdaLearner learner(inst.structure(), inst.family(), inst.best_arm());

  GameValueResult out;
  std::vector<double> counts(K, 0.0), mix_sum(K, 0.0);
  double mix_norm = 0.0;
  double best_single = INFINITY;
  for (std::size_t t = 0; t < n; ++t) {
    LambdaMixture q = learner.propose(mu);
    std::vector<double> ratio(K, 0.0);
    for (std::size_t c = 0; c < q.weights.size(); ++c)
      for (std::size_t k = 0; k < K; ++k)
        ratio[k] += q.weights[c] * inst.family().kl(mu[k], q.leaders[c][k]);
    for (std::size_t k = 0; k < K; ++k) ratio[k] /= gaps[k];
    std::size_t kt = static_cast<std::size_t>(
        std::max_element(ratio.begin(), ratio.end()) - ratio.begin());
    best_single = std::min(best_single, ratio[kt]);
    for (std::size_t k = 0; k < K; ++k) mix_sum[k] += gaps[kt] * ratio[k];
    mix_norm += gaps[kt];
    for (std::size_t c = 0; c < q.weights.size(); ++c)
      out.dual_mixture.push_back({q.witnesses[c], q.leaders[c], gaps[kt] * q.weights[c]});

    std::vector<double> e(K, 0.0);
    e[kt] = 1.0;
    learner.update(kt, mu, e);
    counts[kt] += 1.0;
  }
  for (DualAtom& a : out.dual_mixture) a.weight /= mix_norm;

  out.pull_proportions = normalised(counts);
  out.regret_proportions = to_regret(out.pull_proportions, gaps);
  out.value_lower = primal_value(inst, out.pull_proportions, gaps);
  out.value_upper =
      std::min(best_single, *std::max_element(mix_sum.begin(), mix_sum.end()) / mix_norm);
  out.iterations = n;
  return out;
}

double unconstrained_rate(const Instance& inst) {
  const auto& mu = inst.means();
  const std::size_t star = inst.best_arm();
  double v = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k)
    if (k != star) v += (mu[star] - mu[k]) / inst.family().kl(mu[k], mu[star]);
  return v;
}

SimplexMax maximise_on_simplex(const std::function<double(std::span<const double>)>& f,
                               std::size_t dim, int iterations) {
  if (dim == 0) throw DomainError("simplex dimension must be positive");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  std::vector<double> x(dim, 0.0);

  // Best value over coordinates [m, dim) given x[0, m) and remaining mass r.
  std::function<double(std::size_t, double)> inner = [&](std::size_t m, double r) {
    if (m + 1 == dim) {
      x[m] = r;
      return f(x);
    }
    auto eval = [&](double v) {
      x[m] = v;
      return inner(m + 1, r - v);
    };
    double a = 0.0, b = r;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = eval(c), fd = eval(d);
    for (int it = 0; it < iterations; ++it) {
      if (fc >= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = eval(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = eval(d);
      }
    }
    // Endpoints matter when the maximiser sits on a face of the simplex.
    double best = -INFINITY, arg = 0.0;
    for (double v : {a, 0.5 * (a + b), b, 0.0, r}) {
      double fv = eval(v);
      if (fv > best) {
        best = fv;
        arg = v;
      }
    }
    eval(arg);
    return best;
  };
  SimplexMax out;
  out.value = inner(0, 1.0);
  out.argmax = x;
  return out;
}

double small_k_value(const Instance& inst, double eps) {
  const std::size_t K = inst.arms();
  if (K > 4) throw ResourceError("small_k_value supports at most four arms");
  const std::vector<double> gaps = perturbed_gaps(inst.means(), eps);
  auto psi = [&](std::span<const double> wt) {
    std::vector<double> u(K);
    for (std::size_t k = 0; k < K; ++k) u[k] = wt[k] / gaps[k];
    return best_response_neg(inst.structure(), inst.family(), inst.means(), u,
                             inst.best_arm())
        .result.value;
  };
  return maximise_on_simplex(psi, K).value;
}

PerturbationReport perturbation_check(const Instance& inst,
                                      std::span<const double> eps_list,
                                      std::optional<double> reference) {
  if (eps_list.empty()) throw DomainError("perturbation check needs eps values");
  for (double e : eps_list)
    if (!(e > 0.0)) throw DomainError("perturbation eps must be positive");
  auto value_at = [&](double e) {
    if (inst.arms() <= 4) return small_k_value(inst, e);
    return solve_k_learner(inst, e, 20000).value_lower;
  };
  PerturbationReport rep;
  if (reference) {
    rep.reference = *reference;
  } else if (std::holds_alternative<Unconstrained>(inst.structure().spec())) {
    rep.reference = 1.0 / unconstrained_rate(inst);
  } else {
    double smallest = *std::min_element(eps_list.begin(), eps_list.end());
    rep.reference = value_at(smallest * 1e-3);
  }
  for (double e : eps_list) {
    double v = value_at(e);
    rep.rows.push_back({e, v, (rep.reference - v) / std::sqrt(e)});
  }
  std::vector<PerturbationRow> by_eps = rep.rows;
  std::sort(by_eps.begin(), by_eps.end(),
            [](const auto& a, const auto& b) { return a.eps > b.eps; });
  rep.below_reference = true;
  rep.monotone = true;
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < by_eps.size(); ++i) {
    const double tol = 1e-9 * (1.0 + rep.reference);
    if (by_eps[i].value > rep.reference + tol) rep.below_reference = false;
    // The loss D - D_eps shrinks with eps.
    if (i > 0 && by_eps[i].value < by_eps[i - 1].value - tol) rep.monotone = false;
    lo = std::min(lo, by_eps[i].scaled_loss);
    hi = std::max(hi, by_eps[i].scaled_loss);
  }
  rep.spread = lo > 0.0 ? hi / lo : INFINITY;
  rep.fitted_constant = by_eps.size() >= 2
                            ? 0.5 * (by_eps[0].scaled_loss + by_eps[1].scaled_loss)
                            : by_eps[0].scaled_loss;
  return rep;
}

}  // namespace structbandit
