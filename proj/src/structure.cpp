#include "structbandit/structure.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "altmin_detail.hpp"
#include "structbandit/errors.hpp"

namespace structbandit {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void validate_spec(std::size_t arms, const Structure::Spec& spec) {
  std::visit(
      Overloaded{
          [](const Unconstrained&) {},
          [](const Unimodal&) {},
          [&](const Sparse& s) {
            if (s.support < 1 || s.support > arms)
              throw DomainError("sparse support must lie in [1, K]");
          },
          [&](const Linear& l) {
            if (l.arms.size() != arms)
              throw DimensionError("linear structure needs one vector per arm");
            std::size_t d = l.dimension();
            if (d == 0 || d > arms)
              throw DimensionError("linear dimension must lie in [1, K]");
            for (const auto& row : l.arms)
              if (row.size() != d)
                throw DimensionError("linear arm vectors differ in dimension");
          },
          [](const Lipschitz& l) {
            if (!(l.constant > 0.0))
              throw DomainError("lipschitz constant must be positive");
          },
          [&](const Categorised& c) {
            if (c.category.size() != arms)
              throw DimensionError("category assignment must cover every arm");
            std::set<int> ids(c.category.begin(), c.category.end());
            if (ids.size() != 2)
              throw DomainError("categorised structure needs exactly two categories");
          },
      },
      spec);
}

// Zero weights leave a coordinate free. A weight tiny relative to the others
// selects, among the minimisers, the one closest to mu_hat.
std::vector<double> effective_weights(std::span<const double> w) {
  double top = 0.0;
  for (double x : w) top = std::max(top, x);
  double floor = top > 0.0 ? 1e-10 * top : 1.0;
  std::vector<double> out(w.begin(), w.end());
  for (double& x : out) x += floor;
  return out;
}

void check_args(const Structure& s, std::span<const double> mu_hat,
                std::span<const double> w, std::size_t j, std::size_t k) {
  std::size_t K = s.arms();
  if (mu_hat.size() != K || w.size() != K)
    throw DimensionError("mean or weight vector length differs from K");
  if (j >= K || k >= K) throw DimensionError("arm index out of range");
  if (j == k) throw DomainError("alt_min needs j != k");
  for (double x : w)
    if (!(x >= 0.0) || !std::isfinite(x))
      throw DomainError("weights must be finite and nonnegative");
}

// Sup-norm distance from a sequence to the nondecreasing cone.
double monotone_distance(std::span<const double> x, bool increasing) {
  double worst = 0.0;
  double running = increasing ? -INFINITY : INFINITY;
  for (double v : x) {
    if (increasing) {
      running = std::max(running, v);
      worst = std::max(worst, running - v);
    } else {
      running = std::min(running, v);
      worst = std::max(worst, v - running);
    }
  }
  return 0.5 * worst;
}

}  // namespace

Structure::Structure(std::size_t arms, Spec spec, std::optional<Box> box)
    : arms_(arms), spec_(std::move(spec)), box_(box) {
  if (arms_ < 2) throw DomainError("a structure needs at least two arms");
  if (box_ && !(box_->lo <= box_->hi)) throw DomainError("empty box");
  validate_spec(arms_, spec_);
}

std::string Structure::kind_name() const {
  return std::visit(Overloaded{
                        [](const Unconstrained&) { return "unconstrained"; },
                        [](const Sparse&) { return "sparse"; },
                        [](const Linear&) { return "linear"; },
                        [](const Unimodal&) { return "unimodal"; },
                        [](const Lipschitz&) { return "lipschitz"; },
                        [](const Categorised&) { return "categorised"; },
                    },
                    spec_);
}

Box Structure::box_for(const Family& family,
                       std::span<const double> mu_hat) const {
  if (box_) return *box_;
  if (family.kind() == Family::Kind::Bernoulli) return {1e-6, 1.0 - 1e-6};
  auto [lo, hi] = std::minmax_element(mu_hat.begin(), mu_hat.end());
  double sigma = std::sqrt(family.variance());
  return {*lo - 5.0 * sigma, *hi + 5.0 * sigma};
}

double weighted_divergence(const Family& family, std::span<const double> mu,
                           std::span<const double> w,
                           std::span<const double> lambda) {
  double total = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (w[i] > 0.0) total += w[i] * family.kl(mu[i], lambda[i]);
  return total;
}

AltMinResult alt_min(const Structure& structure, const Family& family,
                     std::span<const double> mu_hat, std::span<const double> w,
                     std::size_t j, std::size_t k) {
  check_args(structure, mu_hat, w, j, k);
  std::vector<double> weff = effective_weights(w);
  std::vector<double> lambda = std::visit(
      Overloaded{
          [&](const Unconstrained&) {
            return detail::altmin_unconstrained(family, mu_hat, weff, j, k);
          },
          [&](const Sparse& s) {
            return detail::altmin_sparse(s, family, mu_hat, weff, j, k);
          },
          [&](const Linear& l) {
            return detail::altmin_linear(l, family, mu_hat, weff, j, k);
          },
          [&](const Unimodal&) {
            return detail::altmin_unimodal(family, mu_hat, weff, j, k);
          },
          [&](const Lipschitz& l) {
            return detail::altmin_lipschitz(
                l, structure.box_for(family, mu_hat), family, mu_hat, weff, j, k);
          },
          [&](const Categorised& c) {
            return detail::altmin_categorised(c, family, mu_hat, weff, j, k);
          },
      },
      structure.spec());
  AltMinResult out;
  out.value = weighted_divergence(family, mu_hat, w, lambda);
  out.minimiser = std::move(lambda);
  return out;
}

CellResponse best_response_neg(const Structure& structure, const Family& family,
                               std::span<const double> mu_hat,
                               std::span<const double> w, std::size_t j) {
  std::optional<CellResponse> best;
  for (std::size_t k = 0; k < structure.arms(); ++k) {
    if (k == j) continue;
    try {
      AltMinResult r = alt_min(structure, family, mu_hat, w, j, k);
      if (!best || r.value < best->result.value) best = CellResponse{std::move(r), k};
    } catch (const InfeasibleError&) {
    }
  }
  if (!best) throw InfeasibleError("every cell of the alternative set is empty");
  return *best;
}

bool alternative_exceeds(const Structure& structure, const Family& family,
                         std::span<const double> mu_hat,
                         std::span<const double> w, std::size_t j,
                         double threshold) {
  // Cells whose witness already looks better than j are the likely minima.
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < structure.arms(); ++k)
    if (k != j) order.push_back(k);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return mu_hat[a] > mu_hat[b];
  });
  bool any = false;
  for (std::size_t k : order) {
    try {
      if (alt_min(structure, family, mu_hat, w, j, k).value <= threshold) return false;
      any = true;
    } catch (const InfeasibleError&) {
    }
  }
  if (!any) throw InfeasibleError("every cell of the alternative set is empty");
  return true;
}

bool membership(const Structure& structure, std::span<const double> lambda,
                double tol) {
  if (lambda.size() != structure.arms()) return false;
  for (double x : lambda)
    if (!std::isfinite(x)) return false;
  const std::size_t K = lambda.size();
  return std::visit(
      Overloaded{
          [](const Unconstrained&) { return true; },
          [&](const Sparse& s) {
            std::size_t above = 0;
            for (double x : lambda) {
              if (x < s.level - tol) return false;
              if (x > s.level + tol) ++above;
            }
            return above <= s.support;
          },
          [&](const Linear& l) { return detail::linear_residual(l, lambda) <= tol; },
          [&](const Unimodal&) {
            for (std::size_t p = 0; p < K; ++p) {
              double d1 = monotone_distance(lambda.subspan(0, p + 1), true);
              double d2 = monotone_distance(lambda.subspan(p + 1), false);
              if (std::max(d1, d2) <= tol) return true;
            }
            return false;
          },
          [&](const Lipschitz& l) {
            for (std::size_t i = 0; i + 1 < K; ++i)
              if (std::abs(lambda[i] - lambda[i + 1]) > l.constant + 2.0 * tol)
                return false;
            return true;
          },
          [&](const Categorised& c) {
            int first = c.category[0];
            double min_a = INFINITY, max_a = -INFINITY;
            double min_b = INFINITY, max_b = -INFINITY;
            for (std::size_t i = 0; i < K; ++i) {
              if (c.category[i] == first) {
                min_a = std::min(min_a, lambda[i]);
                max_a = std::max(max_a, lambda[i]);
              } else {
                min_b = std::min(min_b, lambda[i]);
                max_b = std::max(max_b, lambda[i]);
              }
            }
            return min_a >= max_b - 2.0 * tol || min_b >= max_a - 2.0 * tol;
          },
      },
      structure.spec());
}

}  // namespace structbandit
