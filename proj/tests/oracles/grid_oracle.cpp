#include "grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace oracle {

using namespace structbandit;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Grid {
  std::vector<double> nodes;
  std::vector<std::vector<double>> cost;  // cost[i][g] = w_i d(mu_i, node_g)
};

Grid make_grid(const Family& f, std::span<const double> mu, std::span<const double> w,
               double anchor, double lo, double hi, double step) {
  Grid g;
  long first = static_cast<long>(std::floor((lo - anchor) / step));
  long last = static_cast<long>(std::ceil((hi - anchor) / step));
  for (long i = first; i <= last; ++i) {
    double x = anchor + static_cast<double>(i) * step;
    if (f.kind() == Family::Kind::Bernoulli && (x <= 0.0 || x >= 1.0)) continue;
    g.nodes.push_back(x);
  }
  g.cost.assign(mu.size(), std::vector<double>(g.nodes.size()));
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t n = 0; n < g.nodes.size(); ++n)
      g.cost[i][n] = w[i] * f.kl(mu[i], g.nodes[n]);
  return g;
}

// Cost of coordinate i at node n under the (j, k) restriction for lambda_j = node cj.
double restricted(const Grid& g, std::size_t i, std::size_t n, std::size_t j, std::size_t k,
                  std::size_t cj) {
  if (i == j && n != cj) return kInf;
  if (i == k && n < cj) return kInf;
  return g.cost[i][n];
}

struct Best {
  double value = kInf;
  std::vector<std::size_t> idx;
};

// Unimodal chain: phase 0 nondecreasing, phase 1 nonincreasing.
Best unimodal_dp(const Grid& g, std::size_t K, std::size_t j, std::size_t k, std::size_t cj) {
  const std::size_t G = g.nodes.size();
  std::vector<std::vector<double>> up(K, std::vector<double>(G)), down = up;
  std::vector<std::vector<std::size_t>> up_from(K, std::vector<std::size_t>(G)),
      down_from = up_from;
  std::vector<std::vector<char>> down_phase(K, std::vector<char>(G));
  for (std::size_t n = 0; n < G; ++n) {
    up[0][n] = restricted(g, 0, n, j, k, cj);
    down[0][n] = kInf;
  }
  for (std::size_t i = 1; i < K; ++i) {
    double run = kInf;
    std::size_t arg = 0;
    for (std::size_t n = 0; n < G; ++n) {
      if (up[i - 1][n] < run) {
        run = up[i - 1][n];
        arg = n;
      }
      up[i][n] = run + restricted(g, i, n, j, k, cj);
      up_from[i][n] = arg;
    }
    run = kInf;
    arg = 0;
    char phase = 0;
    for (std::size_t n = G; n-- > 0;) {
      if (up[i - 1][n] < run) {
        run = up[i - 1][n];
        arg = n;
        phase = 0;
      }
      if (down[i - 1][n] < run) {
        run = down[i - 1][n];
        arg = n;
        phase = 1;
      }
      down[i][n] = run + restricted(g, i, n, j, k, cj);
      down_from[i][n] = arg;
      down_phase[i][n] = phase;
    }
  }
  Best b;
  std::size_t end = 0;
  char phase = 0;
  for (std::size_t n = 0; n < G; ++n) {
    if (up[K - 1][n] < b.value) {
      b.value = up[K - 1][n];
      end = n;
      phase = 0;
    }
    if (down[K - 1][n] < b.value) {
      b.value = down[K - 1][n];
      end = n;
      phase = 1;
    }
  }
  if (!std::isfinite(b.value)) return b;
  b.idx.assign(K, 0);
  std::size_t n = end;
  for (std::size_t i = K; i-- > 0;) {
    b.idx[i] = n;
    if (i == 0) break;
    if (phase == 0) {
      n = up_from[i][n];
    } else {
      char prev = down_phase[i][n];
      n = down_from[i][n];
      phase = prev;
    }
  }
  return b;
}

// Lipschitz chain: neighbouring nodes at most `width` indices apart.
Best lipschitz_dp(const Grid& g, std::size_t K, std::size_t j, std::size_t k, std::size_t cj,
                  std::size_t width) {
  const std::size_t G = g.nodes.size();
  std::vector<std::vector<double>> dp(K, std::vector<double>(G));
  std::vector<std::vector<std::size_t>> from(K, std::vector<std::size_t>(G));
  for (std::size_t n = 0; n < G; ++n) dp[0][n] = restricted(g, 0, n, j, k, cj);
  for (std::size_t i = 1; i < K; ++i) {
    // Sliding-window minimum over [n - width, n + width].
    std::deque<std::size_t> dq;
    std::size_t pushed = 0;
    for (std::size_t n = 0; n < G; ++n) {
      std::size_t hi = std::min(G - 1, n + width);
      while (pushed <= hi) {
        while (!dq.empty() && dp[i - 1][dq.back()] >= dp[i - 1][pushed]) dq.pop_back();
        dq.push_back(pushed++);
      }
      while (dq.front() + width < n) dq.pop_front();
      dp[i][n] = dp[i - 1][dq.front()] + restricted(g, i, n, j, k, cj);
      from[i][n] = dq.front();
    }
  }
  Best b;
  std::size_t end = 0;
  for (std::size_t n = 0; n < G; ++n)
    if (dp[K - 1][n] < b.value) {
      b.value = dp[K - 1][n];
      end = n;
    }
  if (!std::isfinite(b.value)) return b;
  b.idx.assign(K, 0);
  for (std::size_t i = K; i-- > 0;) {
    b.idx[i] = end;
    if (i > 0) end = from[i][end];
  }
  return b;
}

// Running minima of each restricted coordinate cost: prefix[i][n] is the best
// node in [0, n], suffix[i][n] the best in [n, G).
struct Envelopes {
  std::vector<std::vector<std::pair<double, std::size_t>>> prefix, suffix;
};

Envelopes envelopes(const Grid& g, std::size_t K, std::size_t j, std::size_t k,
                    std::size_t cj) {
  const std::size_t G = g.nodes.size();
  Envelopes e;
  e.prefix.assign(K, std::vector<std::pair<double, std::size_t>>(G));
  e.suffix = e.prefix;
  for (std::size_t i = 0; i < K; ++i) {
    std::pair<double, std::size_t> run{kInf, 0};
    for (std::size_t n = 0; n < G; ++n) {
      double c = restricted(g, i, n, j, k, cj);
      if (c < run.first) run = {c, n};
      e.prefix[i][n] = run;
    }
    run = {kInf, G - 1};
    for (std::size_t n = G; n-- > 0;) {
      double c = restricted(g, i, n, j, k, cj);
      if (c <= run.first) run = {c, n};
      e.suffix[i][n] = run;
    }
  }
  return e;
}

}  // namespace

GridResult grid_alt_min(const Structure& s, const Family& f, std::span<const double> mu,
                        std::span<const double> w, std::size_t j, std::size_t k,
                        double step) {
  const std::size_t K = mu.size();
  GridResult out{kInf, {}};

  if (const auto* lin = std::get_if<Linear>(&s.spec())) {
    const std::size_t d = lin->dimension();
    if (d > 2) throw std::invalid_argument("grid oracle handles linear d <= 2");
    const double R = 3.0;
    const long n = static_cast<long>(std::lround(2 * R / step));
    std::vector<double> lambda(K), eta(2, 0.0);
    for (long a = 0; a <= n; ++a)
      for (long b = 0; b <= (d == 2 ? n : 0); ++b) {
        eta[0] = -R + static_cast<double>(a) * step;
        eta[1] = d == 2 ? -R + static_cast<double>(b) * step : 0.0;
        for (std::size_t i = 0; i < K; ++i) {
          lambda[i] = 0.0;
          for (std::size_t c = 0; c < d; ++c) lambda[i] += lin->arms[i][c] * eta[c];
        }
        if (lambda[k] < lambda[j]) continue;
        double v = 0.0;
        for (std::size_t i = 0; i < K; ++i) v += w[i] * f.kl(mu[i], lambda[i]);
        if (v < out.value) {
          out.value = v;
          out.lambda = lambda;
        }
      }
    return out;
  }

  double lo = *std::min_element(mu.begin(), mu.end());
  double hi = *std::max_element(mu.begin(), mu.end());
  double anchor = lo;
  const Sparse* sparse = std::get_if<Sparse>(&s.spec());
  if (sparse) {
    lo = std::min(lo, sparse->level);
    hi = std::max(hi, sparse->level);
    anchor = sparse->level;
  }
  // Refine the step so the Lipschitz constant is a whole number of steps;
  // otherwise the grid enforces a constant up to one step tighter.
  if (const auto* lip = std::get_if<Lipschitz>(&s.spec()))
    step = lip->constant / std::ceil(lip->constant / step - 1e-9);
  const Grid g = make_grid(f, mu, w, anchor, lo - 0.05, hi + 0.05, step);
  const std::size_t G = g.nodes.size();

  for (std::size_t cj = 0; cj < G; ++cj) {
    Best b;
    if (std::holds_alternative<Unconstrained>(s.spec())) {
      const Envelopes e = envelopes(g, K, j, k, cj);
      b.value = 0.0;
      b.idx.assign(K, 0);
      for (std::size_t i = 0; i < K; ++i) {
        b.value += e.suffix[i][0].first;
        b.idx[i] = e.suffix[i][0].second;
      }
    } else if (std::holds_alternative<Unimodal>(s.spec())) {
      b = unimodal_dp(g, K, j, k, cj);
    } else if (const auto* lip = std::get_if<Lipschitz>(&s.spec())) {
      auto width = static_cast<std::size_t>(std::lround(lip->constant / step));
      b = lipschitz_dp(g, K, j, k, cj, width);
    } else if (const auto* cat = std::get_if<Categorised>(&s.spec())) {
      const Envelopes e = envelopes(g, K, j, k, cj);
      for (int top : {0, 1}) {
        for (std::size_t lvl = 0; lvl < G; ++lvl) {
          Best cand;
          cand.value = 0.0;
          cand.idx.assign(K, 0);
          for (std::size_t i = 0; i < K; ++i) {
            bool is_top = (cat->category[i] == cat->category[0]) == (top == 0);
            auto [v, a] = is_top ? e.suffix[i][lvl] : e.prefix[i][lvl];
            cand.value += v;
            cand.idx[i] = a;
          }
          if (cand.value < b.value) b = cand;
        }
      }
    } else if (sparse) {
      const Envelopes e = envelopes(g, K, j, k, cj);
      std::size_t level_idx = 0;
      for (std::size_t n = 0; n < G; ++n)
        if (std::abs(g.nodes[n] - sparse->level) < 1e-12) level_idx = n;
      for (unsigned mask = 0; mask < (1u << K); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) > sparse->support) continue;
        Best cand;
        cand.value = 0.0;
        cand.idx.assign(K, 0);
        for (std::size_t i = 0; i < K; ++i) {
          std::pair<double, std::size_t> pick =
              (mask >> i) & 1u
                  ? e.suffix[i][level_idx]
                  : std::pair<double, std::size_t>{restricted(g, i, level_idx, j, k, cj),
                                                   level_idx};
          cand.value += pick.first;
          cand.idx[i] = pick.second;
        }
        if (cand.value < b.value) b = cand;
      }
    }
    if (b.value < out.value) {
      out.value = b.value;
      out.lambda.assign(K, 0.0);
      for (std::size_t i = 0; i < K; ++i) out.lambda[i] = g.nodes[b.idx[i]];
    }
  }
  return out;
}

}  // namespace oracle
