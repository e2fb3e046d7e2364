#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "structbandit/expfamily.hpp"

namespace structbandit {

struct Box {
  double lo;
  double hi;
};

struct Unconstrained {};

// At most `support` arms strictly above `level`, all others exactly at it.
struct Sparse {
  std::size_t support;
  double level;
};

// Means are A * eta with one row per arm.
struct Linear {
  std::vector<std::vector<double>> arms;
  std::size_t dimension() const { return arms.empty() ? 0 : arms.front().size(); }
};

struct Unimodal {};

// |lambda_i - lambda_{i+1}| <= constant along the arm order.
struct Lipschitz {
  double constant;
};

// Two categories; every arm of the top category beats every arm of the other.
struct Categorised {
  std::vector<int> category;
};

class Structure {
 public:
  using Spec = std::variant<Unconstrained, Sparse, Linear, Unimodal, Lipschitz,
                            Categorised>;

  Structure(std::size_t arms, Spec spec, std::optional<Box> box = std::nullopt);

  std::size_t arms() const { return arms_; }
  const Spec& spec() const { return spec_; }
  const std::optional<Box>& configured_box() const { return box_; }
  std::string kind_name() const;

  // Configured box, or the default rule around mu_hat.
  Box box_for(const Family& family, std::span<const double> mu_hat) const;

 private:
  std::size_t arms_;
  Spec spec_;
  std::optional<Box> box_;
};

struct AltMinResult {
  std::vector<double> minimiser;
  double value = 0.0;
};

struct CellResponse {
  AltMinResult result;
  std::size_t witness = 0;
};

double weighted_divergence(const Family& family, std::span<const double> mu,
                           std::span<const double> w,
                           std::span<const double> lambda);

// argmin of sum_i w_i d(mu_hat_i, lambda_i) over {lambda in M : lambda_k >= lambda_j}.
AltMinResult alt_min(const Structure& structure, const Family& family,
                     std::span<const double> mu_hat, std::span<const double> w,
                     std::size_t j, std::size_t k);

// Minimum of alt_min over all k != j; ties go to the smallest k.
CellResponse best_response_neg(const Structure& structure, const Family& family,
                               std::span<const double> mu_hat,
                               std::span<const double> w, std::size_t j);

// True when every cell of the alternative to j costs more than `threshold`.
// Stops at the first cell that does not.
bool alternative_exceeds(const Structure& structure, const Family& family,
                         std::span<const double> mu_hat,
                         std::span<const double> w, std::size_t j,
                         double threshold);

bool membership(const Structure& structure, std::span<const double> lambda,
                double tol);

}  // namespace structbandit
