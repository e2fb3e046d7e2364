#pragma once

#include <stdexcept>
#include <string>

namespace structbandit {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when {lambda in M : lambda_k >= lambda_j} is empty, or when every
// cell of an alternative set is.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace structbandit
