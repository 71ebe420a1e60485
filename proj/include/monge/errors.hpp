#pragma once

#include <stdexcept>
#include <string>

namespace monge {

// Evaluation outside a family's safe domain, branch-cut crossings, folds.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or malformed configuration documents.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative procedures that failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace monge
