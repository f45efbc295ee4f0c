#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace reflectron {

// Invalid parameters or inputs outside a function's domain.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A dense object would exceed the configured entry budget.
struct BudgetError : std::length_error {
  using std::length_error::length_error;
};

// Two independent computations of the same quantity disagree.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Maximum number of complex entries a dense object may hold. Defaults to
// 2^22, overridable through the REFLECTRON_BUDGET environment variable.
std::size_t dense_budget();

// Throws BudgetError when `entries` exceeds dense_budget().
void require_budget(std::size_t entries, const std::string& what);

}  // namespace reflectron
