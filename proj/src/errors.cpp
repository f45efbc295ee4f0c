#include "reflectron/errors.hpp"

#include <cstdlib>
#include <string>

namespace reflectron {

std::size_t dense_budget() {
  if (const char* env = std::getenv("REFLECTRON_BUDGET")) {
    try {
      const unsigned long long v = std::stoull(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw DomainError("REFLECTRON_BUDGET must be a positive integer");
  }
  return std::size_t{1} << 22;
}

void require_budget(std::size_t entries, const std::string& what) {
  if (entries > dense_budget())
    throw BudgetError(what + ": " + std::to_string(entries) +
                      " entries exceed the dense budget of " +
                      std::to_string(dense_budget()));
}

}  // namespace reflectron
