#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

namespace khcover {

inline constexpr std::size_t kDefaultBudgetMB = 4096;

/// Memory budget for cube assembly, from KHCOVER_BUDGET_MB when set.
inline std::size_t budget_bytes() {
  std::size_t mb = kDefaultBudgetMB;
  if (const char* env = std::getenv("KHCOVER_BUDGET_MB")) {
    try {
      mb = static_cast<std::size_t>(std::stoull(env));
    } catch (...) {
    }
  }
  return mb * 1024 * 1024;
}

}  // namespace khcover
