#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>

namespace premod {

/// Worker count: PREMODULAR_THREADS when set (minimum 1), else hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("PREMODULAR_THREADS")) {
    try {
      return static_cast<unsigned>(std::max(1, std::stoi(env)));
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace premod
