#include "gpmap/parallel.hpp"

#include <cstdlib>
#include <string>

namespace gpmap {

unsigned default_workers() {
  if (const char* env = std::getenv("GPMAP_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace gpmap
