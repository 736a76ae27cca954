#include "cantorlip/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cantorlip {

unsigned worker_count() {
  if (const char* env = std::getenv("CANTORLIP_THREADS"); env != nullptr && *env != '\0') {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace cantorlip
