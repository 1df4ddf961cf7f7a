#include "hilbert/parallel.hpp"

#include <cstdlib>
#include <string>

namespace hilbert {

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HF_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
      // Unparsable values fall through to auto.
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace hilbert
