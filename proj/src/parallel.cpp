#include "wtf/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace wtf::par {

int threads() {
  static const int cached = [] {
    int n = omp_get_max_threads();
    if (const char* cap = std::getenv("WTF_THREADS")) {
      try {
        const int c = std::stoi(cap);
        if (c >= 1 && c < n) n = c;
      } catch (...) {
        // ignore malformed values, keep hardware default
      }
    }
    return n;
  }();
  return cached;
}

}  // namespace wtf::par
