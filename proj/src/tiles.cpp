#include "wtf/tiles.hpp"

#include <stdexcept>

namespace wtf {

Bitile reflect(const Bitile& p, int levels) {
  // omega_P = 2^{1-k}[freq, freq+1); the reflected bitile has frequency
  // index 2^{levels+k-1} - freq - 1.
  const int shift = levels + p.time.scale - 1;
  if (shift < 0 || shift > 62)
    throw std::invalid_argument("reflect: frequency scale out of range");
  const std::int64_t mirrored = (std::int64_t(1) << shift) - p.freq - 1;
  if (mirrored < 0)
    throw std::invalid_argument("reflect: frequency would go negative");
  return Bitile{p.time, mirrored};
}

}  // namespace wtf
