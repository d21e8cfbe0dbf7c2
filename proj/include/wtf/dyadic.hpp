#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>

namespace wtf {

/// Dyadic interval [n*2^k, (n+1)*2^k) on the positive half-line.
///
/// Scales and indices are kept as integers so that nesting, adjacency and
/// point membership are exact bit operations. Endpoints and centers are
/// dyadic rationals with small numerators; they convert to double without
/// rounding for every scale used in this project.
struct DyadicInterval {
  int scale = 0;           // k: length is 2^k, may be negative
  std::int64_t index = 0;  // n >= 0

  double length() const { return std::ldexp(1.0, scale); }
  double lower() const { return std::ldexp(static_cast<double>(index), scale); }
  double upper() const { return std::ldexp(static_cast<double>(index + 1), scale); }
  double center() const { return std::ldexp(static_cast<double>(2 * index + 1), scale - 1); }

  DyadicInterval parent() const { return {scale + 1, index >> 1}; }
  DyadicInterval left_child() const { return {scale - 1, 2 * index}; }
  DyadicInterval right_child() const { return {scale - 1, 2 * index + 1}; }

  /// True when this interval is the upper half of its parent.
  bool is_upper_half() const { return (index & 1) != 0; }

  /// Ancestor at the given coarser scale.
  DyadicInterval ancestor(int coarser_scale) const {
    if (coarser_scale < scale) throw std::invalid_argument("ancestor: scale is finer");
    return {coarser_scale, index >> (coarser_scale - scale)};
  }

  bool contains(double x) const { return lower() <= x && x < upper(); }

  bool contains(const DyadicInterval& other) const {
    if (other.scale > scale) return false;
    const int d = scale - other.scale;
    if (d >= 63) return index == 0 && other.index >= 0;
    return (other.index >> d) == index;
  }

  bool disjoint_from(const DyadicInterval& other) const {
    return !contains(other) && !other.contains(*this);
  }

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
  friend auto operator<=>(const DyadicInterval&, const DyadicInterval&) = default;
};

}  // namespace wtf
