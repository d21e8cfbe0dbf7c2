#pragma once

#include <compare>
#include <cstdint>

#include "wtf/dyadic.hpp"

namespace wtf {

/// Dyadic time-frequency rectangle of area exactly 1:
/// I x |I|^-1 [freq, freq+1).
struct Tile {
  DyadicInterval time;
  std::int64_t freq = 0;

  DyadicInterval freq_interval() const { return {-time.scale, freq}; }

  friend bool operator==(const Tile&, const Tile&) = default;
  friend auto operator<=>(const Tile&, const Tile&) = default;
};

/// Dyadic rectangle of area 2: I x 2|I|^-1 [freq, freq+1).
/// Splits into a down-part and an up-part, both tiles.
struct Bitile {
  DyadicInterval time;
  std::int64_t freq = 0;

  DyadicInterval freq_interval() const { return {1 - time.scale, freq}; }
  Tile down() const { return {time, 2 * freq}; }
  Tile up() const { return {time, 2 * freq + 1}; }
  double freq_center() const { return freq_interval().center(); }

  friend bool operator==(const Bitile&, const Bitile&) = default;
  friend auto operator<=>(const Bitile&, const Bitile&) = default;
};

/// Tile order: time interval shrinks, frequency interval grows.
inline bool tile_le(const Tile& a, const Tile& b) {
  return b.time.contains(a.time) && a.freq_interval().contains(b.freq_interval());
}

inline bool bitile_le_u(const Bitile& a, const Bitile& b) { return tile_le(a.up(), b.up()); }
inline bool bitile_le_d(const Bitile& a, const Bitile& b) { return tile_le(a.down(), b.down()); }
inline bool bitile_le(const Bitile& a, const Bitile& b) {
  return bitile_le_u(a, b) || bitile_le_d(a, b);
}

/// Frequency reflection sending [a, b) to [2^levels - b, 2^levels - a).
/// Exchanges down- and up-parts, reverses the order of frequency centers,
/// and is an involution on bitiles with sup omega <= 2^levels.
/// Throws when the reflected frequency would be negative.
Bitile reflect(const Bitile& p, int levels);

}  // namespace wtf
