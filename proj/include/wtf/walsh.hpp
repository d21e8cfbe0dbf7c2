#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wtf/grid.hpp"
#include "wtf/tiles.hpp"

namespace wtf {

/// Sign of the Rademacher function r_i at the dyadic point u * 2^-s.
/// Exact bit arithmetic; the point must not be a discontinuity of r_i,
/// which cell centers (odd u) never are.
inline int rademacher_sign(int i, std::int64_t u, int s) {
  // r_i(y) = +1 iff floor(2^{i+1} y) is even; here y = u * 2^-s.
  const int drop = s - i - 1;
  if (drop < 0) return 1;  // 2^{i+1} y is an even integer times 2^{i+1-s}
  if (drop >= 63) return 1;
  return ((u >> drop) & 1) ? -1 : 1;
}

/// Sign of the Walsh function w_m at u * 2^-s: the product of r_i over the
/// set bits of m (Rademacher-product, i.e. Paley, enumeration).
inline int walsh_sign(std::uint64_t m, std::int64_t u, int s) {
  int parity = 0;
  while (m != 0) {
    const int i = __builtin_ctzll(m);
    const int drop = s - i - 1;
    if (drop < 0) break;  // all remaining factors are +1
    if (drop < 63) parity ^= static_cast<int>((u >> drop) & 1);
    m &= m - 1;
  }
  return parity ? -1 : 1;
}

/// Cell-center evaluations for real arguments; x is converted to the exact
/// dyadic u * 2^-s at the given resolution of the half-integer grid.
double rademacher(int i, double x);
double walsh_eval(std::uint64_t m, double x);

/// Walsh coefficients of f on [0,1): entry n is the exact integral <f, w_n>
/// for n < 2^L, stored cell-major like GridFunction values.
struct WalshSpectrum {
  int resolution = 0;
  ValueSpace space;
  std::vector<double> coef;  // 2^L entries of dim() components

  std::span<double> at(std::size_t n) {
    return {coef.data() + n * space.dim(), static_cast<std::size_t>(space.dim())};
  }
  std::span<const double> at(std::size_t n) const {
    return {coef.data() + n * space.dim(), static_cast<std::size_t>(space.dim())};
  }
};

/// Fast butterfly transform in Paley order. Requires extent 0 (unit
/// interval); throws otherwise.
WalshSpectrum walsh_coefficients(const GridFunction& f);

/// Inverse transform: reconstructs the step function with the given
/// coefficients.
GridFunction walsh_reconstruct(const WalshSpectrum& spectrum);

/// L^2-normalized wave packet of a tile on the (L, M) grid:
/// |I|^{-1/2} 1_I(x) w_freq(x / |I|). Throws when the tile is finer than
/// the grid or reaches outside [0, 2^M) x [0, 2^L).
GridFunction wave_packet(const Tile& t, int resolution, int extent);

/// L^inf-normalized variant (drops the |I|^{-1/2} factor).
GridFunction wave_packet_sup(const Tile& t, int resolution, int extent);

/// Per-cell sign of the L^inf wave packet on its time interval; exact.
/// Returns the sign at global cell index i (i must lie in the tile's time
/// interval).
int wave_packet_sign(const Tile& t, std::size_t cell_index, int resolution);

/// Haar function of a dyadic interval: the wave packet of I x |I|^-1 [1,2).
GridFunction haar_function(const DyadicInterval& I, int resolution, int extent);

/// <f, w_{t}> for the L^2-normalized wave packet of tile t; exact sum.
std::vector<double> packet_coefficient(const GridFunction& f, const Tile& t);

}  // namespace wtf
