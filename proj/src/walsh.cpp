#include "wtf/walsh.hpp"

#include <cmath>
#include <stdexcept>

namespace wtf {

namespace {

// Exact dyadic representation x = u * 2^-s with u integer, s >= 0.
// Throws when x is not a dyadic rational of moderate depth.
std::pair<std::int64_t, int> to_dyadic(double x) {
  if (x < 0.0) throw std::invalid_argument("evaluation point must be nonnegative");
  double y = x;
  int s = 0;
  while (y != std::floor(y)) {
    y *= 2.0;
    ++s;
    if (s > 62) throw std::invalid_argument("evaluation point is not dyadic");
  }
  return {static_cast<std::int64_t>(y), s};
}

std::size_t bit_reverse(std::size_t v, int bits) {
  std::size_t out = 0;
  for (int b = 0; b < bits; ++b) {
    out = (out << 1) | (v & 1);
    v >>= 1;
  }
  return out;
}

// In-place Walsh-Hadamard butterfly: g[n] <- sum_j g[j] (-1)^<n,j>.
void hadamard(std::vector<double>& g) {
  const std::size_t n = g.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = g[j];
        const double b = g[j + h];
        g[j] = a + b;
        g[j + h] = a - b;
      }
    }
  }
}

void check_tile(const Tile& t, int resolution, int extent) {
  const int k = t.time.scale;
  if (k < -resolution)
    throw std::invalid_argument("wave_packet: tile finer than grid");
  if (t.time.index < 0) throw std::invalid_argument("wave_packet: negative time index");
  const int s = extent - k;
  if (s < 0 || t.time.index + 1 > (std::int64_t(1) << std::min(s, 62)))
    throw std::invalid_argument("wave_packet: tile outside the grid extent");
  const int fbits = resolution + k;
  if (t.freq < 0 || (fbits <= 62 && t.freq >= (std::int64_t(1) << fbits)))
    throw std::invalid_argument("wave_packet: frequency finer than grid");
}

}  // namespace

double rademacher(int i, double x) {
  const auto [u, s] = to_dyadic(x);
  return static_cast<double>(rademacher_sign(i, u, s));
}

double walsh_eval(std::uint64_t m, double x) {
  const auto [u, s] = to_dyadic(x);
  return static_cast<double>(walsh_sign(m, u, s));
}

WalshSpectrum walsh_coefficients(const GridFunction& f) {
  if (f.extent() != 0)
    throw std::invalid_argument("walsh_coefficients: extent must be the unit interval");
  const int L = f.resolution();
  const std::size_t n = f.cell_count();
  const int d = f.dim();

  WalshSpectrum out;
  out.resolution = L;
  out.space = f.space();
  out.coef.assign(n * d, 0.0);

  std::vector<double> g(n);
  const double scale = std::ldexp(1.0, -L);
  for (int c = 0; c < d; ++c) {
    for (std::size_t j = 0; j < n; ++j) g[j] = f.cell(bit_reverse(j, L))[c];
    hadamard(g);
    for (std::size_t m = 0; m < n; ++m) out.coef[m * d + c] = g[m] * scale;
  }
  return out;
}

GridFunction walsh_reconstruct(const WalshSpectrum& spectrum) {
  const int L = spectrum.resolution;
  const std::size_t n = std::size_t(1) << L;
  const int d = spectrum.space.dim();
  if (spectrum.coef.size() != n * d)
    throw std::invalid_argument("walsh_reconstruct: coefficient count mismatch");

  GridFunction f(L, 0, spectrum.space);
  std::vector<double> g(n);
  for (int c = 0; c < d; ++c) {
    for (std::size_t m = 0; m < n; ++m) g[m] = spectrum.coef[m * d + c];
    hadamard(g);
    for (std::size_t i = 0; i < n; ++i) f.cell(i)[c] = g[bit_reverse(i, L)];
  }
  return f;
}

int wave_packet_sign(const Tile& t, std::size_t cell_index, int resolution) {
  const int s = resolution + 1 + t.time.scale;
  const std::int64_t u = 2 * static_cast<std::int64_t>(cell_index) + 1;
  return walsh_sign(static_cast<std::uint64_t>(t.freq), u, s);
}

GridFunction wave_packet_sup(const Tile& t, int resolution, int extent) {
  check_tile(t, resolution, extent);
  GridFunction f(resolution, extent, ValueSpace(1, 2.0));
  const auto [lo, hi] = f.cell_range(t.time);
  for (std::size_t i = lo; i < hi; ++i)
    f.scalar(i) = static_cast<double>(wave_packet_sign(t, i, resolution));
  return f;
}

GridFunction wave_packet(const Tile& t, int resolution, int extent) {
  GridFunction f = wave_packet_sup(t, resolution, extent);
  const double amp = std::sqrt(std::ldexp(1.0, -t.time.scale));
  const auto [lo, hi] = f.cell_range(t.time);
  for (std::size_t i = lo; i < hi; ++i) f.scalar(i) *= amp;
  return f;
}

GridFunction haar_function(const DyadicInterval& I, int resolution, int extent) {
  return wave_packet(Tile{I, 1}, resolution, extent);
}

std::vector<double> packet_coefficient(const GridFunction& f, const Tile& t) {
  check_tile(t, f.resolution(), f.extent());
  const auto [lo, hi] = f.cell_range(t.time);
  const double amp = std::sqrt(std::ldexp(1.0, -t.time.scale));
  const double w = f.cell_width();
  std::vector<double> acc(f.dim(), 0.0);
  for (std::size_t i = lo; i < hi; ++i) {
    const double v = w * amp * wave_packet_sign(t, i, f.resolution());
    const auto cell = f.cell(i);
    for (int c = 0; c < f.dim(); ++c) acc[c] += v * cell[c];
  }
  return acc;
}

}  // namespace wtf
