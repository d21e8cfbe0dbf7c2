#include "wtf/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wtf/parallel.hpp"
#include "wtf/walsh.hpp"

namespace wtf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double power(double base, double r) {
  if (r == 1.0) return base;
  if (r == 2.0) return base * base;
  if (r == 3.0) return base * base * base;
  if (r == 4.0) {
    const double b2 = base * base;
    return b2 * b2;
  }
  return std::pow(base, r);
}

// Plain O(n^2) dynamic program over all entries. best[i]: largest l^r
// increment sum over subsequences ending at i; chains accumulate left to
// right so the exhaustive oracle reproduces identical floating point sums.
double dp_general(std::span<const double> flat, std::size_t n, const ValueSpace& space,
                  double r) {
  const auto d = static_cast<std::size_t>(space.dim());
  std::vector<double> best(n, 0.0);
  std::vector<double> diff(d);
  double out = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    double bi = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      for (std::size_t c = 0; c < d; ++c)
        diff[c] = flat[i * d + c] - flat[j * d + c];
      const double w = power(space.norm(diff), r);
      bi = std::max(bi, std::max(best[j], 0.0) + w);
    }
    best[i] = bi;
    out = std::max(out, bi);
  }
  return std::pow(out, 1.0 / r);
}

double max_pairwise_increment(std::span<const double> flat, std::size_t n,
                              const ValueSpace& space) {
  const auto d = static_cast<std::size_t>(space.dim());
  std::vector<double> diff(d);
  double out = 0.0;
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      for (std::size_t c = 0; c < d; ++c)
        diff[c] = flat[i * d + c] - flat[j * d + c];
      out = std::max(out, space.norm(diff));
    }
  return out;
}

// Scalar sequences: the optimum is attained on local extrema plus the two
// endpoints (the increment sum is convex in each interior value), so long
// sequences compress before the quadratic DP. Engaged only beyond a size
// threshold to keep small cases bit-identical with the exhaustive oracle.
double dp_scalar_compressed(std::span<const double> v, double r) {
  const std::size_t n = v.size();
  std::vector<double> keep;
  keep.reserve(n);
  keep.push_back(v[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const bool up = v[i] >= v[i - 1];
    const bool down_next = v[i + 1] <= v[i];
    if (up == down_next) keep.push_back(v[i]);  // direction change
  }
  if (n > 1) keep.push_back(v[n - 1]);

  const std::size_t m = keep.size();
  std::vector<double> best(m, 0.0);
  double out = 0.0;
  for (std::size_t i = 1; i < m; ++i) {
    double bi = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      const double w = power(std::fabs(keep[i] - keep[j]), r);
      bi = std::max(bi, std::max(best[j], 0.0) + w);
    }
    best[i] = bi;
    out = std::max(out, bi);
  }
  return std::pow(out, 1.0 / r);
}

}  // namespace

double variation_norm(std::span<const double> flat, std::size_t n, const ValueSpace& space,
                      double r) {
  if (!(r >= 1.0)) throw std::invalid_argument("variation_norm: r < 1");
  if (flat.size() != n * static_cast<std::size_t>(space.dim()))
    throw std::invalid_argument("variation_norm: layout mismatch");
  if (n < 2) return 0.0;
  if (r == kInf) return max_pairwise_increment(flat, n, space);
  if (space.dim() == 1 && !space.weighted() && n > 32)
    return dp_scalar_compressed(std::span<const double>(flat.data(), n), r);
  return dp_general(flat, n, space, r);
}

double variation_norm(std::span<const double> values, double r) {
  return variation_norm(values, values.size(), ValueSpace(1, 2.0), r);
}

double lp_vr_norm(const CellSequences& family, double p, double r) {
  return lp_norm(pointwise_variation(family, r), p);
}

GridFunction pointwise_variation(const CellSequences& family, double r) {
  GridFunction out(family.resolution, family.extent, ValueSpace(1, 2.0));
  const std::size_t cells = family.cell_count();
  par::for_each_index(cells, [&](std::size_t i) {
    out.scalar(i) = variation_norm(family.sequence(i), family.length, family.space, r);
  });
  return out;
}

GridFunction conditional_expectation(const GridFunction& f, int scale) {
  if (scale < -f.resolution() || scale > f.extent())
    throw std::invalid_argument("conditional_expectation: scale out of range");
  const std::size_t block = std::size_t(1) << (scale + f.resolution());
  const int d = f.dim();
  GridFunction out(f.resolution(), f.extent(), f.space());
  std::vector<double> mean(static_cast<std::size_t>(d));
  for (std::size_t start = 0; start < f.cell_count(); start += block) {
    std::fill(mean.begin(), mean.end(), 0.0);
    for (std::size_t i = start; i < start + block; ++i) {
      const auto cell = f.cell(i);
      for (int c = 0; c < d; ++c) mean[static_cast<std::size_t>(c)] += cell[c];
    }
    for (double& m : mean) m /= static_cast<double>(block);
    for (std::size_t i = start; i < start + block; ++i) {
      auto cell = out.cell(i);
      for (int c = 0; c < d; ++c) cell[c] = mean[static_cast<std::size_t>(c)];
    }
  }
  return out;
}

GridFunction dyadic_maximal(const GridFunction& f) {
  GridFunction out(f.resolution(), f.extent(), ValueSpace(1, 2.0));
  for (int k = -f.resolution(); k <= f.extent(); ++k) {
    const GridFunction ek = conditional_expectation(f, k);
    for (std::size_t i = 0; i < f.cell_count(); ++i)
      out.scalar(i) = std::max(out.scalar(i), f.space().norm(ek.cell(i)));
  }
  return out;
}

double bmo_norm(const GridFunction& f) {
  const int d = f.dim();
  double best = 0.0;
  std::vector<double> mean(static_cast<std::size_t>(d)), diff(static_cast<std::size_t>(d));
  for (int k = -f.resolution(); k <= f.extent(); ++k) {
    const std::size_t block = std::size_t(1) << (k + f.resolution());
    for (std::size_t start = 0; start < f.cell_count(); start += block) {
      std::fill(mean.begin(), mean.end(), 0.0);
      for (std::size_t i = start; i < start + block; ++i) {
        const auto cell = f.cell(i);
        for (int c = 0; c < d; ++c) mean[static_cast<std::size_t>(c)] += cell[c];
      }
      for (double& m : mean) m /= static_cast<double>(block);
      double osc = 0.0;
      for (std::size_t i = start; i < start + block; ++i) {
        const auto cell = f.cell(i);
        for (int c = 0; c < d; ++c) diff[static_cast<std::size_t>(c)] = cell[c] - mean[static_cast<std::size_t>(c)];
        osc += f.space().norm(diff);
      }
      best = std::max(best, osc / static_cast<double>(block));
    }
  }
  return best;
}

CellSequences martingale_family(const GridFunction& f) {
  CellSequences out;
  out.resolution = f.resolution();
  out.extent = f.extent();
  out.space = f.space();
  out.length = static_cast<std::size_t>(f.resolution() + f.extent() + 1);
  out.data.assign(f.cell_count() * out.length * f.dim(), 0.0);
  std::size_t j = 0;
  for (int k = f.extent(); k >= -f.resolution(); --k, ++j) {
    const GridFunction ek = conditional_expectation(f, k);
    for (std::size_t i = 0; i < f.cell_count(); ++i) {
      auto dst = out.entry(i, j);
      const auto src = ek.cell(i);
      std::copy(src.begin(), src.end(), dst.begin());
    }
  }
  return out;
}

double lepingle_ratio(const GridFunction& f, double p, double r) {
  const double denom = lp_norm(f, p);
  if (denom == 0.0) throw std::invalid_argument("lepingle_ratio: f vanishes");
  return lp_vr_norm(martingale_family(f), p, r) / denom;
}

double haar_cotype_sum(const GridFunction& f, double q) {
  if (f.extent() != 0)
    throw std::invalid_argument("haar_cotype_sum: f must live on [0,1)");
  if (!(q >= 1.0)) throw std::invalid_argument("haar_cotype_sum: q < 1");
  const int L = f.resolution();
  double acc = 0.0;
  for (int k = 0; k < L; ++k) {
    // level of intervals |I| = 2^-k; one Haar projection per interval
    GridFunction level(L, 0, f.space());
    const std::int64_t count = std::int64_t(1) << k;
    for (std::int64_t n = 0; n < count; ++n) {
      const DyadicInterval I{-k, n};
      const Tile h{I, 1};
      const std::vector<double> c = packet_coefficient(f, h);
      const auto [lo, hi] = level.cell_range(I);
      const double amp = std::sqrt(std::ldexp(1.0, k));
      for (std::size_t i = lo; i < hi; ++i) {
        const double v = amp * wave_packet_sign(h, i, L);
        auto cell = level.cell(i);
        for (int cdim = 0; cdim < f.dim(); ++cdim) cell[cdim] += v * c[static_cast<std::size_t>(cdim)];
      }
    }
    acc += std::pow(lp_norm(level, q), q);
  }
  return std::pow(acc, 1.0 / q);
}

}  // namespace wtf
