#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wtf/grid.hpp"

namespace wtf {

/// r-variation of a finite vector sequence: the supremum over increasing
/// subsequences of the l^r sum of increments. The supremum over real
/// breakpoints collapses to subsequences of the given entries, and the
/// dynamic program below computes it exactly. r = inf returns the largest
/// pairwise increment. Throws when r < 1.
///
/// `flat` holds n vectors of space.dim() components, entry-major.
double variation_norm(std::span<const double> flat, std::size_t n, const ValueSpace& space,
                      double r);

/// Scalar convenience overload.
double variation_norm(std::span<const double> values, double r);

/// One sequence per grid cell, sharing length and value space.
/// Layout: data[(cell * length + j) * dim + c].
struct CellSequences {
  int resolution = 0;
  int extent = 0;
  ValueSpace space;
  std::size_t length = 0;
  std::vector<double> data;

  std::size_t cell_count() const { return std::size_t(1) << (resolution + extent); }
  std::span<const double> sequence(std::size_t cell) const {
    const std::size_t stride = length * space.dim();
    return {data.data() + cell * stride, stride};
  }
  std::span<double> entry(std::size_t cell, std::size_t j) {
    const auto d = static_cast<std::size_t>(space.dim());
    return {data.data() + (cell * length + j) * d, d};
  }
  std::span<const double> entry(std::size_t cell, std::size_t j) const {
    const auto d = static_cast<std::size_t>(space.dim());
    return {data.data() + (cell * length + j) * d, d};
  }
};

/// L^p norm (over the grid) of the per-cell r-variation. Cells evaluate
/// independently and in parallel.
double lp_vr_norm(const CellSequences& family, double p, double r);

/// Per-cell r-variations as a scalar grid function.
GridFunction pointwise_variation(const CellSequences& family, double r);

/// Average of f over the enclosing dyadic interval of length 2^scale.
/// Requires -L <= scale <= M.
GridFunction conditional_expectation(const GridFunction& f, int scale);

/// Pointwise sup over representable scales of |E_k f|; scalar output.
GridFunction dyadic_maximal(const GridFunction& f);

/// sup over representable dyadic I of the mean oscillation (1/|I|) int_I
/// |f - mean_I f|.
double bmo_norm(const GridFunction& f);

/// Martingale family E_k f for k from the coarsest (M) down to the finest
/// (-L) representable scale.
CellSequences martingale_family(const GridFunction& f);

/// L^p(V^r) norm of the martingale family divided by ||f||_p. Throws when
/// f vanishes identically.
double lepingle_ratio(const GridFunction& f, double p, double r);

/// (sum_k || sum_{|I|=2^-k} <f,h_I> h_I ||_q^q)^{1/q} over Haar levels of
/// [0,1); the level at cell width carries no representable Haar functions
/// and vanishes identically.
double haar_cotype_sum(const GridFunction& f, double q);

}  // namespace wtf
