#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "wtf/dyadic.hpp"
#include "wtf/space.hpp"

namespace wtf {

/// Step function on the dyadic grid of cell width 2^-L over [0, 2^M),
/// with values in a ValueSpace.
///
/// A GridFunction is exactly a step function constant on cells, so every
/// integral below is an exact finite sum (cell width times value), not a
/// quadrature rule. Cell i covers [i*2^-L, (i+1)*2^-L); evaluation points
/// are always cell centers, which are never discontinuity points of the
/// dyadic functions in play.
class GridFunction {
 public:
  GridFunction() : GridFunction(0, 0, ValueSpace()) {}
  GridFunction(int resolution, int extent, ValueSpace space);

  int resolution() const { return resolution_; }  // L
  int extent() const { return extent_; }          // M
  const ValueSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }

  std::size_t cell_count() const { return std::size_t(1) << (resolution_ + extent_); }
  double cell_width() const { return std::ldexp(1.0, -resolution_); }
  double cell_center(std::size_t i) const {
    return std::ldexp(static_cast<double>(2 * i + 1), -resolution_ - 1);
  }
  std::size_t cell_at(double x) const;

  std::span<double> cell(std::size_t i) {
    return {values_.data() + i * dim(), static_cast<std::size_t>(dim())};
  }
  std::span<const double> cell(std::size_t i) const {
    return {values_.data() + i * dim(), static_cast<std::size_t>(dim())};
  }
  double& scalar(std::size_t i) { return values_[i * dim()]; }
  double scalar(std::size_t i) const { return values_[i * dim()]; }

  std::vector<double>& raw() { return values_; }
  const std::vector<double>& raw() const { return values_; }

  bool same_grid(const GridFunction& other) const {
    return resolution_ == other.resolution_ && extent_ == other.extent_;
  }

  /// A dyadic interval is representable when it is a union of grid cells
  /// inside [0, 2^M).
  bool representable(const DyadicInterval& I) const;
  /// Half-open cell index range covered by a representable interval.
  std::pair<std::size_t, std::size_t> cell_range(const DyadicInterval& I) const;

 private:
  int resolution_;
  int extent_;
  ValueSpace space_;
  std::vector<double> values_;  // cell-major, dim entries per cell
};

/// Exact L^p norm of a step function; max of cell norms when p = inf.
double lp_norm(const GridFunction& f, double p);

/// Exact integral of the coordinate pairing <f(x), g(x)>.
/// Throws when the grids are incompatible.
double pairing(const GridFunction& f, const GridFunction& g);

/// Scalar indicator of a representable dyadic interval.
GridFunction indicator(int resolution, int extent, const DyadicInterval& I);

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double c, const GridFunction& f);

/// Cell-aligned measurable subset of [0, 2^M) at resolution L.
class GridSet {
 public:
  GridSet() : GridSet(0, 0) {}
  GridSet(int resolution, int extent)
      : resolution_(resolution),
        extent_(extent),
        member_(std::size_t(1) << (resolution + extent), 0) {}

  int resolution() const { return resolution_; }
  int extent() const { return extent_; }
  std::size_t cell_count() const { return member_.size(); }
  bool contains(std::size_t i) const { return member_[i] != 0; }
  void set(std::size_t i, bool on) { member_[i] = on ? 1 : 0; }
  double measure() const;
  std::size_t cells_on() const;
  GridFunction indicator_function() const;  // scalar 1_E
  GridSet complement() const;
  GridSet intersect(const GridSet& other) const;
  GridSet setminus(const GridSet& other) const;

 private:
  int resolution_;
  int extent_;
  std::vector<std::uint8_t> member_;
};

}  // namespace wtf
