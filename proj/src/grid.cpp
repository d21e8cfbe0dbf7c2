#include "wtf/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wtf {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

GridFunction::GridFunction(int resolution, int extent, ValueSpace space)
    : resolution_(resolution), extent_(extent), space_(std::move(space)) {
  if (resolution_ + extent_ < 0 || resolution_ + extent_ > 30)
    throw std::invalid_argument("GridFunction: resolution+extent out of range");
  values_.assign(cell_count() * dim(), 0.0);
}

std::size_t GridFunction::cell_at(double x) const {
  if (x < 0.0) throw std::invalid_argument("cell_at: negative point");
  const double scaled = std::ldexp(x, resolution_);
  const auto i = static_cast<std::size_t>(scaled);
  if (i >= cell_count()) throw std::invalid_argument("cell_at: point beyond extent");
  return i;
}

bool GridFunction::representable(const DyadicInterval& I) const {
  if (I.scale < -resolution_) return false;
  if (I.index < 0) return false;
  // (index+1) * 2^scale <= 2^M  <=>  index+1 <= 2^(M-scale)
  const int s = extent_ - I.scale;
  if (s >= 0) return I.index + 1 <= (std::int64_t(1) << std::min(s, 62));
  // interval longer than the domain: only index 0 with exact match impossible
  return false;
}

std::pair<std::size_t, std::size_t> GridFunction::cell_range(const DyadicInterval& I) const {
  if (!representable(I)) throw std::invalid_argument("cell_range: interval not representable");
  const int shift = I.scale + resolution_;
  const std::size_t first = static_cast<std::size_t>(I.index) << shift;
  const std::size_t count = std::size_t(1) << shift;
  return {first, first + count};
}

double lp_norm(const GridFunction& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p < 1");
  const auto& space = f.space();
  if (p == kInf) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.cell_count(); ++i) m = std::max(m, space.norm(f.cell(i)));
    return m;
  }
  const double w = f.cell_width();
  double s = 0.0;
  if (p == 2.0) {
    for (std::size_t i = 0; i < f.cell_count(); ++i) {
      const double n = space.norm(f.cell(i));
      s += w * n * n;
    }
    return std::sqrt(s);
  }
  if (p == 1.0) {
    for (std::size_t i = 0; i < f.cell_count(); ++i) s += w * space.norm(f.cell(i));
    return s;
  }
  for (std::size_t i = 0; i < f.cell_count(); ++i)
    s += w * std::pow(space.norm(f.cell(i)), p);
  return std::pow(s, 1.0 / p);
}

double pairing(const GridFunction& f, const GridFunction& g) {
  if (!f.same_grid(g) || f.dim() != g.dim())
    throw std::invalid_argument("pairing: incompatible discretizations");
  const double w = f.cell_width();
  double s = 0.0;
  for (std::size_t i = 0; i < f.cell_count(); ++i)
    s += w * pair_vectors(f.cell(i), g.cell(i));
  return s;
}

GridFunction indicator(int resolution, int extent, const DyadicInterval& I) {
  GridFunction f(resolution, extent, ValueSpace(1, 2.0));
  const auto [lo, hi] = f.cell_range(I);
  for (std::size_t i = lo; i < hi; ++i) f.scalar(i) = 1.0;
  return f;
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  if (!a.same_grid(b) || a.dim() != b.dim())
    throw std::invalid_argument("GridFunction +: incompatible grids");
  GridFunction out = a;
  for (std::size_t i = 0; i < out.raw().size(); ++i) out.raw()[i] += b.raw()[i];
  return out;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  if (!a.same_grid(b) || a.dim() != b.dim())
    throw std::invalid_argument("GridFunction -: incompatible grids");
  GridFunction out = a;
  for (std::size_t i = 0; i < out.raw().size(); ++i) out.raw()[i] -= b.raw()[i];
  return out;
}

GridFunction operator*(double c, const GridFunction& f) {
  GridFunction out = f;
  for (double& v : out.raw()) v *= c;
  return out;
}

double GridSet::measure() const {
  return std::ldexp(static_cast<double>(cells_on()), -resolution_);
}

std::size_t GridSet::cells_on() const {
  std::size_t n = 0;
  for (auto m : member_) n += m;
  return n;
}

GridFunction GridSet::indicator_function() const {
  GridFunction f(resolution_, extent_, ValueSpace(1, 2.0));
  for (std::size_t i = 0; i < member_.size(); ++i) f.scalar(i) = member_[i] ? 1.0 : 0.0;
  return f;
}

GridSet GridSet::complement() const {
  GridSet out(resolution_, extent_);
  for (std::size_t i = 0; i < member_.size(); ++i) out.set(i, member_[i] == 0);
  return out;
}

GridSet GridSet::intersect(const GridSet& other) const {
  if (resolution_ != other.resolution_ || extent_ != other.extent_)
    throw std::invalid_argument("GridSet::intersect: incompatible grids");
  GridSet out(resolution_, extent_);
  for (std::size_t i = 0; i < member_.size(); ++i)
    out.set(i, member_[i] != 0 && other.member_[i] != 0);
  return out;
}

GridSet GridSet::setminus(const GridSet& other) const {
  if (resolution_ != other.resolution_ || extent_ != other.extent_)
    throw std::invalid_argument("GridSet::setminus: incompatible grids");
  GridSet out(resolution_, extent_);
  for (std::size_t i = 0; i < member_.size(); ++i)
    out.set(i, member_[i] != 0 && other.member_[i] == 0);
  return out;
}

}  // namespace wtf
