#include "wtf/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wtf {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double conjugate_exponent(double p) {
  if (p < 1.0) throw std::invalid_argument("conjugate_exponent: p < 1");
  if (p == 1.0) return kInf;
  if (p == kInf) return 1.0;
  return p / (p - 1.0);
}

ValueSpace::ValueSpace(int dim, double exponent) : dim_(dim), p_(exponent) {
  if (dim < 1) throw std::invalid_argument("ValueSpace: dim < 1");
  if (!(exponent >= 1.0)) throw std::invalid_argument("ValueSpace: exponent < 1");
}

ValueSpace::ValueSpace(int dim, double exponent, std::vector<double> weights)
    : dim_(dim), p_(exponent), weights_(std::move(weights)) {
  if (dim < 1) throw std::invalid_argument("ValueSpace: dim < 1");
  if (!(exponent >= 1.0)) throw std::invalid_argument("ValueSpace: exponent < 1");
  if (weights_.size() != static_cast<std::size_t>(dim))
    throw std::invalid_argument("ValueSpace: weight count != dim");
  for (double w : weights_)
    if (!(w > 0.0)) throw std::invalid_argument("ValueSpace: weights must be positive");
}

double ValueSpace::norm(std::span<const double> v) const {
  if (v.size() != static_cast<std::size_t>(dim_))
    throw std::invalid_argument("ValueSpace::norm: wrong dimension");
  if (dim_ == 1) {
    const double x = weights_.empty() ? v[0] : weights_[0] * v[0];
    return std::fabs(x);
  }
  if (p_ == kInf) {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i) {
      const double x = std::fabs(weights_.empty() ? v[i] : weights_[i] * v[i]);
      m = std::max(m, x);
    }
    return m;
  }
  if (p_ == 2.0) {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) {
      const double x = weights_.empty() ? v[i] : weights_[i] * v[i];
      s += x * x;
    }
    return std::sqrt(s);
  }
  if (p_ == 1.0) {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i)
      s += std::fabs(weights_.empty() ? v[i] : weights_[i] * v[i]);
    return s;
  }
  double s = 0.0;
  for (int i = 0; i < dim_; ++i)
    s += std::pow(std::fabs(weights_.empty() ? v[i] : weights_[i] * v[i]), p_);
  return std::pow(s, 1.0 / p_);
}

double ValueSpace::dual_norm(std::span<const double> a) const {
  return dual().norm(a);
}

ValueSpace ValueSpace::dual() const {
  const double q = conjugate_exponent(p_);
  if (weights_.empty()) return ValueSpace(dim_, q);
  std::vector<double> rw(weights_.size());
  for (std::size_t i = 0; i < rw.size(); ++i) rw[i] = 1.0 / weights_[i];
  return ValueSpace(dim_, q, std::move(rw));
}

void ValueSpace::norming_functional(std::span<const double> v, std::span<double> out) const {
  if (v.size() != static_cast<std::size_t>(dim_) || out.size() != v.size())
    throw std::invalid_argument("norming_functional: wrong dimension");
  const double n = norm(v);
  std::fill(out.begin(), out.end(), 0.0);
  if (n == 0.0) return;

  auto weight = [&](int i) { return weights_.empty() ? 1.0 : weights_[i]; };
  if (p_ == kInf) {
    // pick a coordinate attaining the max of |w_i v_i|
    int best = 0;
    double bv = -1.0;
    for (int i = 0; i < dim_; ++i) {
      const double x = std::fabs(weight(i) * v[i]);
      if (x > bv) {
        bv = x;
        best = i;
      }
    }
    out[best] = weight(best) * (v[best] < 0 ? -1.0 : 1.0);
    return;
  }
  if (p_ == 1.0) {
    for (int i = 0; i < dim_; ++i)
      out[i] = v[i] == 0.0 ? 0.0 : weight(i) * (v[i] < 0 ? -1.0 : 1.0);
    return;
  }
  // 1 < p < inf: a_i = w_i sgn(v_i) |w_i v_i|^{p-1} / norm^{p-1}
  for (int i = 0; i < dim_; ++i) {
    const double u = weight(i) * v[i];
    if (u == 0.0) continue;
    out[i] = weight(i) * (u < 0 ? -1.0 : 1.0) * std::pow(std::fabs(u), p_ - 1.0) /
             std::pow(n, p_ - 1.0);
  }
}

double pair_vectors(std::span<const double> v, std::span<const double> a) {
  if (v.size() != a.size()) throw std::invalid_argument("pair_vectors: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * a[i];
  return s;
}

}  // namespace wtf
