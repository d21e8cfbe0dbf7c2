#pragma once

#include <span>
#include <vector>

namespace wtf {

/// Finite-dimensional normed target space: (weighted) l^p on R^d.
///
/// The weighted norm is the plain p-norm of (w_i * v_i); the dual space uses
/// the conjugate exponent and reciprocal weights, so Hoelder's inequality
/// holds coordinatewise for every p in [1, inf]. Scalar experiments use
/// dim = 1 where every exponent gives the absolute value.
class ValueSpace {
 public:
  ValueSpace() : ValueSpace(1, 2.0) {}
  ValueSpace(int dim, double exponent);
  ValueSpace(int dim, double exponent, std::vector<double> weights);

  int dim() const { return dim_; }
  double exponent() const { return p_; }
  bool weighted() const { return !weights_.empty(); }
  const std::vector<double>& weights() const { return weights_; }

  double norm(std::span<const double> v) const;
  double dual_norm(std::span<const double> a) const;
  ValueSpace dual() const;

  /// Writes a functional a with <v, a> = norm(v) and dual_norm(a) = 1.
  /// For v = 0 writes zero.
  void norming_functional(std::span<const double> v, std::span<double> out) const;

  bool operator==(const ValueSpace&) const = default;

 private:
  int dim_ = 1;
  double p_ = 2.0;
  std::vector<double> weights_;  // empty means unweighted
};

/// Conjugate exponent p' = p/(p-1), with 1 <-> inf.
double conjugate_exponent(double p);

/// Coordinate pairing sum_i v_i a_i.
double pair_vectors(std::span<const double> v, std::span<const double> a);

}  // namespace wtf
