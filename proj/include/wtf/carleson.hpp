#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "wtf/trees.hpp"
#include "wtf/variation.hpp"

namespace wtf {

/// Per-cell linearization data: a count K(x), strictly increasing positive
/// breakpoints N_1(x) < ... < N_K(x) (N_0 = 0 implicitly), and dual vectors
/// a_1(x), ..., a_K(x) with sum_j dual_norm(a_j)^{r'} = 1 on cells with
/// K >= 1. Construction renormalizes when the sum drifts beyond 1e-12.
class BreakpointData {
 public:
  BreakpointData(int resolution, int extent, ValueSpace dual_space, double r);

  int resolution() const { return resolution_; }
  int extent() const { return extent_; }
  std::size_t cell_count() const { return breakpoints_.size(); }
  const ValueSpace& dual_space() const { return dual_space_; }
  double r() const { return r_; }
  double r_conjugate() const { return r_conj_; }

  /// duals holds K vectors of dual_space().dim() components, flat.
  void set_cell(std::size_t cell, std::vector<double> breakpoints,
                std::vector<double> duals);

  int count(std::size_t cell) const { return static_cast<int>(breakpoints_[cell].size()); }
  /// N_j; j may be 0 (returns 0).
  double breakpoint(std::size_t cell, int j) const {
    return j == 0 ? 0.0 : breakpoints_[cell][static_cast<std::size_t>(j - 1)];
  }
  std::span<const double> dual(std::size_t cell, int j) const;

  /// sum over j with N_j in [lo, hi) of dual_norm(a_j)^{r'}.
  double dual_mass(std::size_t cell, double lo, double hi) const;

  /// True when every nonempty cell satisfies the unit-normalization to tol.
  bool normalized(double tol = 1e-12) const;

 private:
  int resolution_;
  int extent_;
  ValueSpace dual_space_;
  double r_;
  double r_conj_;
  std::vector<std::vector<double>> breakpoints_;
  std::vector<std::vector<double>> duals_;
};

/// Signs per bitile; must cover every bitile an operator touches.
using SignAssignment = std::map<Bitile, int>;

/// Truncated Walsh expansion sum_{n < upto} <f, w_n> w_n on [0,1).
/// Throws when upto is outside [0, 2^L].
GridFunction partial_walsh_sum(const GridFunction& f, std::int64_t upto);

/// All partial sums S_0 f, ..., S_{2^L} f as one per-cell family.
CellSequences partial_sum_family(const GridFunction& f);

struct OmegaPart {
  DyadicInterval interval;
  bool upper_half;  // upper half of its dyadic parent
};

/// Maximal dyadic intervals partitioning [lo, hi), 0 < lo < hi, each
/// labeled by the half of its parent it occupies.
std::vector<OmegaPart> omega_partition(std::int64_t lo, std::int64_t hi);

struct TelescopingCollections {
  std::vector<Bitile> lower;  // bitiles whose down-part frequency is a lower-half part
  std::vector<Bitile> upper;  // bitiles whose up-part frequency is an upper-half part
};

/// Bitile collections realizing S_hi f - S_lo f on [0,1).
TelescopingCollections telescoping_bitiles(int resolution, std::int64_t lo,
                                           std::int64_t hi);

/// Max pointwise deviation between S_hi f - S_lo f and the bitile sums.
double telescoping_deviation(const GridFunction& f, std::int64_t lo, std::int64_t hi);

struct CarlesonNorm {
  double family_norm = 0.0;  // L^p(V^r) of the partial-sum family
  double input_norm = 0.0;
  double ratio = 0.0;
  bool zero_input = false;
};

/// L^p(V^r) norm of {S_N f}_N with its ratio to ||f||_p.
CarlesonNorm variational_carleson_norm(const GridFunction& f, double p, double r);

/// Per-cell data for the variation operators over a bitile collection: the
/// packets active at one cell and the finite breakpoint-candidate set
/// (interval endpoints, gap midpoints, zero, and one value beyond the top).
/// The indicator conditions are constant on candidate gaps, so the dynamic
/// program over candidates evaluates the supremum over real breakpoints
/// exactly.
class CellPacketSystem {
 public:
  struct Packet {
    double value;                // w_{P_sigma}(x), L^2-normalized
    double om_lo, om_mid, om_hi; // endpoints of omega_P and its midpoint
    std::vector<double> coef;    // <f, w_{P_sigma}>
  };

  ValueSpace space;
  double r = 2.0;
  bool dual_form = false;  // false: down-parts; true: up-parts
  std::vector<double> candidates;
  std::vector<Packet> packets;

  /// Weight of one increment with previous breakpoint a and current b:
  /// || sum of selected packets ||^r.
  double increment_weight(double a, double b) const;
  /// Selected-packet sum written into out (dim components); returns count.
  int accumulate(double a, double b, std::span<double> out) const;
};

CellPacketSystem build_cell_system(const GridFunction& f, std::span<const Bitile> collection,
                                   double r, std::size_t cell, bool dual_form);

/// Supremum over increasing breakpoint chains of the candidate DP, to the
/// power 1/r.
double variation_dp(const CellPacketSystem& sys);
double variation_dp(const CellPacketSystem& sys, std::span<const double> candidates);

/// Variational wave-packet operator at one cell / everywhere (down-parts,
/// breakpoint condition N_j in [omega_up), N_{j-1} outside the interior).
double variation_operator_at(const GridFunction& f, std::span<const Bitile> collection,
                             double r, std::size_t cell);
GridFunction variation_operator(const GridFunction& f, std::span<const Bitile> collection,
                                double r);

/// Mirror form (up-parts, N_{j-1} in (omega_down], N_j outside the interior).
double variation_operator_dual_at(const GridFunction& f, std::span<const Bitile> collection,
                                  double r, std::size_t cell);
GridFunction variation_operator_dual(const GridFunction& f,
                                     std::span<const Bitile> collection, double r);

/// Linearized operator: sum_P eps_P <f, w_{P_d}> w_{P_d}(x) (.) a_P(x),
/// where a_P(x) collects the dual vectors of admissible breakpoint indices
/// and (.) is the coordinate product, so the output is X-valued and pairs
/// against X*-valued test functions. Throws when the sign assignment does
/// not cover the collection or the breakpoint data is not normalized.
GridFunction linearized_operator(const GridFunction& f, std::span<const Bitile> collection,
                                 const SignAssignment& signs, const BreakpointData& data);

/// Candidate tops above p in the up-order (frequency ancestors), bounded by
/// the grid extent.
std::vector<Bitile> up_ancestors(const Bitile& p, int resolution, int extent);
/// Candidate bitiles above p in the full order (both orientations).
std::vector<Bitile> order_ancestors(const Bitile& p, int resolution, int extent);

/// Size of a collection: sup over up-trees inside it of the normalized L^q
/// energy of the down-packet sum. Candidate tops run over collection
/// members and their frequency ancestors; all singletons are included.
double collection_size(std::span<const Bitile> collection, const GridFunction& f, double q);

struct DensityResult {
  double value = 0.0;
  int first_omitted_scale = 0;     // coarsest time scale not searched
  double omitted_scale_bound = 0;  // bound for everything beyond it
};

/// Density of a collection: sup over members P and representable bitiles
/// P' >= P of the normalized dual mass of (g, breakpoints) on I_{P'}.
DensityResult collection_density(std::span<const Bitile> collection, const GridFunction& g,
                                 const BreakpointData& data);

struct TreeOperatorResult {
  double lhs_norm = 0.0;  // || <C_T f, g> ||_{L^s}
  double size = 0.0;
  double density = 0.0;
  double top_length = 0.0;
  double bound = 0.0;  // size * density * |I_T|^{1/s}
  double ratio = 0.0;  // lhs / bound; 0 when both vanish
  bool a_sets_disjoint = true;
};

/// Single-tree estimate data: the L^s norm of the paired tree operator
/// against size(T) * density(T) * |I_T|^{1/s}, plus the disjointness check
/// of the per-bitile breakpoint cells over the down-part.
TreeOperatorResult tree_operator_norm(const Tree& tree, const GridFunction& f,
                                      const GridFunction& g, const SignAssignment& signs,
                                      const BreakpointData& data, double s, double q);

}  // namespace wtf
