#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "wtf/carleson.hpp"

namespace wtf {

/// Counting data attached to a selection run. The per-interval bound is
/// exact for the density selection; for the size selection the quotient is
/// recorded as an empirical constant (the underlying estimate carries the
/// tile-type constant of the value space).
struct CountingCertificate {
  bool counting_ok = true;
  double worst_ratio = 0.0;  // max over dyadic J of lhs/rhs
  DyadicInterval worst_interval{};
  double l1_sum = 0.0;    // sum of selected top lengths
  double l1_bound = 0.0;  // bound with J the whole domain
  double bmo_tops = 0.0;  // BMO norm of the top-counting function
  double bmo_reference = 0.0;
  std::string violation;
};

struct DensityDecomposition {
  std::vector<Bitile> sparse;
  std::vector<Tree> trees;
  CountingCertificate certificate;
};

/// Splits a collection into a low-density part and trees rooted at maximal
/// witnesses. The counting bound sum |I_T| <= threshold^{-r'} |E cap J| is
/// verified for every representable dyadic J; E is the support of g, which
/// must satisfy dual_norm(g) <= 1 per cell.
DensityDecomposition density_decompose(std::span<const Bitile> collection,
                                       const GridFunction& g, const BreakpointData& data,
                                       double threshold);

struct SizeDecomposition {
  std::vector<Bitile> small;
  std::vector<Tree> trees;     // selection order, tops recorded
  GoodCollection selected_up;  // up-parts of the selected trees
  GoodCheck good_check;
  double residual_size = 0.0;  // size(small), re-evaluated independently
  CountingCertificate certificate;
};

/// Greedy size selection: repeatedly removes a set-maximal tree of
/// above-threshold energy whose top frequency center is minimal.
SizeDecomposition size_decompose(std::span<const Bitile> collection, const GridFunction& f,
                                 double q, double threshold);

struct LevelReport {
  int level = 0;
  std::vector<Tree> trees;
  double density_value = 0.0;
  double density_bound = 0.0;
  double size_value = 0.0;
  double size_bound = 0.0;
  double top_length_sum = 0.0;
  double top_length_ref = 0.0;  // 2^-level
  double bmo_tops = 0.0;
  double bmo_ref_small_f = 0.0;  // 2^-level / |E|, meaningful under (1)
  double bmo_ref_big_f = 0.0;    // 2^-level / |F|, meaningful under (2)
};

struct DecompositionReport {
  std::vector<LevelReport> levels;
  std::vector<Bitile> residual;
  int start_level = 0;
  bool partition_ok = true;
  bool bounds_ok = true;  // exact per-level density/size bounds
  bool precondition_small_f = false;
  bool precondition_big_f = false;
  std::map<std::string, double> empirical;
};

/// Alternating density/size halving until the residual has density and size
/// zero. Requires norm(f) <= 1_F and dual_norm(g) <= 1_E per cell.
DecompositionReport full_decompose(std::span<const Bitile> collection, const GridFunction& f,
                                   const GridFunction& g, const BreakpointData& data,
                                   const GridSet& set_f, const GridSet& set_e, double q);

/// (sum over trees of || sum_{P in T} <f,w> w ||_q^q)^{1/q} / ||f||_q, with
/// down-packets for up-collections and up-packets for down-collections.
/// Throws when f vanishes.
double tile_type_ratio(const GoodCollection& gc, const GridFunction& f, double q);

struct MajorSubsetResult {
  GridSet pruned;       // E' (case 1) or F' (case 2)
  GridSet exceptional;  // the maximal-function level set G
  double threshold = 0.0;
  int case_id = 1;
};

/// Major-subset construction under the normalization 1 < |E| <= 2.
/// Case 1 (|F| <= 1) prunes E by {M 1_F > 4|F|}; case 2 (|F| >= 1) prunes F
/// by {M 1_E > 8/|F|}. The pruned set keeps at least half the measure.
MajorSubsetResult major_subset(const GridSet& set_e, const GridSet& set_f, int case_id);

struct PairingEstimate {
  double max_ratio = 0.0;
  double denominator = 0.0;  // |F|^{1/p} |E|^{1/p'}
  int trials = 0;
};

/// Maximizes |<linearized operator, g>| over random signs, breakpoint data
/// and admissible (f, g) supported on the given sets, against the
/// restricted-type bound. Throws unless max(q, p'(q-1)) < r < inf.
PairingEstimate restricted_pairing_ratio(std::span<const Bitile> collection,
                                         const GridSet& set_f, const GridSet& set_e,
                                         const ValueSpace& space, double p, double r,
                                         double q, std::uint64_t seed, int trials);

enum class BmoCheckStatus { holds, fails, precondition_failed };

struct BmoCheckResult {
  BmoCheckStatus status = BmoCheckStatus::holds;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string note;
};

/// Checks || sum_{I in family, I subset K} <f,h_I> h_I ||_p <= lambda
/// |K|^{1/p} under the precondition inf_I M f <= lambda for every member.
BmoCheckResult bmo_size_check(const std::vector<DyadicInterval>& family,
                              const GridFunction& f, double lambda,
                              const DyadicInterval& enclosing, double p);

}  // namespace wtf
