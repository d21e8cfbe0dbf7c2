#pragma once

#include <cstdint>
#include <vector>

#include "wtf/carleson.hpp"
#include "wtf/rng.hpp"
#include "wtf/trees.hpp"

namespace wtf::gen {

/// Random step function. Values are quantized to multiples of 2^-16 so that
/// the exact-identity checks stay exact in double arithmetic; pass
/// quantize = false (e.g. after normalization) when that does not matter.
GridFunction random_function(int resolution, int extent, const ValueSpace& space,
                             std::uint64_t seed, bool quantize = true,
                             bool unit_l2 = false);

/// Random function with norm(value) <= 1 on the given set and 0 elsewhere.
/// `space` may be a dual space; directions are uniform on the sphere of the
/// relevant norm only in distribution-free terms (random direction, random
/// magnitude in [0,1]).
GridFunction random_supported_function(const GridSet& support, const ValueSpace& space,
                                       std::uint64_t seed);

/// Random cell-aligned set of approximately the requested measure.
GridSet random_set(int resolution, int extent, double target_measure, std::uint64_t seed);

/// Random dyadic intervals inside [0,1), scales in [-max_depth, 0].
std::vector<DyadicInterval> random_interval_family(int max_depth, std::size_t count,
                                                   std::uint64_t seed);

/// Random bitiles representable on the (L, M) grid (time scales leave one
/// frequency bit of headroom so down/up packets stay representable).
std::vector<Bitile> random_bitile_collection(int resolution, int extent, std::size_t count,
                                             std::uint64_t seed);

/// Random pair P <=_u T representable on the grid.
std::pair<Bitile, Bitile> random_up_pair(int resolution, int extent, std::uint64_t seed);

/// Random up-tree with `count` members below a random top.
Tree random_up_tree(int resolution, int extent, std::size_t count, std::uint64_t seed);

/// Random admissible breakpoint data: per cell a random count up to
/// max_count, increasing dyadic breakpoints below 2^resolution, and
/// normalized dual vectors.
BreakpointData random_breakpoints(int resolution, int extent, const ValueSpace& dual_space,
                                  double r, int max_count, std::uint64_t seed);

/// Random signs, one per bitile.
SignAssignment random_signs(std::span<const Bitile> collection, std::uint64_t seed);

/// Good collections from the three generation routes: the interval-family
/// construction, size-selection output, and reflection of either.
enum class GoodSource { converse, size_selected, reflected };
GoodCollection random_good_collection(int resolution, int extent, GoodSource source,
                                      std::uint64_t seed);

}  // namespace wtf::gen
