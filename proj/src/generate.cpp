#include "wtf/generate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "wtf/decompose.hpp"

namespace wtf::gen {

namespace {

double quantize16(double v) { return std::ldexp(std::round(std::ldexp(v, 16)), -16); }

void random_direction(Rng& rng, const ValueSpace& space, std::span<double> out) {
  // Gaussian direction scaled to unit norm of the target space.
  double n = 0.0;
  while (n == 0.0) {
    for (double& c : out) c = rng.normal();
    n = space.norm(out);
  }
  for (double& c : out) c /= n;
}

}  // namespace

GridFunction random_function(int resolution, int extent, const ValueSpace& space,
                             std::uint64_t seed, bool quantize, bool unit_l2) {
  Rng rng(seed);
  GridFunction f(resolution, extent, space);
  for (double& v : f.raw()) {
    v = rng.uniform(-1.0, 1.0);
    if (quantize && !unit_l2) v = quantize16(v);
  }
  if (unit_l2) {
    const double n = lp_norm(f, 2.0);
    if (n > 0.0)
      for (double& v : f.raw()) v /= n;
  }
  return f;
}

GridFunction random_supported_function(const GridSet& support, const ValueSpace& space,
                                       std::uint64_t seed) {
  Rng rng(seed);
  GridFunction f(support.resolution(), support.extent(), space);
  std::vector<double> dir(static_cast<std::size_t>(space.dim()));
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    if (!support.contains(i)) continue;
    random_direction(rng, space, dir);
    const double mag = rng.uniform();
    auto cell = f.cell(i);
    for (int c = 0; c < space.dim(); ++c) cell[c] = mag * dir[static_cast<std::size_t>(c)];
  }
  return f;
}

GridSet random_set(int resolution, int extent, double target_measure, std::uint64_t seed) {
  Rng rng(seed);
  GridSet s(resolution, extent);
  const double total = std::ldexp(1.0, extent);
  const double density = std::min(1.0, target_measure / total);
  for (std::size_t i = 0; i < s.cell_count(); ++i) s.set(i, rng.uniform() < density);
  // nudge toward the target cell count deterministically
  const auto want = static_cast<std::int64_t>(std::round(std::ldexp(target_measure, resolution)));
  std::int64_t have = static_cast<std::int64_t>(s.cells_on());
  std::size_t guard = 0;
  while (have != want && guard < 64 * s.cell_count()) {
    const auto i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(s.cell_count()) - 1));
    if (have < want && !s.contains(i)) {
      s.set(i, true);
      ++have;
    } else if (have > want && s.contains(i)) {
      s.set(i, false);
      --have;
    }
    ++guard;
  }
  return s;
}

std::vector<DyadicInterval> random_interval_family(int max_depth, std::size_t count,
                                                   std::uint64_t seed) {
  Rng rng(seed);
  std::set<DyadicInterval> out;
  while (out.size() < count) {
    const int depth = static_cast<int>(rng.uniform_int(0, max_depth));
    const std::int64_t index = rng.uniform_int(0, (std::int64_t(1) << depth) - 1);
    out.insert(DyadicInterval{-depth, index});
  }
  return {out.begin(), out.end()};
}

std::vector<Bitile> random_bitile_collection(int resolution, int extent, std::size_t count,
                                             std::uint64_t seed) {
  Rng rng(seed);
  std::set<Bitile> out;
  std::size_t guard = 0;
  while (out.size() < count && guard < 64 * count + 256) {
    ++guard;
    // time scale k in [-(L-1), M]: keeps the up-tile frequency representable
    const int k = static_cast<int>(rng.uniform_int(-(resolution - 1), extent));
    const std::int64_t time_count = std::int64_t(1) << (extent - k);
    const std::int64_t freq_count = std::int64_t(1) << (resolution + k - 1);
    if (freq_count < 1) continue;
    out.insert(Bitile{{k, rng.uniform_int(0, time_count - 1)},
                      rng.uniform_int(0, freq_count - 1)});
  }
  return {out.begin(), out.end()};
}

std::pair<Bitile, Bitile> random_up_pair(int resolution, int extent, std::uint64_t seed) {
  Rng rng(seed);
  for (;;) {
    // top at scale kt, member at a finer scale km <= kt
    const int kt = static_cast<int>(rng.uniform_int(-(resolution - 1), extent));
    const int km = static_cast<int>(rng.uniform_int(-(resolution - 1), kt));
    const std::int64_t top_freqs = std::int64_t(1) << (resolution + kt - 1);
    if (top_freqs < 1) continue;
    const Bitile top{{kt, rng.uniform_int(0, (std::int64_t(1) << (extent - kt)) - 1)},
                     rng.uniform_int(0, top_freqs - 1)};
    // member time inside the top time interval
    const std::int64_t subdiv = std::int64_t(1) << (kt - km);
    const DyadicInterval time{km, top.time.index * subdiv + rng.uniform_int(0, subdiv - 1)};
    // member up-interval must contain the top's up-interval: the up tile of
    // the member is the ancestor of the top's up tile at scale -km
    const DyadicInterval wu = top.up().freq_interval().ancestor(-km);
    if ((wu.index & 1) == 0) continue;  // must be an up-part (odd tile index)
    const Bitile member{time, (wu.index - 1) / 2};
    return {member, top};
  }
}

Tree random_up_tree(int resolution, int extent, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  for (std::size_t attempt = 0;; ++attempt) {
    const auto [first, top] = random_up_pair(resolution, extent, rng.next_u64());
    Tree t{{first}, top, Tree::up};
    std::set<Bitile> seen{first};
    std::size_t guard = 0;
    while (t.bitiles.size() < count && guard < 64 * count + 64) {
      ++guard;
      const int kt = top.time.scale;
      const int km = static_cast<int>(rng.uniform_int(-(resolution - 1), kt));
      const std::int64_t subdiv = std::int64_t(1) << (kt - km);
      const DyadicInterval time{km, top.time.index * subdiv + rng.uniform_int(0, subdiv - 1)};
      const DyadicInterval wu = top.up().freq_interval().ancestor(-km);
      if ((wu.index & 1) == 0) continue;
      const Bitile member{time, (wu.index - 1) / 2};
      if (seen.insert(member).second) t.bitiles.push_back(member);
    }
    if (!t.bitiles.empty() || attempt > 16) return t;
  }
}

BreakpointData random_breakpoints(int resolution, int extent, const ValueSpace& dual_space,
                                  double r, int max_count, std::uint64_t seed) {
  Rng rng(seed);
  BreakpointData data(resolution, extent, dual_space, r);
  const auto d = static_cast<std::size_t>(dual_space.dim());
  const std::int64_t band = std::int64_t(1) << resolution;
  for (std::size_t cell = 0; cell < data.cell_count(); ++cell) {
    const int K = static_cast<int>(rng.uniform_int(0, max_count));
    if (K == 0) {
      data.set_cell(cell, {}, {});
      continue;
    }
    std::set<double> pts;
    while (static_cast<int>(pts.size()) < K) {
      // dyadic breakpoints in (0, 2^L]; quarter-integer granularity
      const double v = 0.25 * static_cast<double>(rng.uniform_int(1, 4 * band));
      pts.insert(v);
    }
    std::vector<double> breakpoints(pts.begin(), pts.end());
    std::vector<double> duals(static_cast<std::size_t>(K) * d);
    for (int j = 0; j < K; ++j) {
      random_direction(rng, dual_space, {duals.data() + static_cast<std::size_t>(j) * d, d});
      const double mag = 0.1 + 0.9 * rng.uniform();
      for (std::size_t c = 0; c < d; ++c) duals[static_cast<std::size_t>(j) * d + c] *= mag;
    }
    data.set_cell(cell, std::move(breakpoints), std::move(duals));  // renormalizes
  }
  return data;
}

SignAssignment random_signs(std::span<const Bitile> collection, std::uint64_t seed) {
  Rng rng(seed);
  SignAssignment signs;
  for (const Bitile& p : collection) signs[p] = rng.flip() ? 1 : -1;
  return signs;
}

GoodCollection random_good_collection(int resolution, int extent, GoodSource source,
                                      std::uint64_t seed) {
  Rng rng(seed);
  switch (source) {
    case GoodSource::converse: {
      const int depth = std::max(1, resolution - 1);
      const auto family = random_interval_family(
          depth, static_cast<std::size_t>(rng.uniform_int(1, (1 << depth) / 2 + 1)),
          rng.next_u64());
      const ConverseTrees ct = converse_trees(family);
      return rng.flip() ? ct.split[0] : ct.split[1];
    }
    case GoodSource::size_selected: {
      const auto collection = random_bitile_collection(
          resolution, extent, static_cast<std::size_t>(rng.uniform_int(4, 24)),
          rng.next_u64());
      const GridFunction f =
          random_function(resolution, extent, ValueSpace(1, 2.0), rng.next_u64());
      const double total = collection_size(collection, f, 2.0);
      if (total <= 0.0) return random_good_collection(resolution, extent, GoodSource::converse, rng.next_u64());
      const double threshold = total * rng.uniform(0.2, 0.8);
      const SizeDecomposition sd = size_decompose(collection, f, 2.0, threshold);
      if (sd.selected_up.trees.empty())
        return random_good_collection(resolution, extent, GoodSource::converse, rng.next_u64());
      return sd.selected_up;
    }
    case GoodSource::reflected: {
      const GoodCollection base = random_good_collection(
          resolution, extent, rng.flip() ? GoodSource::converse : GoodSource::size_selected,
          rng.next_u64());
      int levels = 1;
      for (const Bitile& p : base.all_bitiles())
        while (p.freq_interval().upper() > std::ldexp(1.0, levels)) ++levels;
      for (const Tree& t : base.trees)
        while (t.top.freq_interval().upper() > std::ldexp(1.0, levels)) ++levels;
      // reflection keeps the tree order: increasing centers become
      // decreasing, which is the down-good convention
      return reflect(base, levels);
    }
  }
  throw std::logic_error("random_good_collection: unknown source");
}

}  // namespace wtf::gen
