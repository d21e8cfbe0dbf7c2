#include "wtf/trees.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wtf/walsh.hpp"

namespace wtf {

namespace {

bool below(const Bitile& p, const Bitile& top, Tree::Kind kind) {
  switch (kind) {
    case Tree::up: return bitile_le_u(p, top);
    case Tree::down: return bitile_le_d(p, top);
    default: return bitile_le(p, top);
  }
}

std::string describe(const Bitile& p) {
  std::ostringstream os;
  os << "bitile{k=" << p.time.scale << ",n_time=" << p.time.index << ",n_freq=" << p.freq
     << "}";
  return os.str();
}

}  // namespace

bool tree_valid(const Tree& t) {
  return std::all_of(t.bitiles.begin(), t.bitiles.end(),
                     [&](const Bitile& p) { return below(p, t.top, t.kind); });
}

std::pair<Tree, Tree> tree_split(const Tree& t) {
  if (!tree_valid(t)) throw std::invalid_argument("tree_split: not a tree");
  Tree up{{}, t.top, Tree::up};
  Tree down{{}, t.top, Tree::down};
  for (const Bitile& p : t.bitiles) {
    if (bitile_le_u(p, t.top))
      up.bitiles.push_back(p);
    else
      down.bitiles.push_back(p);
  }
  return {std::move(up), std::move(down)};
}

std::vector<Bitile> GoodCollection::all_bitiles() const {
  std::vector<Bitile> all;
  for (const Tree& t : trees) all.insert(all.end(), t.bitiles.begin(), t.bitiles.end());
  return all;
}

GoodCheck check_good_collection(const GoodCollection& gc) {
  const bool up = gc.orientation == Orientation::up;
  const Tree::Kind kind = up ? Tree::up : Tree::down;

  for (std::size_t j = 0; j < gc.trees.size(); ++j) {
    const Tree& t = gc.trees[j];
    for (const Bitile& p : t.bitiles)
      if (!below(p, t.top, kind))
        return {false, describe(p) + " not below its top in tree " + std::to_string(j)};
  }

  for (std::size_t j = 1; j < gc.trees.size(); ++j) {
    const double prev = gc.trees[j - 1].top.freq_center();
    const double cur = gc.trees[j].top.freq_center();
    if (up ? !(prev < cur) : !(prev > cur))
      return {false, "top centers not strictly monotone at trees " + std::to_string(j - 1) +
                         "," + std::to_string(j)};
  }

  const std::vector<Bitile> all = gc.all_bitiles();
  {
    std::set<Bitile> seen;
    for (const Bitile& p : all)
      if (!seen.insert(p).second)
        return {false, describe(p) + " appears in more than one tree"};
  }

  for (std::size_t j = 0; j < gc.trees.size(); ++j) {
    std::set<Bitile> expected;
    for (const Bitile& p : all) {
      if (!below(p, gc.trees[j].top, kind)) continue;
      bool blocked = false;
      for (std::size_t k = 0; k < j && !blocked; ++k)
        blocked = bitile_le(p, gc.trees[k].top);
      if (!blocked) expected.insert(p);
    }
    std::set<Bitile> actual(gc.trees[j].bitiles.begin(), gc.trees[j].bitiles.end());
    if (expected != actual) {
      for (const Bitile& p : expected)
        if (!actual.count(p))
          return {false, describe(p) + " missing from tree " + std::to_string(j) +
                             " under the membership law"};
      for (const Bitile& p : actual)
        if (!expected.count(p))
          return {false, describe(p) + " present in tree " + std::to_string(j) +
                             " but excluded by the membership law"};
    }
  }
  return {};
}

int haar_factorization(const Bitile& p, const Bitile& top, Orientation orientation,
                       int resolution, int extent) {
  const bool up = orientation == Orientation::up;
  if (up ? !bitile_le_u(p, top) : !bitile_le_d(p, top))
    throw std::invalid_argument("haar_factorization: order relation fails");

  const Tile member = up ? p.down() : p.up();
  const Tile anchor = up ? top.up() : top.down();
  const Tile haar{p.time, 1};

  GridFunction probe(resolution, extent, ValueSpace(1, 2.0));
  if (!probe.representable(p.time))
    throw std::invalid_argument("haar_factorization: tile not representable");
  const auto [lo, hi] = probe.cell_range(p.time);

  int sign = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    const int lhs = wave_packet_sign(member, i, resolution);
    const int rhs =
        wave_packet_sign(anchor, i, resolution) * wave_packet_sign(haar, i, resolution);
    const int s = lhs * rhs;
    if (sign == 0)
      sign = s;
    else if (sign != s)
      throw std::logic_error("haar_factorization: no consistent sign");
  }
  return sign;
}

GoodCollection reflect(const GoodCollection& gc, int levels) {
  GoodCollection out;
  out.orientation = gc.orientation == Orientation::up ? Orientation::down : Orientation::up;
  out.trees.reserve(gc.trees.size());
  for (const Tree& t : gc.trees) {
    Tree rt;
    rt.top = reflect(t.top, levels);
    rt.kind = t.kind == Tree::up ? Tree::down : (t.kind == Tree::down ? Tree::up : Tree::general);
    rt.bitiles.reserve(t.bitiles.size());
    for (const Bitile& p : t.bitiles) rt.bitiles.push_back(reflect(p, levels));
    out.trees.push_back(std::move(rt));
  }
  return out;
}

LevelFunctions level_functions(const GoodCollection& gc, int resolution, int extent) {
  if (gc.orientation != Orientation::up)
    throw std::invalid_argument("level_functions: reflect a down collection first");
  const std::size_t cells = std::size_t(1) << (resolution + extent);
  LevelFunctions out;
  out.values.assign(gc.trees.size() + 1, std::vector<double>(cells, 0.0));

  GridFunction probe(resolution, extent, ValueSpace(1, 2.0));
  for (std::size_t j = 1; j <= gc.trees.size(); ++j) {
    const Tree& t = gc.trees[j - 1];
    const double center = t.top.freq_center();
    for (std::size_t i = 0; i < cells; ++i) {
      const double x = probe.cell_center(i);
      out.values[j][i] = t.top.time.contains(x) ? center : out.values[j - 1][i];
    }
  }
  return out;
}

std::string membership_identity_violation(const GoodCollection& gc, int resolution,
                                          int extent) {
  const LevelFunctions lf = level_functions(gc, resolution, extent);
  const std::vector<Bitile> all = gc.all_bitiles();
  GridFunction probe(resolution, extent, ValueSpace(1, 2.0));
  const std::size_t cells = probe.cell_count();

  for (std::size_t j = 1; j <= gc.trees.size(); ++j) {
    const Tree& tree = gc.trees[j - 1];
    for (std::size_t i = 0; i < cells; ++i) {
      const double x = probe.cell_center(i);
      std::set<Bitile> direct;  // members of tree j containing x
      for (const Bitile& p : tree.bitiles)
        if (p.time.contains(x)) direct.insert(p);

      std::set<Bitile> described;  // breakpoint description
      const double nj = lf.values[j][i];
      const double njm1 = lf.values[j - 1][i];
      for (const Bitile& p : all) {
        if (!p.time.contains(x)) continue;
        const DyadicInterval wu = p.up().freq_interval();
        const DyadicInterval w = p.freq_interval();
        const bool in_up = wu.lower() <= nj && nj < wu.upper();
        const bool outside_interior = !(w.lower() < njm1 && njm1 < w.upper());
        if (in_up && outside_interior) described.insert(p);
      }
      if (direct != described) {
        std::ostringstream os;
        os << "membership identity fails at tree " << j - 1 << ", cell " << i << " (x=" << x
           << "): direct " << direct.size() << " vs described " << described.size();
        return os.str();
      }
    }
  }
  return {};
}

ConverseTrees converse_trees(const std::vector<DyadicInterval>& family) {
  ConverseTrees out;
  {
    std::set<DyadicInterval> dedup;
    for (const DyadicInterval& I : family) {
      if (I.scale > 0 || I.index < 0 ||
          I.index + 1 > (std::int64_t(1) << std::min(-I.scale, 62)))
        throw std::invalid_argument("converse_trees: interval outside [0,1)");
      dedup.insert(I);
    }
    out.family.assign(dedup.begin(), dedup.end());
  }
  if (out.family.empty()) {
    out.leveled.orientation = Orientation::up;
    out.split[0].orientation = Orientation::up;
    out.split[1].orientation = Orientation::up;
    return out;
  }

  int min_scale = 0;
  for (const DyadicInterval& I : out.family) min_scale = std::min(min_scale, I.scale);
  const int depth = -min_scale;  // N
  out.depth = depth;

  auto lift = [&](const DyadicInterval& I) {
    // I x [2^{N+1} - 2|I|^{-1}, 2^{N+1}) as a bitile: freq index 2^{N+k}-1.
    return Bitile{I, (std::int64_t(1) << (depth + I.scale)) - 1};
  };

  out.single.kind = Tree::up;
  out.single.top = Bitile{{0, 0}, (std::int64_t(1) << depth) - 1};  // [0,1) x [2^{N+1}-2, 2^{N+1})
  for (const DyadicInterval& I : out.family) out.single.bitiles.push_back(lift(I));
  out.modulation = (std::uint64_t(1) << (depth + 1)) - 1;  // up-tile of the common top

  out.leveled.orientation = Orientation::up;
  for (int j = 0; j <= depth; ++j) {
    Tree t;
    t.kind = Tree::up;
    // top [0,2) x [2^{N+1}-2^{N-j}, 2^{N+1}-2^{N-j}+1)
    t.top = Bitile{{1, 0}, (std::int64_t(1) << (depth + 1)) - (std::int64_t(1) << (depth - j))};
    for (const DyadicInterval& I : out.family)
      if (I.scale == j - depth) t.bitiles.push_back(lift(I));
    out.leveled.trees.push_back(std::move(t));
  }

  for (int parity = 0; parity < 2; ++parity) {
    out.split[parity].orientation = Orientation::up;
    for (int j = parity; j <= depth; j += 2)
      out.split[parity].trees.push_back(out.leveled.trees[j]);
  }
  return out;
}

double converse_identity_deviation(const ConverseTrees& ct, const GridFunction& f,
                                   double r) {
  if (f.extent() != 0)
    throw std::invalid_argument("converse_identity_deviation: f must live on [0,1)");
  const int L = f.resolution();
  const std::size_t cells = f.cell_count();
  const auto& space = f.space();
  const int d = space.dim();

  // modulated copy of f
  GridFunction mf = f;
  for (std::size_t i = 0; i < cells; ++i) {
    const double w =
        walsh_sign(ct.modulation, 2 * static_cast<std::int64_t>(i) + 1, L + 1);
    for (int c = 0; c < d; ++c) mf.cell(i)[c] *= w;
  }

  std::vector<double> lhs(cells, 0.0), rhs(cells, 0.0);
  std::vector<double> sum(static_cast<std::size_t>(d));
  for (const Tree& tree : ct.leveled.trees) {
    // wave-packet side for this level
    std::vector<std::vector<double>> coef;
    coef.reserve(tree.bitiles.size());
    for (const Bitile& p : tree.bitiles) coef.push_back(packet_coefficient(mf, p.down()));
    GridFunction probe(L, 0, ValueSpace(1, 2.0));
    for (std::size_t i = 0; i < cells; ++i) {
      std::fill(sum.begin(), sum.end(), 0.0);
      for (std::size_t b = 0; b < tree.bitiles.size(); ++b) {
        const Tile down = tree.bitiles[b].down();
        if (!down.time.contains(probe.cell_center(i))) continue;
        const double amp = std::sqrt(std::ldexp(1.0, -down.time.scale));
        const double v = amp * wave_packet_sign(down, i, L);
        for (int c = 0; c < d; ++c) sum[static_cast<std::size_t>(c)] += v * coef[b][c];
      }
      lhs[i] += std::pow(space.norm(sum), r);
    }
    // Haar side for the same level (same interval lengths)
    std::vector<DyadicInterval> level_intervals;
    for (const Bitile& p : tree.bitiles) level_intervals.push_back(p.time);
    std::vector<std::vector<double>> hcoef;
    for (const DyadicInterval& I : level_intervals)
      hcoef.push_back(packet_coefficient(f, Tile{I, 1}));
    for (std::size_t i = 0; i < cells; ++i) {
      std::fill(sum.begin(), sum.end(), 0.0);
      for (std::size_t b = 0; b < level_intervals.size(); ++b) {
        const Tile h{level_intervals[b], 1};
        if (!h.time.contains(probe.cell_center(i))) continue;
        const double amp = std::sqrt(std::ldexp(1.0, -h.time.scale));
        const double v = amp * wave_packet_sign(h, i, L);
        for (int c = 0; c < d; ++c) sum[static_cast<std::size_t>(c)] += v * hcoef[b][c];
      }
      rhs[i] += std::pow(space.norm(sum), r);
    }
  }

  double dev = 0.0;
  for (std::size_t i = 0; i < cells; ++i) dev = std::max(dev, std::fabs(lhs[i] - rhs[i]));
  return dev;
}

}  // namespace wtf
