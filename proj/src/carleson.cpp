#include "wtf/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "wtf/parallel.hpp"
#include "wtf/walsh.hpp"

namespace wtf {

namespace {

double power(double base, double r) {
  if (r == 1.0) return base;
  if (r == 2.0) return base * base;
  if (r == 3.0) return base * base * base;
  return std::pow(base, r);
}

}  // namespace

BreakpointData::BreakpointData(int resolution, int extent, ValueSpace dual_space, double r)
    : resolution_(resolution),
      extent_(extent),
      dual_space_(std::move(dual_space)),
      r_(r),
      r_conj_(conjugate_exponent(r)) {
  if (!(r > 1.0)) throw std::invalid_argument("BreakpointData: r must exceed 1");
  const std::size_t cells = std::size_t(1) << (resolution + extent);
  breakpoints_.assign(cells, {});
  duals_.assign(cells, {});
}

void BreakpointData::set_cell(std::size_t cell, std::vector<double> breakpoints,
                              std::vector<double> duals) {
  const auto d = static_cast<std::size_t>(dual_space_.dim());
  if (duals.size() != breakpoints.size() * d)
    throw std::invalid_argument("BreakpointData: dual vector count mismatch");
  double prev = 0.0;
  for (double b : breakpoints) {
    if (!(b > prev)) throw std::invalid_argument("BreakpointData: breakpoints not increasing");
    prev = b;
  }
  if (!breakpoints.empty()) {
    double mass = 0.0;
    for (std::size_t j = 0; j < breakpoints.size(); ++j)
      mass += std::pow(dual_space_.norm({duals.data() + j * d, d}), r_conj_);
    if (mass == 0.0)
      throw std::invalid_argument("BreakpointData: dual vectors vanish");
    if (std::fabs(mass - 1.0) > 1e-12) {
      const double scale = std::pow(mass, -1.0 / r_conj_);
      for (double& v : duals) v *= scale;
    }
  }
  breakpoints_[cell] = std::move(breakpoints);
  duals_[cell] = std::move(duals);
}

std::span<const double> BreakpointData::dual(std::size_t cell, int j) const {
  const auto d = static_cast<std::size_t>(dual_space_.dim());
  return {duals_[cell].data() + static_cast<std::size_t>(j - 1) * d, d};
}

double BreakpointData::dual_mass(std::size_t cell, double lo, double hi) const {
  double mass = 0.0;
  const int K = count(cell);
  for (int j = 1; j <= K; ++j) {
    const double n = breakpoint(cell, j);
    if (lo <= n && n < hi) mass += std::pow(dual_space_.norm(dual(cell, j)), r_conj_);
  }
  return mass;
}

bool BreakpointData::normalized(double tol) const {
  for (std::size_t cell = 0; cell < cell_count(); ++cell) {
    if (count(cell) == 0) continue;
    double mass = 0.0;
    for (int j = 1; j <= count(cell); ++j)
      mass += std::pow(dual_space_.norm(dual(cell, j)), r_conj_);
    if (std::fabs(mass - 1.0) > tol) return false;
  }
  return true;
}

GridFunction partial_walsh_sum(const GridFunction& f, std::int64_t upto) {
  const std::int64_t order = std::int64_t(1) << f.resolution();
  if (upto < 0 || upto > order)
    throw std::invalid_argument("partial_walsh_sum: index out of range");
  WalshSpectrum spectrum = walsh_coefficients(f);
  const int d = f.dim();
  for (std::int64_t n = upto; n < order; ++n) {
    auto c = spectrum.at(static_cast<std::size_t>(n));
    std::fill(c.begin(), c.end(), 0.0);
  }
  return walsh_reconstruct(spectrum);
}

CellSequences partial_sum_family(const GridFunction& f) {
  const WalshSpectrum spectrum = walsh_coefficients(f);
  const int L = f.resolution();
  const std::size_t order = std::size_t(1) << L;
  const int d = f.dim();

  CellSequences out;
  out.resolution = L;
  out.extent = 0;
  out.space = f.space();
  out.length = order + 1;
  out.data.assign(f.cell_count() * out.length * d, 0.0);

  par::for_each_index(f.cell_count(), [&](std::size_t i) {
    const std::int64_t u = 2 * static_cast<std::int64_t>(i) + 1;
    std::vector<double> acc(static_cast<std::size_t>(d), 0.0);
    for (std::size_t n = 0; n < order; ++n) {
      // entry n is S_n; add the n-th term afterwards
      auto dst = out.entry(i, n);
      std::copy(acc.begin(), acc.end(), dst.begin());
      const double w = walsh_sign(n, u, L + 1);
      const auto c = spectrum.at(n);
      for (int cc = 0; cc < d; ++cc) acc[static_cast<std::size_t>(cc)] += w * c[cc];
    }
    auto last = out.entry(i, order);
    std::copy(acc.begin(), acc.end(), last.begin());
  });
  return out;
}

std::vector<OmegaPart> omega_partition(std::int64_t lo, std::int64_t hi) {
  if (!(0 < lo && lo < hi))
    throw std::invalid_argument("omega_partition: need 0 < lo < hi");
  std::vector<OmegaPart> parts;
  std::int64_t a = lo;
  while (a < hi) {
    int s = __builtin_ctzll(static_cast<unsigned long long>(a));
    while ((std::int64_t(1) << s) > hi - a) --s;
    const DyadicInterval w{s, a >> s};
    parts.push_back({w, w.is_upper_half()});
    a += std::int64_t(1) << s;
  }
  return parts;
}

TelescopingCollections telescoping_bitiles(int resolution, std::int64_t lo,
                                           std::int64_t hi) {
  if (hi > (std::int64_t(1) << resolution))
    throw std::invalid_argument("telescoping_bitiles: hi beyond the grid band");
  TelescopingCollections out;
  for (const OmegaPart& part : omega_partition(lo, hi)) {
    const int s = part.interval.scale;            // time scale -s
    const std::int64_t m = part.interval.index;   // tile frequency index
    const std::int64_t count = std::int64_t(1) << s;  // time intervals in [0,1)
    for (std::int64_t t = 0; t < count; ++t) {
      const DyadicInterval time{-s, t};
      if (part.upper_half)
        out.upper.push_back(Bitile{time, (m - 1) / 2});
      else
        out.lower.push_back(Bitile{time, m / 2});
    }
  }
  return out;
}

double telescoping_deviation(const GridFunction& f, std::int64_t lo, std::int64_t hi) {
  if (f.extent() != 0)
    throw std::invalid_argument("telescoping_deviation: f must live on [0,1)");
  const GridFunction lhs = partial_walsh_sum(f, hi) - partial_walsh_sum(f, lo);
  const TelescopingCollections cols = telescoping_bitiles(f.resolution(), lo, hi);

  GridFunction rhs(f.resolution(), 0, f.space());
  auto add_tile = [&](const Tile& tile) {
    const std::vector<double> c = packet_coefficient(f, tile);
    const auto [first, last] = rhs.cell_range(tile.time);
    const double amp = std::sqrt(std::ldexp(1.0, -tile.time.scale));
    for (std::size_t i = first; i < last; ++i) {
      const double v = amp * wave_packet_sign(tile, i, f.resolution());
      auto cell = rhs.cell(i);
      for (int cc = 0; cc < f.dim(); ++cc) cell[cc] += v * c[static_cast<std::size_t>(cc)];
    }
  };
  for (const Bitile& p : cols.lower) add_tile(p.down());
  for (const Bitile& p : cols.upper) add_tile(p.up());

  double dev = 0.0;
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    std::vector<double> diff(lhs.cell(i).begin(), lhs.cell(i).end());
    for (int cc = 0; cc < f.dim(); ++cc) diff[static_cast<std::size_t>(cc)] -= rhs.cell(i)[cc];
    dev = std::max(dev, f.space().norm(diff));
  }
  return dev;
}

CarlesonNorm variational_carleson_norm(const GridFunction& f, double p, double r) {
  CarlesonNorm out;
  out.input_norm = lp_norm(f, p);
  out.family_norm = lp_vr_norm(partial_sum_family(f), p, r);
  out.zero_input = out.input_norm == 0.0;
  out.ratio = out.zero_input ? 0.0 : out.family_norm / out.input_norm;
  return out;
}

int CellPacketSystem::accumulate(double a, double b, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  int selected = 0;
  for (const Packet& pk : packets) {
    bool in;
    if (!dual_form) {
      // current breakpoint lands in [omega_up), previous avoids the interior
      in = (pk.om_mid <= b && b < pk.om_hi) && !(pk.om_lo < a && a < pk.om_hi);
    } else {
      // previous breakpoint lands in (omega_down], current avoids the interior
      in = (pk.om_lo < a && a <= pk.om_mid) && !(pk.om_lo < b && b < pk.om_hi);
    }
    if (!in) continue;
    ++selected;
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += pk.value * pk.coef[c];
  }
  return selected;
}

double CellPacketSystem::increment_weight(double a, double b) const {
  std::vector<double> acc(static_cast<std::size_t>(space.dim()));
  if (accumulate(a, b, acc) == 0) return 0.0;
  return power(space.norm(acc), r);
}

CellPacketSystem build_cell_system(const GridFunction& f, std::span<const Bitile> collection,
                                   double r, std::size_t cell, bool dual_form) {
  if (!(r >= 1.0)) throw std::invalid_argument("build_cell_system: r < 1");
  CellPacketSystem sys;
  sys.space = f.space();
  sys.r = r;
  sys.dual_form = dual_form;

  const double x = f.cell_center(cell);
  std::set<double> endpoints{0.0};
  for (const Bitile& p : collection) {
    if (!p.time.contains(x)) continue;
    const Tile part = dual_form ? p.up() : p.down();
    const DyadicInterval omega = p.freq_interval();
    CellPacketSystem::Packet pk;
    pk.om_lo = omega.lower();
    pk.om_mid = omega.center();
    pk.om_hi = omega.upper();
    const double amp = std::sqrt(std::ldexp(1.0, -p.time.scale));
    pk.value = amp * wave_packet_sign(part, cell, f.resolution());
    pk.coef = packet_coefficient(f, part);
    endpoints.insert(pk.om_lo);
    endpoints.insert(pk.om_mid);
    endpoints.insert(pk.om_hi);
    sys.packets.push_back(std::move(pk));
  }

  endpoints.insert(*endpoints.rbegin() + 1.0);  // beyond every interval
  std::vector<double> pts(endpoints.begin(), endpoints.end());
  sys.candidates.reserve(2 * pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    sys.candidates.push_back(pts[i]);
    if (i + 1 < pts.size()) sys.candidates.push_back(0.5 * (pts[i] + pts[i + 1]));
  }
  return sys;
}

double variation_dp(const CellPacketSystem& sys) { return variation_dp(sys, sys.candidates); }

double variation_dp(const CellPacketSystem& sys, std::span<const double> candidates) {
  if (sys.packets.empty() || candidates.size() < 2) return 0.0;
  const std::size_t m = candidates.size();
  std::vector<double> best(m, 0.0);
  double out = 0.0;
  for (std::size_t ib = 1; ib < m; ++ib) {
    double bi = 0.0;
    for (std::size_t ia = 0; ia < ib; ++ia) {
      const double w = sys.increment_weight(candidates[ia], candidates[ib]);
      bi = std::max(bi, std::max(best[ia], 0.0) + w);
    }
    best[ib] = bi;
    out = std::max(out, bi);
  }
  return std::pow(out, 1.0 / sys.r);
}

double variation_operator_at(const GridFunction& f, std::span<const Bitile> collection,
                             double r, std::size_t cell) {
  return variation_dp(build_cell_system(f, collection, r, cell, false));
}

double variation_operator_dual_at(const GridFunction& f, std::span<const Bitile> collection,
                                  double r, std::size_t cell) {
  return variation_dp(build_cell_system(f, collection, r, cell, true));
}

namespace {

GridFunction variation_operator_impl(const GridFunction& f,
                                     std::span<const Bitile> collection, double r,
                                     bool dual_form) {
  GridFunction out(f.resolution(), f.extent(), ValueSpace(1, 2.0));
  par::for_each_index(f.cell_count(), [&](std::size_t i) {
    out.scalar(i) = variation_dp(build_cell_system(f, collection, r, i, dual_form));
  });
  return out;
}

}  // namespace

GridFunction variation_operator(const GridFunction& f, std::span<const Bitile> collection,
                                double r) {
  return variation_operator_impl(f, collection, r, false);
}

GridFunction variation_operator_dual(const GridFunction& f,
                                     std::span<const Bitile> collection, double r) {
  return variation_operator_impl(f, collection, r, true);
}

GridFunction linearized_operator(const GridFunction& f, std::span<const Bitile> collection,
                                 const SignAssignment& signs, const BreakpointData& data) {
  if (data.resolution() != f.resolution() || data.extent() != f.extent())
    throw std::invalid_argument("linearized_operator: grid mismatch");
  if (data.dual_space().dim() != f.dim())
    throw std::invalid_argument("linearized_operator: dimension mismatch");
  if (!data.normalized())
    throw std::invalid_argument("linearized_operator: breakpoint data not normalized");

  struct Term {
    Tile down;
    int sign;
    std::vector<double> coef;
    double om_lo, om_mid, om_hi;
  };
  std::vector<Term> terms;
  terms.reserve(collection.size());
  for (const Bitile& p : collection) {
    const auto it = signs.find(p);
    if (it == signs.end())
      throw std::invalid_argument("linearized_operator: sign assignment not total");
    const DyadicInterval omega = p.freq_interval();
    terms.push_back({p.down(), it->second, packet_coefficient(f, p.down()), omega.lower(),
                     omega.center(), omega.upper()});
  }

  GridFunction out(f.resolution(), f.extent(), f.space());
  const int d = f.dim();
  par::for_each_index(f.cell_count(), [&](std::size_t i) {
    const double x = out.cell_center(i);
    auto cell = out.cell(i);
    for (const Term& t : terms) {
      if (!t.down.time.contains(x)) continue;
      const int K = data.count(i);
      if (K == 0) continue;
      const double amp = std::sqrt(std::ldexp(1.0, -t.down.time.scale));
      const double packet = amp * wave_packet_sign(t.down, i, f.resolution());
      for (int j = 1; j <= K; ++j) {
        const double nj = data.breakpoint(i, j);
        const double njm1 = data.breakpoint(i, j - 1);
        if (!(t.om_mid <= nj && nj < t.om_hi)) continue;
        if (t.om_lo < njm1 && njm1 < t.om_hi) continue;
        const auto a = data.dual(i, j);
        for (int c = 0; c < d; ++c)
          cell[c] += t.sign * packet * t.coef[static_cast<std::size_t>(c)] * a[c];
      }
    }
  });
  return out;
}

std::vector<Bitile> up_ancestors(const Bitile& p, int resolution, int extent) {
  std::vector<Bitile> out;
  const int k0 = p.time.scale;
  for (int k = k0; k <= extent; ++k) {
    const DyadicInterval time = p.time.ancestor(k);
    // up-part frequency subintervals of omega_{P_u} at tile scale -k with
    // odd tile index
    const DyadicInterval pu = p.up().freq_interval();
    const std::int64_t lo_tile = pu.index << (k - k0);
    const std::int64_t hi_tile = (pu.index + 1) << (k - k0);
    for (std::int64_t m = lo_tile | 1; m < hi_tile; m += 2)
      out.push_back(Bitile{time, (m - 1) / 2});
  }
  return out;
}

std::vector<Bitile> order_ancestors(const Bitile& p, int resolution, int extent) {
  std::vector<Bitile> out = up_ancestors(p, resolution, extent);
  const int k0 = p.time.scale;
  for (int k = k0; k <= extent; ++k) {
    const DyadicInterval time = p.time.ancestor(k);
    const DyadicInterval pd = p.down().freq_interval();
    const std::int64_t lo_tile = pd.index << (k - k0);
    const std::int64_t hi_tile = (pd.index + 1) << (k - k0);
    for (std::int64_t m = lo_tile; m < hi_tile; m += 2) {
      if (k == k0 && m == pd.index) continue;  // p itself, already listed
      out.push_back(Bitile{time, m / 2});
    }
  }
  (void)resolution;
  return out;
}

double collection_size(std::span<const Bitile> collection, const GridFunction& f, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("collection_size: q < 1");
  if (collection.empty()) return 0.0;

  std::set<Bitile> tops;
  for (const Bitile& p : collection) {
    tops.insert(p);
    for (const Bitile& q2 : up_ancestors(p, f.resolution(), f.extent())) tops.insert(q2);
  }

  // deduplicate membership sets, keeping the shortest top time interval
  std::map<std::vector<Bitile>, int> pattern_scale;
  for (const Bitile& top : tops) {
    std::vector<Bitile> members;
    for (const Bitile& p : collection)
      if (bitile_le_u(p, top)) members.push_back(p);
    if (members.empty()) continue;
    std::sort(members.begin(), members.end());
    auto [it, fresh] = pattern_scale.try_emplace(std::move(members), top.time.scale);
    if (!fresh) it->second = std::min(it->second, top.time.scale);
  }

  const int d = f.dim();
  const double w = f.cell_width();
  double best = 0.0;

  auto tree_energy = [&](std::span<const Bitile> members, int top_scale) {
    GridFunction sum(f.resolution(), f.extent(), f.space());
    for (const Bitile& p : members) {
      const Tile down = p.down();
      const std::vector<double> c = packet_coefficient(f, down);
      const auto [first, last] = sum.cell_range(down.time);
      const double amp = std::sqrt(std::ldexp(1.0, -down.time.scale));
      for (std::size_t i = first; i < last; ++i) {
        const double v = amp * wave_packet_sign(down, i, f.resolution());
        auto cell = sum.cell(i);
        for (int cc = 0; cc < d; ++cc) cell[cc] += v * c[static_cast<std::size_t>(cc)];
      }
    }
    double integral = 0.0;
    for (std::size_t i = 0; i < sum.cell_count(); ++i)
      integral += w * std::pow(f.space().norm(sum.cell(i)), q);
    return std::pow(integral / std::ldexp(1.0, top_scale), 1.0 / q);
  };

  for (const auto& [members, scale] : pattern_scale)
    best = std::max(best, tree_energy(members, scale));
  for (const Bitile& p : collection)  // singletons
    best = std::max(best, tree_energy(std::span<const Bitile>(&p, 1), p.time.scale));
  return best;
}

DensityResult collection_density(std::span<const Bitile> collection, const GridFunction& g,
                                 const BreakpointData& data) {
  DensityResult out;
  out.first_omitted_scale = g.extent() + 1;
  {
    // everything at coarser time scales is bounded by the total dual mass
    double total = 0.0;
    const double w = g.cell_width();
    for (std::size_t i = 0; i < g.cell_count(); ++i) {
      const double gn = g.space().norm(g.cell(i));
      total += w * std::pow(gn, data.r_conjugate()) *
               data.dual_mass(i, 0.0, std::numeric_limits<double>::infinity());
    }
    out.omitted_scale_bound =
        std::pow(std::ldexp(total, -out.first_omitted_scale), 1.0 / data.r_conjugate());
  }
  if (collection.empty()) return out;

  std::set<Bitile> above;
  for (const Bitile& p : collection) {
    above.insert(p);
    for (const Bitile& q : order_ancestors(p, g.resolution(), g.extent())) above.insert(q);
  }

  const double w = g.cell_width();
  double best = 0.0;
  for (const Bitile& q : above) {
    const auto [first, last] = g.cell_range(q.time);
    const DyadicInterval omega = q.freq_interval();
    const double lo = omega.lower(), hi = omega.upper();
    double integral = 0.0;
    for (std::size_t i = first; i < last; ++i) {
      const double gn = g.space().norm(g.cell(i));
      if (gn == 0.0) continue;
      integral += w * std::pow(gn, data.r_conjugate()) * data.dual_mass(i, lo, hi);
    }
    best = std::max(best, integral / q.time.length());
  }
  out.value = std::pow(best, 1.0 / data.r_conjugate());
  return out;
}

TreeOperatorResult tree_operator_norm(const Tree& tree, const GridFunction& f,
                                      const GridFunction& g, const SignAssignment& signs,
                                      const BreakpointData& data, double s, double q) {
  if (!(1.0 <= s && s <= data.r_conjugate()))
    throw std::invalid_argument("tree_operator_norm: s out of [1, r']");
  if (!tree_valid(tree)) throw std::invalid_argument("tree_operator_norm: not a tree");

  TreeOperatorResult out;
  const GridFunction op = linearized_operator(f, tree.bitiles, signs, data);
  GridFunction paired(f.resolution(), f.extent(), ValueSpace(1, 2.0));
  for (std::size_t i = 0; i < op.cell_count(); ++i)
    paired.scalar(i) = pair_vectors(op.cell(i), g.cell(i));
  out.lhs_norm = lp_norm(paired, s);

  out.size = collection_size(tree.bitiles, f, q);
  out.density = collection_density(tree.bitiles, g, data).value;
  out.top_length = tree.top.time.length();
  out.bound = out.size * out.density * std::pow(out.top_length, 1.0 / s);
  out.ratio = out.bound > 0.0 ? out.lhs_norm / out.bound : 0.0;

  // disjointness of the breakpoint cells A(P, j) over the down-part
  const auto [up_part, down_part] = tree_split(tree);
  for (std::size_t i = 0; i < f.cell_count() && out.a_sets_disjoint; ++i) {
    const double x = f.cell_center(i);
    int hits = 0;
    for (const Bitile& p : down_part.bitiles) {
      if (!p.time.contains(x)) continue;
      const DyadicInterval omega = p.freq_interval();
      const DyadicInterval wu = p.up().freq_interval();
      for (int j = 1; j <= data.count(i); ++j) {
        const double nj = data.breakpoint(i, j);
        const double njm1 = data.breakpoint(i, j - 1);
        const bool in_up = wu.lower() <= nj && nj < wu.upper();
        const bool prev_out = !(omega.lower() < njm1 && njm1 < omega.upper());
        if (in_up && prev_out) ++hits;
      }
    }
    if (hits > 1) out.a_sets_disjoint = false;
  }
  return out;
}

}  // namespace wtf
