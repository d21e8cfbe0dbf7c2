#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wtf/grid.hpp"
#include "wtf/tiles.hpp"

namespace wtf {

enum class Orientation { up, down };

/// Collection of bitiles lying below a common top bitile. The top need not
/// belong to the collection and is not unique; equality of trees compares
/// bitile sets only.
struct Tree {
  enum Kind { general, up, down };

  std::vector<Bitile> bitiles;
  Bitile top{};
  Kind kind = general;
};

/// True when every member is below the top in the order named by kind.
bool tree_valid(const Tree& t);

/// Splits a tree into its up-part and down-part. A bitile satisfying both
/// relations goes to the up-part, so the output sets are disjoint and their
/// union is the input.
std::pair<Tree, Tree> tree_split(const Tree& t);

/// Ordered family of up-trees (or down-trees) with designated tops:
/// frequency centers strictly increase (up) or decrease (down) and each
/// tree satisfies the greedy membership law.
struct GoodCollection {
  std::vector<Tree> trees;
  Orientation orientation = Orientation::up;

  std::vector<Bitile> all_bitiles() const;
};

struct GoodCheck {
  bool good = true;
  std::string violation;  // first violation, empty when good
};

/// Exhaustive check of the monotone-center and membership laws.
GoodCheck check_good_collection(const GoodCollection& gc);

/// Sign eps in {-1,+1} with w_{P_d} = eps * w_{T_u}^inf * h_{I_P} on every
/// grid cell (up orientation; the down variant factors w_{P_u} through
/// w_{T_d}^inf). Throws std::invalid_argument when the order relation
/// between P and T fails, std::logic_error when no consistent sign exists.
int haar_factorization(const Bitile& p, const Bitile& top, Orientation orientation,
                       int resolution, int extent);

/// Reflects every bitile and top; flips the orientation and preserves the
/// tree order (centers reverse monotonicity direction).
GoodCollection reflect(const GoodCollection& gc, int levels);

/// Per-cell counting functions of a u-good collection: values[j][cell] is
/// the frequency center of the last tree up to j whose top time interval
/// contains the cell, 0 when there is none; values[0] is identically 0.
/// Requires up orientation (reflect a down collection first).
struct LevelFunctions {
  std::vector<std::vector<double>> values;  // (trees+1) x cells
};
LevelFunctions level_functions(const GoodCollection& gc, int resolution, int extent);

/// Exhaustive per-cell check that tree membership agrees with the
/// breakpoint description derived from the counting functions. Returns an
/// empty string on success, else the first violation.
std::string membership_identity_violation(const GoodCollection& gc, int resolution,
                                          int extent);

/// Tree construction from a finite family of dyadic intervals in [0,1):
/// every interval becomes the time side of a bitile whose frequency sits at
/// the top of the representable band.
struct ConverseTrees {
  std::vector<DyadicInterval> family;    // deduplicated input
  int depth = 0;                         // N with 2^-N = min length
  Tree single;                           // one up-tree holding all bitiles
  GoodCollection leveled;                // trees by interval length, j=0..N
  std::array<GoodCollection, 2> split;   // even/odd levels, each good
  std::uint64_t modulation = 0;          // Walsh index of the unimodular factor
};
ConverseTrees converse_trees(const std::vector<DyadicInterval>& family);

/// Max pointwise deviation between the leveled wave-packet expansion of
/// (modulation * f) and the Haar expansion of f, both raised to power r and
/// summed over levels.
double converse_identity_deviation(const ConverseTrees& ct, const GridFunction& f,
                                   double r);

}  // namespace wtf
