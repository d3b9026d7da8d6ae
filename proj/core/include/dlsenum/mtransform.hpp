#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dlsenum/square.hpp"

namespace dlsenum {

enum class Mirror : std::uint8_t { none, horizontal, vertical, main_diag, anti_diag };

std::string_view to_string(Mirror m);

/// Row/column permutation that maps diagonal Latin squares to diagonal Latin
/// squares. Applied as: mirror, then swaps of symmetric pairs (row k with row
/// n-1-k together with column k with column n-1-k), then a permutation of the
/// floor(n/2) symmetric pairs.
struct MTransform {
  Mirror mirror = Mirror::none;
  /// Bit k swaps pair k (rows/columns k and n-1-k).
  std::uint32_t pair_swaps = 0;
  /// Pair k moves to pair half_perm[k]; empty means identity.
  std::vector<std::uint8_t> half_perm;

  /// "m:<mirror> s:<hex> p:<perm>".
  std::string describe() const;

  friend bool operator==(const MTransform&, const MTransform&) = default;
};

/// Position of cell `c` after `t`. Throws if t does not fit the order.
Cell map_cell(Order order, const MTransform& t, Cell c);
void check_transform(Order order, const MTransform& t);

/// Moves every cell (empty ones included) without renaming symbols.
SquareGrid permute(const MTransform& t, const SquareGrid& grid);
/// permute followed by normalize. The image's first row must be fully assigned.
SquareGrid apply(const MTransform& t, const SquareGrid& grid);
/// Transform undoing t on positions.
MTransform inverse(Order order, const MTransform& t);

/// 4 * 2^floor(n/2) * floor(n/2)!.
u128 full_class_size_bound(Order order);

/// Rows 0 and n-1 plus both diagonals.
CellSet hourglass_shape(Order order);

/// Partial grid holding exactly the hourglass cells.
class HourglassDesign {
 public:
  /// Throws unless exactly the hourglass cells are assigned and no enabled
  /// constraint is broken among them.
  HourglassDesign(SquareGrid grid, const ConstraintSet& cs);

  const SquareGrid& grid() const { return grid_; }
  Order order() const { return grid_.order(); }
  const ConstraintSet& constraints() const { return cs_; }

 private:
  SquareGrid grid_;
  ConstraintSet cs_;
};

/// Copies the hourglass cells of `grid`. Throws if any of them is empty.
HourglassDesign extract_hourglass(const SquareGrid& grid, const ConstraintSet& cs = ConstraintSet::dls());

struct CanonizationResult {
  bool is_canonical = false;
  /// Distinct images under the group; 0 when not canonical.
  std::uint32_t multiplicity = 0;
};

/// Transforms that keep the hourglass shape: identity or vertical mirror, any
/// pair swaps, and permutations of the inner pairs (pair 0 stays outermost).
/// Under vertical symmetry the mirror acts trivially and is left out.
class HourglassGroup {
 public:
  HourglassGroup(Order order, const ConstraintSet& cs);

  Order order() const { return order_; }
  const ConstraintSet& constraints() const { return cs_; }
  const std::vector<MTransform>& transforms() const { return transforms_; }
  std::size_t size() const { return transforms_.size(); }

  /// Fast path on a grid whose hourglass cells are assigned (other cells are
  /// ignored): early exit on the first smaller image.
  CanonizationResult canonize(const SquareGrid& grid) const;
  /// Smallest image and the number of distinct images.
  SquareGrid canonical_form(const SquareGrid& grid, std::uint32_t* multiplicity = nullptr) const;

 private:
  struct Map {
    int source_row0 = 0;                         // row that lands on row 0
    std::array<Symbol, kMaxOrder> column_of{};   // source column -> image column
    std::vector<std::uint16_t> source;           // per shape slot, source grid offset
  };
  void build_image(const Map& map, const SquareGrid& g, Symbol* out) const;

  Order order_;
  ConstraintSet cs_;
  std::vector<MTransform> transforms_;
  std::vector<Map> maps_;
  std::vector<std::uint16_t> slots_;  // grid offsets of shape cells below row 0, row-major
};

CanonizationResult canonize(const HourglassDesign& h, const HourglassGroup& g);

}  // namespace dlsenum
