#pragma once

#include <array>
#include <bitset>
#include <string>
#include <string_view>
#include <vector>

#include "dlsenum/types.hpp"

namespace dlsenum {

/// Which uniqueness constraints a square must satisfy. Rows and columns are
/// always constrained.
struct ConstraintSet {
  bool main_diagonal = false;
  bool anti_diagonal = false;
  bool vertical_symmetry = false;

  static constexpr ConstraintSet ls() { return {}; }
  static constexpr ConstraintSet dls() { return {true, true, false}; }
  static constexpr ConstraintSet vsdls() { return {true, true, true}; }

  bool has_diagonals() const { return main_diagonal && anti_diagonal; }

  /// "ls", "dls", "vsdls", or a flag string such as "ls+md" for other mixes.
  std::string code() const;
  /// Parses the three standard codes.
  static ConstraintSet from_code(std::string_view code);

  friend constexpr bool operator==(const ConstraintSet&, const ConstraintSet&) = default;
};

/// Throws if `cs` cannot be used with `order` (vertical symmetry needs both
/// diagonals and an even order).
void check_config(Order order, const ConstraintSet& cs);

using CellSet = std::bitset<kMaxCells>;

/// N x N grid over symbols 0..n-1 with kEmpty for unassigned cells.
class SquareGrid {
 public:
  explicit SquareGrid(Order order) : order_(order) { cells_.fill(kEmpty); }

  Order order() const { return order_; }
  int n() const { return order_.n(); }

  Symbol at(int i, int j) const { return cells_[static_cast<std::size_t>(i * kMaxOrder + j)]; }
  Symbol at(Cell c) const { return at(c.row, c.col); }
  void set(int i, int j, Symbol v) { cells_[static_cast<std::size_t>(i * kMaxOrder + j)] = v; }
  void set(Cell c, Symbol v) { set(c.row, c.col, v); }
  bool empty_at(int i, int j) const { return at(i, j) == kEmpty; }
  /// Row-major storage with row stride kMaxOrder.
  const Symbol* data() const { return cells_.data(); }

  bool complete() const;
  CellSet assigned_cells() const;

  /// Grid with first row 0..n-1 (and first column 0..n-1 when requested).
  static SquareGrid with_fixed_first_row(Order order, bool first_column_too = false);

  friend bool operator==(const SquareGrid& a, const SquareGrid& b) {
    return a.order_ == b.order_ && a.cells_ == b.cells_;
  }
  /// Row-major comparison over all cells; kEmpty sorts above every symbol.
  friend bool operator<(const SquareGrid& a, const SquareGrid& b) { return a.cells_ < b.cells_; }

 private:
  Order order_;
  std::array<Symbol, kMaxCells> cells_{};
};

inline int cell_index(int n, Cell c) { return c.row * n + c.col; }
inline Cell cell_at(int n, int index) { return {index / n, index % n}; }

struct Violation {
  enum class Kind { row, column, main_diagonal, anti_diagonal, vertical_symmetry, symbol_range, empty_cell };

  Kind kind;
  Cell cell;  // offending cell (the second occurrence for duplicates)

  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string_view to_string(Violation::Kind kind);

/// All violations of the enabled constraints. With `allow_partial`, empty cells
/// are skipped; otherwise each one is reported.
std::vector<Violation> validate(const SquareGrid& grid, const ConstraintSet& cs, bool allow_partial);

/// Renames symbols so the first row reads 0..n-1. Empty cells stay empty.
SquareGrid normalize(const SquareGrid& grid);

/// Column mirrored across the vertical midline.
inline int mirror_column(Order order, int j) { return order.n() - 1 - j; }

/// n lines of n whitespace separated tokens; "_" marks an empty cell.
SquareGrid parse_grid(std::string_view text);
std::string format_grid(const SquareGrid& grid);

}  // namespace dlsenum
