#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dlsenum/square.hpp"

namespace dlsenum {

struct Unit {
  enum class Kind : std::uint8_t { row, column, main_diagonal, anti_diagonal };

  Kind kind = Kind::row;
  int index = 0;  // row or column number; 0 for the diagonals

  friend bool operator==(const Unit&, const Unit&) = default;
};

std::string to_string(const Unit& unit);
/// Cells of `unit` in increasing row order.
std::vector<Cell> unit_cells(Order order, const Unit& unit);

enum class StepKind : std::uint8_t { branch, forced };

struct PlanStep {
  StepKind kind = StepKind::branch;
  Cell cell;
  /// Unit holding n-1 assigned cells when a forced step runs.
  std::optional<Unit> forcing_unit;
  /// Under vertical symmetry the forced cell may be the mirror partner of
  /// `cell`; the value of `cell` is then n-1 minus the missing symbol.
  bool via_mirror = false;
  bool lookahead_after = false;
  /// Not-yet-assigned planned cells that share a unit with `cell` (or with its
  /// mirror); checked for an empty candidate set after this step.
  std::vector<Cell> watched;
};

enum class FixedPrefix { none, first_row, first_row_and_column, custom };

std::string_view to_string(FixedPrefix prefix);

/// The order in which cells are assigned. Fixed cells take their values from a
/// seed grid and appear in no step. Under vertical symmetry only the left half
/// is planned; right-half cells are derived from their partners.
struct FillPlan {
  Order order{1};
  ConstraintSet cs;
  FixedPrefix fixed_prefix = FixedPrefix::first_row;
  CellSet fixed;
  std::vector<PlanStep> steps;
  /// 1-based inclusive step window carrying lookahead flags, if any.
  std::optional<std::pair<int, int>> lookahead_window;
  /// Number of leading steps that make up a separately enumerated block (the
  /// hourglass in symmetry-broken runs); 0 when the plan has none.
  std::size_t boundary = 0;

  int n() const { return order.n(); }
  std::size_t size() const { return steps.size(); }
  /// Fingerprint over order, constraints, fixed cells, steps and lookahead.
  std::uint64_t hash() const;
  std::string hash_hex() const;
  /// Seed grid for the none / first_row / first_row_and_column plans.
  SquareGrid standard_seed() const;
};

/// Most-constrained-first plan: repeatedly picks the unassigned cell with the
/// largest count of assigned cells across its row, column and (enabled)
/// diagonals, ties broken lexicographically. Whenever a unit reaches n-1
/// assigned cells its last cell is emitted next as a forced step.
FillPlan compute_plan(Order order, const ConstraintSet& cs, FixedPrefix fixed_prefix);

/// General planner. `fixed` cells are pre-assigned. `stages` restrict selection
/// to each listed cell set in turn before the rest of the grid; while any stage
/// is unfinished, only cells inside the union of all stages may be forced.
/// `boundary` of the result is the step count at which the stages completed.
FillPlan plan_cells(Order order, const ConstraintSet& cs, FixedPrefix label, const CellSet& fixed,
                    const std::vector<CellSet>& stages = {});

/// Plan visiting the non-fixed cells in row-major order, all as branch steps.
FillPlan row_major_plan(Order order, const ConstraintSet& cs, FixedPrefix label, const CellSet& fixed);

CellSet fixed_cells(Order order, FixedPrefix prefix);

/// Flags steps first..last (1-based, inclusive) for lookahead. first > last is
/// the empty window and returns the plan unchanged.
FillPlan place_lookahead(FillPlan plan, int first, int last);

/// compute_plan from a fixed first row plus the default lookahead window
/// (51..60 for order-9 DLS, none elsewhere).
FillPlan default_plan(Order order, const ConstraintSet& cs);

/// "<index> <kind> <i> <j> [unit] [LA]" per step, 1-based indices.
std::string format_plan(const FillPlan& plan);
/// Grid of step numbers; fixed cells print as "-", derived mirror cells as "~".
std::string format_plan_grid(const FillPlan& plan);

/// Returns a description of the first broken plan invariant, or nullopt.
/// Checks that steps are a permutation of the planned cells and replays forced
/// steps to confirm each forcing unit holds exactly n-1 assigned cells.
std::optional<std::string> check_plan(const FillPlan& plan);

}  // namespace dlsenum
