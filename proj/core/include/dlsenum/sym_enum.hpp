#pragma once

#include <cstdint>
#include <span>

#include "dlsenum/engine.hpp"
#include "dlsenum/mtransform.hpp"

namespace dlsenum {

struct SymEnumReport {
  u128 total = 0;
  std::uint64_t hourglass_seen = 0;
  std::uint64_t canonical = 0;
  std::uint64_t multiplicity_sum = 0;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

/// First row fixed, then the diagonals, then the rest of the last row, then
/// everything else. `boundary` is the number of steps covering the hourglass.
FillPlan hourglass_plan(Order order, const ConstraintSet& cs);

/// Counts completions of canonical hourglass designs only, each weighted by
/// the size of its class. `total` matches a plain count with first row fixed.
SymEnumReport enumerate_sym(Order order, const ConstraintSet& cs);

/// Same over a slice of the hourglass space: hourglass-plan prefixes of length
/// `split` with index (in branch order) congruent to `slice` modulo `slices`.
/// Summing the totals of all slices gives the enumerate_sym total.
SymEnumReport enumerate_sym_slice(Order order, const ConstraintSet& cs, std::size_t split, std::uint64_t slice,
                                  std::uint64_t slices);

/// Completions of `prefix` under `plan` computed through canonical hourglass
/// representatives: each hourglass extending the prefix is replaced by its
/// canonical form, whose completion count is the same. Requires the prefix
/// cells to lie in the hourglass shape and the plan to fix the first row.
class SymWorkunitCounter {
 public:
  explicit SymWorkunitCounter(const FillPlan& plan);
  u128 count(std::span<const Symbol> prefix, std::uint64_t* nodes = nullptr);

 private:
  FillPlan plan_;
  HourglassGroup group_;
  Enumerator completion_engine_;
};

}  // namespace dlsenum
