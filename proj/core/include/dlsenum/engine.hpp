#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dlsenum/fill_plan.hpp"

namespace dlsenum {

struct EnumerationReport {
  u128 total = 0;
  /// Assignments made (branch iterations, forced placements and leaf candidates).
  std::uint64_t nodes = 0;
  double seconds = 0.0;
  double squares_per_second = 0.0;
};

/// Index of the single clear bit of `unit_mask` inside `all_symbols`.
/// Throws unless exactly one bit is clear.
Symbol forced_value(Mask unit_mask, Mask all_symbols);

/// Iterative bitmask backtracking over a FillPlan.
///
/// Every unit (row, column, enabled diagonal) keeps a mask of the symbols it
/// holds. A step's candidate set is the complement of the OR of its units'
/// masks; candidates are consumed lowest symbol first by isolating and clearing
/// the rightmost set bit. Forced steps intersect that set with the one symbol
/// missing from the forcing unit. Under vertical symmetry each planned cell
/// also writes n-1-v into its mirror partner; bit-reversed copies of every
/// mask let the partner's constraints be read without a table.
///
/// One instance owns its state exclusively; it is not thread safe.
class Enumerator {
 public:
  /// Seeds the fixed cells from plan.standard_seed(). Plans with custom fixed
  /// cells start unseeded and need reseed() before use.
  explicit Enumerator(FillPlan plan);
  Enumerator(FillPlan plan, const SquareGrid& seed);

  const FillPlan& plan() const { return plan_; }
  Order order() const { return plan_.order; }

  /// Replaces the values of the plan's fixed cells and resets to depth 0.
  void reseed(const SquareGrid& seed);

  /// Exact count of completions of the seed extended by `prefix` (values for
  /// steps 0..prefix.size()-1). Throws if the prefix breaks a constraint.
  EnumerationReport enumerate(std::span<const Symbol> prefix = {});

  // Incremental interface used by workunits, symmetry breaking and sampling.

  std::size_t depth() const { return depth_; }
  /// Allowed symbols for the step at depth().
  Mask candidates() const;
  /// Assigns `s` to the step at depth() if allowed; returns false otherwise.
  bool try_push(Symbol s);
  void pop();
  void reset();
  /// Completions of the current partial assignment; state is restored.
  u128 count_completions(std::uint64_t* nodes = nullptr);
  /// Number of consistent assignments of steps depth()..end-1.
  u128 count_extensions(std::size_t end, std::uint64_t* nodes = nullptr);
  /// Calls `f()` once per consistent assignment of steps depth()..end-1 with
  /// that assignment applied. Branch order is deterministic (ascending symbols).
  template <typename F>
  void for_each_extension(std::size_t end, F&& f);

  /// Value placed at step `k` (< depth()).
  Symbol value_at(std::size_t k) const { return static_cast<Symbol>(std::countr_zero(chosen_[k])); }
  /// Seed plus every assignment up to depth(), mirrors included.
  SquareGrid grid() const;
  /// True iff no watched cell has its candidate set exhausted.
  bool lookahead_feasible(std::span<const Cell> watched) const;

  /// Per-unit occupancy masks: rows, then columns, then main and anti diagonal.
  std::vector<Mask> unit_masks() const;

  /// Slow recursive walk for tests (n <= 6). Reports every tried (step, symbol)
  /// and every completed square, and verifies after each assignment that the
  /// incremental masks match masks rebuilt from the grid. Throws on mismatch.
  struct Trace {
    std::function<void(std::size_t step, Symbol value)> on_try;
    std::function<void(const SquareGrid&)> on_square;
  };
  u128 enumerate_checked(const Trace& trace);

 private:
  // Mask slots: rows 0..15, columns 16..31, md 32, ad 33, a constant zero and a
  // write-only trash slot; the reversed copies live kRev slots further on.
  static constexpr std::uint8_t kCol = kMaxOrder;
  static constexpr std::uint8_t kMd = 2 * kMaxOrder;
  static constexpr std::uint8_t kAd = kMd + 1;
  static constexpr std::uint8_t kZero = kAd + 1;
  static constexpr std::uint8_t kTrash = kZero + 1;
  static constexpr std::uint8_t kRev = kTrash + 1;

  struct Slots {
    std::array<std::uint8_t, 4> read{kZero, kZero, kZero, kZero};
    std::array<std::uint8_t, 4> mirror_read{kZero, kZero, kZero, kZero};  // already offset by kRev
    std::array<std::uint8_t, 4> write{kTrash, kTrash, kTrash, kTrash};
    std::array<std::uint8_t, 4> mirror_write{kTrash, kTrash, kTrash, kTrash};
  };
  struct Step {
    Slots slots;
    std::uint8_t forced_src = kZero;
    bool lookahead = false;
    std::uint32_t watch_begin = 0;
    std::uint32_t watch_end = 0;
  };

  Enumerator(FillPlan plan, std::nullptr_t);
  Slots slots_for(Cell c) const;
  Mask cr(const Slots& s) const {
    Mask v = m_[s.read[0]] | m_[s.read[1]] | m_[s.read[2]] | m_[s.read[3]];
    if (sym_) v |= m_[s.mirror_read[0]] | m_[s.mirror_read[1]] | m_[s.mirror_read[2]] | m_[s.mirror_read[3]];
    return v;
  }
  Mask step_candidates(std::size_t d) const {
    const Step& s = steps_[d];
    return all_ & ~cr(s.slots) & (all_ ^ m_[s.forced_src]);
  }
  template <bool Sym>
  void toggle(const Slots& s, Mask b) {
    for (int k = 0; k < 4; ++k) m_[s.write[k]] ^= b;
    if constexpr (Sym) {
      const Mask rb = top_ >> std::countr_zero(b);
      for (int k = 0; k < 4; ++k) {
        m_[kRev + s.write[k]] ^= rb;
        m_[s.mirror_write[k]] ^= rb;
        m_[kRev + s.mirror_write[k]] ^= b;
      }
    }
  }
  void toggle_step(std::size_t d, Mask b) {
    if (sym_) toggle<true>(steps_[d].slots, b);
    else toggle<false>(steps_[d].slots, b);
  }
  bool watch_ok(std::size_t d) const {
    const Step& s = steps_[d];
    for (std::uint32_t w = s.watch_begin; w < s.watch_end; ++w)
      if ((cr(watch_[w]) & all_) == all_) return false;
    return true;
  }

  template <bool Sym>
  u128 walk_count(std::size_t end, std::uint64_t& nodes);
  u128 walk_checked(const Trace& trace, std::size_t end);
  void verify_masks() const;

  FillPlan plan_;
  int n_;
  bool sym_;
  Mask all_;
  Mask top_;
  std::vector<Step> steps_;
  std::vector<Slots> watch_;
  std::array<Mask, 2 * kRev> m_{};
  std::vector<Mask> chosen_;
  std::vector<Mask> remaining_;
  std::size_t depth_ = 0;
  SquareGrid seed_;
};

template <typename F>
void Enumerator::for_each_extension(std::size_t end, F&& f) {
  if (end < depth_ || end > steps_.size()) throw Error("for_each_extension: bad end step");
  const std::size_t begin = depth_;
  if (begin == end) {
    f();
    return;
  }
  std::size_t d = begin;
  remaining_[d] = step_candidates(d);
  while (true) {
    const Mask l = remaining_[d];
    if (l == 0) {
      if (d == begin) break;
      --d;
      toggle_step(d, chosen_[d]);
      depth_ = d;
      continue;
    }
    const Mask b = l & (0U - l);
    remaining_[d] = l & (l - 1);
    chosen_[d] = b;
    toggle_step(d, b);
    depth_ = d + 1;
    if (steps_[d].lookahead && !watch_ok(d)) {
      toggle_step(d, b);
      depth_ = d;
      continue;
    }
    if (d + 1 == end) {
      f();
      toggle_step(d, b);
      depth_ = d;
      continue;
    }
    ++d;
    remaining_[d] = step_candidates(d);
  }
  depth_ = begin;
}

/// Number of consistent assignments of the first k row-major cells, the first
/// row (0..n-1) counting as a single choice. k must satisfy n <= k <= n*n.
u128 count_partial(Order order, const ConstraintSet& cs, int k);

}  // namespace dlsenum
