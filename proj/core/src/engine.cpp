#include "dlsenum/engine.hpp"

#include <chrono>

namespace dlsenum {

Symbol forced_value(Mask unit_mask, Mask all_symbols) {
  const Mask missing = all_symbols & ~unit_mask;
  if (std::popcount(missing) != 1 || (unit_mask & ~all_symbols) != 0) {
    throw Error("forced_value: unit must hold exactly n-1 symbols");
  }
  return static_cast<Symbol>(std::countr_zero(missing));
}

Enumerator::Enumerator(FillPlan plan) : Enumerator(std::move(plan), nullptr) {
  if (plan_.fixed_prefix != FixedPrefix::custom) reseed(plan_.standard_seed());
}

Enumerator::Enumerator(FillPlan plan, const SquareGrid& seed) : Enumerator(std::move(plan), nullptr) { reseed(seed); }

Enumerator::Enumerator(FillPlan plan, std::nullptr_t)
    : plan_(std::move(plan)),
      n_(plan_.n()),
      sym_(plan_.cs.vertical_symmetry),
      all_(plan_.order.all_symbols()),
      top_(symbol_bit(plan_.n() - 1)),
      seed_(plan_.order) {
  check_config(plan_.order, plan_.cs);
  steps_.reserve(plan_.steps.size());
  for (const PlanStep& ps : plan_.steps) {
    Step s;
    s.slots = slots_for(ps.cell);
    if (ps.kind == StepKind::forced) {
      const Unit& u = *ps.forcing_unit;
      std::uint8_t slot = 0;
      switch (u.kind) {
        case Unit::Kind::row: slot = static_cast<std::uint8_t>(u.index); break;
        case Unit::Kind::column: slot = static_cast<std::uint8_t>(kCol + u.index); break;
        case Unit::Kind::main_diagonal: slot = kMd; break;
        case Unit::Kind::anti_diagonal: slot = kAd; break;
      }
      s.forced_src = ps.via_mirror ? static_cast<std::uint8_t>(kRev + slot) : slot;
    }
    s.lookahead = ps.lookahead_after && !ps.watched.empty();
    s.watch_begin = static_cast<std::uint32_t>(watch_.size());
    if (s.lookahead)
      for (const Cell& w : ps.watched) watch_.push_back(slots_for(w));
    s.watch_end = static_cast<std::uint32_t>(watch_.size());
    steps_.push_back(s);
  }
  chosen_.assign(steps_.size() + 1, 0);
  remaining_.assign(steps_.size() + 1, 0);
}

Enumerator::Slots Enumerator::slots_for(Cell c) const {
  const auto& cs = plan_.cs;
  Slots s;
  int k = 0;
  auto add = [&](std::uint8_t slot) {
    s.read[static_cast<std::size_t>(k)] = slot;
    s.write[static_cast<std::size_t>(k)] = slot;
    ++k;
  };
  add(static_cast<std::uint8_t>(c.row));
  add(static_cast<std::uint8_t>(kCol + c.col));
  if (cs.main_diagonal && c.row == c.col) add(kMd);
  if (cs.anti_diagonal && c.row + c.col == n_ - 1) add(kAd);
  if (sym_) {
    // The partner (row, n-1-col) receives n-1-v. Its row is this row, whose
    // mask is symmetric, so only its column and diagonals need reading.
    const int mc = n_ - 1 - c.col;
    int r = 0;
    int w = 0;
    auto add_mirror = [&](std::uint8_t slot, bool read) {
      if (read) s.mirror_read[static_cast<std::size_t>(r++)] = static_cast<std::uint8_t>(kRev + slot);
      s.mirror_write[static_cast<std::size_t>(w++)] = slot;
    };
    add_mirror(static_cast<std::uint8_t>(c.row), false);
    add_mirror(static_cast<std::uint8_t>(kCol + mc), true);
    if (cs.main_diagonal && c.row == mc) add_mirror(kMd, true);
    if (cs.anti_diagonal && c.row + mc == n_ - 1) add_mirror(kAd, true);
  }
  return s;
}

void Enumerator::reseed(const SquareGrid& seed) {
  if (seed.order() != plan_.order) throw Error("seed order does not match plan");
  m_.fill(0);
  depth_ = 0;
  seed_ = SquareGrid(plan_.order);
  const auto& cs = plan_.cs;
  for (int c = 0; c < plan_.order.cells(); ++c) {
    if (!plan_.fixed.test(static_cast<std::size_t>(c))) continue;
    const Cell cell = cell_at(n_, c);
    const Symbol v = seed.at(cell);
    if (v == kEmpty || v >= n_) throw Error("seed leaves a fixed cell empty");
    seed_.set(cell, v);
    const Mask b = symbol_bit(v);
    const Mask rb = top_ >> v;
    std::array<std::uint8_t, 4> units{static_cast<std::uint8_t>(cell.row),
                                      static_cast<std::uint8_t>(kCol + cell.col), kTrash, kTrash};
    if (cs.main_diagonal && cell.row == cell.col) units[2] = kMd;
    if (cs.anti_diagonal && cell.row + cell.col == n_ - 1) units[3] = kAd;
    for (std::uint8_t u : units) {
      if (u == kTrash) continue;
      if (m_[u] & b) throw Error("seed breaks a uniqueness constraint");
      m_[u] |= b;
      m_[kRev + u] |= rb;
    }
    if (sym_) {
      const Symbol p = seed.at(cell.row, n_ - 1 - cell.col);
      if (p == kEmpty || p + v != n_ - 1) throw Error("seed breaks vertical symmetry");
    }
  }
  m_[kZero] = m_[kRev + kZero] = 0;
}

Mask Enumerator::candidates() const {
  if (depth_ >= steps_.size()) return 0;
  return step_candidates(depth_);
}

bool Enumerator::try_push(Symbol s) {
  if (depth_ >= steps_.size() || s >= n_) return false;
  const Mask b = symbol_bit(s);
  if (!(step_candidates(depth_) & b)) return false;
  chosen_[depth_] = b;
  toggle_step(depth_, b);
  ++depth_;
  return true;
}

void Enumerator::pop() {
  if (depth_ == 0) throw Error("pop at depth 0");
  --depth_;
  toggle_step(depth_, chosen_[depth_]);
}

void Enumerator::reset() {
  while (depth_ > 0) pop();
}

template <bool Sym>
u128 Enumerator::walk_count(std::size_t end, std::uint64_t& nodes) {
  const std::size_t begin = depth_;
  if (begin == end) return 1;

  Mask* const m = m_.data();
  const Step* const steps = steps_.data();
  Mask* const rem = remaining_.data();
  Mask* const chosen = chosen_.data();
  const Mask all = all_;
  const Mask top = top_;

  auto cand = [&](std::size_t d) -> Mask {
    const Slots& s = steps[d].slots;
    Mask cr = m[s.read[0]] | m[s.read[1]] | m[s.read[2]] | m[s.read[3]];
    if constexpr (Sym) cr |= m[s.mirror_read[0]] | m[s.mirror_read[1]] | m[s.mirror_read[2]] | m[s.mirror_read[3]];
    return all & ~cr & (all ^ m[steps[d].forced_src]);
  };
  auto toggle_at = [&](std::size_t d, Mask b) {
    const Slots& s = steps[d].slots;
    m[s.write[0]] ^= b;
    m[s.write[1]] ^= b;
    m[s.write[2]] ^= b;
    m[s.write[3]] ^= b;
    if constexpr (Sym) {
      const Mask rb = top >> std::countr_zero(b);
      for (int k = 0; k < 4; ++k) {
        m[kRev + s.write[k]] ^= rb;
        m[s.mirror_write[k]] ^= rb;
        m[kRev + s.mirror_write[k]] ^= b;
      }
    }
  };

  u128 total = 0;
  std::uint64_t local_total = 0;
  std::uint64_t local_nodes = 0;
  const std::size_t last = end - 1;
  std::size_t d = begin;
  rem[d] = cand(d);
  while (true) {
    Mask l = rem[d];
    if (d == last) {
      const auto c = static_cast<std::uint64_t>(std::popcount(l));
      local_total += c;
      local_nodes += c;
      l = 0;
    }
    if (l == 0) {
      if (d == begin) break;
      --d;
      toggle_at(d, chosen[d]);
      continue;
    }
    const Mask b = l & (0U - l);
    rem[d] = l & (l - 1);
    chosen[d] = b;
    toggle_at(d, b);
    ++local_nodes;
    if (steps[d].lookahead && !watch_ok(d)) {
      toggle_at(d, b);
      continue;
    }
    ++d;
    rem[d] = cand(d);
    if (local_total > (std::uint64_t{1} << 62)) {
      total += local_total;
      local_total = 0;
    }
  }
  total += local_total;
  nodes += local_nodes;
  return total;
}

u128 Enumerator::count_extensions(std::size_t end, std::uint64_t* nodes) {
  if (end < depth_ || end > steps_.size()) throw Error("count_extensions: bad end step");
  std::uint64_t local = 0;
  const u128 total = sym_ ? walk_count<true>(end, local) : walk_count<false>(end, local);
  if (nodes) *nodes += local;
  return total;
}

u128 Enumerator::count_completions(std::uint64_t* nodes) { return count_extensions(steps_.size(), nodes); }

EnumerationReport Enumerator::enumerate(std::span<const Symbol> prefix) {
  reset();
  if (prefix.size() > steps_.size()) throw Error("prefix longer than the plan");
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    if (!try_push(prefix[k])) {
      reset();
      throw Error("prefix breaks a constraint at step " + std::to_string(k + 1));
    }
  }
  EnumerationReport report;
  const auto start = std::chrono::steady_clock::now();
  report.total = count_completions(&report.nodes);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.squares_per_second = report.seconds > 0 ? static_cast<double>(report.total) / report.seconds : 0.0;
  reset();
  return report;
}

SquareGrid Enumerator::grid() const {
  SquareGrid g = seed_;
  for (std::size_t k = 0; k < depth_; ++k) {
    const Cell c = plan_.steps[k].cell;
    const Symbol v = value_at(k);
    g.set(c, v);
    if (sym_) g.set(c.row, n_ - 1 - c.col, static_cast<Symbol>(n_ - 1 - v));
  }
  return g;
}

bool Enumerator::lookahead_feasible(std::span<const Cell> watched) const {
  for (const Cell& w : watched)
    if ((cr(slots_for(w)) & all_) == all_) return false;
  return true;
}

std::vector<Mask> Enumerator::unit_masks() const {
  std::vector<Mask> out;
  for (int i = 0; i < n_; ++i) out.push_back(m_[static_cast<std::size_t>(i)]);
  for (int j = 0; j < n_; ++j) out.push_back(m_[static_cast<std::size_t>(kCol + j)]);
  out.push_back(m_[kMd]);
  out.push_back(m_[kAd]);
  return out;
}

void Enumerator::verify_masks() const {
  const SquareGrid g = grid();
  std::vector<Mask> expect(static_cast<std::size_t>(2 * n_ + 2), 0);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const Symbol v = g.at(i, j);
      if (v == kEmpty) continue;
      expect[static_cast<std::size_t>(i)] |= symbol_bit(v);
      expect[static_cast<std::size_t>(n_ + j)] |= symbol_bit(v);
      if (plan_.cs.main_diagonal && i == j) expect[static_cast<std::size_t>(2 * n_)] |= symbol_bit(v);
      if (plan_.cs.anti_diagonal && i + j == n_ - 1) expect[static_cast<std::size_t>(2 * n_ + 1)] |= symbol_bit(v);
    }
  }
  if (expect != unit_masks()) throw Error("engine masks diverged from the grid");
}

u128 Enumerator::walk_checked(const Trace& trace, std::size_t end) {
  verify_masks();
  if (depth_ == end) {
    if (trace.on_square) trace.on_square(grid());
    return 1;
  }
  const std::size_t d = depth_;
  u128 total = 0;
  for (Mask l = step_candidates(d); l != 0; l &= l - 1) {
    const Mask b = l & (0U - l);
    const auto s = static_cast<Symbol>(std::countr_zero(b));
    if (trace.on_try) trace.on_try(d, s);
    chosen_[d] = b;
    toggle_step(d, b);
    ++depth_;
    if (!steps_[d].lookahead || watch_ok(d)) total += walk_checked(trace, end);
    --depth_;
    toggle_step(d, b);
  }
  return total;
}

u128 Enumerator::enumerate_checked(const Trace& trace) {
  reset();
  const u128 total = walk_checked(trace, steps_.size());
  verify_masks();
  return total;
}

u128 count_partial(Order order, const ConstraintSet& cs, int k) {
  const int n = order.n();
  if (cs.vertical_symmetry) throw Error("count_partial does not support vertical symmetry");
  if (k < n || k > order.cells()) throw Error("count_partial: depth must be in n..n*n");
  Enumerator e(row_major_plan(order, cs, FixedPrefix::first_row, fixed_cells(order, FixedPrefix::first_row)));
  return e.count_extensions(static_cast<std::size_t>(k - n));
}

}  // namespace dlsenum
