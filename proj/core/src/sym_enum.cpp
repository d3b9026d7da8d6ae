#include "dlsenum/sym_enum.hpp"

#include <chrono>
#include <map>

namespace dlsenum {

namespace {

CellSet diagonal_cells(Order order) {
  const int n = order.n();
  CellSet s;
  for (int i = 0; i < n; ++i) {
    s.set(static_cast<std::size_t>(i * n + i));
    s.set(static_cast<std::size_t>(i * n + n - 1 - i));
  }
  return s;
}

CellSet row_cells(Order order, int row) {
  CellSet s;
  for (int j = 0; j < order.n(); ++j) s.set(static_cast<std::size_t>(row * order.n() + j));
  return s;
}

void require_diagonals(const ConstraintSet& cs) {
  if (!cs.has_diagonals()) throw Error("symmetry breaking needs both diagonal constraints");
}

}  // namespace

FillPlan hourglass_plan(Order order, const ConstraintSet& cs) {
  require_diagonals(cs);
  const CellSet fixed = fixed_cells(order, FixedPrefix::first_row);
  FillPlan plan = plan_cells(order, cs, FixedPrefix::first_row, fixed,
                             {diagonal_cells(order) & ~fixed, row_cells(order, order.n() - 1) & ~fixed});
  return plan;
}

SymEnumReport enumerate_sym_slice(Order order, const ConstraintSet& cs, std::size_t split, std::uint64_t slice,
                                  std::uint64_t slices) {
  require_diagonals(cs);
  if (slices == 0 || slice >= slices) throw Error("slice index out of range");
  const auto start = std::chrono::steady_clock::now();
  const HourglassGroup group(order, cs);
  Enumerator e(hourglass_plan(order, cs));
  const std::size_t boundary = e.plan().boundary;
  if (split > boundary) throw Error("split depth beyond the hourglass boundary");

  SymEnumReport r;
  auto at_boundary = [&] {
    ++r.hourglass_seen;
    const CanonizationResult c = group.canonize(e.grid());
    if (!c.is_canonical) return;
    ++r.canonical;
    r.multiplicity_sum += c.multiplicity;
    r.total += e.count_completions(&r.nodes) * c.multiplicity;
  };
  std::uint64_t index = 0;
  e.for_each_extension(split, [&] {
    if (index++ % slices == slice) e.for_each_extension(boundary, at_boundary);
  });
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

SymEnumReport enumerate_sym(Order order, const ConstraintSet& cs) { return enumerate_sym_slice(order, cs, 0, 0, 1); }

SymWorkunitCounter::SymWorkunitCounter(const FillPlan& plan)
    : plan_(plan),
      group_(plan.order, plan.cs),
      completion_engine_(plan_cells(plan.order, plan.cs, FixedPrefix::custom, hourglass_shape(plan.order))) {
  if (plan.fixed_prefix != FixedPrefix::first_row) throw Error("symmetry-broken workunits need a first-row plan");
}

u128 SymWorkunitCounter::count(std::span<const Symbol> prefix, std::uint64_t* nodes) {
  const Order order = plan_.order;
  const int n = order.n();
  const CellSet shape = hourglass_shape(order);
  if (prefix.size() > plan_.steps.size()) throw Error("prefix longer than the plan");

  SquareGrid seed = plan_.standard_seed();
  CellSet fixed = plan_.fixed;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    const Cell c = plan_.steps[k].cell;
    if (!shape.test(static_cast<std::size_t>(cell_index(n, c)))) {
      throw Error("workunit cell (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                  ") lies outside the hourglass");
    }
    if (prefix[k] >= n) throw Error("workunit symbol out of range");
    seed.set(c, prefix[k]);
    fixed.set(static_cast<std::size_t>(cell_index(n, c)));
    if (plan_.cs.vertical_symmetry) {
      const Cell m{c.row, n - 1 - c.col};
      seed.set(m, static_cast<Symbol>(n - 1 - prefix[k]));
      fixed.set(static_cast<std::size_t>(cell_index(n, m)));
    }
  }
  // The forced-step structure of the original plan is not needed here: the
  // prefix becomes fixed cells of a fresh hourglass-first plan.
  const FillPlan hp = plan_cells(order, plan_.cs, FixedPrefix::custom, fixed,
                                 {diagonal_cells(order) & ~fixed, row_cells(order, n - 1) & ~fixed});
  Enumerator e(hp, seed);

  std::map<std::vector<Symbol>, u128> memo;
  u128 total = 0;
  e.for_each_extension(hp.boundary, [&] {
    const SquareGrid rep = group_.canonical_form(e.grid());
    std::vector<Symbol> key(rep.data(), rep.data() + kMaxCells);
    auto it = memo.find(key);
    if (it == memo.end()) {
      completion_engine_.reseed(rep);
      it = memo.emplace(std::move(key), completion_engine_.count_completions(nodes)).first;
    }
    total += it->second;
  });
  return total;
}

}  // namespace dlsenum
