#include "dlsenum/fill_plan.hpp"

#include <cstdio>
#include <algorithm>
#include <deque>
#include <sstream>

namespace dlsenum {

std::string to_string(const Unit& unit) {
  switch (unit.kind) {
    case Unit::Kind::row: return "row:" + std::to_string(unit.index);
    case Unit::Kind::column: return "col:" + std::to_string(unit.index);
    case Unit::Kind::main_diagonal: return "md";
    case Unit::Kind::anti_diagonal: return "ad";
  }
  return "?";
}

std::vector<Cell> unit_cells(Order order, const Unit& unit) {
  const int n = order.n();
  std::vector<Cell> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    switch (unit.kind) {
      case Unit::Kind::row: out.push_back({unit.index, k}); break;
      case Unit::Kind::column: out.push_back({k, unit.index}); break;
      case Unit::Kind::main_diagonal: out.push_back({k, k}); break;
      case Unit::Kind::anti_diagonal: out.push_back({k, n - 1 - k}); break;
    }
  }
  return out;
}

std::string_view to_string(FixedPrefix prefix) {
  switch (prefix) {
    case FixedPrefix::none: return "none";
    case FixedPrefix::first_row: return "first_row";
    case FixedPrefix::first_row_and_column: return "first_row_and_column";
    case FixedPrefix::custom: return "custom";
  }
  return "?";
}

std::uint64_t FillPlan::hash() const {
  // FNV-1a, 64 bit.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xFF;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(n()));
  mix((cs.main_diagonal ? 1U : 0U) | (cs.anti_diagonal ? 2U : 0U) | (cs.vertical_symmetry ? 4U : 0U));
  for (int c = 0; c < order.cells(); ++c)
    if (fixed.test(static_cast<std::size_t>(c))) mix(static_cast<std::uint64_t>(c));
  mix(steps.size());
  for (const PlanStep& s : steps) {
    std::uint64_t v = static_cast<std::uint64_t>(s.kind) | (static_cast<std::uint64_t>(s.cell.row) << 8) |
                      (static_cast<std::uint64_t>(s.cell.col) << 16);
    if (s.forcing_unit) {
      v |= (static_cast<std::uint64_t>(s.forcing_unit->kind) + 1) << 24;
      v |= static_cast<std::uint64_t>(s.forcing_unit->index) << 32;
    }
    v |= (s.via_mirror ? 1ULL : 0ULL) << 40;
    v |= (s.lookahead_after ? 1ULL : 0ULL) << 41;
    mix(v);
  }
  mix(boundary);
  if (lookahead_window) {
    mix(static_cast<std::uint64_t>(lookahead_window->first));
    mix(static_cast<std::uint64_t>(lookahead_window->second));
  }
  return h;
}

std::string FillPlan::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

SquareGrid FillPlan::standard_seed() const {
  if (fixed_prefix == FixedPrefix::custom) throw Error("plan with custom fixed cells has no standard seed");
  if (fixed_prefix == FixedPrefix::none) return SquareGrid(order);
  return SquareGrid::with_fixed_first_row(order, fixed_prefix == FixedPrefix::first_row_and_column);
}

CellSet fixed_cells(Order order, FixedPrefix prefix) {
  const int n = order.n();
  CellSet fixed;
  if (prefix == FixedPrefix::custom || prefix == FixedPrefix::none) return fixed;
  for (int j = 0; j < n; ++j) fixed.set(static_cast<std::size_t>(j));
  if (prefix == FixedPrefix::first_row_and_column)
    for (int i = 0; i < n; ++i) fixed.set(static_cast<std::size_t>(i * n));
  return fixed;
}

namespace {

class Planner {
 public:
  Planner(Order order, const ConstraintSet& cs, const CellSet& fixed)
      : order_(order), n_(order.n()), cs_(cs), sym_(cs.vertical_symmetry) {
    check_config(order, cs);
    for (int c = 0; c < order.cells(); ++c) {
      if (!fixed.test(static_cast<std::size_t>(c))) continue;
      const Cell cell = cell_at(n_, c);
      if (sym_ && !fixed.test(static_cast<std::size_t>(cell_index(n_, mirror(cell))))) {
        throw Error("fixed cells must be closed under the vertical mirror");
      }
      mark(cell);
    }
  }

  FillPlan run(FixedPrefix label, const CellSet& fixed, const std::vector<CellSet>& stages) {
    FillPlan plan;
    plan.order = order_;
    plan.cs = cs_;
    plan.fixed_prefix = label;
    plan.fixed = fixed;

    CellSet shape;
    for (const CellSet& s : stages) shape |= s;
    restrict_ = stages.empty() ? std::nullopt : std::optional<CellSet>(shape);
    scan_all_units();

    std::size_t stage = 0;
    while (true) {
      while (!queue_.empty()) {
        const Pending p = queue_.front();
        queue_.pop_front();
        PlanStep step;
        step.kind = StepKind::forced;
        step.cell = p.cell;
        step.forcing_unit = p.unit;
        step.via_mirror = p.via_mirror;
        plan.steps.push_back(step);
        assign(p.cell);
      }
      while (stage < stages.size() && !has_open_cell(stages[stage])) ++stage;
      if (restrict_ && stage == stages.size()) {
        plan.boundary = plan.steps.size();
        restrict_.reset();
        scan_all_units();
        continue;
      }
      const std::optional<Cell> next = select(stage < stages.size() ? &stages[stage] : nullptr);
      if (!next) break;
      PlanStep step;
      step.cell = *next;
      plan.steps.push_back(step);
      assign(*next);
    }
    return plan;
  }

 private:
  struct Pending {
    Cell cell;
    Unit unit;
    bool via_mirror;
  };

  Cell mirror(Cell c) const { return {c.row, n_ - 1 - c.col}; }
  bool planned(Cell c) const { return !sym_ || c.col < n_ / 2; }
  bool is_assigned(Cell c) const { return assigned_.test(idx(c)); }
  std::size_t idx(Cell c) const { return static_cast<std::size_t>(cell_index(n_, c)); }

  void mark(Cell c) {
    if (assigned_.test(idx(c))) return;
    assigned_.set(idx(c));
    ++row_count_[static_cast<std::size_t>(c.row)];
    ++col_count_[static_cast<std::size_t>(c.col)];
    if (c.row == c.col) ++md_count_;
    if (c.row + c.col == n_ - 1) ++ad_count_;
  }

  std::vector<Unit> units_of(Cell c) const {
    std::vector<Unit> out{{Unit::Kind::row, c.row}, {Unit::Kind::column, c.col}};
    if (cs_.main_diagonal && c.row == c.col) out.push_back({Unit::Kind::main_diagonal, 0});
    if (cs_.anti_diagonal && c.row + c.col == n_ - 1) out.push_back({Unit::Kind::anti_diagonal, 0});
    return out;
  }

  int count(const Unit& u) const {
    switch (u.kind) {
      case Unit::Kind::row: return row_count_[static_cast<std::size_t>(u.index)];
      case Unit::Kind::column: return col_count_[static_cast<std::size_t>(u.index)];
      case Unit::Kind::main_diagonal: return md_count_;
      case Unit::Kind::anti_diagonal: return ad_count_;
    }
    return 0;
  }

  void assign(Cell c) {
    mark(c);
    std::vector<Unit> touched = units_of(c);
    if (sym_) {
      const Cell m = mirror(c);
      mark(m);
      for (const Unit& u : units_of(m))
        if (std::find(touched.begin(), touched.end(), u) == touched.end()) touched.push_back(u);
    }
    for (const Unit& u : touched) check_unit(u);
  }

  void check_unit(const Unit& u) {
    if (count(u) != n_ - 1) return;
    for (const Cell& c : unit_cells(order_, u)) {
      if (is_assigned(c)) continue;
      const bool via_mirror = !planned(c);
      const Cell target = via_mirror ? mirror(c) : c;
      if (restrict_ && !restrict_->test(idx(target))) return;
      for (const Pending& p : queue_)
        if (p.cell == target) return;
      queue_.push_back({target, u, via_mirror});
      return;
    }
  }

  void scan_all_units() {
    for (int i = 0; i < n_; ++i) check_unit({Unit::Kind::row, i});
    for (int j = 0; j < n_; ++j) check_unit({Unit::Kind::column, j});
    if (cs_.main_diagonal) check_unit({Unit::Kind::main_diagonal, 0});
    if (cs_.anti_diagonal) check_unit({Unit::Kind::anti_diagonal, 0});
  }

  bool has_open_cell(const CellSet& set) const {
    for (int c = 0; c < order_.cells(); ++c) {
      const Cell cell = cell_at(n_, c);
      if (set.test(static_cast<std::size_t>(c)) && planned(cell) && !is_assigned(cell)) return true;
    }
    return false;
  }

  int score(Cell c) const {
    int v = row_count_[static_cast<std::size_t>(c.row)] + col_count_[static_cast<std::size_t>(c.col)];
    if (cs_.main_diagonal && c.row == c.col) v += md_count_;
    if (cs_.anti_diagonal && c.row + c.col == n_ - 1) v += ad_count_;
    return v;
  }

  std::optional<Cell> select(const CellSet* stage) const {
    std::optional<Cell> best;
    int best_score = -1;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        const Cell c{i, j};
        if (!planned(c) || is_assigned(c)) continue;
        if (stage && !stage->test(idx(c))) continue;
        const int v = score(c);
        if (v > best_score) {
          best_score = v;
          best = c;
        }
      }
    }
    return best;
  }

  Order order_;
  int n_;
  ConstraintSet cs_;
  bool sym_;
  CellSet assigned_;
  std::array<int, kMaxOrder> row_count_{};
  std::array<int, kMaxOrder> col_count_{};
  int md_count_ = 0;
  int ad_count_ = 0;
  std::optional<CellSet> restrict_;
  std::deque<Pending> queue_;
};

}  // namespace

FillPlan plan_cells(Order order, const ConstraintSet& cs, FixedPrefix label, const CellSet& fixed,
                    const std::vector<CellSet>& stages) {
  Planner planner(order, cs, fixed);
  return planner.run(label, fixed, stages);
}

FillPlan compute_plan(Order order, const ConstraintSet& cs, FixedPrefix fixed_prefix) {
  if (fixed_prefix == FixedPrefix::custom) throw Error("compute_plan needs a standard fixed prefix");
  return plan_cells(order, cs, fixed_prefix, fixed_cells(order, fixed_prefix));
}

FillPlan row_major_plan(Order order, const ConstraintSet& cs, FixedPrefix label, const CellSet& fixed) {
  check_config(order, cs);
  const int n = order.n();
  FillPlan plan;
  plan.order = order;
  plan.cs = cs;
  plan.fixed_prefix = label;
  plan.fixed = fixed;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (fixed.test(static_cast<std::size_t>(i * n + j))) continue;
      if (cs.vertical_symmetry && j >= n / 2) continue;
      PlanStep step;
      step.cell = {i, j};
      plan.steps.push_back(step);
    }
  }
  return plan;
}

namespace {

bool shares_unit(const FillPlan& plan, Cell a, Cell b) {
  const int n = plan.n();
  if (a.row == b.row || a.col == b.col) return true;
  if (plan.cs.main_diagonal && a.row == a.col && b.row == b.col) return true;
  if (plan.cs.anti_diagonal && a.row + a.col == n - 1 && b.row + b.col == n - 1) return true;
  return false;
}

}  // namespace

FillPlan place_lookahead(FillPlan plan, int first, int last) {
  if (first > last) return plan;
  const int size = static_cast<int>(plan.steps.size());
  if (first < 1 || last > size) {
    throw Error("lookahead window " + std::to_string(first) + ".." + std::to_string(last) +
                " outside steps 1.." + std::to_string(size));
  }
  const int n = plan.n();
  for (int s = first - 1; s < last; ++s) {
    PlanStep& step = plan.steps[static_cast<std::size_t>(s)];
    step.lookahead_after = true;
    step.watched.clear();
    const Cell c = step.cell;
    const Cell m{c.row, n - 1 - c.col};
    for (std::size_t t = static_cast<std::size_t>(s) + 1; t < plan.steps.size(); ++t) {
      const Cell w = plan.steps[t].cell;
      bool related = shares_unit(plan, c, w);
      if (plan.cs.vertical_symmetry) {
        const Cell wm{w.row, n - 1 - w.col};
        related = related || shares_unit(plan, m, w) || shares_unit(plan, c, wm) || shares_unit(plan, m, wm);
      }
      if (related) step.watched.push_back(w);
    }
  }
  plan.lookahead_window = std::make_pair(first, last);
  return plan;
}

FillPlan default_plan(Order order, const ConstraintSet& cs) {
  FillPlan plan = compute_plan(order, cs, FixedPrefix::first_row);
  if (order.n() == 9 && cs == ConstraintSet::dls()) plan = place_lookahead(std::move(plan), 51, 60);
  return plan;
}

std::string format_plan(const FillPlan& plan) {
  std::ostringstream out;
  for (std::size_t s = 0; s < plan.steps.size(); ++s) {
    const PlanStep& step = plan.steps[s];
    out << (s + 1) << ' ' << (step.kind == StepKind::branch ? "branch" : "forced") << ' ' << step.cell.row << ' '
        << step.cell.col;
    if (step.forcing_unit) {
      out << ' ' << to_string(*step.forcing_unit);
      if (step.via_mirror) out << "/mirror";
    }
    if (step.lookahead_after) out << " LA";
    out << '\n';
  }
  return out.str();
}

std::string format_plan_grid(const FillPlan& plan) {
  const int n = plan.n();
  std::vector<std::string> text(static_cast<std::size_t>(n * n), "-");
  for (std::size_t s = 0; s < plan.steps.size(); ++s) {
    const Cell c = plan.steps[s].cell;
    text[static_cast<std::size_t>(cell_index(n, c))] = std::to_string(s + 1);
    if (plan.cs.vertical_symmetry) text[static_cast<std::size_t>(c.row * n + n - 1 - c.col)] = "~";
  }
  std::size_t width = 1;
  for (const auto& t : text) width = std::max(width, t.size());
  std::string out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::string& t = text[static_cast<std::size_t>(i * n + j)];
      if (j) out += ' ';
      out += std::string(width - t.size(), ' ') + t;
    }
    out += '\n';
  }
  return out;
}

std::optional<std::string> check_plan(const FillPlan& plan) {
  const int n = plan.n();
  const bool sym = plan.cs.vertical_symmetry;
  CellSet assigned;
  auto mark = [&](Cell c) {
    assigned.set(static_cast<std::size_t>(cell_index(n, c)));
    if (sym) assigned.set(static_cast<std::size_t>(c.row * n + n - 1 - c.col));
  };
  for (int c = 0; c < plan.order.cells(); ++c)
    if (plan.fixed.test(static_cast<std::size_t>(c))) mark(cell_at(n, c));

  for (std::size_t s = 0; s < plan.steps.size(); ++s) {
    const PlanStep& step = plan.steps[s];
    const Cell c = step.cell;
    if (c.row < 0 || c.row >= n || c.col < 0 || c.col >= n) return "step " + std::to_string(s + 1) + " off grid";
    if (sym && c.col >= n / 2) return "step " + std::to_string(s + 1) + " plans a right-half cell";
    if (assigned.test(static_cast<std::size_t>(cell_index(n, c))))
      return "step " + std::to_string(s + 1) + " repeats an assigned cell";
    if (step.kind == StepKind::forced) {
      if (!step.forcing_unit) return "forced step " + std::to_string(s + 1) + " without a unit";
      int have = 0;
      bool contains = false;
      const Cell target = step.via_mirror ? Cell{c.row, n - 1 - c.col} : c;
      for (const Cell& u : unit_cells(plan.order, *step.forcing_unit)) {
        if (assigned.test(static_cast<std::size_t>(cell_index(n, u)))) ++have;
        if (u == target) contains = true;
      }
      if (!contains || have != n - 1)
        return "forced step " + std::to_string(s + 1) + " unit does not hold n-1 assigned cells";
    }
    mark(c);
  }
  for (int c = 0; c < plan.order.cells(); ++c)
    if (!assigned.test(static_cast<std::size_t>(c))) return "cell " + std::to_string(c) + " never assigned";
  return std::nullopt;
}

}  // namespace dlsenum
