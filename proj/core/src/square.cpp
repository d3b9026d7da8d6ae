#include "dlsenum/square.hpp"

#include <sstream>

namespace dlsenum {

std::string ConstraintSet::code() const {
  if (*this == ls()) return "ls";
  if (*this == dls()) return "dls";
  if (*this == vsdls()) return "vsdls";
  std::string out = "ls";
  if (main_diagonal) out += "+md";
  if (anti_diagonal) out += "+ad";
  if (vertical_symmetry) out += "+vs";
  return out;
}

ConstraintSet ConstraintSet::from_code(std::string_view code) {
  if (code == "ls") return ls();
  if (code == "dls") return dls();
  if (code == "vsdls") return vsdls();
  throw Error("unknown constraint set '" + std::string(code) + "' (expected ls, dls or vsdls)");
}

void check_config(Order order, const ConstraintSet& cs) {
  if (!cs.vertical_symmetry) return;
  if (!cs.has_diagonals()) throw Error("vertical symmetry requires both diagonal constraints");
  if (order.n() % 2 != 0) {
    throw Error("vertical symmetry requires an even order (the middle column cannot hold distinct symbols)");
  }
}

bool SquareGrid::complete() const {
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      if (empty_at(i, j)) return false;
  return true;
}

CellSet SquareGrid::assigned_cells() const {
  CellSet out;
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      if (!empty_at(i, j)) out.set(static_cast<std::size_t>(i * n() + j));
  return out;
}

SquareGrid SquareGrid::with_fixed_first_row(Order order, bool first_column_too) {
  SquareGrid g(order);
  for (int j = 0; j < order.n(); ++j) g.set(0, j, static_cast<Symbol>(j));
  if (first_column_too)
    for (int i = 0; i < order.n(); ++i) g.set(i, 0, static_cast<Symbol>(i));
  return g;
}

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::row: return "row";
    case Violation::Kind::column: return "column";
    case Violation::Kind::main_diagonal: return "main_diagonal";
    case Violation::Kind::anti_diagonal: return "anti_diagonal";
    case Violation::Kind::vertical_symmetry: return "vertical_symmetry";
    case Violation::Kind::symbol_range: return "symbol_range";
    case Violation::Kind::empty_cell: return "empty_cell";
  }
  return "unknown";
}

namespace {

// Reports repeated symbols along one unit given as a cell sequence.
template <typename CellOf>
void check_unit(const SquareGrid& g, Violation::Kind kind, CellOf cell_of, std::vector<Violation>& out) {
  Mask seen = 0;
  for (int k = 0; k < g.n(); ++k) {
    const Cell c = cell_of(k);
    const Symbol v = g.at(c);
    if (v == kEmpty || v >= g.n()) continue;
    if (seen & symbol_bit(v)) out.push_back({kind, c});
    seen |= symbol_bit(v);
  }
}

}  // namespace

std::vector<Violation> validate(const SquareGrid& g, const ConstraintSet& cs, bool allow_partial) {
  check_config(g.order(), cs);
  const int n = g.n();
  std::vector<Violation> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Symbol v = g.at(i, j);
      if (v == kEmpty) {
        if (!allow_partial) out.push_back({Violation::Kind::empty_cell, {i, j}});
      } else if (v >= n) {
        out.push_back({Violation::Kind::symbol_range, {i, j}});
      }
    }
  }
  for (int i = 0; i < n; ++i) check_unit(g, Violation::Kind::row, [i](int k) { return Cell{i, k}; }, out);
  for (int j = 0; j < n; ++j) check_unit(g, Violation::Kind::column, [j](int k) { return Cell{k, j}; }, out);
  if (cs.main_diagonal) check_unit(g, Violation::Kind::main_diagonal, [](int k) { return Cell{k, k}; }, out);
  if (cs.anti_diagonal)
    check_unit(g, Violation::Kind::anti_diagonal, [n](int k) { return Cell{k, n - 1 - k}; }, out);
  if (cs.vertical_symmetry) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n / 2; ++j) {
        const Symbol a = g.at(i, j);
        const Symbol b = g.at(i, n - 1 - j);
        if (a == kEmpty || b == kEmpty || a >= n || b >= n) continue;
        if (a + b != n - 1) out.push_back({Violation::Kind::vertical_symmetry, {i, j}});
      }
    }
  }
  return out;
}

SquareGrid normalize(const SquareGrid& g) {
  const int n = g.n();
  std::array<Symbol, kMaxOrder> rename{};
  Mask seen = 0;
  for (int j = 0; j < n; ++j) {
    const Symbol v = g.at(0, j);
    if (v == kEmpty) throw Error("normalize: first row has an empty cell");
    if (v >= n) throw Error("normalize: symbol out of range in first row");
    if (seen & symbol_bit(v)) throw Error("normalize: first row has a repeated symbol");
    seen |= symbol_bit(v);
    rename[v] = static_cast<Symbol>(j);
  }
  SquareGrid out(g.order());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Symbol v = g.at(i, j);
      if (v == kEmpty) continue;
      if (v >= n) throw Error("normalize: symbol out of range");
      out.set(i, j, rename[v]);
    }
  }
  return out;
}

SquareGrid parse_grid(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream tokens(line);
    std::vector<std::string> row;
    std::string tok;
    while (tokens >> tok) row.push_back(tok);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error("grid text is empty");
  const Order order(static_cast<int>(rows.size()));
  SquareGrid g(order);
  for (int i = 0; i < order.n(); ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != order.n()) {
      throw Error("grid line " + std::to_string(i + 1) + " has " +
                  std::to_string(rows[static_cast<std::size_t>(i)].size()) + " tokens, expected " +
                  std::to_string(order.n()));
    }
    for (int j = 0; j < order.n(); ++j) {
      const std::string& tok = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (tok == "_") continue;
      const u128 v = parse_u128(tok);
      if (v >= static_cast<unsigned>(order.n())) {
        throw Error("grid line " + std::to_string(i + 1) + ": symbol " + tok + " out of range");
      }
      g.set(i, j, static_cast<Symbol>(v));
    }
  }
  return g;
}

std::string format_grid(const SquareGrid& g) {
  std::string out;
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.n(); ++j) {
      if (j) out += ' ';
      out += g.empty_at(i, j) ? std::string("_") : std::to_string(g.at(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace dlsenum
