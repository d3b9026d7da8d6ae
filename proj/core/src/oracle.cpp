#include "dlsenum/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dlsenum {

namespace {

void check_fixed(FixedPrefix fixed) {
  if (fixed == FixedPrefix::custom) throw Error("the oracle supports none, first_row and first_row_and_column");
}

struct PermutationSearch {
  int n;
  ConstraintSet cs;
  FixedPrefix fixed;
  std::vector<std::vector<Symbol>> perms;
  std::vector<const std::vector<Symbol>*> rows;
  std::uint64_t count = 0;

  bool fits(const std::vector<Symbol>& p, int r) const {
    if (fixed == FixedPrefix::first_row_and_column && p[0] != r) return false;
    for (int q = 0; q < r; ++q) {
      const auto& prev = *rows[static_cast<std::size_t>(q)];
      for (int j = 0; j < n; ++j)
        if (prev[static_cast<std::size_t>(j)] == p[static_cast<std::size_t>(j)]) return false;
      if (cs.main_diagonal && prev[static_cast<std::size_t>(q)] == p[static_cast<std::size_t>(r)]) return false;
      if (cs.anti_diagonal && prev[static_cast<std::size_t>(n - 1 - q)] == p[static_cast<std::size_t>(n - 1 - r)])
        return false;
    }
    return true;
  }

  void finish() {
    SquareGrid g{Order(n)};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g.set(i, j, (*rows[static_cast<std::size_t>(i)])[static_cast<std::size_t>(j)]);
    if (validate(g, cs, false).empty()) ++count;
  }

  void search(int r) {
    if (r == n) {
      finish();
      return;
    }
    for (const auto& p : perms) {
      if (r == 0 && fixed != FixedPrefix::none && p != perms.front()) continue;
      if (!fits(p, r)) continue;
      rows[static_cast<std::size_t>(r)] = &p;
      search(r + 1);
    }
  }
};

}  // namespace

std::uint64_t oracle_count(Order order, const ConstraintSet& cs, FixedPrefix fixed) {
  check_fixed(fixed);
  check_config(order, cs);
  const int n = order.n();
  const bool diag = cs.main_diagonal || cs.anti_diagonal;
  if (n > 7 || (diag && n > 6)) throw Error("order beyond the oracle limit");
  if (!diag && n == 7 && fixed != FixedPrefix::first_row_and_column) {
    throw Error("order 7 LS oracle needs the first row and column fixed");
  }
  if (!diag && n == 6 && fixed == FixedPrefix::none) throw Error("order 6 LS oracle needs the first row fixed");
  PermutationSearch s{n, cs, fixed, {}, std::vector<const std::vector<Symbol>*>(static_cast<std::size_t>(n)), 0};
  std::vector<Symbol> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), Symbol{0});
  do s.perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  s.search(0);
  return s.count;
}

std::uint64_t brute_force_count(Order order, const ConstraintSet& cs, FixedPrefix fixed) {
  check_fixed(fixed);
  check_config(order, cs);
  const int n = order.n();
  SquareGrid g = SquareGrid::with_fixed_first_row(order, fixed == FixedPrefix::first_row_and_column);
  if (fixed == FixedPrefix::none) g = SquareGrid(order);
  std::vector<Cell> free;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.empty_at(i, j)) free.push_back({i, j});
  if (static_cast<double>(free.size()) * std::log2(static_cast<double>(n)) > 25.0) {
    throw Error("too many fillings for the brute-force oracle");
  }
  for (const Cell& c : free) g.set(c, 0);
  std::uint64_t count = 0;
  while (true) {
    if (validate(g, cs, false).empty()) ++count;
    std::size_t k = 0;
    for (; k < free.size(); ++k) {
      const Symbol v = g.at(free[k]);
      if (v + 1 < n) {
        g.set(free[k], static_cast<Symbol>(v + 1));
        break;
      }
      g.set(free[k], 0);
    }
    if (k == free.size()) break;
  }
  return count;
}

}  // namespace dlsenum
