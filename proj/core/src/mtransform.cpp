#include "dlsenum/mtransform.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dlsenum {

std::string_view to_string(Mirror m) {
  switch (m) {
    case Mirror::none: return "none";
    case Mirror::horizontal: return "horizontal";
    case Mirror::vertical: return "vertical";
    case Mirror::main_diag: return "main_diag";
    case Mirror::anti_diag: return "anti_diag";
  }
  return "unknown";
}

std::string MTransform::describe() const {
  std::ostringstream out;
  out << "m:" << to_string(mirror) << " s:" << std::hex << pair_swaps << std::dec << " p:";
  if (half_perm.empty()) out << "id";
  for (std::size_t k = 0; k < half_perm.size(); ++k) out << (k ? "," : "") << int(half_perm[k]);
  return out.str();
}

void check_transform(Order order, const MTransform& t) {
  const int m = order.half();
  if (m < 32 && (t.pair_swaps >> m) != 0) throw Error("transform swaps a pair outside 0.." + std::to_string(m - 1));
  if (t.half_perm.empty()) return;
  if (static_cast<int>(t.half_perm.size()) != m) throw Error("half permutation must have " + std::to_string(m) + " entries");
  std::uint32_t seen = 0;
  for (std::uint8_t p : t.half_perm) {
    if (p >= m || (seen >> p & 1U)) throw Error("half permutation is not a permutation of the pairs");
    seen |= 1U << p;
  }
}

namespace {

int map_index(int n, const MTransform& t, int x) {
  const int m = n / 2;
  int pair = -1;
  if (x < m) pair = x;
  else if (x >= n - m) pair = n - 1 - x;
  if (pair < 0) return x;  // middle of an odd order
  if (t.pair_swaps >> pair & 1U) x = n - 1 - x;
  if (t.half_perm.empty()) return x;
  const int to = t.half_perm[static_cast<std::size_t>(pair)];
  return x < m ? to : n - 1 - to;
}

Cell map_unchecked(int n, const MTransform& t, Cell c) {
  switch (t.mirror) {
    case Mirror::none: break;
    case Mirror::horizontal: c.row = n - 1 - c.row; break;
    case Mirror::vertical: c.col = n - 1 - c.col; break;
    case Mirror::main_diag: std::swap(c.row, c.col); break;
    case Mirror::anti_diag: c = {n - 1 - c.col, n - 1 - c.row}; break;
  }
  return {map_index(n, t, c.row), map_index(n, t, c.col)};
}

}  // namespace

Cell map_cell(Order order, const MTransform& t, Cell c) {
  check_transform(order, t);
  if (c.row < 0 || c.col < 0 || c.row >= order.n() || c.col >= order.n()) throw Error("cell outside the grid");
  return map_unchecked(order.n(), t, c);
}

SquareGrid permute(const MTransform& t, const SquareGrid& grid) {
  check_transform(grid.order(), t);
  const int n = grid.n();
  SquareGrid out(grid.order());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.set(map_unchecked(n, t, {i, j}), grid.at(i, j));
  return out;
}

SquareGrid apply(const MTransform& t, const SquareGrid& grid) { return normalize(permute(t, grid)); }

MTransform inverse(Order order, const MTransform& t) {
  check_transform(order, t);
  const int n = order.n();
  const int m = order.half();
  if (m > 7) throw Error("inverse: order too large");
  std::vector<std::uint8_t> perm(static_cast<std::size_t>(m));
  for (Mirror mir : {Mirror::none, Mirror::horizontal, Mirror::vertical, Mirror::main_diag, Mirror::anti_diag}) {
    for (std::uint32_t s = 0; s < (1U << m); ++s) {
      std::iota(perm.begin(), perm.end(), std::uint8_t{0});
      do {
        MTransform cand{mir, s, perm};
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
          for (int j = 0; j < n && ok; ++j) ok = map_unchecked(n, cand, map_unchecked(n, t, {i, j})) == Cell{i, j};
        if (ok) return cand;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  throw Error("inverse: no transform found");
}

u128 full_class_size_bound(Order order) {
  const int m = order.half();
  return u128{4} * (u128{1} << m) * factorial(m);
}

CellSet hourglass_shape(Order order) {
  const int n = order.n();
  CellSet s;
  for (int j = 0; j < n; ++j) {
    s.set(static_cast<std::size_t>(j));
    s.set(static_cast<std::size_t>((n - 1) * n + j));
  }
  for (int i = 0; i < n; ++i) {
    s.set(static_cast<std::size_t>(i * n + i));
    s.set(static_cast<std::size_t>(i * n + n - 1 - i));
  }
  return s;
}

HourglassDesign::HourglassDesign(SquareGrid grid, const ConstraintSet& cs) : grid_(std::move(grid)), cs_(cs) {
  if (!cs_.has_diagonals()) throw Error("hourglass designs need both diagonal constraints");
  if (grid_.assigned_cells() != hourglass_shape(grid_.order())) {
    throw Error("grid does not have the hourglass shape (first row, last row, both diagonals)");
  }
  const auto v = validate(grid_, cs_, true);
  if (!v.empty()) {
    throw Error("hourglass breaks the " + std::string(to_string(v.front().kind)) + " constraint at (" +
                std::to_string(v.front().cell.row) + "," + std::to_string(v.front().cell.col) + ")");
  }
}

HourglassDesign extract_hourglass(const SquareGrid& grid, const ConstraintSet& cs) {
  const CellSet shape = hourglass_shape(grid.order());
  SquareGrid out(grid.order());
  for (int c = 0; c < grid.order().cells(); ++c) {
    if (!shape.test(static_cast<std::size_t>(c))) continue;
    const Cell cell = cell_at(grid.n(), c);
    if (grid.at(cell) == kEmpty) {
      throw Error("hourglass cell (" + std::to_string(cell.row) + "," + std::to_string(cell.col) + ") is empty");
    }
    out.set(cell, grid.at(cell));
  }
  return HourglassDesign(out, cs);
}

HourglassGroup::HourglassGroup(Order order, const ConstraintSet& cs) : order_(order), cs_(cs) {
  if (!cs.has_diagonals()) throw Error("symmetry breaking needs both diagonal constraints");
  check_config(order, cs);
  const int n = order.n();
  const int m = order.half();

  std::vector<Mirror> mirrors{Mirror::none};
  if (!cs.vertical_symmetry) mirrors.push_back(Mirror::vertical);
  std::vector<std::uint8_t> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), std::uint8_t{0});
  for (Mirror mir : mirrors) {
    for (std::uint32_t s = 0; s < (1U << m); ++s) {
      std::iota(perm.begin(), perm.end(), std::uint8_t{0});
      do {
        transforms_.push_back({mir, s, perm});
      } while (m > 1 && std::next_permutation(perm.begin() + 1, perm.end()));
    }
  }

  const CellSet shape = hourglass_shape(order);
  for (int c = n; c < order.cells(); ++c) {
    if (!shape.test(static_cast<std::size_t>(c))) continue;
    const Cell cell = cell_at(n, c);
    slots_.push_back(static_cast<std::uint16_t>(cell.row * kMaxOrder + cell.col));
  }
  for (const MTransform& t : transforms_) {
    Map map;
    std::array<std::uint16_t, kMaxCells> from{};
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Cell to = map_unchecked(n, t, {i, j});
        from[static_cast<std::size_t>(to.row * kMaxOrder + to.col)] = static_cast<std::uint16_t>(i * kMaxOrder + j);
        if (to.row == 0) {
          map.source_row0 = i;
          map.column_of[static_cast<std::size_t>(j)] = static_cast<Symbol>(to.col);
        }
      }
    }
    for (std::uint16_t slot : slots_) map.source.push_back(from[slot]);
    maps_.push_back(std::move(map));
  }
}

namespace {

void require_normalized(const SquareGrid& g) {
  for (int j = 0; j < g.n(); ++j)
    if (g.at(0, j) != j) throw Error("hourglass first row must read 0..n-1");
}

}  // namespace

void HourglassGroup::build_image(const Map& map, const SquareGrid& g, Symbol* out) const {
  std::array<Symbol, kMaxOrder> rename{};
  for (int j = 0; j < order_.n(); ++j) rename[g.at(map.source_row0, j)] = map.column_of[static_cast<std::size_t>(j)];
  const Symbol* cells = g.data();
  for (std::size_t k = 0; k < slots_.size(); ++k) out[k] = rename[cells[map.source[k]]];
}

CanonizationResult HourglassGroup::canonize(const SquareGrid& g) const {
  if (g.order() != order_) throw Error("hourglass order does not match the group");
  require_normalized(g);
  const Symbol* cells = g.data();
  const std::size_t width = slots_.size();
  std::array<Symbol, kMaxOrder> rename{};
  for (const Map& map : maps_) {
    for (int j = 0; j < order_.n(); ++j) rename[g.at(map.source_row0, j)] = map.column_of[static_cast<std::size_t>(j)];
    for (std::size_t k = 0; k < width; ++k) {
      const Symbol a = rename[cells[map.source[k]]];
      const Symbol b = cells[slots_[k]];
      if (a == b) continue;
      if (a < b) return {false, 0};
      break;
    }
  }
  // Canonical: count distinct images.
  std::vector<Symbol> images(maps_.size() * width);
  for (std::size_t t = 0; t < maps_.size(); ++t) build_image(maps_[t], g, images.data() + t * width);
  std::vector<std::uint32_t> order(maps_.size());
  std::iota(order.begin(), order.end(), 0U);
  auto row = [&](std::uint32_t t) { return images.begin() + static_cast<std::ptrdiff_t>(t * width); };
  auto less = [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(row(a), row(a) + static_cast<std::ptrdiff_t>(width), row(b),
                                        row(b) + static_cast<std::ptrdiff_t>(width));
  };
  std::sort(order.begin(), order.end(), less);
  std::uint32_t distinct = order.empty() ? 0 : 1;
  for (std::size_t k = 1; k < order.size(); ++k)
    if (less(order[k - 1], order[k])) ++distinct;
  return {true, distinct};
}

SquareGrid HourglassGroup::canonical_form(const SquareGrid& g, std::uint32_t* multiplicity) const {
  if (g.order() != order_) throw Error("hourglass order does not match the group");
  const SquareGrid h = normalize(g);
  const std::size_t width = slots_.size();
  std::vector<std::vector<Symbol>> images;
  images.reserve(maps_.size());
  for (const Map& map : maps_) {
    std::vector<Symbol> img(width);
    build_image(map, h, img.data());
    images.push_back(std::move(img));
  }
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());
  if (multiplicity) *multiplicity = static_cast<std::uint32_t>(images.size());
  SquareGrid out(order_);
  for (int j = 0; j < order_.n(); ++j) out.set(0, j, static_cast<Symbol>(j));
  for (std::size_t k = 0; k < width; ++k) out.set(slots_[k] / kMaxOrder, slots_[k] % kMaxOrder, images.front()[k]);
  return out;
}

CanonizationResult canonize(const HourglassDesign& h, const HourglassGroup& g) {
  if (h.order() != g.order() || !(h.constraints() == g.constraints())) {
    throw Error("hourglass and group disagree on order or constraints");
  }
  return g.canonize(normalize(h.grid()));
}

}  // namespace dlsenum
