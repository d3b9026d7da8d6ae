#include <gtest/gtest.h>

#include "dlsenum/square.hpp"
#include "test_util.hpp"

using namespace dlsenum;

namespace {

bool has_kind(const std::vector<Violation>& v, Violation::Kind k) {
  for (const auto& x : v)
    if (x.kind == k) return true;
  return false;
}

}  // namespace

TEST(Order, Bounds) {
  EXPECT_THROW(Order(0), Error);
  EXPECT_THROW(Order(17), Error);
  EXPECT_EQ(Order(9).all_symbols(), 0x1FFU);
  EXPECT_EQ(Order(16).all_symbols(), 0xFFFFU);
  EXPECT_EQ(Order(9).half(), 4);
}

TEST(U128, RoundTrip) {
  const u128 big = factorial(16) * factorial(10);
  EXPECT_EQ(parse_u128(to_string(big)), big);
  EXPECT_EQ(to_string(factorial(8)), "40320");
  EXPECT_EQ(to_string(u128{0}), "0");
  EXPECT_THROW(parse_u128("340282366920938463463374607431768211456"), Error);
  EXPECT_THROW(parse_u128("12a"), Error);
}

TEST(ConstraintSet, Codes) {
  EXPECT_EQ(ConstraintSet::from_code("vsdls"), ConstraintSet::vsdls());
  EXPECT_EQ(ConstraintSet::dls().code(), "dls");
  EXPECT_THROW(ConstraintSet::from_code("x"), Error);
  EXPECT_THROW(check_config(Order(9), ConstraintSet::vsdls()), Error);
  EXPECT_NO_THROW(check_config(Order(10), ConstraintSet::vsdls()));
  ConstraintSet bad{false, false, true};
  EXPECT_THROW(check_config(Order(10), bad), Error);
}

TEST(Validate, DiagonalLatinSquareOfOrderFour) {
  const SquareGrid g = parse_grid("0 1 2 3\n3 2 1 0\n1 0 3 2\n2 3 0 1\n");
  EXPECT_TRUE(validate(g, ConstraintSet::dls(), false).empty());
}

TEST(Validate, SingleCell) { EXPECT_TRUE(validate(parse_grid("0"), ConstraintSet::dls(), false).empty()); }

TEST(Validate, RepeatedMainDiagonal) {
  const SquareGrid g = parse_grid("0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n");
  const auto v = validate(g, ConstraintSet::dls(), false);
  EXPECT_TRUE(has_kind(v, Violation::Kind::main_diagonal));
  EXPECT_FALSE(has_kind(v, Violation::Kind::row));
  EXPECT_FALSE(has_kind(v, Violation::Kind::column));
  EXPECT_TRUE(validate(g, ConstraintSet::ls(), false).empty());
}

TEST(Validate, ReportsEveryViolation) {
  const SquareGrid g = parse_grid("0 0\n0 0\n");
  const auto v = validate(g, ConstraintSet::dls(), false);
  EXPECT_TRUE(has_kind(v, Violation::Kind::row));
  EXPECT_TRUE(has_kind(v, Violation::Kind::column));
  EXPECT_TRUE(has_kind(v, Violation::Kind::main_diagonal));
  EXPECT_TRUE(has_kind(v, Violation::Kind::anti_diagonal));
  EXPECT_GE(v.size(), 4U);
}

TEST(Validate, PartialAndEmpty) {
  const SquareGrid g = parse_grid("0 1 2 3\n_ _ _ _\n_ _ _ _\n_ _ _ _\n");
  EXPECT_TRUE(validate(g, ConstraintSet::dls(), true).empty());
  const auto v = validate(g, ConstraintSet::dls(), false);
  EXPECT_EQ(v.size(), 12U);
  EXPECT_TRUE(has_kind(v, Violation::Kind::empty_cell));
}

TEST(Validate, VerticalSymmetry) {
  // symmetric: x[i][n-1-j] == n-1-x[i][j]
  const SquareGrid good = parse_grid("0 1 2 3\n2 3 0 1\n3 2 1 0\n1 0 3 2\n");
  EXPECT_TRUE(validate(good, ConstraintSet::vsdls(), false).empty());
  const SquareGrid cyclic = parse_grid("0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n");
  const auto v = validate(cyclic, ConstraintSet::vsdls(), false);
  EXPECT_TRUE(has_kind(v, Violation::Kind::vertical_symmetry));
}

TEST(Normalize, IdentityOnNormalized) {
  const SquareGrid g = parse_grid("0 1 2 3\n3 2 1 0\n1 0 3 2\n2 3 0 1\n");
  EXPECT_EQ(normalize(g), g);
}

TEST(Normalize, SwapRename) { EXPECT_EQ(normalize(parse_grid("1 0\n0 1")), parse_grid("0 1\n1 0")); }

TEST(Normalize, Idempotent) {
  const SquareGrid g = parse_grid("2 0 1\n_ 1 _\n1 _ 0\n");
  EXPECT_EQ(normalize(normalize(g)), normalize(g));
  EXPECT_EQ(normalize(g).at(1, 1), 2);
  EXPECT_TRUE(normalize(g).empty_at(1, 0));
}

TEST(Normalize, Errors) {
  EXPECT_THROW(normalize(parse_grid("0 0\n1 1")), Error);
  EXPECT_THROW(normalize(parse_grid("_ 0\n1 1")), Error);
}

TEST(Mirror, Columns) {
  EXPECT_EQ(mirror_column(Order(10), 0), 9);
  EXPECT_EQ(mirror_column(Order(10), 4), 5);
  EXPECT_EQ(mirror_column(Order(9), 4), 4);
}

TEST(GridText, RoundTrip) {
  const std::string text = test::read_data("hourglass10_left.txt");
  const SquareGrid g = parse_grid(text);
  EXPECT_EQ(g.n(), 10);
  EXPECT_EQ(parse_grid(format_grid(g)), g);
  EXPECT_EQ(g.at(1, 1), 4);
  EXPECT_TRUE(g.empty_at(1, 0));
  EXPECT_THROW(parse_grid("0 1\n1"), Error);
  EXPECT_THROW(parse_grid("0 2\n1 0"), Error);
  EXPECT_THROW(parse_grid(""), Error);
}

TEST(Grid, FixedFirstRow) {
  const SquareGrid g = SquareGrid::with_fixed_first_row(Order(5), true);
  for (int j = 0; j < 5; ++j) EXPECT_EQ(g.at(0, j), j);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(g.at(i, 0), i);
  EXPECT_EQ(g.assigned_cells().count(), 9U);
  EXPECT_FALSE(g.complete());
}
