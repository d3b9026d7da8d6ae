#include <gtest/gtest.h>

#include "dlsenum/engine.hpp"
#include "dlsenum/oracle.hpp"
#include "dlsenum/sym_enum.hpp"

using namespace dlsenum;

TEST(Oracle, KnownValues) {
  EXPECT_EQ(oracle_count(Order(4), ConstraintSet::dls(), FixedPrefix::first_row), 2U);
  EXPECT_EQ(oracle_count(Order(5), ConstraintSet::ls(), FixedPrefix::first_row_and_column), 56U);
  EXPECT_EQ(oracle_count(Order(3), ConstraintSet::dls(), FixedPrefix::none), 0U);
  EXPECT_EQ(oracle_count(Order(1), ConstraintSet::dls(), FixedPrefix::none), 1U);
  EXPECT_EQ(oracle_count(Order(6), ConstraintSet::dls(), FixedPrefix::first_row), 128U);
  EXPECT_EQ(oracle_count(Order(6), ConstraintSet::vsdls(), FixedPrefix::first_row), 64U);
}

TEST(Oracle, BruteForceAgrees) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& cs : {ConstraintSet::ls(), ConstraintSet::dls()}) {
      EXPECT_EQ(brute_force_count(Order(n), cs, FixedPrefix::none), oracle_count(Order(n), cs, FixedPrefix::none));
    }
  }
  EXPECT_EQ(brute_force_count(Order(4), ConstraintSet::dls(), FixedPrefix::first_row), 2U);
  EXPECT_EQ(brute_force_count(Order(4), ConstraintSet::ls(), FixedPrefix::first_row), 24U);
  EXPECT_EQ(brute_force_count(Order(4), ConstraintSet::vsdls(), FixedPrefix::first_row), 2U);
  EXPECT_EQ(brute_force_count(Order(3), ConstraintSet::ls(), FixedPrefix::none), 12U);
}

TEST(Oracle, Limits) {
  EXPECT_THROW(oracle_count(Order(8), ConstraintSet::ls(), FixedPrefix::first_row_and_column), Error);
  EXPECT_THROW(oracle_count(Order(7), ConstraintSet::dls(), FixedPrefix::first_row), Error);
  EXPECT_THROW(oracle_count(Order(7), ConstraintSet::ls(), FixedPrefix::first_row), Error);
  EXPECT_THROW(brute_force_count(Order(5), ConstraintSet::ls(), FixedPrefix::first_row), Error);
}

TEST(OracleEquivalence, EnginesAgreeUpToOrderFive) {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& cs : {ConstraintSet::ls(), ConstraintSet::dls()}) {
      for (auto fp : {FixedPrefix::none, FixedPrefix::first_row, FixedPrefix::first_row_and_column}) {
        const std::uint64_t expected = oracle_count(Order(n), cs, fp);
        if (n > 1 && cs.has_diagonals() && fp == FixedPrefix::first_row_and_column) {
          // the anti-diagonal sees n-1 twice in the seed
          EXPECT_EQ(expected, 0U);
          EXPECT_THROW(Enumerator(compute_plan(Order(n), cs, fp)), Error);
          continue;
        }
        EXPECT_EQ(Enumerator(compute_plan(Order(n), cs, fp)).enumerate().total, expected)
            << n << ' ' << cs.code() << ' ' << to_string(fp);
        if (cs.has_diagonals() && fp == FixedPrefix::first_row) {
          EXPECT_EQ(enumerate_sym(Order(n), cs).total, expected) << n;
        }
      }
    }
  }
  const std::uint64_t vs4 = oracle_count(Order(4), ConstraintSet::vsdls(), FixedPrefix::first_row);
  EXPECT_EQ(vs4, 2U);
  EXPECT_EQ(Enumerator(default_plan(Order(4), ConstraintSet::vsdls())).enumerate().total, vs4);
  EXPECT_EQ(enumerate_sym(Order(4), ConstraintSet::vsdls()).total, vs4);
}
