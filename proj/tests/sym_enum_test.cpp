#include <gtest/gtest.h>

#include <set>

#include "dlsenum/sym_enum.hpp"
#include "dlsenum/workunits.hpp"

using namespace dlsenum;

namespace {

u128 plain(int n, const ConstraintSet& cs) { return Enumerator(default_plan(Order(n), cs)).enumerate().total; }

std::size_t shape_prefix(const FillPlan& plan) {
  const CellSet shape = hourglass_shape(plan.order);
  std::size_t k = 0;
  while (k < plan.steps.size() && shape.test(static_cast<std::size_t>(cell_index(plan.n(), plan.steps[k].cell)))) ++k;
  return k;
}

}  // namespace

TEST(SymEnum, MatchesPlainCounts) {
  for (int n = 4; n <= 7; ++n) {
    const auto r = enumerate_sym(Order(n), ConstraintSet::dls());
    EXPECT_EQ(r.total, plain(n, ConstraintSet::dls())) << n;
    EXPECT_EQ(r.multiplicity_sum, r.hourglass_seen);
    EXPECT_LE(r.canonical, r.hourglass_seen);
  }
  EXPECT_EQ(enumerate_sym(Order(4), ConstraintSet::dls()).total, 2U);
  EXPECT_EQ(enumerate_sym(Order(5), ConstraintSet::dls()).total, 8U);
  EXPECT_EQ(enumerate_sym(Order(4), ConstraintSet::vsdls()).total, 2U);
  EXPECT_EQ(enumerate_sym(Order(6), ConstraintSet::vsdls()).total, 64U);
}

TEST(SymEnum, SlicesAddUp) {
  const auto full = enumerate_sym(Order(7), ConstraintSet::dls());
  u128 total = 0;
  std::uint64_t canonical = 0, seen = 0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto r = enumerate_sym_slice(Order(7), ConstraintSet::dls(), 4, s, 5);
    total += r.total;
    canonical += r.canonical;
    seen += r.hourglass_seen;
  }
  EXPECT_EQ(total, full.total);
  EXPECT_EQ(canonical, full.canonical);
  EXPECT_EQ(seen, full.hourglass_seen);
  EXPECT_THROW(enumerate_sym_slice(Order(7), ConstraintSet::dls(), 4, 5, 5), Error);
}

TEST(SymEnum, RejectsPlainLatin) { EXPECT_THROW(enumerate_sym(Order(5), ConstraintSet::ls()), Error); }

TEST(SymEnumProperty, HourglassPartition) {
  for (int n : {5, 6, 7}) {
    const Order o(n);
    const HourglassGroup group(o, ConstraintSet::dls());
    const FillPlan plan = hourglass_plan(o, ConstraintSet::dls());
    Enumerator e(plan);
    std::set<SquareGrid> designs;
    e.for_each_extension(plan.boundary, [&] { designs.insert(extract_hourglass(e.grid()).grid()); });
    ASSERT_EQ(designs.size(), e.count_extensions(plan.boundary));

    std::uint64_t multiplicity_sum = 0, canonical = 0;
    std::set<SquareGrid> covered;
    for (const auto& h : designs) {
      const auto r = group.canonize(h);
      if (!r.is_canonical) continue;
      ++canonical;
      multiplicity_sum += r.multiplicity;
      for (const auto& t : group.transforms()) {
        const SquareGrid img = apply(t, h);
        EXPECT_TRUE(designs.count(img));
        covered.insert(img);
      }
    }
    EXPECT_EQ(multiplicity_sum, designs.size()) << n;
    EXPECT_EQ(covered.size(), designs.size()) << n;

    const auto report = enumerate_sym(o, ConstraintSet::dls());
    EXPECT_EQ(report.hourglass_seen, designs.size());
    EXPECT_EQ(report.canonical, canonical);
  }
}

TEST(SymWorkunits, SameCountsAsPlain) {
  for (auto [n, cs] : {std::pair{7, ConstraintSet::dls()}, std::pair{6, ConstraintSet::vsdls()},
                       std::pair{6, ConstraintSet::dls()}}) {
    const FillPlan plan = default_plan(Order(n), cs);
    const std::size_t k = std::min<std::size_t>(shape_prefix(plan), 4);
    ASSERT_GE(k, 1U);
    SymWorkunitCounter sym(plan);
    Enumerator e(plan);
    u128 total = 0;
    for (const auto& wu : generate_workunits(plan, k)) {
      const u128 a = e.enumerate(wu.symbols).total;
      std::uint64_t nodes = 0;
      const u128 b = sym.count(wu.symbols, &nodes);
      EXPECT_EQ(a, b) << n << ' ' << cs.code() << " id " << wu.id;
      total += b;
    }
    EXPECT_EQ(total, plain(n, cs));
  }
}

TEST(SymWorkunits, PrefixMustStayInShape) {
  const FillPlan plan = default_plan(Order(7), ConstraintSet::dls());
  const std::size_t k = shape_prefix(plan);
  ASSERT_LT(k, plan.steps.size());
  Enumerator e(plan);
  std::vector<Symbol> p;
  e.for_each_extension(k + 1, [&] {
    if (!p.empty()) return;
    for (std::size_t i = 0; i <= k; ++i) p.push_back(e.value_at(i));
  });
  SymWorkunitCounter sym(plan);
  EXPECT_THROW(sym.count(p), Error);
}

TEST(HourglassPlan, PrefixCountsMatchEngine) {
  // the n=8 hourglass space (22 192 248 designs) is covered by acceptance; n=7 here
  const FillPlan plan = hourglass_plan(Order(7), ConstraintSet::dls());
  Enumerator e(plan);
  EXPECT_EQ(e.count_extensions(plan.boundary), enumerate_sym(Order(7), ConstraintSet::dls()).hourglass_seen);
}
