#include <gtest/gtest.h>

#include <random>

#include "rulebasis/basis.hpp"
#include "rulebasis/error.hpp"
#include "rulebasis/miner.hpp"
#include "test_support.hpp"

using namespace rulebasis;
using rulebasis::testing::random_small_table;
using rulebasis::testing::t1;

namespace {

constexpr ColumnIndex kB = 9;

Rule rule(AttrSet x, std::size_t support = 1, ColumnIndex b = kB) {
  Rule r;
  r.antecedent = std::move(x);
  r.consequent = b;
  r.support = support;
  r.antecedent_support = support;
  return r;
}

RuleSet rules(std::initializer_list<AttrSet> xs) {
  RuleSet rs(kB);
  for (const auto& x : xs) rs.put(rule(x));
  return rs;
}

std::vector<AttrSet> keys(const RuleSet& rs) {
  std::vector<AttrSet> out;
  for (const auto& [x, r] : rs) out.push_back(x);
  return out;
}

}  // namespace

TEST(Diff, Examples) {
  EXPECT_TRUE(diff(rules({{1}}), rules({{1}})).empty());
  EXPECT_EQ(diff(rules({{1}}), RuleSet(kB)), rules({{1}}));
  EXPECT_EQ(keys(diff(rules({{1}, {2}}), rules({{2}}))), (std::vector<AttrSet>{{1}}));
  EXPECT_THROW(diff(rules({{1}}), RuleSet(3)), InvalidArgument);
}

TEST(Unite, Examples) {
  const auto x = rules({{1}, {2, 3}});
  EXPECT_EQ(unite(RuleSet(kB), x), x);
  EXPECT_EQ(unite(x, x), x);

  RuleSet weak(kB), strong(kB);
  weak.put(rule({1}, 2));
  strong.put(rule({1}, 5));
  EXPECT_EQ(unite(weak, strong).find(AttrSet{1})->support, 5u);
  EXPECT_EQ(unite(strong, weak).find(AttrSet{1})->support, 5u);

  RuleSet tie_a(kB), tie_b(kB);
  auto ra = rule({1}, 2);
  ra.origin = {7};
  tie_a.put(ra);
  tie_b.put(rule({1}, 2));
  EXPECT_EQ(unite(tie_a, tie_b).find(AttrSet{1})->origin, std::vector<RowId>{7});
  EXPECT_THROW(unite(x, RuleSet(3)), InvalidArgument);
}

TEST(Aggregate, Examples) {
  EXPECT_EQ(keys(aggregate(rules({{1}, {1, 2}}), {})), (std::vector<AttrSet>{{1}}));

  const std::vector<Rule> six_to_two{rule({6}, 1, 2)};
  EXPECT_EQ(keys(aggregate(rules({{6, 3}, {2}}), six_to_two)), (std::vector<AttrSet>{{2}}));

  EXPECT_EQ(keys(aggregate(rules({{1}, {2}}), {})), (std::vector<AttrSet>{{1}, {2}}));
}

TEST(Aggregate, MutualDominationKeepsSmallerAntecedent) {
  // 1 -> 2 and 2 -> 1: {1} and {2} dominate each other.
  const std::vector<Rule> equiv{rule({1}, 1, 2), rule({2}, 1, 1)};
  EXPECT_EQ(keys(aggregate(rules({{1}, {2}}), equiv)), (std::vector<AttrSet>{{1}}));
}

TEST(Dominates, Predicate) {
  const std::vector<Rule> six_to_two{rule({6}, 1, 2)};
  EXPECT_TRUE(dominates(AttrSet{2}, AttrSet{6, 3}, six_to_two));
  EXPECT_FALSE(dominates(AttrSet{2}, AttrSet{6, 3}, {}));
  EXPECT_TRUE(dominates(AttrSet{3}, AttrSet{6, 3}, {}));
  EXPECT_FALSE(dominates(AttrSet{6, 3}, AttrSet{2}, six_to_two));
}

TEST(Annotate, Examples) {
  const auto t = t1();
  RuleSet rs(2);
  auto r = rule({0}, 99, 2);
  r.origin = {4};
  r.subtable_support = 2;
  rs.put(r);
  const auto a = annotate(rs, t);
  const auto* got = a.find(AttrSet{0});
  EXPECT_EQ(got->support, 2u);
  EXPECT_EQ(got->antecedent_support, 3u);
  EXPECT_DOUBLE_EQ(*got->confidence(), 2.0 / 3.0);
  EXPECT_EQ(got->origin, std::vector<RowId>{4});
  EXPECT_EQ(got->subtable_support, 2u);
  EXPECT_TRUE(annotate(RuleSet(2), t).empty());

  RuleSet implication(2);
  implication.put(rule({0, 1}, 0, 2));
  EXPECT_DOUBLE_EQ(*annotate(implication, t).find(AttrSet{0, 1})->confidence(), 0.5);
}

TEST(BasisProperty, AggregateIdempotentAndSound) {
  std::mt19937_64 rng(501);
  for (int trial = 0; trial < 60; ++trial) {
    const auto t = random_small_table(rng, 10, 9, 0.5);
    const auto binary = binary_part(t, 1);
    for (ColumnIndex b = 0; b < t.n_cols(); ++b) {
      // Widen the sector with supersets so domination actually fires.
      auto sector = mine_sector(t, {.target = b});
      const auto base = sector;
      for (const auto& [x, r] : base)
        for (ColumnIndex c = 0; c < t.n_cols(); ++c)
          if (c != b && !x.contains(c)) sector.insert(measure_rule(t, x.with(c), b));

      const auto once = aggregate(sector, binary);
      EXPECT_EQ(aggregate(once, binary), once);

      for (const auto& [x, r] : sector) {
        bool has_dominator = false;
        for (const auto& [y, s] : sector)
          if (y != x && dominates(y, x, binary)) has_dominator = true;
        if (!has_dominator) EXPECT_TRUE(once.contains(x));
        if (!once.contains(x)) EXPECT_TRUE(has_dominator);
      }
      for (const auto& [x, r] : once)
        for (const auto& [y, s] : once)
          if (y != x) EXPECT_FALSE(dominates(y, x, binary));
    }
  }
}
