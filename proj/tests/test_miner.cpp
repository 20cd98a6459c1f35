#include <gtest/gtest.h>

#include <random>

#include "rulebasis/error.hpp"
#include "rulebasis/miner.hpp"
#include "rulebasis/oracle.hpp"
#include "test_support.hpp"

using namespace rulebasis;
using rulebasis::testing::random_small_table;
using rulebasis::testing::random_table_upto;
using rulebasis::testing::t1;
using rulebasis::testing::t2;

namespace {

std::vector<AttrSet> antecedents(const RuleSet& rs) {
  std::vector<AttrSet> out;
  for (const auto& [x, r] : rs) out.push_back(x);
  return out;
}

std::vector<AttrSet> edge_sets(const Hypergraph& h) {
  std::vector<AttrSet> out;
  for (const auto& e : h.edges) out.push_back(AttrSet::from_bits(e));
  return out;
}

}  // namespace

TEST(ConsequentHypergraph, Examples) {
  const auto h1 = build_consequent_hypergraph(t1(), 2);
  EXPECT_EQ(edge_sets(h1), (std::vector<AttrSet>{AttrSet{}}));
  EXPECT_FALSE(h1.vertices.test(2));

  const auto h2 = build_consequent_hypergraph(t2(), 3);
  EXPECT_EQ(edge_sets(h2), (std::vector<AttrSet>{{0, 1}, {1, 2}}));

  const auto ones = BinaryTable::from_rows({{0, 1}, {1, 1}});
  EXPECT_TRUE(build_consequent_hypergraph(ones, 1).edges.empty());
  EXPECT_THROW(build_consequent_hypergraph(ones, 5), InvalidArgument);
}

TEST(MineSector, T2) {
  const auto rs = mine_sector(t2(), {.target = 3});
  ASSERT_EQ(rs.size(), 2u);
  const auto* a = rs.find(AttrSet{1});
  const auto* b = rs.find(AttrSet{0, 2});
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->support, 2u);
  EXPECT_EQ(b->support, 1u);
  EXPECT_EQ(a->confidence(), 1.0);
  EXPECT_TRUE(b->is_implication());

  const auto strict = mine_sector(t2(), {.target = 3, .min_support = 2});
  EXPECT_EQ(antecedents(strict), (std::vector<AttrSet>{{1}}));
}

TEST(MineSector, T1HasNoImplications) {
  for (std::size_t s = 1; s <= 3; ++s) {
    const auto rs = mine_sector(t1(), {.target = 2, .min_support = s});
    EXPECT_TRUE(rs.empty());
    EXPECT_FALSE(rs.consequent_constant);
  }
}

TEST(MineSector, ConstantAndErrors) {
  const auto ones = BinaryTable::from_rows({{0, 1}, {1, 1}});
  const auto rs = mine_sector(ones, {.target = 1});
  EXPECT_TRUE(rs.empty());
  EXPECT_TRUE(rs.consequent_constant);
  EXPECT_THROW(mine_sector(ones, {.target = 1, .min_support = 0}), InvalidArgument);
  const auto empty = delete_rows(ones, std::vector<RowId>{1, 2});
  EXPECT_THROW(mine_sector(empty, {.target = 1}), ComputationError);
}

TEST(MineSector, NegatedSectorMinesComplement) {
  const auto t = t2();
  const auto neg = mine_sector(t, {.target = 3, .negated = true});
  EXPECT_TRUE(neg.negated());
  EXPECT_EQ(neg, [&] {
    auto plain = mine_sector(negate_column(t, 3), {.target = 3});
    RuleSet out(3, true);
    for (const auto& [x, r] : plain) out.put(r);
    return out;
  }());
}

TEST(MineSector, TruncationIsReported) {
  // b is 0 exactly on rows whose zeros form four disjoint pairs.
  const auto t = BinaryTable::from_rows({{0, 0, 1, 1, 1, 1, 1, 1, 0},
                                         {1, 1, 0, 0, 1, 1, 1, 1, 0},
                                         {1, 1, 1, 1, 0, 0, 1, 1, 0},
                                         {1, 1, 1, 1, 1, 1, 0, 0, 0},
                                         {1, 1, 1, 1, 1, 1, 1, 1, 1}});
  EXPECT_EQ(mine_sector(t, {.target = 8}).size(), 16u);
  const auto capped = mine_sector(t, {.target = 8, .max_transversals = 3});
  EXPECT_TRUE(capped.truncated);
  EXPECT_LE(capped.size(), 3u);
}

TEST(BinaryPart, Examples) {
  const auto rules = binary_part(t2(), 1);
  const bool has_2_4 = std::any_of(rules.begin(), rules.end(), [](const Rule& r) {
    return r.antecedent == AttrSet{1} && r.consequent == 3;
  });
  EXPECT_TRUE(has_2_4);
  for (const auto& r : rules) {
    EXPECT_EQ(r.antecedent.size(), 1u);
    EXPECT_TRUE(r.is_implication());
  }

  const auto dup = BinaryTable::from_rows({{1, 1, 0}, {0, 0, 1}, {1, 1, 1}});
  const auto d = binary_part(dup, 1);
  auto has = [&](ColumnIndex a, ColumnIndex c) {
    return std::any_of(d.begin(), d.end(),
                       [&](const Rule& r) { return r.antecedent == AttrSet{a} && r.consequent == c; });
  };
  EXPECT_TRUE(has(0, 1));
  EXPECT_TRUE(has(1, 0));

  const auto zero = BinaryTable::from_rows({{0, 1}, {0, 0}});
  EXPECT_TRUE(binary_part(zero, 1).empty());
}

TEST(ConstantColumns, Examples) {
  const auto t = BinaryTable::from_rows({{1, 0, 1}, {1, 1, 0}});
  const auto c = constant_columns(t);
  EXPECT_EQ(c, (std::vector<std::pair<ColumnIndex, bool>>{{0, true}}));
  EXPECT_THROW(constant_columns(delete_rows(t, std::vector<RowId>{1, 2})), ComputationError);
}

TEST(MinerProperty, SoundAndMinimal) {
  std::mt19937_64 rng(301);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = random_table_upto(rng, 12, 10);
    for (ColumnIndex b = 0; b < t.n_cols(); ++b) {
      for (const auto& [x, r] : mine_sector(t, {.target = b})) {
        EXPECT_TRUE(violating_rows(t, x, b).empty());
        EXPECT_EQ(r.confidence(), 1.0);
        for (auto v : x) {
          const auto smaller = x.without(v);
          if (!smaller.empty()) EXPECT_FALSE(violating_rows(t, smaller, b).empty());
        }
      }
    }
  }
}

TEST(MinerProperty, MatchesOracle) {
  std::mt19937_64 rng(302);
  for (int trial = 0; trial < 150; ++trial) {
    const auto t = random_table_upto(rng, 10, 8);
    const std::size_t minsup = 1 + rng() % 2;
    for (ColumnIndex b = 0; b < t.n_cols(); ++b) {
      const auto got = mine_sector(t, {.target = b, .min_support = minsup});
      const auto want = oracle::enumerate_antecedents(t, b, minsup);
      EXPECT_EQ(got, want) << "trial " << trial << " column " << b;
    }
  }
}

TEST(MinerProperty, DeletionKeepsOrShrinksRules) {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 60; ++trial) {
    const auto t = random_small_table(rng, 12, 8, 0.5);
    const RowId gone = t.row_ids()[rng() % t.n_rows()];
    const auto sub = delete_rows(t, std::vector<RowId>{gone});
    for (ColumnIndex b = 0; b < t.n_cols(); ++b) {
      const auto full = mine_sector(t, {.target = b});
      const auto smaller = mine_sector(sub, {.target = b});
      if (smaller.consequent_constant) continue;
      for (const auto& [x, r] : full) {
        const bool subsumed = std::any_of(smaller.begin(), smaller.end(),
                                          [&](const auto& kv) { return kv.first.is_subset_of(x); });
        // A rule whose whole support was the deleted row disappears at min support 1.
        if (support(sub, x.with(b)) > 0) EXPECT_TRUE(subsumed) << "trial " << trial;
      }
    }
  }
}
