#include <gtest/gtest.h>

#include <random>

#include "rulebasis/error.hpp"
#include "rulebasis/oracle.hpp"
#include "test_support.hpp"

using namespace rulebasis;
using rulebasis::testing::random_table_upto;
using rulebasis::testing::t2;

TEST(OracleAntecedents, T2) {
  const auto rs = oracle::enumerate_antecedents(t2(), 3, 1);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(rs.find(AttrSet{1})->support, 2u);
  EXPECT_EQ(rs.find(AttrSet{0, 2})->support, 1u);
}

TEST(OracleAntecedents, ConstantConsequent) {
  const auto rs = oracle::enumerate_antecedents(BinaryTable::from_rows({{0, 1}, {1, 1}}), 1, 1);
  EXPECT_TRUE(rs.empty());
  EXPECT_TRUE(rs.consequent_constant);
}

TEST(OracleAntecedents, SizeCap) {
  const auto wide = BinaryTable::from_rows({std::vector<int>(17, 1)});
  EXPECT_THROW(oracle::enumerate_antecedents(wide, 0, 1), InvalidArgument);
}

TEST(OracleProperty, OutputsAreValidAndMinimal) {
  std::mt19937_64 rng(401);
  for (int trial = 0; trial < 80; ++trial) {
    const auto t = random_table_upto(rng, 8, 7);
    for (ColumnIndex b = 0; b < t.n_cols(); ++b) {
      for (const auto& [x, r] : oracle::enumerate_antecedents(t, b, 1)) {
        EXPECT_FALSE(x.empty());
        EXPECT_TRUE(violating_rows(t, x, b).empty());
        EXPECT_GT(support(t, x), 0u);
        for (auto v : x) {
          const auto sub = x.without(v);
          const bool sub_valid = !sub.empty() && violating_rows(t, sub, b).empty() && support(t, sub) > 0;
          EXPECT_FALSE(sub_valid);
        }
      }
    }
  }
}
