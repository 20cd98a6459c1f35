#include <gtest/gtest.h>

#include <random>
#include <set>

#include "rulebasis/basis.hpp"
#include "rulebasis/error.hpp"
#include "rulebasis/perturb.hpp"
#include "test_support.hpp"

using namespace rulebasis;
using rulebasis::testing::random_small_table;
using rulebasis::testing::t1;

namespace {

std::vector<NewRuleReport> t1_ord() {
  const auto t = t1();
  const SectorRequest req{.target = 2};
  return ord_scan(t, req, mine_sector(t, req));
}

}  // namespace

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(5, 0), 1u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(binomial(291, 20) , UINT64_MAX);
  EXPECT_EQ(binomial(90, 10), 5720645481903ULL);
}

TEST(OrdScan, T1) {
  const auto reports = t1_ord();
  ASSERT_EQ(reports.size(), 4u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(reports[i].deleted_rows, std::vector<RowId>{static_cast<RowId>(i + 1)});
    EXPECT_TRUE(reports[i].new_rules.empty());
  }
  EXPECT_EQ(reports[3].deleted_rows, std::vector<RowId>{4});
  ASSERT_EQ(reports[3].new_rules.size(), 1u);
  const auto* r = reports[3].new_rules.find(AttrSet{0});
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->subtable_support, 2u);
  EXPECT_EQ(r->origin, std::vector<RowId>{4});
}

TEST(OrdScan, ConstantConsequentAndDuplicates) {
  const auto ones = BinaryTable::from_rows({{0, 1}, {1, 1}, {1, 1}});
  const SectorRequest req{.target = 1};
  for (const auto& rep : ord_scan(ones, req, mine_sector(ones, req))) EXPECT_TRUE(rep.new_rules.empty());

  // Rows 3 and 4 are identical; deleting either leaves the other as evidence.
  const auto dup = BinaryTable::from_rows({{1, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 0}});
  const SectorRequest dreq{.target = 2};
  const auto reports = ord_scan(dup, dreq, mine_sector(dup, dreq));
  EXPECT_TRUE(reports[2].new_rules.empty());
  EXPECT_TRUE(reports[3].new_rules.empty());
}

TEST(OrdScan, OneRowTableIsRejected) {
  const auto t = BinaryTable::from_rows({{1, 0}});
  EXPECT_THROW(ord_scan(t, {.target = 1}, RuleSet(1)), ComputationError);
}

TEST(BlockerScores, T1) {
  const auto scores = blocker_scores(t1_ord());
  ASSERT_EQ(scores.size(), 4u);
  EXPECT_EQ(scores[0], (BlockerScore{4, 1, 2}));
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(scores[i], (BlockerScore{static_cast<RowId>(i), 0, 0}));
}

TEST(BlockerScores, SortContract) {
  auto report = [](RowId row, std::size_t s) {
    NewRuleReport rep;
    rep.deleted_rows = {row};
    rep.new_rules = RuleSet(0);
    Rule r;
    r.antecedent = AttrSet{1};
    r.subtable_support = s;
    rep.new_rules.put(r);
    return rep;
  };
  const auto scores = blocker_scores({report(1, 3), report(2, 5)});
  EXPECT_EQ(scores[0].row, 2u);

  std::vector<NewRuleReport> empty(3);
  for (RowId i = 0; i < 3; ++i) empty[i].deleted_rows = {3 - i};
  const auto zeros = blocker_scores(empty);
  EXPECT_EQ(zeros[0].row, 1u);
  EXPECT_EQ(zeros[2].row, 3u);
  for (const auto& s : zeros) EXPECT_EQ(s.total_support, 0u);
}

TEST(SelectBlockers, Policies) {
  const auto scores = blocker_scores(t1_ord());
  EXPECT_EQ(select_blockers(scores, TopK{1}), std::vector<RowId>{4});
  EXPECT_EQ(select_blockers(scores, MinScore{1}), std::vector<RowId>{4});
  EXPECT_EQ(select_blockers(scores, MinScore{0}), (std::vector<RowId>{1, 2, 3, 4}));
  EXPECT_EQ(select_blockers(scores, TopK{99}), (std::vector<RowId>{1, 2, 3, 4}));
}

TEST(SampleDeletionSets, Systematic) {
  const RunPlan plan{{1, 2, 3, 4, 5}, 2, 10, 7};
  const auto sets = sample_deletion_sets(plan);
  const std::vector<std::vector<RowId>> want{{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3},
                                             {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}};
  EXPECT_EQ(sets, want);
}

TEST(SampleDeletionSets, RandomIsReproducibleAndDistinct) {
  const RunPlan plan{{1, 2, 3, 4, 5}, 2, 3, 42};
  const auto a = sample_deletion_sets(plan);
  EXPECT_EQ(a, sample_deletion_sets(plan));
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(std::set<std::vector<RowId>>(a.begin(), a.end()).size(), 3u);
  for (const auto& s : a) {
    EXPECT_EQ(s.size(), 2u);
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  }

  // Large pools go through rejection sampling.
  std::vector<RowId> pool(200);
  for (RowId i = 0; i < 200; ++i) pool[i] = i + 1;
  const RunPlan big{pool, 20, 25, 9};
  const auto b = sample_deletion_sets(big);
  EXPECT_EQ(std::set<std::vector<RowId>>(b.begin(), b.end()).size(), 25u);
  EXPECT_EQ(b, sample_deletion_sets(big));
}

TEST(SampleDeletionSets, Errors) {
  EXPECT_THROW(sample_deletion_sets({{1, 2, 3}, 0, 1, 0}), InvalidArgument);
  EXPECT_THROW(sample_deletion_sets({{1, 2, 3}, 4, 1, 0}), InvalidArgument);
  EXPECT_THROW(sample_deletion_sets({{1, 2, 3}, 2, 4, 0}), InvalidArgument);
  EXPECT_THROW(sample_deletion_sets({{1, 1, 3}, 1, 1, 0}), InvalidArgument);
}

TEST(MrdRun, T1SingleRun) {
  const auto t = t1();
  const auto res = mrd_run(t, {.target = 2}, {{4}, 1, 1, 0});
  ASSERT_EQ(res.aggregated_new.size(), 1u);
  const auto* r = res.aggregated_new.find(AttrSet{0});
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->support, 2u);
  EXPECT_EQ(r->antecedent_support, 3u);
  EXPECT_DOUBLE_EQ(*r->confidence(), 2.0 / 3.0);
  EXPECT_EQ(r->origin, std::vector<RowId>{4});
  EXPECT_EQ(r->subtable_support, 2u);
  EXPECT_TRUE(res.base.empty());
  EXPECT_EQ(res.runs.size(), 1u);
}

TEST(MrdRun, NothingUnblocks) {
  const auto res = mrd_run(t1(), {.target = 2}, {{1, 2}, 1, 2, 0});
  EXPECT_TRUE(res.aggregated_new.empty());
}

TEST(MrdRun, PlanErrors) {
  const auto t = t1();
  EXPECT_THROW(mrd_run(t, {.target = 2}, {{9}, 1, 1, 0}), InvalidArgument);
  EXPECT_THROW(mrd_run(t, {.target = 2}, {{1, 2, 3, 4}, 4, 1, 0}), ComputationError);
  EXPECT_THROW(mrd_run(t, {.target = 2}, {{1, 2}, 1, 3, 0}), InvalidArgument);
}

TEST(Bounds, Values) {
  EXPECT_DOUBLE_EQ(estimate_confidence(90, 10), 0.9);
  EXPECT_DOUBLE_EQ(confidence_floor(2, 1), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(confidence_floor(5, 0), 1.0);
  EXPECT_DOUBLE_EQ(estimate_confidence(5, 0), 1.0);
  EXPECT_THROW(confidence_floor(0, 1), InvalidArgument);
}

TEST(PerturbProperty, ParallelMatchesSerial) {
  std::mt19937_64 rng(601);
  for (int trial = 0; trial < 12; ++trial) {
    const auto t = random_small_table(rng, 14, 10, 0.45);
    const SectorRequest req{.target = static_cast<ColumnIndex>(rng() % 10)};
    const auto base = mine_sector(t, req);
    const auto serial_ord = serial::ord_scan(t, req, base);
    const RunPlan plan{t.row_ids(), 2, 12, rng()};
    const auto serial_mrd = serial::mrd_run(t, req, plan);
    for (std::size_t workers : {1, 3, 8}) {
      EXPECT_EQ(ord_scan(t, req, base, workers), serial_ord);
      const auto par = mrd_run(t, req, plan, workers);
      EXPECT_EQ(par.aggregated_new, serial_mrd.aggregated_new);
      EXPECT_EQ(par.base, serial_mrd.base);
      EXPECT_EQ(par.runs, serial_mrd.runs);
    }
  }
}

TEST(PerturbProperty, LocalizationAndFloor) {
  std::mt19937_64 rng(602);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_small_table(rng, 16, 10, 0.4);
    const SectorRequest req{.target = static_cast<ColumnIndex>(rng() % 10)};
    const RunPlan plan{t.row_ids(), 3, 10, rng()};
    const auto res = mrd_run(t, req, plan, 2);
    for (const auto& [x, r] : res.aggregated_new) {
      const auto bad = violating_rows(t, x, req.target);
      EXPECT_FALSE(bad.empty());
      for (auto id : bad) EXPECT_TRUE(std::find(r.origin.begin(), r.origin.end(), id) != r.origin.end());
      EXPECT_GE(*r.confidence(), confidence_floor(r.subtable_support, plan.delete_count));
    }
  }
}

TEST(PerturbProperty, ProgressHookCountsEveryRun) {
  const auto t = t1();
  std::size_t calls = 0, last_total = 0;
  mrd_run(t, {.target = 2}, {t.row_ids(), 1, 4, 0}, 2, [&](std::size_t, std::size_t total) {
    ++calls;
    last_total = total;
  });
  EXPECT_EQ(calls, 4u);
  EXPECT_EQ(last_total, 4u);
}
