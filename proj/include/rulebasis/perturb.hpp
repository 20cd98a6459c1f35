#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "rulebasis/miner.hpp"
#include "rulebasis/rules.hpp"
#include "rulebasis/table.hpp"

namespace rulebasis {

/// Rules that appear once `deleted_rows` are removed from the table but are
/// absent from the full-table sector. Each rule carries its sub-table support.
struct NewRuleReport {
  std::vector<RowId> deleted_rows;
  RuleSet new_rules;

  bool operator==(const NewRuleReport&) const = default;
};

struct BlockerScore {
  RowId row = 0;
  std::size_t rule_count = 0;
  std::size_t total_support = 0;

  bool operator==(const BlockerScore&) const = default;
};

struct TopK {
  std::size_t k = 0;
};
struct MinScore {
  std::size_t threshold = 0;
};
using BlockerPolicy = std::variant<TopK, MinScore>;

/// Which rows to delete and how often: `runs` distinct subsets of
/// `delete_count` rows drawn from `blockers`.
struct RunPlan {
  std::vector<RowId> blockers;
  std::size_t delete_count = 1;
  std::size_t runs = 1;
  std::uint64_t seed = 0;
};

struct MrdResult {
  /// New rules across all runs, re-measured on the full table.
  RuleSet aggregated_new;
  RuleSet base;
  /// One report per sampled deletion set, in sampling order.
  std::vector<NewRuleReport> runs;
};

/// Called after each completed sub-table with (completed, total).
using ProgressHook = std::function<void(std::size_t, std::size_t)>;

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// One-row deletion: for every row, the sub-table sector minus `base`.
/// Rows are processed in parallel by up to `workers` threads; the result is
/// ordered by row position and does not depend on `workers`.
std::vector<NewRuleReport> ord_scan(const BinaryTable& t, const SectorRequest& req, const RuleSet& base,
                                    std::size_t workers = 1, const ProgressHook& progress = {});

/// Per-row rule count and summed sub-table support, sorted by total support,
/// then rule count (both descending), then row id.
std::vector<BlockerScore> blocker_scores(const std::vector<NewRuleReport>& reports);

std::vector<RowId> select_blockers(const std::vector<BlockerScore>& scores, const BlockerPolicy& policy);

/// `plan.runs` distinct deletion sets, each sorted ascending. Random without
/// replacement when fewer than C(|S|, n) are requested, otherwise every
/// subset in lexicographic order. Deterministic for a given seed.
std::vector<std::vector<RowId>> sample_deletion_sets(const RunPlan& plan);

/// Multiple-row deletion. Sub-tables are mined in parallel; new rules are
/// merged in sampling order (first occurrence of an antecedent is kept,
/// unless a later run has a lexicographically smaller deletion set) and
/// re-measured on the full table. Output does not depend on `workers`.
MrdResult mrd_run(const BinaryTable& t, const SectorRequest& req, const RunPlan& plan, std::size_t workers = 1,
                  const ProgressHook& progress = {});

/// Worst-case full-table confidence s / (s + n) of a rule with sub-table support s after deleting n rows.
double confidence_floor(std::size_t s, std::size_t n);
/// Average-case estimate N / (N + n) for a table of N rows with n rows deleted.
double estimate_confidence(std::size_t N, std::size_t n);

/// Single-threaded reference implementations kept for equivalence testing.
namespace serial {

std::vector<NewRuleReport> ord_scan(const BinaryTable& t, const SectorRequest& req, const RuleSet& base);
MrdResult mrd_run(const BinaryTable& t, const SectorRequest& req, const RunPlan& plan);

}  // namespace serial

}  // namespace rulebasis
