#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rulebasis/basis.hpp"
#include "rulebasis/perturb.hpp"
#include "rulebasis/rules.hpp"
#include "rulebasis/table.hpp"

namespace rulebasis {

/// How a sector Δ is built: the full-table sector plus the new rules of a
/// row-deletion batch, aggregated against the binary part.
struct MiningConfig {
  std::size_t min_support = 1;
  /// Blocker selection from a one-row-deletion scan of the b sector; all rows when unset.
  std::optional<BlockerPolicy> blockers;
  std::size_t delete_count = 1;
  /// Number of deletion sets. 0 skips row deletion and Δ is the implication sector alone.
  std::size_t runs = 1;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::size_t max_transversals = 0;
};

struct AttributeRelevance {
  ColumnIndex attribute = 0;
  double tsup_b = 0.0;
  double tsup_neg = 0.0;
  double rel = 0.0;

  bool operator==(const AttributeRelevance&) const = default;
};

struct RelevanceReport {
  ColumnIndex target = 0;
  /// One record per column other than the target, in rank order.
  std::vector<AttributeRelevance> ranking;
  Basis delta_b;
  Basis delta_neg;

  const AttributeRelevance* find(ColumnIndex a) const;
};

/// Σ over rules X -> b of `delta` with a ∈ X of sup(X) / |X| · conf(X -> b).
double total_support(const RuleSet& delta, ColumnIndex a);

/// tsup_b / (tsup_neg + 1).
double relevance(double tsup_b, double tsup_neg);

/// Row set the deletion plan draws from: the selected blockers of a
/// one-row-deletion scan when a policy is configured, else every row.
std::vector<RowId> plan_blockers(const BinaryTable& t, const SectorRequest& req, const MiningConfig& config);

/// Builds Δ for `req` (Δ(b) or Δ(¬b)) using `blockers` as the deletion pool.
Basis build_delta(const BinaryTable& t, const SectorRequest& req, const MiningConfig& config,
                  const std::vector<RowId>& blockers);

/// Ranks every attribute other than `b` by relevance. Δ(b) and Δ(¬b) share
/// one deletion plan (blocker pool, sizes and seed).
RelevanceReport rank_attributes(const BinaryTable& t, ColumnIndex b, const MiningConfig& config);

}  // namespace rulebasis
