#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "rulebasis/perturb.hpp"
#include "rulebasis/relevance.hpp"
#include "rulebasis/table.hpp"

namespace rulebasis {

struct InjectedRule {
  AttrSet antecedent;
  ColumnIndex target = 0;
  /// Rows forced to contain antecedent ∪ {target}.
  std::size_t coverage = 0;
};

struct FlipProbability {
  double p = 0.0;
};
struct FlipCount {
  std::size_t k = 0;
};

/// Consequent noise: flips target 1 -> 0 on rows where the injected
/// antecedent holds. `symmetric` additionally flips 0 -> 1 with the same
/// probability on the remaining rows (probability mode only).
struct NoiseSpec {
  std::variant<FlipProbability, FlipCount> amount;
  bool symmetric = false;
};

struct SynthSpec {
  std::size_t rows = 20;
  std::size_t cols = 32;
  double density = 0.3;
  std::uint64_t seed = 0;
  std::optional<InjectedRule> rule;
  std::optional<NoiseSpec> noise;
};

/// Each cell is 1 independently with probability `spec.density`. Columns are labelled 1..cols.
BinaryTable random_table(const SynthSpec& spec);

/// Sets antecedent ∪ {target} on `coverage` randomly chosen rows, then sets
/// the target on every other row containing the antecedent.
BinaryTable inject_rule(const BinaryTable& t, const InjectedRule& rule, std::uint64_t seed);

struct FlipResult {
  BinaryTable table;
  std::vector<RowId> flipped;
};

/// Applies `noise` to column `target`; eligible rows are those containing
/// `antecedent` with target = 1 (all rows with target = 1 for an empty antecedent).
FlipResult flip_noise(const BinaryTable& t, const AttrSet& antecedent, ColumnIndex target, const NoiseSpec& noise,
                      std::uint64_t seed);

/// Builds the spec's table: random, then injected rule, then noise.
FlipResult synthesize(const SynthSpec& spec);

struct RecoveryOptions {
  std::size_t min_support = 1;
  /// Deletion plan for the batch; when unset a single run deletes exactly the flipped rows.
  std::optional<RunPlan> plan;
  std::size_t workers = 1;
};

struct RecoveryReport {
  std::vector<RowId> flipped;
  /// No rule with antecedent ⊆ X appears in the full-table sector.
  bool blocked_on_full_table = false;
  bool recovered = false;
  std::optional<Rule> recovered_rule;
  /// Confidence of the recovered rule on the sub-table it was mined from (1 by construction).
  double subtable_confidence = 0.0;
  /// Rules with antecedent ⊋ X before and after aggregation of base ∪ new.
  std::size_t variants_before = 0;
  std::size_t variants_after = 0;
  RuleSet aggregated_sector;
};

/// Runs the injected-rule recovery check. Requires `spec.rule` and `spec.noise`.
RecoveryReport recovery_experiment(const SynthSpec& spec, const RecoveryOptions& options);

/// min, max, mean and 50/75/90th percentiles (linear interpolation between order statistics).
struct SummaryStats {
  std::size_t count = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double p50 = 0.0;
  double p75 = 0.0;
  double p90 = 0.0;
};

SummaryStats summarize(std::vector<double> values);
double percentile(std::span<const double> sorted, double q);

struct DensityStudyConfig {
  std::size_t rows = 20;
  std::size_t cols = 32;
  std::vector<double> densities{0.3, 0.5};
  std::size_t tables_per_density = 100;
  std::uint64_t seed = 0;
  MiningConfig mining;
  std::size_t workers = 1;
};

struct DensityStudyRow {
  double density = 0.0;
  std::size_t tables = 0;
  SummaryStats rel;
};

/// For every table and every ordered pair (b, a != b), rel_b(a); summarized per density.
std::vector<DensityStudyRow> density_study(const DensityStudyConfig& config);

/// rel values of every ordered attribute pair of one table.
std::vector<double> pairwise_relevance(const BinaryTable& t, const MiningConfig& mining);

struct NoiseStudyConfig {
  std::size_t rows = 20;
  std::size_t cols = 32;
  double density = 0.3;
  InjectedRule rule{AttrSet{0, 1}, 31, 10};
  std::vector<double> noise_levels{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  MiningConfig mining;
  std::size_t workers = 1;
};

struct NoiseStudyRow {
  double noise = 0.0;
  std::size_t trials = 0;
  /// Fraction of trials whose Δ(target) holds X -> target or a rule with antecedent ⊂ X.
  double recovery_rate = 0.0;
  double mean_rel_injected = 0.0;
  double mean_rel_other = 0.0;
};

std::vector<NoiseStudyRow> noise_study(const NoiseStudyConfig& config);

/// Deterministic per-task seed derived from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

}  // namespace rulebasis
