#include "rulebasis/synth.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>

#include "rulebasis/basis.hpp"
#include "rulebasis/error.hpp"
#include "rulebasis/miner.hpp"

namespace rulebasis {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over a running combination.
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(master) ^ a) ^ b);
}

BinaryTable random_table(const SynthSpec& spec) {
  if (spec.density < 0.0 || spec.density > 1.0) throw InvalidArgument("density must lie in [0, 1]");
  std::mt19937_64 rng(spec.seed);
  std::bernoulli_distribution cell(spec.density);
  std::vector<Bits> rows;
  std::vector<RowId> ids;
  for (std::size_t r = 0; r < spec.rows; ++r) {
    Bits b(spec.cols);
    for (std::size_t c = 0; c < spec.cols; ++c)
      if (cell(rng)) b.set(c);
    rows.push_back(std::move(b));
    ids.push_back(static_cast<RowId>(r + 1));
  }
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < spec.cols; ++c) labels.push_back(std::to_string(c + 1));
  return BinaryTable(std::move(rows), std::move(ids), std::move(labels));
}

namespace {

std::vector<Bits> copy_rows(const BinaryTable& t) {
  std::vector<Bits> rows;
  rows.reserve(t.n_rows());
  for (std::size_t r = 0; r < t.n_rows(); ++r) rows.push_back(t.row(r));
  return rows;
}

BinaryTable rebuild(const BinaryTable& t, std::vector<Bits> rows) {
  std::vector<bool> neg(t.n_cols());
  for (std::size_t c = 0; c < t.n_cols(); ++c) neg[c] = t.is_negated(static_cast<ColumnIndex>(c));
  return BinaryTable(std::move(rows), t.row_ids(), t.col_labels(), std::move(neg));
}

}  // namespace

BinaryTable inject_rule(const BinaryTable& t, const InjectedRule& rule, std::uint64_t seed) {
  t.check_column(rule.target);
  for (auto c : rule.antecedent)
    if (c >= t.n_cols()) throw InvalidArgument("injected antecedent column outside the table");
  if (rule.antecedent.contains(rule.target)) throw InvalidArgument("injected target belongs to the antecedent");
  if (rule.coverage > t.n_rows()) throw InvalidArgument("coverage exceeds the number of rows");

  std::vector<std::size_t> order(t.n_rows());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  auto rows = copy_rows(t);
  for (std::size_t i = 0; i < rule.coverage; ++i) {
    for (auto c : rule.antecedent) rows[order[i]].set(c);
    rows[order[i]].set(rule.target);
  }
  const auto x = rule.antecedent.to_bits(t.n_cols());
  for (auto& row : rows)
    if (x.is_subset_of(row)) row.set(rule.target);
  return rebuild(t, std::move(rows));
}

FlipResult flip_noise(const BinaryTable& t, const AttrSet& antecedent, ColumnIndex target, const NoiseSpec& noise,
                      std::uint64_t seed) {
  t.check_column(target);
  const auto eligible_rows = cover(t, antecedent) & t.column(target);
  const auto eligible = eligible_rows.to_indices();
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> flip;

  if (const auto* fixed = std::get_if<FlipCount>(&noise.amount)) {
    if (fixed->k > eligible.size())
      throw InvalidArgument("cannot flip " + std::to_string(fixed->k) + " rows; only " +
                            std::to_string(eligible.size()) + " are eligible");
    flip = eligible;
    std::shuffle(flip.begin(), flip.end(), rng);
    flip.resize(fixed->k);
  } else {
    const double p = std::get<FlipProbability>(noise.amount).p;
    if (p < 0.0 || p > 1.0) throw InvalidArgument("noise probability must lie in [0, 1]");
    std::bernoulli_distribution coin(p);
    for (auto r : eligible)
      if (coin(rng)) flip.push_back(r);
    if (noise.symmetric) {
      const auto others = (Bits::ones(t.n_rows()) - eligible_rows) - t.column(target);
      for (auto r : others.to_indices())
        if (coin(rng)) flip.push_back(r);
    }
  }
  std::sort(flip.begin(), flip.end());

  auto rows = copy_rows(t);
  FlipResult out;
  for (auto r : flip) {
    rows[r].flip(target);
    out.flipped.push_back(t.row_ids()[r]);
  }
  out.table = rebuild(t, std::move(rows));
  return out;
}

FlipResult synthesize(const SynthSpec& spec) {
  auto table = random_table(spec);
  if (spec.rule) table = inject_rule(table, *spec.rule, derive_seed(spec.seed, 1));
  if (!spec.noise) return FlipResult{std::move(table), {}};
  const AttrSet x = spec.rule ? spec.rule->antecedent : AttrSet{};
  const ColumnIndex b = spec.rule ? spec.rule->target : 0;
  return flip_noise(table, x, b, *spec.noise, derive_seed(spec.seed, 2));
}

RecoveryReport recovery_experiment(const SynthSpec& spec, const RecoveryOptions& options) {
  if (!spec.rule || !spec.noise) throw InvalidArgument("recovery experiment needs an injected rule and noise");
  const auto& x = spec.rule->antecedent;
  const ColumnIndex b = spec.rule->target;
  auto synth = synthesize(spec);
  const auto& t = synth.table;

  RecoveryReport report;
  report.flipped = synth.flipped;
  const SectorRequest req{b, options.min_support};

  RunPlan plan;
  if (options.plan) {
    plan = *options.plan;
  } else {
    if (synth.flipped.empty()) throw InvalidArgument("no rows were flipped; supply an explicit plan");
    plan = RunPlan{synth.flipped, synth.flipped.size(), 1, spec.seed};
  }
  const auto mrd = mrd_run(t, req, plan, options.workers);

  report.blocked_on_full_table = std::none_of(mrd.base.begin(), mrd.base.end(),
                                              [&](const auto& kv) { return kv.first.is_subset_of(x); });

  const Rule* best = nullptr;
  for (const auto& [y, r] : mrd.aggregated_new)
    if (y.is_subset_of(x) && (!best || y == x)) best = &r;
  for (const auto& [y, r] : mrd.base)
    if (y.is_subset_of(x) && !best) best = &r;
  if (best) {
    report.recovered = true;
    report.recovered_rule = *best;
    report.subtable_confidence = 1.0;
  }

  auto sector = unite(mrd.base, mrd.aggregated_new);
  auto strict_superset = [&](const auto& kv) { return x.is_subset_of(kv.first) && kv.first != x; };
  report.variants_before = static_cast<std::size_t>(std::count_if(sector.begin(), sector.end(), strict_superset));
  report.aggregated_sector = aggregate(sector, binary_part(t, options.min_support));
  report.variants_after = static_cast<std::size_t>(
      std::count_if(report.aggregated_sector.begin(), report.aggregated_sector.end(), strict_superset));
  return report;
}

double percentile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InvalidArgument("percentile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

SummaryStats summarize(std::vector<double> values) {
  SummaryStats s;
  s.count = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  s.p50 = percentile(values, 0.50);
  s.p75 = percentile(values, 0.75);
  s.p90 = percentile(values, 0.90);
  return s;
}

std::vector<double> pairwise_relevance(const BinaryTable& t, const MiningConfig& mining) {
  std::vector<double> out;
  for (ColumnIndex b = 0; b < t.n_cols(); ++b) {
    const auto report = rank_attributes(t, b, mining);
    for (const auto& rec : report.ranking) out.push_back(rec.rel);
  }
  return out;
}

namespace {

template <typename Task>
void parallel_tasks(std::size_t count, std::size_t workers, Task&& task) {
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(std::max<std::size_t>(1, workers)))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      task(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<DensityStudyRow> density_study(const DensityStudyConfig& config) {
  std::vector<DensityStudyRow> rows;
  MiningConfig mining = config.mining;
  mining.workers = 1;
  for (std::size_t d = 0; d < config.densities.size(); ++d) {
    std::vector<std::vector<double>> per_table(config.tables_per_density);
    parallel_tasks(config.tables_per_density, config.workers, [&](std::size_t i) {
      SynthSpec spec{config.rows, config.cols, config.densities[d], derive_seed(config.seed, d, i), std::nullopt, std::nullopt};
      MiningConfig local = mining;
      local.seed = derive_seed(spec.seed, 7);
      per_table[i] = pairwise_relevance(random_table(spec), local);
    });
    std::vector<double> all;
    for (auto& v : per_table) all.insert(all.end(), v.begin(), v.end());
    rows.push_back(DensityStudyRow{config.densities[d], config.tables_per_density, summarize(std::move(all))});
  }
  return rows;
}

std::vector<NoiseStudyRow> noise_study(const NoiseStudyConfig& config) {
  std::vector<NoiseStudyRow> out;
  MiningConfig mining = config.mining;
  mining.workers = 1;
  const auto& x = config.rule.antecedent;
  const ColumnIndex b = config.rule.target;
  for (std::size_t level = 0; level < config.noise_levels.size(); ++level) {
    struct Trial {
      bool recovered = false;
      double injected = 0.0;
      double other = 0.0;
    };
    std::vector<Trial> trials(config.trials);
    parallel_tasks(config.trials, config.workers, [&](std::size_t i) {
      SynthSpec spec{config.rows, config.cols, config.density, derive_seed(config.seed, level, i), config.rule,
                     NoiseSpec{FlipProbability{config.noise_levels[level]}}};
      const auto synth = synthesize(spec);
      MiningConfig local = mining;
      local.seed = derive_seed(spec.seed, 7);
      const auto report = rank_attributes(synth.table, b, local);
      Trial& tr = trials[i];
      tr.recovered = std::any_of(report.delta_b.sector.begin(), report.delta_b.sector.end(), [&](const auto& kv) {
        return dominates(kv.first, x, report.delta_b.binary);
      });
      std::size_t n_other = 0;
      for (const auto& rec : report.ranking) {
        if (x.contains(rec.attribute)) {
          tr.injected += rec.rel / static_cast<double>(x.size());
        } else {
          tr.other += rec.rel;
          ++n_other;
        }
      }
      if (n_other) tr.other /= static_cast<double>(n_other);
    });
    NoiseStudyRow row;
    row.noise = config.noise_levels[level];
    row.trials = config.trials;
    for (const auto& tr : trials) {
      row.recovery_rate += tr.recovered ? 1.0 : 0.0;
      row.mean_rel_injected += tr.injected;
      row.mean_rel_other += tr.other;
    }
    if (config.trials) {
      row.recovery_rate /= static_cast<double>(config.trials);
      row.mean_rel_injected /= static_cast<double>(config.trials);
      row.mean_rel_other /= static_cast<double>(config.trials);
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace rulebasis
