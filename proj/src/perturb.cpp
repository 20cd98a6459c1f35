#include "rulebasis/perturb.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "rulebasis/basis.hpp"
#include "rulebasis/error.hpp"
#include "perturb_internal.hpp"

namespace rulebasis {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t i = 1; i <= k; ++i) {
    // acc * (n - k + i) / i stays integral at every step.
    acc = acc * (n - k + i) / i;
    if (acc > cap) return cap;
  }
  return static_cast<std::uint64_t>(acc);
}

namespace detail {

NewRuleReport mine_new_rules(const BinaryTable& t, const SectorRequest& req, const RuleSet& base,
                             std::vector<RowId> deleted) {
  const auto sub = delete_rows(t, deleted);
  const auto sector = mine_sector(sub, req);
  NewRuleReport report{std::move(deleted), RuleSet(req.target, req.negated)};
  report.new_rules.truncated = sector.truncated;
  for (const auto& [x, r] : sector) {
    if (base.contains(x)) continue;
    Rule rule = r;
    rule.origin = report.deleted_rows;
    rule.subtable_support = r.support;
    report.new_rules.insert(std::move(rule));
  }
  return report;
}

void merge_new_rules(RuleSet& acc, const NewRuleReport& report) {
  for (const auto& [x, r] : report.new_rules) {
    const Rule* existing = acc.find(x);
    if (!existing) {
      acc.insert(r);
    } else if (r.origin < existing->origin) {
      Rule replacement = *existing;
      replacement.origin = r.origin;
      replacement.subtable_support = r.subtable_support;
      acc.put(std::move(replacement));
    }
  }
  acc.truncated = acc.truncated || report.new_rules.truncated;
}

void validate_plan(const BinaryTable& t, const RunPlan& plan) {
  if (plan.delete_count == 0) throw InvalidArgument("delete_count must be at least 1");
  if (plan.runs == 0) throw InvalidArgument("runs must be at least 1");
  std::set<RowId> distinct(plan.blockers.begin(), plan.blockers.end());
  if (distinct.size() != plan.blockers.size()) throw InvalidArgument("blocker set contains duplicate rows");
  if (plan.delete_count > plan.blockers.size())
    throw InvalidArgument("delete_count exceeds the blocker set size");
  for (auto id : plan.blockers)
    if (!t.find_row(id)) throw InvalidArgument("blocker row " + std::to_string(id) + " is not in the table");
  if (plan.delete_count >= t.n_rows()) throw ComputationError("deleting that many rows empties the table");
  const auto combos = binomial(plan.blockers.size(), plan.delete_count);
  if (plan.runs > combos)
    throw InvalidArgument("runs (" + std::to_string(plan.runs) + ") exceeds the " + std::to_string(combos) +
                          " distinct deletion sets available");
}

}  // namespace detail

namespace {

template <typename Task>
void run_parallel(std::size_t count, std::size_t workers, const ProgressHook& progress, Task&& task) {
  std::vector<std::exception_ptr> errors(count);
  std::size_t completed = 0;
  const int threads = static_cast<int>(std::max<std::size_t>(1, workers));
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      task(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
    if (progress) {
#pragma omp critical(rulebasis_progress)
      progress(++completed, count);
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<NewRuleReport> ord_scan(const BinaryTable& t, const SectorRequest& req, const RuleSet& base,
                                    std::size_t workers, const ProgressHook& progress) {
  if (t.n_rows() <= 1) throw ComputationError("one-row deletion needs a table with at least 2 rows");
  std::vector<NewRuleReport> reports(t.n_rows());
  run_parallel(t.n_rows(), workers, progress, [&](std::size_t r) {
    reports[r] = detail::mine_new_rules(t, req, base, {t.row_ids()[r]});
  });
  return reports;
}

std::vector<BlockerScore> blocker_scores(const std::vector<NewRuleReport>& reports) {
  std::vector<BlockerScore> scores;
  for (const auto& rep : reports) {
    for (auto row : rep.deleted_rows) {
      BlockerScore s{row, rep.new_rules.size(), 0};
      for (const auto& [x, r] : rep.new_rules) s.total_support += r.subtable_support;
      scores.push_back(s);
    }
  }
  std::sort(scores.begin(), scores.end(), [](const BlockerScore& a, const BlockerScore& b) {
    if (a.total_support != b.total_support) return a.total_support > b.total_support;
    if (a.rule_count != b.rule_count) return a.rule_count > b.rule_count;
    return a.row < b.row;
  });
  return scores;
}

std::vector<RowId> select_blockers(const std::vector<BlockerScore>& scores, const BlockerPolicy& policy) {
  std::vector<RowId> out;
  if (const auto* top = std::get_if<TopK>(&policy)) {
    for (std::size_t i = 0; i < std::min(top->k, scores.size()); ++i) out.push_back(scores[i].row);
  } else {
    const auto threshold = std::get<MinScore>(policy).threshold;
    for (const auto& s : scores)
      if (s.total_support >= threshold) out.push_back(s.row);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<RowId>> sample_deletion_sets(const RunPlan& plan) {
  if (plan.delete_count == 0) throw InvalidArgument("delete_count must be at least 1");
  if (plan.runs == 0) throw InvalidArgument("runs must be at least 1");
  if (plan.delete_count > plan.blockers.size()) throw InvalidArgument("delete_count exceeds the blocker set size");
  std::vector<RowId> pool = plan.blockers;
  std::sort(pool.begin(), pool.end());
  if (std::adjacent_find(pool.begin(), pool.end()) != pool.end())
    throw InvalidArgument("blocker set contains duplicate rows");

  const std::size_t n = plan.delete_count;
  const std::uint64_t combos = binomial(pool.size(), n);
  if (plan.runs > combos) throw InvalidArgument("runs exceeds the number of distinct deletion sets");

  auto all_subsets = [&] {
    std::vector<std::vector<RowId>> out;
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<RowId> s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = pool[idx[i]];
      out.push_back(std::move(s));
      std::size_t i = n;
      while (i > 0 && idx[i - 1] == pool.size() - n + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
  };

  if (plan.runs == combos) return all_subsets();

  std::mt19937_64 rng(plan.seed);
  constexpr std::uint64_t kEnumerateLimit = 1u << 16;
  if (combos <= kEnumerateLimit && combos <= 4 * plan.runs) {
    auto subsets = all_subsets();
    std::shuffle(subsets.begin(), subsets.end(), rng);
    subsets.resize(plan.runs);
    return subsets;
  }

  std::vector<std::vector<RowId>> out;
  std::set<std::vector<RowId>> seen;
  std::vector<RowId> scratch = pool;
  while (out.size() < plan.runs) {
    for (std::size_t i = 0; i < n; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, scratch.size() - 1);
      std::swap(scratch[i], scratch[pick(rng)]);
    }
    std::vector<RowId> s(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(n));
    std::sort(s.begin(), s.end());
    if (seen.insert(s).second) out.push_back(std::move(s));
  }
  return out;
}

MrdResult mrd_run(const BinaryTable& t, const SectorRequest& req, const RunPlan& plan, std::size_t workers,
                  const ProgressHook& progress) {
  detail::validate_plan(t, plan);
  MrdResult result;
  result.base = mine_sector(t, req);
  const auto sets = sample_deletion_sets(plan);
  result.runs.resize(sets.size());
  run_parallel(sets.size(), workers, progress, [&](std::size_t i) {
    result.runs[i] = detail::mine_new_rules(t, req, result.base, sets[i]);
  });

  RuleSet acc(req.target, req.negated);
  for (const auto& report : result.runs) detail::merge_new_rules(acc, report);
  result.aggregated_new = annotate(acc, t);
  return result;
}

double confidence_floor(std::size_t s, std::size_t n) {
  if (s == 0) throw InvalidArgument("confidence floor needs a positive sub-table support");
  return static_cast<double>(s) / static_cast<double>(s + n);
}

double estimate_confidence(std::size_t N, std::size_t n) {
  if (N <= n) throw InvalidArgument("estimate needs more rows than deleted rows");
  return static_cast<double>(N) / static_cast<double>(N + n);
}

}  // namespace rulebasis
