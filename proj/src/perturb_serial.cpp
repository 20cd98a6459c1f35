// Straight-line versions of the row-deletion loops. No shared helpers with
// the parallel kernels beyond table and mining primitives.

#include "rulebasis/basis.hpp"
#include "rulebasis/error.hpp"
#include "rulebasis/perturb.hpp"
#include "perturb_internal.hpp"

namespace rulebasis::serial {

std::vector<NewRuleReport> ord_scan(const BinaryTable& t, const SectorRequest& req, const RuleSet& base) {
  if (t.n_rows() <= 1) throw ComputationError("one-row deletion needs a table with at least 2 rows");
  std::vector<NewRuleReport> reports;
  for (auto row : t.row_ids()) {
    const std::vector<RowId> deleted{row};
    auto fresh = diff(mine_sector(delete_rows(t, deleted), req), base);
    NewRuleReport report{deleted, RuleSet(req.target, req.negated)};
    for (auto r : fresh.rules()) {
      r.origin = deleted;
      r.subtable_support = r.support;
      report.new_rules.insert(std::move(r));
    }
    report.new_rules.truncated = fresh.truncated;
    reports.push_back(std::move(report));
  }
  return reports;
}

MrdResult mrd_run(const BinaryTable& t, const SectorRequest& req, const RunPlan& plan) {
  detail::validate_plan(t, plan);
  MrdResult result;
  result.base = mine_sector(t, req);
  RuleSet aggregated(req.target, req.negated);
  for (const auto& deleted : sample_deletion_sets(plan)) {
    auto fresh = diff(mine_sector(delete_rows(t, deleted), req), result.base);
    NewRuleReport report{deleted, RuleSet(req.target, req.negated)};
    report.new_rules.truncated = fresh.truncated;
    aggregated.truncated = aggregated.truncated || fresh.truncated;
    for (auto r : fresh.rules()) {
      r.origin = deleted;
      r.subtable_support = r.support;
      report.new_rules.insert(r);
      const Rule* seen = aggregated.find(r.antecedent);
      if (!seen || deleted < seen->origin) aggregated.put(r);
    }
    result.runs.push_back(std::move(report));
  }
  result.aggregated_new = annotate(aggregated, t);
  return result;
}

}  // namespace rulebasis::serial
