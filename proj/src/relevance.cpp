#include "rulebasis/relevance.hpp"

#include <algorithm>

#include "rulebasis/error.hpp"
#include "rulebasis/miner.hpp"

namespace rulebasis {

const AttributeRelevance* RelevanceReport::find(ColumnIndex a) const {
  for (const auto& r : ranking)
    if (r.attribute == a) return &r;
  return nullptr;
}

double total_support(const RuleSet& delta, ColumnIndex a) {
  double sum = 0.0;
  for (const auto& [x, r] : delta) {
    if (!x.contains(a)) continue;
    const auto conf = r.confidence();
    if (!conf) continue;
    sum += static_cast<double>(r.antecedent_support) / static_cast<double>(x.size()) * *conf;
  }
  return sum;
}

double relevance(double tsup_b, double tsup_neg) {
  if (tsup_b < 0.0 || tsup_neg < 0.0) throw InvalidArgument("total supports must be nonnegative");
  return tsup_b / (tsup_neg + 1.0);
}

std::vector<RowId> plan_blockers(const BinaryTable& t, const SectorRequest& req, const MiningConfig& config) {
  if (!config.blockers) return t.row_ids();
  const auto base = mine_sector(t, req);
  return select_blockers(blocker_scores(ord_scan(t, req, base, config.workers)), *config.blockers);
}

Basis build_delta(const BinaryTable& t, const SectorRequest& req, const MiningConfig& config,
                  const std::vector<RowId>& blockers) {
  RuleSet sector;
  if (config.runs == 0) {
    sector = mine_sector(t, req);
  } else {
    const RunPlan plan{blockers, config.delete_count, config.runs, config.seed};
    auto mrd = mrd_run(t, req, plan, config.workers);
    sector = unite(mrd.base, mrd.aggregated_new);
  }
  Basis basis{std::move(sector), binary_part(t, config.min_support), false};
  basis.sector = annotate(aggregate(basis.sector, basis.binary), t);
  basis.aggregated = true;
  return basis;
}

RelevanceReport rank_attributes(const BinaryTable& t, ColumnIndex b, const MiningConfig& config) {
  t.check_column(b);
  SectorRequest req{b, config.min_support, false, config.max_transversals};
  SectorRequest neg_req = req;
  neg_req.negated = true;

  const auto blockers = config.runs == 0 ? std::vector<RowId>{} : plan_blockers(t, req, config);
  RelevanceReport report;
  report.target = b;
  report.delta_b = build_delta(t, req, config, blockers);
  report.delta_neg = build_delta(t, neg_req, config, blockers);

  for (ColumnIndex a = 0; a < t.n_cols(); ++a) {
    if (a == b) continue;
    AttributeRelevance rec;
    rec.attribute = a;
    rec.tsup_b = total_support(report.delta_b.sector, a);
    rec.tsup_neg = total_support(report.delta_neg.sector, a);
    rec.rel = relevance(rec.tsup_b, rec.tsup_neg);
    report.ranking.push_back(rec);
  }
  std::sort(report.ranking.begin(), report.ranking.end(),
            [](const AttributeRelevance& x, const AttributeRelevance& y) {
              if (x.rel != y.rel) return x.rel > y.rel;
              if (x.tsup_b != y.tsup_b) return x.tsup_b > y.tsup_b;
              return x.attribute < y.attribute;
            });
  return report;
}

}  // namespace rulebasis
