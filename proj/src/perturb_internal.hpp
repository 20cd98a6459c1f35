#pragma once

#include <vector>

#include "rulebasis/perturb.hpp"

namespace rulebasis::detail {

/// Mines the sector of `t` without `deleted` and keeps the rules absent from `base`.
NewRuleReport mine_new_rules(const BinaryTable& t, const SectorRequest& req, const RuleSet& base,
                             std::vector<RowId> deleted);

void merge_new_rules(RuleSet& acc, const NewRuleReport& report);

void validate_plan(const BinaryTable& t, const RunPlan& plan);

}  // namespace rulebasis::detail
