#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rulebasis/perturb.hpp"
#include "rulebasis/relevance.hpp"
#include "rulebasis/rules.hpp"
#include "rulebasis/synth.hpp"
#include "rulebasis/table.hpp"

namespace rulebasis::cli {

using nlohmann::ordered_json;

/// Shortest decimal text that round-trips the double.
std::string format_double(double v);

ordered_json table_json(const BinaryTable& t);
/// `deleted` adds a per-rule "confidence_floor" for rules mined on sub-tables.
ordered_json rule_json(const Rule& r, const BinaryTable& t, std::optional<std::size_t> deleted = std::nullopt);
ordered_json ruleset_json(const RuleSet& rules, const BinaryTable& t,
                          std::optional<std::size_t> deleted = std::nullopt);
ordered_json report_json(const NewRuleReport& report, const BinaryTable& t);
ordered_json scores_json(const std::vector<BlockerScore>& scores);
ordered_json relevance_json(const RelevanceReport& report, const BinaryTable& t);
ordered_json summary_json(const SummaryStats& s);

/// Header comment lines ("# key=value") carrying the resolved configuration.
void write_csv_preamble(std::ostream& out, const ordered_json& config);
void write_rules_csv(std::ostream& out, const std::string& kind, const RuleSet& rules, const BinaryTable& t,
                     bool header);
void write_relevance_csv(std::ostream& out, const RelevanceReport& report, const BinaryTable& t);
void write_scores_csv(std::ostream& out, const std::vector<BlockerScore>& scores);
void write_density_csv(std::ostream& out, const std::vector<DensityStudyRow>& rows);
void write_noise_csv(std::ostream& out, const std::vector<NoiseStudyRow>& rows);

}  // namespace rulebasis::cli
