#include "cli/output.hpp"

#include <array>
#include <charconv>

namespace rulebasis::cli {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

namespace {

ordered_json labels_json(const AttrSet& xs, const BinaryTable& t) {
  auto arr = ordered_json::array();
  for (auto c : xs) arr.push_back(t.col_labels()[c]);
  return arr;
}

std::string joined_labels(const AttrSet& xs, const BinaryTable& t) {
  std::string s;
  for (auto c : xs) {
    if (!s.empty()) s += ' ';
    s += t.col_labels()[c];
  }
  return s;
}

std::string consequent_label(const RuleSet& rules, const BinaryTable& t) {
  const auto& label = t.col_labels()[rules.consequent()];
  return rules.negated() ? "!" + label : label;
}

}  // namespace

ordered_json table_json(const BinaryTable& t) {
  ordered_json j;
  j["rows"] = t.n_rows();
  j["cols"] = t.n_cols();
  j["density"] = t.n_rows() && t.n_cols() ? ordered_json(density(t)) : ordered_json(nullptr);
  return j;
}

ordered_json rule_json(const Rule& r, const BinaryTable& t, std::optional<std::size_t> deleted) {
  ordered_json j;
  j["antecedent"] = labels_json(r.antecedent, t);
  j["consequent"] = t.col_labels()[r.consequent];
  j["support"] = r.support;
  j["antecedent_support"] = r.antecedent_support;
  const auto conf = r.confidence();
  j["confidence"] = conf ? ordered_json(*conf) : ordered_json(nullptr);
  j["origin"] = r.origin;
  j["subtable_support"] = r.subtable_support;
  if (deleted) {
    j["confidence_floor"] =
        r.subtable_support ? ordered_json(confidence_floor(r.subtable_support, *deleted)) : ordered_json(nullptr);
  }
  return j;
}

ordered_json ruleset_json(const RuleSet& rules, const BinaryTable& t, std::optional<std::size_t> deleted) {
  ordered_json j;
  j["consequent"] = consequent_label(rules, t);
  j["negated"] = rules.negated();
  j["consequent_constant"] = rules.consequent_constant;
  j["truncated"] = rules.truncated;
  j["count"] = rules.size();
  auto arr = ordered_json::array();
  for (const auto& [x, r] : rules) {
    arr.push_back(rule_json(r, t, deleted));
    arr.back()["consequent"] = j["consequent"];
  }
  j["rules"] = std::move(arr);
  return j;
}

ordered_json report_json(const NewRuleReport& report, const BinaryTable& t) {
  ordered_json j;
  j["deleted_rows"] = report.deleted_rows;
  j["new_rules"] = ruleset_json(report.new_rules, t);
  return j;
}

ordered_json scores_json(const std::vector<BlockerScore>& scores) {
  auto arr = ordered_json::array();
  for (const auto& s : scores)
    arr.push_back(ordered_json{{"row", s.row}, {"rule_count", s.rule_count}, {"total_support", s.total_support}});
  return arr;
}

ordered_json relevance_json(const RelevanceReport& report, const BinaryTable& t) {
  auto arr = ordered_json::array();
  for (const auto& rec : report.ranking) {
    arr.push_back(ordered_json{{"attribute", t.col_labels()[rec.attribute]},
                               {"tsup_b", rec.tsup_b},
                               {"tsup_neg", rec.tsup_neg},
                               {"rel", rec.rel}});
  }
  return arr;
}

ordered_json summary_json(const SummaryStats& s) {
  return ordered_json{{"count", s.count}, {"min", s.min}, {"max", s.max}, {"average", s.mean},
                      {"p50", s.p50},     {"p75", s.p75}, {"p90", s.p90}};
}

void write_csv_preamble(std::ostream& out, const ordered_json& config) {
  for (const auto& [key, value] : config.items())
    out << "# " << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
}

void write_rules_csv(std::ostream& out, const std::string& kind, const RuleSet& rules, const BinaryTable& t,
                     bool header) {
  if (header) out << "kind,antecedent,consequent,support,antecedent_support,confidence,origin,subtable_support\n";
  const auto consequent = consequent_label(rules, t);
  for (const auto& [x, r] : rules) {
    const auto conf = r.confidence();
    std::string origin;
    for (auto id : r.origin) origin += (origin.empty() ? "" : " ") + std::to_string(id);
    out << kind << ',' << joined_labels(x, t) << ',' << consequent << ',' << r.support << ','
        << r.antecedent_support << ',' << (conf ? format_double(*conf) : "") << ',' << origin << ','
        << r.subtable_support << '\n';
  }
}

void write_relevance_csv(std::ostream& out, const RelevanceReport& report, const BinaryTable& t) {
  out << "attribute,tsup_b,tsup_neg,rel\n";
  for (const auto& rec : report.ranking) {
    out << t.col_labels()[rec.attribute] << ',' << format_double(rec.tsup_b) << ',' << format_double(rec.tsup_neg)
        << ',' << format_double(rec.rel) << '\n';
  }
}

void write_scores_csv(std::ostream& out, const std::vector<BlockerScore>& scores) {
  out << "row,rule_count,total_support\n";
  for (const auto& s : scores) out << s.row << ',' << s.rule_count << ',' << s.total_support << '\n';
}

void write_density_csv(std::ostream& out, const std::vector<DensityStudyRow>& rows) {
  out << "Density,Tables,Pairs,Min,Max,Average,50th percentile,75th percentile,90th percentile\n";
  for (const auto& r : rows) {
    out << format_double(r.density) << ',' << r.tables << ',' << r.rel.count << ',' << format_double(r.rel.min) << ','
        << format_double(r.rel.max) << ',' << format_double(r.rel.mean) << ',' << format_double(r.rel.p50) << ','
        << format_double(r.rel.p75) << ',' << format_double(r.rel.p90) << '\n';
  }
}

void write_noise_csv(std::ostream& out, const std::vector<NoiseStudyRow>& rows) {
  out << "noise,trials,recovery_rate,mean_rel_injected,mean_rel_other\n";
  for (const auto& r : rows) {
    out << format_double(r.noise) << ',' << r.trials << ',' << format_double(r.recovery_rate) << ','
        << format_double(r.mean_rel_injected) << ',' << format_double(r.mean_rel_other) << '\n';
  }
}

}  // namespace rulebasis::cli
