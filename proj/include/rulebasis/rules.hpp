#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "rulebasis/table.hpp"

namespace rulebasis {

/// X -> b, with counts measured against one table.
struct Rule {
  AttrSet antecedent;
  ColumnIndex consequent = 0;
  /// sup(X ∪ {b}).
  std::size_t support = 0;
  /// sup(X).
  std::size_t antecedent_support = 0;
  /// Deleted row set of the sub-table that produced the rule; empty for full-table rules.
  std::vector<RowId> origin;
  /// sup(X ∪ {b}) on the sub-table named by `origin`; 0 for full-table rules.
  std::size_t subtable_support = 0;

  /// support / antecedent_support, undefined when the antecedent never occurs.
  std::optional<double> confidence() const {
    if (antecedent_support == 0) return std::nullopt;
    return static_cast<double>(support) / static_cast<double>(antecedent_support);
  }
  bool is_implication() const { return antecedent_support > 0 && support == antecedent_support; }

  bool operator==(const Rule&) const = default;
};

/// Measures a rule on `t`, leaving origin fields empty.
Rule measure_rule(const BinaryTable& t, const AttrSet& antecedent, ColumnIndex consequent);

/// Rules sharing one consequent, keyed (and iterated) by antecedent.
class RuleSet {
 public:
  RuleSet() = default;
  explicit RuleSet(ColumnIndex consequent, bool negated = false) : consequent_(consequent), negated_(negated) {}

  ColumnIndex consequent() const { return consequent_; }
  /// The consequent is the complemented column (a ¬b sector).
  bool negated() const { return negated_; }

  /// Inserts or replaces the rule with the same antecedent.
  void put(Rule rule);
  /// Inserts only if the antecedent is new; returns whether it was inserted.
  bool insert(Rule rule);
  bool erase(const AttrSet& antecedent) { return rules_.erase(antecedent) > 0; }

  const Rule* find(const AttrSet& antecedent) const;
  bool contains(const AttrSet& antecedent) const { return rules_.contains(antecedent); }
  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }

  auto begin() const { return rules_.begin(); }
  auto end() const { return rules_.end(); }
  std::vector<Rule> rules() const;

  /// Set when mining found the consequent constant-1 (the only implication has an empty antecedent).
  bool consequent_constant = false;
  /// Set when the transversal cap stopped enumeration early.
  bool truncated = false;

  bool operator==(const RuleSet&) const = default;

 private:
  ColumnIndex consequent_ = 0;
  bool negated_ = false;
  std::map<AttrSet, Rule> rules_;
};

}  // namespace rulebasis
