#pragma once

#include <vector>

#include "rulebasis/rules.hpp"
#include "rulebasis/table.hpp"

namespace rulebasis {

/// A sector of rules together with the binary implications it is trimmed against.
struct Basis {
  RuleSet sector;
  std::vector<Rule> binary;
  bool aggregated = false;
};

/// Rules of `a` whose antecedent does not occur in `b`.
RuleSet diff(const RuleSet& a, const RuleSet& b);

/// Antecedent-level union. On collision the rule with the larger support
/// wins; ties keep the entry from `a`.
RuleSet unite(const RuleSet& a, const RuleSet& b);

/// True when Y -> b together with `binary` derives X -> b: every y in Y is
/// in X or reachable from some x in X by one binary rule.
bool dominates(const AttrSet& y, const AttrSet& x, const std::vector<Rule>& binary);

/// Trims `sector` to its undominated rules. A rule is dropped when another
/// rule dominates it, except that of two mutually dominating rules the one
/// with the smaller (size, lexicographic) antecedent is kept.
RuleSet aggregate(const RuleSet& sector, const std::vector<Rule>& binary);

/// Recomputes support and confidence of every rule on `t`; origins are kept.
RuleSet annotate(const RuleSet& rules, const BinaryTable& t);

}  // namespace rulebasis
