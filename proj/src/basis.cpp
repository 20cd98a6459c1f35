#include "rulebasis/basis.hpp"

#include <algorithm>
#include <optional>

#include "rulebasis/error.hpp"
#include "rulebasis/miner.hpp"

namespace rulebasis {

namespace {

void require_same_consequent(const RuleSet& a, const RuleSet& b) {
  if (a.consequent() != b.consequent() || a.negated() != b.negated())
    throw InvalidArgument("rule sets have different consequents");
}

std::size_t universe_of(const RuleSet& sector, const std::vector<Rule>& binary) {
  std::size_t n = sector.consequent() + 1;
  for (const auto& [x, r] : sector)
    if (!x.empty()) n = std::max<std::size_t>(n, x.members().back() + 1);
  for (const auto& r : binary) {
    n = std::max<std::size_t>(n, r.consequent + 1);
    if (!r.antecedent.empty()) n = std::max<std::size_t>(n, r.antecedent.members().back() + 1);
  }
  return n;
}

// For each column a, the set {d : a -> d is a binary rule}.
std::vector<Bits> binary_successors(const std::vector<Rule>& binary, std::size_t universe) {
  std::vector<Bits> next(universe, Bits(universe));
  for (const auto& r : binary) {
    if (r.antecedent.size() != 1) throw InvalidArgument("binary rule must have a single antecedent");
    next[r.antecedent.members()[0]].set(r.consequent);
  }
  return next;
}

Bits reach(const AttrSet& x, const std::vector<Bits>& next, std::size_t universe) {
  Bits out = x.to_bits(universe);
  for (auto a : x) out |= next[a];
  return out;
}

bool smaller_key(const AttrSet& a, const AttrSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

RuleSet diff(const RuleSet& a, const RuleSet& b) {
  require_same_consequent(a, b);
  RuleSet out(a.consequent(), a.negated());
  for (const auto& [x, r] : a)
    if (!b.contains(x)) out.insert(r);
  return out;
}

RuleSet unite(const RuleSet& a, const RuleSet& b) {
  require_same_consequent(a, b);
  RuleSet out = a;
  for (const auto& [x, r] : b) {
    const Rule* existing = out.find(x);
    if (!existing || r.support > existing->support) out.put(r);
  }
  out.consequent_constant = a.consequent_constant || b.consequent_constant;
  out.truncated = a.truncated || b.truncated;
  return out;
}

bool dominates(const AttrSet& y, const AttrSet& x, const std::vector<Rule>& binary) {
  for (auto v : y) {
    if (x.contains(v)) continue;
    bool reachable = false;
    for (const auto& r : binary) {
      if (r.consequent == v && x.contains(r.antecedent.members().front())) {
        reachable = true;
        break;
      }
    }
    if (!reachable) return false;
  }
  return true;
}

RuleSet aggregate(const RuleSet& sector, const std::vector<Rule>& binary) {
  const std::size_t universe = universe_of(sector, binary);
  const auto next = binary_successors(binary, universe);

  // Antecedents and their reach packed into flat word rows for the pairwise scan.
  const std::size_t words = Bits(universe).word_count();
  std::vector<const Rule*> rules;
  std::vector<Bits::Word> members, reached;
  for (const auto& [x, r] : sector) {
    rules.push_back(&r);
    const auto m = x.to_bits(universe);
    const auto h = reach(x, next, universe);
    members.insert(members.end(), m.words().begin(), m.words().end());
    reached.insert(reached.end(), h.words().begin(), h.words().end());
  }
  auto subset = [&](const std::vector<Bits::Word>& a, std::size_t i, const std::vector<Bits::Word>& b, std::size_t j) {
    for (std::size_t w = 0; w < words; ++w)
      if (a[i * words + w] & ~b[j * words + w]) return false;
    return true;
  };

  RuleSet out(sector.consequent(), sector.negated());
  out.consequent_constant = sector.consequent_constant;
  out.truncated = sector.truncated;
  // A dominator's smallest member lies in the reach of the rule it dominates.
  std::vector<std::vector<std::size_t>> by_first(universe);
  for (std::size_t j = 0; j < rules.size(); ++j)
    if (!rules[j]->antecedent.empty()) by_first[rules[j]->antecedent.members().front()].push_back(j);

  for (std::size_t i = 0; i < rules.size(); ++i) {
    bool dropped = false;
    const Bits h = reach(rules[i]->antecedent, next, universe);
    for (auto v = h.find_first(); v != Bits::npos && !dropped; v = h.find_next(v)) {
      for (std::size_t j : by_first[v]) {
        if (i == j || !subset(members, j, reached, i)) continue;
        const bool mutual = subset(members, i, reached, j);
        dropped = !mutual || smaller_key(rules[j]->antecedent, rules[i]->antecedent);
        if (dropped) break;
      }
    }
    if (!dropped) out.insert(*rules[i]);
  }
  return out;
}

RuleSet annotate(const RuleSet& rules, const BinaryTable& t) {
  const ColumnIndex b = rules.consequent();
  t.check_column(b);
  std::optional<BinaryTable> complemented;
  if (rules.negated() != t.is_negated(b)) complemented = negate_column(t, b);
  const BinaryTable& table = complemented ? *complemented : t;

  RuleSet out(b, rules.negated());
  out.consequent_constant = rules.consequent_constant;
  out.truncated = rules.truncated;
  for (const auto& [x, r] : rules) {
    Rule m = measure_rule(table, x, b);
    m.origin = r.origin;
    m.subtable_support = r.subtable_support;
    out.insert(std::move(m));
  }
  return out;
}

}  // namespace rulebasis
