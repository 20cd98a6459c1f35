#include "rulebasis/miner.hpp"

#include <optional>

#include "rulebasis/error.hpp"

namespace rulebasis {

Rule measure_rule(const BinaryTable& t, const AttrSet& antecedent, ColumnIndex consequent) {
  t.check_column(consequent);
  if (antecedent.contains(consequent)) throw InvalidArgument("consequent belongs to the antecedent");
  auto rows = cover(t, antecedent);
  Rule r;
  r.antecedent = antecedent;
  r.consequent = consequent;
  r.antecedent_support = rows.count();
  r.support = rows.and_count(t.column(consequent));
  return r;
}

void RuleSet::put(Rule rule) {
  if (rule.consequent != consequent_) throw InvalidArgument("rule consequent does not match the rule set");
  auto key = rule.antecedent;
  rules_.insert_or_assign(std::move(key), std::move(rule));
}

bool RuleSet::insert(Rule rule) {
  if (rule.consequent != consequent_) throw InvalidArgument("rule consequent does not match the rule set");
  auto key = rule.antecedent;
  return rules_.try_emplace(std::move(key), std::move(rule)).second;
}

const Rule* RuleSet::find(const AttrSet& antecedent) const {
  auto it = rules_.find(antecedent);
  return it == rules_.end() ? nullptr : &it->second;
}

std::vector<Rule> RuleSet::rules() const {
  std::vector<Rule> out;
  out.reserve(rules_.size());
  for (const auto& [k, r] : rules_) out.push_back(r);
  return out;
}

Hypergraph build_consequent_hypergraph(const BinaryTable& t, ColumnIndex b) {
  t.check_column(b);
  auto vertices = Bits::ones(t.n_cols());
  vertices.reset(b);
  std::vector<Bits> edges;
  for (std::size_t r = 0; r < t.n_rows(); ++r) {
    if (t.cell(r, b)) continue;
    edges.push_back(vertices - t.row(r));
  }
  return Hypergraph{std::move(vertices), minimize_edges(std::move(edges))};
}

RuleSet mine_sector(const BinaryTable& t, const SectorRequest& req) {
  t.check_column(req.target);
  if (req.min_support < 1) throw InvalidArgument("min_support must be at least 1");
  if (t.n_rows() == 0) throw ComputationError("cannot mine an empty table");

  std::optional<BinaryTable> complemented;
  if (req.negated) complemented = negate_column(t, req.target);
  const BinaryTable& table = complemented ? *complemented : t;
  const ColumnIndex b = req.target;

  RuleSet out(b, req.negated);
  auto h = build_consequent_hypergraph(table, b);
  if (h.edges.empty()) {
    out.consequent_constant = true;
    return out;
  }

  const Bits& target_rows = table.column(b);
  // A column with too little co-support with b cannot sit in any reported
  // antecedent. Minimal transversals inside the kept columns are exactly the
  // minimal transversals of the edges cut down to those columns.
  Bits keep = h.vertices;
  for (auto c = keep.find_first(); c != Bits::npos; c = keep.find_next(c))
    if (table.column(static_cast<ColumnIndex>(c)).and_count(target_rows) < req.min_support) keep.reset(c);
  if (keep != h.vertices) {
    for (auto& e : h.edges) e &= keep;
    h.edges = minimize_edges(std::move(h.edges));
    h.vertices = keep;
  }
  std::size_t seen = 0;
  Bits rows(table.n_rows());
  enumerate_minimal_transversals(h, [&](std::span<const ColumnIndex> xs) {
    if (req.max_transversals && seen == req.max_transversals) {
      out.truncated = true;
      return false;
    }
    ++seen;
    rows = table.column(xs[0]);
    for (std::size_t i = 1; i < xs.size(); ++i) rows &= table.column(xs[i]);
    const auto sup = rows.and_count(target_rows);
    if (sup >= req.min_support) {
      Rule r;
      r.antecedent = AttrSet(std::vector<ColumnIndex>(xs.begin(), xs.end()));
      r.consequent = b;
      r.antecedent_support = rows.count();
      r.support = sup;
      out.insert(std::move(r));
    }
    return true;
  });
  return out;
}

std::vector<Rule> binary_part(const BinaryTable& t, std::size_t min_support) {
  std::vector<Rule> out;
  for (ColumnIndex a = 0; a < t.n_cols(); ++a) {
    const auto sup_a = t.column(a).count();
    if (sup_a == 0 || sup_a < min_support) continue;
    for (ColumnIndex d = 0; d < t.n_cols(); ++d) {
      if (d == a || !t.column(a).is_subset_of(t.column(d))) continue;
      Rule r;
      r.antecedent = AttrSet{a};
      r.consequent = d;
      r.support = sup_a;
      r.antecedent_support = sup_a;
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<std::pair<ColumnIndex, bool>> constant_columns(const BinaryTable& t) {
  if (t.n_rows() == 0) throw ComputationError("constant columns of an empty table are undefined");
  std::vector<std::pair<ColumnIndex, bool>> out;
  for (ColumnIndex c = 0; c < t.n_cols(); ++c) {
    const auto ones = t.column(c).count();
    if (ones == 0) out.emplace_back(c, false);
    if (ones == t.n_rows()) out.emplace_back(c, true);
  }
  return out;
}

}  // namespace rulebasis
