#include "rulebasis/oracle.hpp"

#include <algorithm>
#include <cstdint>

#include "rulebasis/error.hpp"

namespace rulebasis::oracle {

namespace {

AttrSet subset_of(const std::vector<ColumnIndex>& universe, std::uint32_t mask) {
  std::vector<ColumnIndex> out;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (mask >> i & 1U) out.push_back(universe[i]);
  return AttrSet(std::move(out));
}

// Row-by-row check, deliberately not using column bitsets.
bool holds_everywhere(const BinaryTable& t, const AttrSet& x, ColumnIndex b) {
  for (std::size_t r = 0; r < t.n_rows(); ++r) {
    bool all = true;
    for (auto c : x) all = all && t.cell(r, c);
    if (all && !t.cell(r, b)) return false;
  }
  return true;
}

std::size_t count_rows(const BinaryTable& t, const AttrSet& x) {
  std::size_t n = 0;
  for (std::size_t r = 0; r < t.n_rows(); ++r) {
    bool all = true;
    for (auto c : x) all = all && t.cell(r, c);
    n += all ? 1 : 0;
  }
  return n;
}

}  // namespace

RuleSet enumerate_antecedents(const BinaryTable& t, ColumnIndex b, std::size_t min_support) {
  if (t.n_cols() > kMaxColumns) throw InvalidArgument("oracle is limited to 16 columns");
  t.check_column(b);
  RuleSet out(b);
  if (count_rows(t, AttrSet{b}) == t.n_rows()) {
    out.consequent_constant = true;
    return out;
  }
  std::vector<ColumnIndex> universe;
  for (ColumnIndex c = 0; c < t.n_cols(); ++c)
    if (c != b) universe.push_back(c);

  auto qualifies = [&](const AttrSet& x) {
    return !x.empty() && holds_everywhere(t, x, b) && count_rows(t, x) > 0 &&
           count_rows(t, x.with(b)) >= min_support;
  };
  const std::uint32_t limit = 1U << universe.size();
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    const auto x = subset_of(universe, mask);
    if (!qualifies(x)) continue;
    bool minimal = true;
    for (std::uint32_t sub = (mask - 1) & mask; sub > 0 && minimal; sub = (sub - 1) & mask)
      if (qualifies(subset_of(universe, sub))) minimal = false;
    if (!minimal) continue;
    Rule r;
    r.antecedent = x;
    r.consequent = b;
    r.antecedent_support = count_rows(t, x);
    r.support = count_rows(t, x.with(b));
    out.insert(std::move(r));
  }
  return out;
}

std::vector<AttrSet> enumerate_transversals(const Hypergraph& h) {
  const auto vertices = h.vertices.to_indices();
  if (vertices.size() > kMaxColumns) throw InvalidArgument("oracle is limited to 16 vertices");
  std::vector<ColumnIndex> universe(vertices.begin(), vertices.end());

  auto hits_all = [&](const AttrSet& x) {
    for (const auto& e : h.edges) {
      bool hit = false;
      for (auto v : x) hit = hit || e.test(v);
      if (!hit) return false;
    }
    return true;
  };
  std::vector<AttrSet> out;
  const std::uint32_t limit = 1U << universe.size();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    const auto x = subset_of(universe, mask);
    if (!hits_all(x)) continue;
    bool minimal = true;
    for (auto v : x)
      if (hits_all(x.without(v))) minimal = false;
    if (minimal) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rulebasis::oracle
