#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rulebasis/dualizer.hpp"
#include "rulebasis/rules.hpp"
#include "rulebasis/table.hpp"

namespace rulebasis {

struct SectorRequest {
  ColumnIndex target = 0;
  /// Threshold on the rule support sup(X ∪ {b}); at least 1.
  std::size_t min_support = 1;
  /// Mine the complement column ¬b instead of b.
  bool negated = false;
  /// Cap on enumerated transversals per sector; 0 means unlimited.
  std::size_t max_transversals = 0;
};

/// Vertices are all columns but `b`; each row with b = 0 contributes the
/// set of its other zero columns. X -> b holds on every row exactly when X
/// hits all of these edges. Edges are returned minimized.
Hypergraph build_consequent_hypergraph(const BinaryTable& t, ColumnIndex b);

/// Minimal nonempty antecedents X of implications X -> b with
/// sup(X ∪ {b}) >= min_support. For a negated request the table is
/// complemented at b first and the rules are measured on that table.
RuleSet mine_sector(const BinaryTable& t, const SectorRequest& req);

/// Single-antecedent implications a -> d (a != d) with sup({a, d}) >= min_support.
std::vector<Rule> binary_part(const BinaryTable& t, std::size_t min_support);

/// Columns that are all 0 or all 1, paired with that value.
std::vector<std::pair<ColumnIndex, bool>> constant_columns(const BinaryTable& t);

}  // namespace rulebasis
