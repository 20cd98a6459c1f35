#pragma once

#include <cstddef>
#include <vector>

#include "rulebasis/dualizer.hpp"
#include "rulebasis/rules.hpp"
#include "rulebasis/table.hpp"

/// Exhaustive reference enumerations for tests. Both scan every subset and
/// refuse inputs above a fixed size.
namespace rulebasis::oracle {

inline constexpr std::size_t kMaxColumns = 16;

/// Minimal nonempty X with no violating row, sup(X) > 0 and
/// sup(X ∪ {b}) >= min_support, found by scanning all column subsets.
/// A constant-1 consequent yields an empty set with `consequent_constant`.
RuleSet enumerate_antecedents(const BinaryTable& t, ColumnIndex b, std::size_t min_support);

/// All minimal transversals by scanning every vertex subset, sorted lexicographically.
std::vector<AttrSet> enumerate_transversals(const Hypergraph& h);

}  // namespace rulebasis::oracle
