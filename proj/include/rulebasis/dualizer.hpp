#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rulebasis/bits.hpp"
#include "rulebasis/table.hpp"

namespace rulebasis {

/// Family of vertex sets over a universe of column positions. `vertices`
/// and every edge are bitsets of the same width.
struct Hypergraph {
  Bits vertices;
  std::vector<Bits> edges;

  static Hypergraph from_sets(std::size_t universe, const std::vector<AttrSet>& edges);
};

/// Drops duplicate edges and every edge that strictly contains another.
/// Result is ordered by (cardinality, content) and has the same transversals.
std::vector<Bits> minimize_edges(std::vector<Bits> edges);

bool is_transversal(const Hypergraph& h, const Bits& xs);
bool is_transversal(const Hypergraph& h, const AttrSet& xs);

struct TransversalOptions {
  /// Stop after this many transversals; 0 means unlimited.
  std::size_t max_results = 0;
};

struct TransversalResult {
  std::vector<AttrSet> sets;
  /// True when `max_results` cut the enumeration short.
  bool truncated = false;
};

/// Receives each minimal transversal as an unsorted list of vertices.
/// Returning false stops the enumeration.
using TransversalVisitor = std::function<bool(std::span<const ColumnIndex>)>;

/// Depth-first minimal hitting set enumeration (MMCS scheme): grows one
/// partial solution, keeping for each member the edges it alone covers, so
/// every emitted set is minimal without a final check. Memory is linear in
/// the recursion depth. Emission order follows the search, not set order.
/// Returns false if the visitor stopped the enumeration.
bool enumerate_minimal_transversals(const Hypergraph& h, const TransversalVisitor& visit);

/// All minimal transversals, sorted lexicographically by member lists.
/// Empty edge family yields {∅}; a family containing the empty edge yields nothing.
TransversalResult minimal_transversals(const Hypergraph& h, TransversalOptions options = {});

}  // namespace rulebasis
