#include "rulebasis/dualizer.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "rulebasis/error.hpp"

namespace rulebasis {

Hypergraph Hypergraph::from_sets(std::size_t universe, const std::vector<AttrSet>& edges) {
  Hypergraph h{Bits(universe), {}};
  for (const auto& e : edges) {
    for (auto v : e) {
      if (v >= universe) throw InvalidArgument("edge vertex outside the universe");
      h.vertices.set(v);
    }
    h.edges.push_back(e.to_bits(universe));
  }
  return h;
}

std::vector<Bits> minimize_edges(std::vector<Bits> edges) {
  std::vector<std::pair<std::size_t, Bits>> keyed;
  keyed.reserve(edges.size());
  for (auto& e : edges) {
    auto c = e.count();
    keyed.emplace_back(c, std::move(e));
  }
  std::sort(keyed.begin(), keyed.end());
  keyed.erase(std::unique(keyed.begin(), keyed.end()), keyed.end());

  std::vector<Bits> kept;
  for (auto& [count, e] : keyed) {
    bool dominated = false;
    for (const auto& k : kept) {
      if (k.is_subset_of(e)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(std::move(e));
  }
  return kept;
}

bool is_transversal(const Hypergraph& h, const Bits& xs) {
  for (const auto& e : h.edges)
    if (!e.intersects(xs)) return false;
  return true;
}

bool is_transversal(const Hypergraph& h, const AttrSet& xs) {
  return is_transversal(h, xs.to_bits(h.vertices.size()));
}

namespace {

class Mmcs {
 public:
  Mmcs(const Hypergraph& h, const TransversalVisitor& visit)
      : edges_(minimize_edges(h.edges)), visit_(visit), n_(h.vertices.size()), m_(edges_.size()) {
    occ_.assign(n_, Bits(m_));
    for (std::size_t e = 0; e < m_; ++e)
      for (auto v = edges_[e].find_first(); v != Bits::npos; v = edges_[e].find_next(v)) occ_[v].set(e);
    grow(0);
    cand_[0] = h.vertices;
    uncov_[0] = Bits::ones(m_);
  }

  bool run() { return recurse(0); }

 private:
  void grow(std::size_t depth) {
    while (cand_.size() <= depth) {
      const std::size_t d = cand_.size();
      cand_.emplace_back(n_);
      branch_.emplace_back();
      uncov_.emplace_back(m_);
      crit_.emplace_back(d, Bits(m_));
    }
  }

  bool recurse(std::size_t d) {
    if (uncov_[d].none()) return visit_(current_);

    // Branch on the uncovered edge with the fewest candidate vertices.
    std::size_t best = 0;
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    const Bits& uncov = uncov_[d];
    for (auto e = uncov.find_first(); e != Bits::npos; e = uncov.find_next(e)) {
      const auto c = edges_[e].and_count(cand_[d]);
      if (c < best_count) {
        best_count = c;
        best = e;
        if (c == 0) return true;
      }
    }

    branch_[d] = edges_[best];
    branch_[d] &= cand_[d];
    cand_[d] -= branch_[d];
    grow(d + 1);
    const Bits& branch = branch_[d];
    for (auto v = branch.find_first(); v != Bits::npos; v = branch.find_next(v)) {
      const Bits& hit = occ_[v];
      bool minimal = true;
      for (std::size_t i = 0; i < d; ++i) {
        crit_[d + 1][i] = crit_[d][i];
        crit_[d + 1][i] -= hit;
        if (crit_[d + 1][i].none()) {
          minimal = false;
          break;
        }
      }
      if (minimal) {
        crit_[d + 1][d] = uncov_[d];
        crit_[d + 1][d] &= hit;
        uncov_[d + 1] = uncov_[d];
        uncov_[d + 1] -= hit;
        cand_[d + 1] = cand_[d];
        current_.push_back(static_cast<ColumnIndex>(v));
        const bool keep_going = recurse(d + 1);
        current_.pop_back();
        if (!keep_going) return false;
      }
      cand_[d].set(v);
    }
    return true;
  }

  std::vector<Bits> edges_;
  const TransversalVisitor& visit_;
  std::size_t n_;
  std::size_t m_;
  std::vector<Bits> occ_;
  std::vector<ColumnIndex> current_;
  // Per-depth scratch, reused across siblings. Deques keep references stable while deeper levels grow.
  std::deque<Bits> cand_;
  std::deque<Bits> branch_;
  std::deque<Bits> uncov_;
  std::deque<std::vector<Bits>> crit_;
};

}  // namespace

bool enumerate_minimal_transversals(const Hypergraph& h, const TransversalVisitor& visit) {
  for (const auto& e : h.edges)
    if (e.size() != h.vertices.size() || !e.is_subset_of(h.vertices))
      throw InvalidArgument("hypergraph edge is not a subset of its vertices");
  Mmcs search(h, visit);
  return search.run();
}

TransversalResult minimal_transversals(const Hypergraph& h, TransversalOptions options) {
  TransversalResult result;
  enumerate_minimal_transversals(h, [&](std::span<const ColumnIndex> set) {
    if (options.max_results && result.sets.size() == options.max_results) {
      result.truncated = true;
      return false;
    }
    result.sets.emplace_back(std::vector<ColumnIndex>(set.begin(), set.end()));
    return true;
  });
  std::sort(result.sets.begin(), result.sets.end());
  return result;
}

}  // namespace rulebasis
