#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "treesearch/rational.hpp"

namespace treesearch {

// Undirected tree edge, stored with u < v. Edge ids are positions in the
// edge list and double as query labels in strategies.
struct Edge {
  int u = 0;
  int v = 0;
  Rat cost;
};

// An edge-weighted tree on vertices 0..n-1 with non-negative rational costs.
// Construction validates everything (range, duplicates, costs, acyclicity +
// connectivity); an instance that exists is well-formed.
class WeightedTree {
 public:
  // Builds and validates. Edge endpoints may arrive in either order.
  WeightedTree(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[static_cast<size_t>(id)]; }

  // (neighbor, edge id) pairs, ascending edge id.
  const std::vector<std::pair<int, int>>& adjacent(int v) const {
    return adj_[static_cast<size_t>(v)];
  }
  int degree(int v) const { return static_cast<int>(adj_[static_cast<size_t>(v)].size()); }
  int max_degree() const;

  bool is_path() const { return max_degree() <= 2; }
  // At most one vertex of degree >= 3 (paths are degenerate spiders here).
  bool is_spider() const;

  // Copy with one edge cost replaced (still validated non-negative).
  WeightedTree with_edge_cost(int edge_id, Rat cost) const;

  // Canonical text form: "n\n" then one "u v c" line per edge in id order.
  std::string serialize() const;
  // FNV-1a 64 over the canonical text, as 16 hex digits.
  std::string digest() const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
};

// Instance text: line 1 is n, then n-1 lines "u v c" (c integer or p/q, q > 0).
// Throws InvalidInstance with a 1-based line number on bad input.
WeightedTree parse_instance(std::istream& in);
WeightedTree parse_instance(const std::string& text);

// Connected-sub-instance extraction. `vertices`/`edge_ids` map new ids back to
// the original tree (both ascending, so the mapping is order-independent).
struct InducedSubtree {
  WeightedTree tree;
  std::vector<int> vertices;   // new vertex id -> old vertex id
  std::vector<int> edge_ids;   // new edge id -> old edge id
};
// `keep` must be non-empty and induce a connected subgraph; throws
// PreconditionError otherwise. Duplicates in `keep` are rejected.
InducedSubtree induced_subtree(const WeightedTree& tree, const std::vector<int>& keep);

// The two components of T - e; `.first` contains edge(e).u. Vertex lists ascend.
std::pair<std::vector<int>, std::vector<int>> split_by_edge(const WeightedTree& tree,
                                                            int edge_id);

}  // namespace treesearch
