#pragma once

#include <functional>
#include <string>
#include <vector>

#include "treesearch/rational.hpp"
#include "treesearch/tree.hpp"

namespace treesearch {

// Rooted binary strategy over an instance: internal nodes query an edge,
// leaves name a vertex. Nodes live in an arena; ids are arena positions.
// For an internal node, child_u is taken when the target lies on the side of
// the queried edge's smaller endpoint (the stored Edge::u), child_v otherwise.
class DecisionTree {
 public:
  struct Node {
    int query = -1;    // edge id, or -1 for a leaf
    int child_u = -1;  // side of edge(query).u
    int child_v = -1;  // side of edge(query).v
    int leaf = -1;     // vertex id, or -1 for an internal node
    bool is_leaf() const { return query < 0; }
  };

  DecisionTree() = default;

  static DecisionTree single_leaf(int vertex);

  int add_leaf(int vertex);
  int add_query(int edge_id, int child_u, int child_v);

  int root() const { return root_; }
  void set_root(int id) { root_ = id; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int id) const { return nodes_[static_cast<size_t>(id)]; }
  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  std::vector<Node> nodes_;
  int root_ = -1;
};

// Strategy JSON: {"root": id, "nodes": [{"leaf": v} | {"query": e, "on_u": id,
// "on_v": id}, ...]}. from_json throws InvalidStrategy on shape/id-range
// problems; semantic checks against an instance belong to validate().
std::string strategy_to_json(const DecisionTree& d);
DecisionTree strategy_from_json(const std::string& text);

// validate() outcome. On failure, `error` names the first violated invariant
// and `node` is the offending arena id (-1 when the problem is global).
struct ValidationResult {
  bool ok = true;
  std::string error;
  int node = -1;
  explicit operator bool() const { return ok; }
};

// Candidate-set simulation from the full vertex set: every queried edge must
// lie inside the current candidate component, branches intersect with the
// edge's sides, leaves must hold exactly their own vertex. Also checks arena
// shape: every node reachable exactly once, n leaves in bijection with V,
// n-1 internal nodes. Out-of-range edge/vertex references are verdicts, not
// exceptions (a strategy for some other instance is merely invalid).
ValidationResult validate(const WeightedTree& tree, const DecisionTree& d);

struct CostProfile {
  std::vector<Rat> per_vertex;      // indexed by vertex id
  Rat worst_case;
  std::vector<int> argmax_vertices; // ascending
};

// Root-to-leaf cost sums. evaluate() rejects invalid strategies by throwing
// InvalidStrategy; the _unchecked form trusts the caller (solver outputs).
CostProfile evaluate(const WeightedTree& tree, const DecisionTree& d);
CostProfile evaluate_unchecked(const WeightedTree& tree, const DecisionTree& d);

// Runs the strategy against a hidden target, answering queries truthfully;
// returns the vertex named by the leaf reached. For a valid strategy this is
// the identity — the form the soundness tests assert.
int identify(const WeightedTree& tree, const DecisionTree& d, int target);

// Restriction of a strategy to a connected vertex subset: nodes whose queried
// edge has a side disjoint from `keep` are spliced out (the dead branch is
// dropped), yielding a valid strategy for the induced sub-instance, never
// costlier per vertex than the original. Returned in induced-instance ids.
struct RestrictedStrategy {
  InducedSubtree instance;
  DecisionTree strategy;
};
RestrictedStrategy subtree_restrict(const WeightedTree& tree, const DecisionTree& d,
                                    const std::vector<int>& keep);

// Solver plumbing: appends a remapped copy of `src` (a strategy over an
// induced sub-instance of `dst_tree`) into `dst`, translating vertices via
// vmap and edges via emap (both new->old, as produced by induced_subtree) and
// flipping a node's children when re-canonicalization swaps the edge's
// endpoint order. leaf_override, when set, is consulted with the translated
// vertex id and may return a prebuilt dst node to graft in place of that
// leaf (-1 keeps the plain leaf). Returns the new root's id.
using LeafOverride = std::function<int(int)>;
int graft_strategy(DecisionTree& dst, const DecisionTree& src,
                   const WeightedTree& src_tree, const WeightedTree& dst_tree,
                   const std::vector<int>& vmap, const std::vector<int>& emap,
                   const LeafOverride& leaf_override = {});

}  // namespace treesearch
