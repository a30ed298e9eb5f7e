#pragma once

// Shared test scaffolding: exhaustive free-tree shapes (for oracle sweeps),
// random structures, and the rewrites the property suite compares against.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "treesearch/decision_tree.hpp"
#include "treesearch/errors.hpp"
#include "treesearch/generators.hpp"
#include "treesearch/knapsack.hpp"
#include "treesearch/tree.hpp"

namespace test_support {

using treesearch::CostRange;
using treesearch::DecisionTree;
using treesearch::Edge;
using treesearch::KnapsackInstance;
using treesearch::Rat;
using treesearch::Rng;
using treesearch::WeightedTree;

using EdgeList = std::vector<std::pair<int, int>>;

// Canonical form of an unlabeled tree: minimum over roots of the sorted
// parenthesis encoding. Quadratic, but shapes here have at most 8 vertices.
inline std::string shape_canonical(const EdgeList& edges, int n) {
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (auto [u, v] : edges) {
    adj[static_cast<size_t>(u)].push_back(v);
    adj[static_cast<size_t>(v)].push_back(u);
  }
  auto encode = [&](auto&& self, int v, int parent) -> std::string {
    std::vector<std::string> parts;
    for (int w : adj[static_cast<size_t>(v)]) {
      if (w != parent) parts.push_back(self(self, w, v));
    }
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const std::string& p : parts) out += p;
    out += ")";
    return out;
  };
  std::string best;
  for (int r = 0; r < n; ++r) {
    std::string enc = encode(encode, r, -1);
    if (best.empty() || enc < best) best = std::move(enc);
  }
  return best;
}

// Every tree shape with exactly n vertices, one labeled representative each
// (all labeled trees, deduplicated by canonical form).
inline std::vector<EdgeList> free_tree_shapes(int n) {
  if (n == 1) return {EdgeList{}};
  if (n == 2) return {EdgeList{{0, 1}}};
  std::map<std::string, EdgeList> shapes;
  std::vector<int> seq(static_cast<size_t>(n - 2), 0);
  for (;;) {
    // Decode the sequence into a labeled tree.
    std::vector<int> degree(static_cast<size_t>(n), 1);
    for (int s : seq) ++degree[static_cast<size_t>(s)];
    EdgeList edges;
    std::vector<char> used(static_cast<size_t>(n), 0);
    for (int s : seq) {
      for (int leaf = 0; leaf < n; ++leaf) {
        if (degree[static_cast<size_t>(leaf)] == 1 && !used[static_cast<size_t>(leaf)]) {
          edges.emplace_back(std::min(leaf, s), std::max(leaf, s));
          used[static_cast<size_t>(leaf)] = 1;
          --degree[static_cast<size_t>(s)];
          break;
        }
      }
    }
    int a = -1, b = -1;
    for (int v = 0; v < n; ++v) {
      if (!used[static_cast<size_t>(v)] && degree[static_cast<size_t>(v)] == 1) {
        (a < 0 ? a : b) = v;
      }
    }
    edges.emplace_back(a, b);
    shapes.emplace(shape_canonical(edges, n), edges);

    int pos = n - 3;
    while (pos >= 0 && seq[static_cast<size_t>(pos)] == n - 1) {
      seq[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++seq[static_cast<size_t>(pos)];
  }
  std::vector<EdgeList> out;
  for (auto& [canon, edges] : shapes) out.push_back(std::move(edges));
  return out;
}

inline WeightedTree with_random_costs(const EdgeList& shape, int n, Rng& rng,
                                      const CostRange& range = {}) {
  std::vector<Edge> edges;
  for (auto [u, v] : shape) edges.push_back({u, v, treesearch::random_cost(rng, range)});
  return WeightedTree(n, std::move(edges));
}

// Random connected vertex set of the requested size, grown over the frontier.
inline std::vector<int> random_connected_subset(const WeightedTree& tree, int size,
                                                Rng& rng) {
  std::vector<char> in(static_cast<size_t>(tree.n()), 0);
  std::vector<int> picked{rng.uniform(0, tree.n() - 1)};
  in[static_cast<size_t>(picked.front())] = 1;
  std::vector<int> frontier;
  auto extend = [&](int v) {
    for (auto [w, eid] : tree.adjacent(v)) {
      if (!in[static_cast<size_t>(w)]) frontier.push_back(w);
    }
  };
  extend(picked.front());
  while (static_cast<int>(picked.size()) < size && !frontier.empty()) {
    const int at = rng.uniform(0, static_cast<int>(frontier.size()) - 1);
    const int v = frontier[static_cast<size_t>(at)];
    frontier.erase(frontier.begin() + at);
    if (in[static_cast<size_t>(v)]) continue;
    in[static_cast<size_t>(v)] = 1;
    picked.push_back(v);
    extend(v);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

// Remove degree-2 vertex v and bridge its neighbors at the cheaper of the two
// incident costs (the contraction the property suite compares OPT against).
inline WeightedTree contract_degree2(const WeightedTree& tree, int v) {
  const auto& nbrs = tree.adjacent(v);
  if (nbrs.size() != 2) throw treesearch::PreconditionError("vertex is not degree-2");
  const auto [a, ea] = nbrs[0];
  const auto [b, eb] = nbrs[1];
  std::vector<Edge> edges;
  for (int id = 0; id < tree.edge_count(); ++id) {
    if (id == ea || id == eb) continue;
    const Edge& e = tree.edge(id);
    edges.push_back({e.u - (e.u > v), e.v - (e.v > v), e.cost});
  }
  edges.push_back({a - (a > v), b - (b > v),
                   std::min(tree.edge(ea).cost, tree.edge(eb).cost)});
  return WeightedTree(tree.n() - 1, std::move(edges));
}

// A structurally valid (rarely good) strategy: split at random edges.
inline DecisionTree random_strategy(const WeightedTree& tree, Rng& rng) {
  DecisionTree d;
  auto build = [&](auto&& self, const std::vector<int>& vertices) -> int {
    if (vertices.size() == 1) return d.add_leaf(vertices.front());
    std::vector<char> in(static_cast<size_t>(tree.n()), 0);
    for (int v : vertices) in[static_cast<size_t>(v)] = 1;
    std::vector<int> inside;
    for (int id = 0; id < tree.edge_count(); ++id) {
      if (in[static_cast<size_t>(tree.edge(id).u)] && in[static_cast<size_t>(tree.edge(id).v)]) {
        inside.push_back(id);
      }
    }
    const int eid = inside[static_cast<size_t>(
        rng.uniform(0, static_cast<int>(inside.size()) - 1))];
    std::vector<int> side_u, side_v;
    std::vector<int> stack{tree.edge(eid).u};
    std::vector<char> seen(static_cast<size_t>(tree.n()), 0);
    seen[static_cast<size_t>(tree.edge(eid).u)] = 1;
    while (!stack.empty()) {
      const int at = stack.back();
      stack.pop_back();
      side_u.push_back(at);
      for (auto [w, id2] : tree.adjacent(at)) {
        if (id2 != eid && in[static_cast<size_t>(w)] && !seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
    for (int v : vertices) {
      if (!seen[static_cast<size_t>(v)]) side_v.push_back(v);
    }
    const int cu = self(self, side_u);
    const int cv = self(self, side_v);
    return d.add_query(eid, cu, cv);
  };
  std::vector<int> all(static_cast<size_t>(tree.n()));
  for (int v = 0; v < tree.n(); ++v) all[static_cast<size_t>(v)] = v;
  d.set_root(build(build, all));
  return d;
}

// Reference knapsack decision: enumerate all 2^m subsets.
inline bool knapsack_bruteforce(const KnapsackInstance& k) {
  const int m = k.m();
  for (uint64_t mask = 0; mask < (uint64_t{1} << m); ++mask) {
    Rat weight = 0, value = 0;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1) {
        value += k.items[static_cast<size_t>(i)].first;
        weight += k.items[static_cast<size_t>(i)].second;
      }
    }
    if (weight <= k.capacity_w && value >= k.target_v) return true;
  }
  return false;
}

// Random instance inside the regime the reduction is asserted in:
// N = sum(v+w) - W - V >= max_i(v_i + w_i).
inline KnapsackInstance random_knapsack_in_regime(int m, Rng& rng, int part_max = 6) {
  KnapsackInstance k;
  long heavy = 0, max_heavy = 0, weight_sum = 0;
  for (int i = 0; i < m; ++i) {
    const long v = rng.uniform(1, part_max);
    const long w = rng.uniform(1, part_max);
    k.items.emplace_back(Rat(v), Rat(w));
    heavy += v + w;
    max_heavy = std::max(max_heavy, v + w);
    weight_sum += w;
  }
  const long w_hi = std::min(weight_sum, heavy - max_heavy);
  const long cap = w_hi > 0 ? rng.uniform(0, static_cast<int>(w_hi)) : 0;
  const long v_hi = heavy - cap - max_heavy;
  k.capacity_w = Rat(cap);
  k.target_v = Rat(v_hi > 0 ? rng.uniform(0, static_cast<int>(v_hi)) : 0);
  return k;
}

}  // namespace test_support
