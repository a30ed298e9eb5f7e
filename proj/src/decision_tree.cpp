#include "treesearch/decision_tree.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include <json.hpp>

#include "treesearch/errors.hpp"

namespace treesearch {

using nlohmann::json;

DecisionTree DecisionTree::single_leaf(int vertex) {
  DecisionTree d;
  d.set_root(d.add_leaf(vertex));
  return d;
}

int DecisionTree::add_leaf(int vertex) {
  Node node;
  node.leaf = vertex;
  nodes_.push_back(node);
  return static_cast<int>(nodes_.size()) - 1;
}

int DecisionTree::add_query(int edge_id, int child_u, int child_v) {
  Node node;
  node.query = edge_id;
  node.child_u = child_u;
  node.child_v = child_v;
  nodes_.push_back(node);
  return static_cast<int>(nodes_.size()) - 1;
}

std::string strategy_to_json(const DecisionTree& d) {
  json nodes = json::array();
  for (const auto& node : d.nodes()) {
    if (node.is_leaf()) {
      nodes.push_back(json{{"leaf", node.leaf}});
    } else {
      nodes.push_back(json{{"query", node.query}, {"on_u", node.child_u}, {"on_v", node.child_v}});
    }
  }
  return json{{"root", d.root()}, {"nodes", std::move(nodes)}}.dump();
}

DecisionTree strategy_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw InvalidStrategy("strategy is not valid JSON");
  if (!j.is_object() || !j.contains("root") || !j.contains("nodes") ||
      !j["root"].is_number_integer() || !j["nodes"].is_array()) {
    throw InvalidStrategy("strategy must be {root, nodes}");
  }
  const json& nodes = j["nodes"];
  const int count = static_cast<int>(nodes.size());
  DecisionTree d;
  for (const json& node : nodes) {
    if (!node.is_object()) throw InvalidStrategy("node must be an object");
    if (node.contains("leaf")) {
      if (!node["leaf"].is_number_integer() || node["leaf"].get<int>() < 0) {
        throw InvalidStrategy("leaf vertex must be a non-negative integer");
      }
      d.add_leaf(node["leaf"].get<int>());
      continue;
    }
    for (const char* key : {"query", "on_u", "on_v"}) {
      if (!node.contains(key) || !node[key].is_number_integer()) {
        throw InvalidStrategy(std::string("internal node needs integer '") + key + "'");
      }
    }
    int query = node["query"].get<int>();
    int cu = node["on_u"].get<int>();
    int cv = node["on_v"].get<int>();
    if (query < 0) throw InvalidStrategy("queried edge id must be non-negative");
    if (cu < 0 || cu >= count || cv < 0 || cv >= count) {
      throw InvalidStrategy("child id out of range");
    }
    d.add_query(query, cu, cv);
  }
  int root = j["root"].get<int>();
  if (root < 0 || root >= count) throw InvalidStrategy("root id out of range");
  d.set_root(root);
  return d;
}

namespace {

ValidationResult fail(std::string error, int node = -1) {
  return ValidationResult{false, std::move(error), node};
}

}  // namespace

ValidationResult validate(const WeightedTree& tree, const DecisionTree& d) {
  const int n = tree.n();
  const int size = d.size();
  if (d.root() < 0 || d.root() >= size) return fail("root id out of range");
  if (size != 2 * n - 1) {
    return fail("arena must hold exactly 2n-1 nodes, found " + std::to_string(size));
  }

  // Shape pass: every node reached exactly once from the root, ids in range.
  std::vector<char> seen(static_cast<size_t>(size), 0);
  std::vector<int> leaf_owner(static_cast<size_t>(n), -1);
  int leaves = 0;
  int internals = 0;
  std::vector<int> stack{d.root()};
  seen[static_cast<size_t>(d.root())] = 1;
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const auto& node = d.node(id);
    if (node.is_leaf()) {
      ++leaves;
      if (node.leaf < 0 || node.leaf >= n) return fail("leaf vertex out of range", id);
      if (leaf_owner[static_cast<size_t>(node.leaf)] >= 0) {
        return fail("vertex " + std::to_string(node.leaf) + " has two leaves", id);
      }
      leaf_owner[static_cast<size_t>(node.leaf)] = id;
      continue;
    }
    ++internals;
    if (node.query >= tree.edge_count()) return fail("queried edge out of range", id);
    for (int child : {node.child_u, node.child_v}) {
      if (child < 0 || child >= size) return fail("child id out of range", id);
      if (seen[static_cast<size_t>(child)]) {
        return fail("node reached twice (shared child or cycle)", child);
      }
      seen[static_cast<size_t>(child)] = 1;
      stack.push_back(child);
    }
  }
  if (leaves != n) return fail("expected " + std::to_string(n) + " leaves, found " + std::to_string(leaves));
  if (internals != n - 1) {
    return fail("expected " + std::to_string(n - 1) + " internal nodes, found " +
                std::to_string(internals));
  }
  // size == 2n-1 and each reached node counted once => nothing unreachable.

  // Candidate-set simulation. Sibling sets along the path are disjoint, so
  // the pending stack never holds more than n vertices in total.
  std::vector<int> stamp(static_cast<size_t>(n), -1);
  int version = 0;
  std::vector<std::pair<int, std::vector<int>>> work;
  {
    std::vector<int> all(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) all[static_cast<size_t>(v)] = v;
    work.emplace_back(d.root(), std::move(all));
  }
  while (!work.empty()) {
    auto [id, cand] = std::move(work.back());
    work.pop_back();
    const auto& node = d.node(id);
    if (node.is_leaf()) {
      if (cand.size() != 1 || cand.front() != node.leaf) {
        return fail("leaf for vertex " + std::to_string(node.leaf) +
                        " has candidate set of size " + std::to_string(cand.size()),
                    id);
      }
      continue;
    }
    const Edge& e = tree.edge(node.query);
    ++version;
    for (int v : cand) stamp[static_cast<size_t>(v)] = version;
    if (stamp[static_cast<size_t>(e.u)] != version || stamp[static_cast<size_t>(e.v)] != version) {
      return fail("queried edge " + std::to_string(node.query) +
                      " lies outside the candidate component",
                  id);
    }
    // u's side of the candidate component, found without crossing e.
    std::vector<int> side_u{e.u};
    stamp[static_cast<size_t>(e.u)] = -1;
    for (size_t head = 0; head < side_u.size(); ++head) {
      for (auto [w, eid] : tree.adjacent(side_u[head])) {
        if (eid != node.query && stamp[static_cast<size_t>(w)] == version) {
          stamp[static_cast<size_t>(w)] = -1;
          side_u.push_back(w);
        }
      }
    }
    std::vector<int> side_v;
    side_v.reserve(cand.size() - side_u.size());
    for (int v : cand) {
      if (stamp[static_cast<size_t>(v)] == version) side_v.push_back(v);
    }
    work.emplace_back(node.child_u, std::move(side_u));
    work.emplace_back(node.child_v, std::move(side_v));
  }
  return ValidationResult{};
}

CostProfile evaluate_unchecked(const WeightedTree& tree, const DecisionTree& d) {
  CostProfile out;
  out.per_vertex.assign(static_cast<size_t>(tree.n()), Rat(0));
  std::vector<std::pair<int, Rat>> stack;
  stack.emplace_back(d.root(), Rat(0));
  bool first = true;
  while (!stack.empty()) {
    auto [id, prefix] = std::move(stack.back());
    stack.pop_back();
    const auto& node = d.node(id);
    if (node.is_leaf()) {
      out.per_vertex.at(static_cast<size_t>(node.leaf)) = prefix;
      if (first || prefix > out.worst_case) out.worst_case = prefix;
      first = false;
      continue;
    }
    Rat below = prefix + tree.edge(node.query).cost;
    stack.emplace_back(node.child_u, below);
    stack.emplace_back(node.child_v, std::move(below));
  }
  for (int v = 0; v < tree.n(); ++v) {
    if (out.per_vertex[static_cast<size_t>(v)] == out.worst_case) {
      out.argmax_vertices.push_back(v);
    }
  }
  return out;
}

CostProfile evaluate(const WeightedTree& tree, const DecisionTree& d) {
  if (auto verdict = validate(tree, d); !verdict) {
    throw InvalidStrategy("invalid strategy: " + verdict.error +
                          (verdict.node >= 0 ? " (node " + std::to_string(verdict.node) + ")" : ""));
  }
  return evaluate_unchecked(tree, d);
}

int identify(const WeightedTree& tree, const DecisionTree& d, int target) {
  int id = d.root();
  while (!d.node(id).is_leaf()) {
    const auto& node = d.node(id);
    const Edge& e = tree.edge(node.query);
    // Which side of the queried edge holds the target?
    std::vector<char> on_u(static_cast<size_t>(tree.n()), 0);
    std::vector<int> queue{e.u};
    on_u[static_cast<size_t>(e.u)] = 1;
    for (size_t head = 0; head < queue.size(); ++head) {
      for (auto [w, eid] : tree.adjacent(queue[head])) {
        if (eid != node.query && !on_u[static_cast<size_t>(w)]) {
          on_u[static_cast<size_t>(w)] = 1;
          queue.push_back(w);
        }
      }
    }
    id = on_u[static_cast<size_t>(target)] ? node.child_u : node.child_v;
  }
  return d.node(id).leaf;
}

RestrictedStrategy subtree_restrict(const WeightedTree& tree, const DecisionTree& d,
                                    const std::vector<int>& keep) {
  if (auto verdict = validate(tree, d); !verdict) {
    throw InvalidStrategy("subtree_restrict needs a valid strategy: " + verdict.error);
  }
  InducedSubtree induced = induced_subtree(tree, keep);
  const int n = tree.n();

  std::vector<int> new_vertex(static_cast<size_t>(n), -1);
  for (size_t i = 0; i < induced.vertices.size(); ++i) {
    new_vertex[static_cast<size_t>(induced.vertices[i])] = static_cast<int>(i);
  }
  std::vector<int> new_edge(static_cast<size_t>(tree.edge_count()), -1);
  for (size_t i = 0; i < induced.edge_ids.size(); ++i) {
    new_edge[static_cast<size_t>(induced.edge_ids[i])] = static_cast<int>(i);
  }

  // Kept vertices on edge(id).u's side, via one rooted pass.
  const int total_keep = static_cast<int>(induced.vertices.size());
  std::vector<int> parent(static_cast<size_t>(n), -1);
  std::vector<int> parent_edge(static_cast<size_t>(n), -1);
  std::vector<int> order;
  order.reserve(static_cast<size_t>(n));
  order.push_back(0);
  parent[0] = 0;
  for (size_t head = 0; head < order.size(); ++head) {
    for (auto [w, eid] : tree.adjacent(order[head])) {
      if (parent[static_cast<size_t>(w)] < 0) {
        parent[static_cast<size_t>(w)] = order[head];
        parent_edge[static_cast<size_t>(w)] = eid;
        order.push_back(w);
      }
    }
  }
  std::vector<int> keep_below(static_cast<size_t>(n), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (new_vertex[static_cast<size_t>(*it)] >= 0) ++keep_below[static_cast<size_t>(*it)];
    if (*it != 0) keep_below[static_cast<size_t>(parent[static_cast<size_t>(*it)])] += keep_below[static_cast<size_t>(*it)];
  }
  auto keep_on_u_side = [&](int edge_id) {
    const Edge& e = tree.edge(edge_id);
    // One endpoint is the other's parent across exactly this edge.
    if (parent_edge[static_cast<size_t>(e.v)] == edge_id && parent[static_cast<size_t>(e.v)] == e.u) {
      return total_keep - keep_below[static_cast<size_t>(e.v)];
    }
    return keep_below[static_cast<size_t>(e.u)];
  };

  DecisionTree pruned;
  // The rewrite: a node whose edge has a keep-free side collapses to its
  // other child; surviving queries have both endpoints inside `keep`, and
  // every surviving leaf names a kept vertex (the path to any other leaf
  // crosses a collapsed node on its dead side).
  std::function<int(int)> build = [&](int id) -> int {
    const auto& node = d.node(id);
    if (node.is_leaf()) {
      const int mapped_vertex = new_vertex.at(static_cast<size_t>(node.leaf));
      if (mapped_vertex < 0) throw std::logic_error("restriction kept a dropped leaf");
      return pruned.add_leaf(mapped_vertex);
    }
    const int ku = keep_on_u_side(node.query);
    const int kv = total_keep - ku;
    if (ku == 0) return build(node.child_v);
    if (kv == 0) return build(node.child_u);
    const int mapped = new_edge.at(static_cast<size_t>(node.query));
    if (mapped < 0) throw std::logic_error("restriction kept a dropped edge");
    // Ascending vertex ids survive re-indexing, so u stays the smaller end.
    const int cu = build(node.child_u);
    const int cv = build(node.child_v);
    return pruned.add_query(mapped, cu, cv);
  };
  pruned.set_root(build(d.root()));
  return RestrictedStrategy{std::move(induced), std::move(pruned)};
}

int graft_strategy(DecisionTree& dst, const DecisionTree& src,
                   const WeightedTree& src_tree, const WeightedTree& dst_tree,
                   const std::vector<int>& vmap, const std::vector<int>& emap,
                   const LeafOverride& leaf_override) {
  // Preorder collection, then reverse so children are copied before parents.
  std::vector<int> order;
  order.reserve(static_cast<size_t>(src.size()));
  std::vector<int> stack{src.root()};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    order.push_back(id);
    const auto& node = src.node(id);
    if (!node.is_leaf()) {
      stack.push_back(node.child_u);
      stack.push_back(node.child_v);
    }
  }
  std::vector<int> copied(static_cast<size_t>(src.size()), -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& node = src.node(*it);
    int dst_id;
    if (node.is_leaf()) {
      const int vertex = vmap.at(static_cast<size_t>(node.leaf));
      dst_id = leaf_override ? leaf_override(vertex) : -1;
      if (dst_id < 0) dst_id = dst.add_leaf(vertex);
    } else {
      const int edge_id = emap.at(static_cast<size_t>(node.query));
      const Edge& local = src_tree.edge(node.query);
      const bool same_order =
          vmap[static_cast<size_t>(local.u)] == dst_tree.edge(edge_id).u;
      const int cu = copied[static_cast<size_t>(same_order ? node.child_u : node.child_v)];
      const int cv = copied[static_cast<size_t>(same_order ? node.child_v : node.child_u)];
      dst_id = dst.add_query(edge_id, cu, cv);
    }
    copied[static_cast<size_t>(*it)] = dst_id;
  }
  return copied[static_cast<size_t>(src.root())];
}

}  // namespace treesearch
