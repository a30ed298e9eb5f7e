#include "treesearch/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>

#include "treesearch/errors.hpp"

namespace treesearch {

namespace {

// ---------------------------------------------------------------------------
// Oracle: the definition, executed literally. Candidate components are plain
// vertex lists, the minimum is re-derived wherever a choice is rebuilt, and
// nothing is cached — slower by design, trustworthy by design.

struct OracleCtx {
  const WeightedTree& tree;
  std::vector<int> stamp;
  int version = 0;

  explicit OracleCtx(const WeightedTree& t)
      : tree(t), stamp(static_cast<size_t>(t.n()), -1) {}

  void mark(const std::vector<int>& cand) {
    ++version;
    for (int v : cand) stamp[static_cast<size_t>(v)] = version;
  }

  // Splits cand by edge `e` (both endpoints inside). Marks first.
  std::pair<std::vector<int>, std::vector<int>> split(const std::vector<int>& cand, int e) {
    mark(cand);
    const Edge& edge = tree.edge(e);
    std::vector<int> side_u{edge.u};
    stamp[static_cast<size_t>(edge.u)] = -1;
    for (size_t head = 0; head < side_u.size(); ++head) {
      for (auto [w, eid] : tree.adjacent(side_u[head])) {
        if (eid != e && stamp[static_cast<size_t>(w)] == version) {
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
    return {std::move(side_u), std::move(side_v)};
  }

  std::vector<int> edges_inside(const std::vector<int>& cand) {
    mark(cand);
    std::vector<int> out;
    for (int e = 0; e < tree.edge_count(); ++e) {
      if (stamp[static_cast<size_t>(tree.edge(e).u)] == version &&
          stamp[static_cast<size_t>(tree.edge(e).v)] == version) {
        out.push_back(e);
      }
    }
    return out;
  }

  Rat best_cost(const std::vector<int>& cand) {
    if (cand.size() == 1) return Rat(0);
    Rat best;
    bool have = false;
    for (int e : edges_inside(cand)) {
      auto [side_u, side_v] = split(cand, e);
      Rat total = tree.edge(e).cost + std::max(best_cost(side_u), best_cost(side_v));
      if (!have || total < best) {
        best = std::move(total);
        have = true;
      }
    }
    return best;
  }

  // Rebuilds the argmin strategy, re-deriving costs (ascending edge ids, so
  // the first strict minimum is the smallest-id tie-break).
  int build(const std::vector<int>& cand, DecisionTree& out) {
    if (cand.size() == 1) return out.add_leaf(cand.front());
    int best_edge = -1;
    Rat best;
    for (int e : edges_inside(cand)) {
      auto [side_u, side_v] = split(cand, e);
      Rat total = tree.edge(e).cost + std::max(best_cost(side_u), best_cost(side_v));
      if (best_edge < 0 || total < best) {
        best = std::move(total);
        best_edge = e;
      }
    }
    auto [side_u, side_v] = split(cand, best_edge);
    const int cu = build(side_u, out);
    const int cv = build(side_v, out);
    return out.add_query(best_edge, cu, cv);
  }
};

// ---------------------------------------------------------------------------
// Subset DP: same recurrence, memoized on connected-subset bitmasks. Only
// states reachable by recursive splitting are ever created.

struct SubsetDpCtx {
  const WeightedTree& tree;
  struct Entry {
    Rat cost;
    int best_edge = -1;
  };
  std::unordered_map<uint64_t, Entry> memo;

  explicit SubsetDpCtx(const WeightedTree& t) : tree(t) { memo.reserve(1024); }

  static uint64_t bit(int v) { return uint64_t{1} << v; }

  uint64_t side_u_mask(uint64_t mask, int e) {
    const Edge& edge = tree.edge(e);
    uint64_t side = bit(edge.u);
    std::vector<int> stack{edge.u};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [w, eid] : tree.adjacent(v)) {
        if (eid != e && (mask & bit(w)) && !(side & bit(w))) {
          side |= bit(w);
          stack.push_back(w);
        }
      }
    }
    return side;
  }

  const Entry& eval(uint64_t mask) {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    Entry entry;
    if ((mask & (mask - 1)) == 0) {
      entry.cost = 0;
      return memo.emplace(mask, std::move(entry)).first->second;
    }
    for (int e = 0; e < tree.edge_count(); ++e) {
      const Edge& edge = tree.edge(e);
      if (!(mask & bit(edge.u)) || !(mask & bit(edge.v))) continue;
      uint64_t mu = side_u_mask(mask, e);
      uint64_t mv = mask ^ mu;
      Rat total = edge.cost + std::max(eval(mu).cost, eval(mv).cost);
      if (entry.best_edge < 0 || total < entry.cost) {
        entry.cost = std::move(total);
        entry.best_edge = e;
      }
    }
    return memo.emplace(mask, std::move(entry)).first->second;
  }

  int rebuild(uint64_t mask, DecisionTree& out) {
    if ((mask & (mask - 1)) == 0) {
      int v = 0;
      while (!(mask & bit(v))) ++v;
      return out.add_leaf(v);
    }
    const int e = memo.at(mask).best_edge;
    uint64_t mu = side_u_mask(mask, e);
    const int cu = rebuild(mu, out);
    const int cv = rebuild(mask ^ mu, out);
    return out.add_query(e, cu, cv);
  }
};

SolveReport finish(const WeightedTree& tree, std::string algorithm, DecisionTree d) {
  SolveReport report;
  report.algorithm = std::move(algorithm);
  report.profile = evaluate_unchecked(tree, d);
  report.strategy = std::move(d);
  return report;
}

}  // namespace

SolveReport solve_oracle(const WeightedTree& tree, int size_cap) {
  if (tree.n() > size_cap) {
    throw SizeCapExceeded("oracle cap " + std::to_string(size_cap) + " < n = " +
                          std::to_string(tree.n()));
  }
  OracleCtx ctx(tree);
  std::vector<int> all(static_cast<size_t>(tree.n()));
  for (int v = 0; v < tree.n(); ++v) all[static_cast<size_t>(v)] = v;
  DecisionTree d;
  d.set_root(ctx.build(all, d));
  return finish(tree, "oracle", std::move(d));
}

SolveReport solve_subset_dp(const WeightedTree& tree, int size_cap) {
  if (tree.n() > std::min(size_cap, 64)) {
    throw SizeCapExceeded("subset DP cap " + std::to_string(std::min(size_cap, 64)) +
                          " < n = " + std::to_string(tree.n()));
  }
  SubsetDpCtx ctx(tree);
  uint64_t full = tree.n() == 64 ? ~uint64_t{0} : (uint64_t{1} << tree.n()) - 1;
  ctx.eval(full);
  DecisionTree d;
  d.set_root(ctx.rebuild(full, d));
  return finish(tree, "exact", std::move(d));
}

SolveReport solve_path(const WeightedTree& tree) {
  if (!tree.is_path()) {
    throw PreconditionError("path solver: instance has a vertex of degree > 2");
  }
  const int n = tree.n();
  if (n == 1) return finish(tree, "path", DecisionTree::single_leaf(0));

  // Walk the path from its smaller endpoint.
  int start = -1;
  for (int v = 0; v < n; ++v) {
    if (tree.degree(v) == 1) {
      start = v;
      break;
    }
  }
  std::vector<int> pos{start};
  std::vector<int> path_edge;  // path_edge[k] joins pos[k] and pos[k+1]
  int prev_edge = -1;
  while (static_cast<int>(pos.size()) < n) {
    for (auto [w, eid] : tree.adjacent(pos.back())) {
      if (eid != prev_edge) {
        pos.push_back(w);
        path_edge.push_back(eid);
        prev_edge = eid;
        break;
      }
    }
  }

  // opt[i][j], split[i][j] over position intervals; ties to smaller edge id.
  std::vector<std::vector<Rat>> opt(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n)));
  std::vector<std::vector<int>> split(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
  for (int len = 2; len <= n; ++len) {
    for (int i = 0; i + len - 1 < n; ++i) {
      const int j = i + len - 1;
      Rat best;
      int best_k = -1;
      for (int k = i; k < j; ++k) {
        Rat total = tree.edge(path_edge[static_cast<size_t>(k)]).cost +
                    std::max(opt[static_cast<size_t>(i)][static_cast<size_t>(k)],
                             opt[static_cast<size_t>(k) + 1][static_cast<size_t>(j)]);
        if (best_k < 0 || total < best ||
            (total == best && path_edge[static_cast<size_t>(k)] < path_edge[static_cast<size_t>(best_k)])) {
          best = std::move(total);
          best_k = k;
        }
      }
      opt[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(best);
      split[static_cast<size_t>(i)][static_cast<size_t>(j)] = best_k;
    }
  }

  DecisionTree d;
  // Child order: the interval holding the edge's smaller endpoint goes on_u.
  std::function<int(int, int)> rebuild = [&](int i, int j) -> int {
    if (i == j) return d.add_leaf(pos[static_cast<size_t>(i)]);
    const int k = split[static_cast<size_t>(i)][static_cast<size_t>(j)];
    const int eid = path_edge[static_cast<size_t>(k)];
    const int left = rebuild(i, k);
    const int right = rebuild(k + 1, j);
    const bool left_holds_u = pos[static_cast<size_t>(k)] == tree.edge(eid).u;
    return left_holds_u ? d.add_query(eid, left, right) : d.add_query(eid, right, left);
  };
  d.set_root(rebuild(0, n - 1));
  return finish(tree, "path", std::move(d));
}

}  // namespace treesearch
