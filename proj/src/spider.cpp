#include "treesearch/spider.hpp"

#include <algorithm>
#include <utility>

#include "treesearch/errors.hpp"
#include "treesearch/exact.hpp"

namespace treesearch {

SpiderDecomposition decompose_spider(const WeightedTree& tree) {
  int head = -1;
  for (int v = 0; v < tree.n(); ++v) {
    if (tree.degree(v) >= 3) {
      if (head >= 0) {
        throw PreconditionError("not a spider: vertices " + std::to_string(head) +
                                " and " + std::to_string(v) + " both have degree >= 3");
      }
      head = v;
    }
  }
  SpiderDecomposition out;
  if (head < 0) {
    // A path; single leg from the smaller endpoint.
    std::vector<int> leg;
    int start = 0;
    while (start < tree.n() && tree.degree(start) > 1) ++start;
    leg.push_back(start);
    int prev_edge = -1;
    while (static_cast<int>(leg.size()) < tree.n()) {
      for (auto [w, eid] : tree.adjacent(leg.back())) {
        if (eid != prev_edge) {
          leg.push_back(w);
          prev_edge = eid;
          break;
        }
      }
    }
    out.legs.push_back(std::move(leg));
    return out;
  }
  out.head = head;
  for (auto [w, eid] : tree.adjacent(head)) {  // ascending edge id
    std::vector<int> leg{w};
    int prev_edge = eid;
    while (true) {
      bool extended = false;
      for (auto [x, eid2] : tree.adjacent(leg.back())) {
        if (eid2 != prev_edge) {
          leg.push_back(x);
          prev_edge = eid2;
          extended = true;
          break;
        }
      }
      if (!extended) break;
    }
    out.legs.push_back(std::move(leg));
  }
  return out;
}

SolveReport solve_spider(const WeightedTree& tree) {
  SpiderDecomposition decomp = decompose_spider(tree);
  if (!decomp.head) {
    SolveReport report = solve_path(tree);
    report.algorithm = "spider";
    return report;
  }
  const int head = *decomp.head;

  DecisionTree d;
  std::vector<int> leg_roots;
  for (const auto& leg : decomp.legs) {
    InducedSubtree sub = induced_subtree(tree, leg);
    SolveReport leg_report = solve_path(sub.tree);
    leg_roots.push_back(
        graft_strategy(d, leg_report.strategy, sub.tree, tree, sub.vertices, sub.edge_ids));
  }

  // Query the star edges in ascending id; the final still-here branch is the
  // head's own leaf. Built back to front so children exist first.
  int cont = d.add_leaf(head);
  const auto& star = tree.adjacent(head);
  for (size_t i = star.size(); i-- > 0;) {
    const auto [w, eid] = star[i];
    const int leg_root = leg_roots[i];
    cont = tree.edge(eid).u == w ? d.add_query(eid, leg_root, cont)
                                 : d.add_query(eid, cont, leg_root);
  }
  d.set_root(cont);

  SolveReport report;
  report.algorithm = "spider";
  report.profile = evaluate_unchecked(tree, d);
  report.strategy = std::move(d);
  return report;
}

}  // namespace treesearch
