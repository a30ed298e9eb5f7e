#pragma once

#include <optional>
#include <vector>

#include "treesearch/solve_report.hpp"
#include "treesearch/tree.hpp"

namespace treesearch {

// head == nullopt means the instance is a path (no vertex of degree >= 3);
// then legs holds a single entry: the whole path walked from its smaller
// endpoint. Otherwise legs are the components of T - head, each listed from
// the head-neighbor outward, ordered by the id of their head edge.
struct SpiderDecomposition {
  std::optional<int> head;
  std::vector<std::vector<int>> legs;
};

// Throws PreconditionError when two or more vertices have degree >= 3.
SpiderDecomposition decompose_spider(const WeightedTree& tree);

// 2-approximation for spiders: query every head edge in ascending edge id
// (any order has the same worst case — the star's optimum is the full sum),
// grafting each leg's optimal path strategy onto its neighbor leaf; the
// head's own leaf stays. Paths skip straight to the exact path solver.
// Guarantee: OPT <= cost <= star-sum + max leg OPT <= 2 * OPT.
SolveReport solve_spider(const WeightedTree& tree);

}  // namespace treesearch
