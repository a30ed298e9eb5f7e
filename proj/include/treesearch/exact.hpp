#pragma once

#include "treesearch/solve_report.hpp"
#include "treesearch/tree.hpp"

namespace treesearch {

inline constexpr int kOracleCapDefault = 12;
inline constexpr int kSubsetDpCapDefault = 24;

// Definition-level optimum: plain recursion over candidate components, no
// memoization, no pruning. Deliberately dumb — it is the independent witness
// the clever solvers are tested against. Throws SizeCapExceeded past the cap.
SolveReport solve_oracle(const WeightedTree& tree, int size_cap = kOracleCapDefault);

// Optimal strategy by dynamic programming over connected vertex subsets
// (bitmask-keyed, lazily materialized — only states reachable by splitting
// the full set are ever visited). Cap is a hard limit of 64 by representation.
SolveReport solve_subset_dp(const WeightedTree& tree, int size_cap = kSubsetDpCapDefault);

// Optimal strategy for paths by interval DP:
//   opt(i,j) = min_k c(e_k) + max(opt(i,k), opt(k+1,j)),  cubic overall.
// Ties pick the smallest edge id. Throws PreconditionError on non-paths.
SolveReport solve_path(const WeightedTree& tree);

}  // namespace treesearch
