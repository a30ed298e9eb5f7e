#pragma once

#include <string>

#include "treesearch/decision_tree.hpp"

namespace treesearch {

// What every solver hands back: the strategy, its exact cost profile, and
// whether the solver's stated guarantee (exactness or an approximation bound)
// actually applies to this run. `certified` goes false only when a size-cap
// fallback replaced a guaranteed step by a heuristic one.
struct SolveReport {
  std::string algorithm;
  DecisionTree strategy;
  CostProfile profile;
  bool certified = true;
};

}  // namespace treesearch
