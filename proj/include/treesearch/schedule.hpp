#pragma once

#include <string>
#include <vector>

#include "treesearch/decision_tree.hpp"
#include "treesearch/tree.hpp"

namespace treesearch {

// The assembly reading of a strategy: run the query order backwards and each
// edge becomes a join job of duration c(e). An edge queried at depth-prefix P
// (costs from the root through itself) runs over [makespan - P, makespan - P
// + c(e)]: jobs touching a common vertex all sit on that vertex's root path,
// so they never overlap, and the makespan equals the strategy's worst case.
struct AssemblySchedule {
  struct Job {
    int edge = -1;
    Rat start;
    Rat end;
  };
  std::vector<Job> jobs;  // ascending edge id
  Rat makespan;
};

// Validates the strategy first (throws InvalidStrategy when it fails).
AssemblySchedule export_schedule(const WeightedTree& tree, const DecisionTree& d);

std::string schedule_to_json(const AssemblySchedule& s);

}  // namespace treesearch
