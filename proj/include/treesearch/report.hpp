#pragma once

#include <optional>
#include <string>

#include "treesearch/solve_report.hpp"
#include "treesearch/tree.hpp"

namespace treesearch {

// What a CLI run prints: instance identity, the solver used, the exact cost
// profile, wall time, and — when an exact reference was computed — the ratio.
struct RunReport {
  std::string digest;
  std::string algorithm;
  int n = 0;
  Rat worst_case;
  std::vector<Rat> per_vertex;
  double wall_ms = 0.0;
  bool certified = true;
  std::optional<Rat> exact_opt;
  std::optional<Rat> ratio;       // worst_case / exact_opt, >= 1
  std::optional<Rat> bound;       // approx_bound(n) for certified ts runs
};

RunReport make_run_report(const WeightedTree& tree, const SolveReport& solved,
                          double wall_ms);

std::string run_report_to_json(const RunReport& r);

}  // namespace treesearch
