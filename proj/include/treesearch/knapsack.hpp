#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treesearch/rational.hpp"
#include "treesearch/tree.hpp"

namespace treesearch {

// 0/1 knapsack decision instance: is there a subset with total weight <= W
// and total value >= V? Data may be rational.
struct KnapsackInstance {
  std::vector<std::pair<Rat, Rat>> items;  // (value v_i, weight w_i), both >= 0
  Rat capacity_w;
  Rat target_v;
  int m() const { return static_cast<int>(items.size()); }
};

// Text format: line 1 "m W V", then m lines "v w".
KnapsackInstance parse_knapsack(std::istream& in);
KnapsackInstance parse_knapsack(const std::string& text);

// The reduction target: a spider with one 3-edge leg per item — femur
// (head->leg) costing v_i + w_i, tibia costing v_i, tarsus costing
// N = sum(v_i + w_i) - W - V. Vertices: head 0, then legs in item order.
// Throws PreconditionError when N < 0 (the reduction is undefined there).
struct ReductionSpider {
  WeightedTree spider;
  Rat n_cost;                    // N
  Rat threshold;                 // sum(v_i) + N + W, the decision cutoff
  std::vector<int> femur_edges;  // per item
  std::vector<int> tibia_edges;
  std::vector<int> tarsus_edges;
};
ReductionSpider knapsack_to_spider(const KnapsackInstance& k);

// Search cost of the reduction spider in closed form. Any optimal strategy
// splits the legs into a nonempty set I (tibia asked before femur) and its
// complement, and asks all complement femurs, then I's tibias, then I's
// femurs down one spine; the worst leaf is one of
//   deep leaf of an I leg:        N + sum_{i not in I}(v_i+w_i) + sum_I v_i,
//   the head:                     sum_I v_i + sum_all(v_i+w_i),
//   deep leaf of a complement leg: N + (prefix of complement femurs) + own v_i
// with the third family priced at its best order (value-descending femurs).
// opt minimizes the max over nonempty I; argmin_i is the lexicographically
// smallest minimizer (0-based items). Enumerates the 2^m - 1 candidates;
// throws SizeCapExceeded past the cap.
struct OptFormulaResult {
  Rat opt;
  std::vector<int> argmin_i;
};
OptFormulaResult opt_formula(const KnapsackInstance& k, int m_cap = 20);

// Decision through the reduction: feasible iff, for some nonempty I, the
// first two leaf families above stay within sum(v_i) + N + W — equivalently,
// the complement of I fits the capacity and reaches the target value, so the
// witness is that complement. `opt` is this two-term bound; it can sit below
// the spider optimum (the complement-chain family is deliberately dropped —
// its overshoot says nothing about the knapsack). in_regime records
// N >= max_i(v_i + w_i) — outside it a yes stays trustworthy but a no is not
// asserted to match the raw knapsack (the take-every-item corner).
struct KnapsackDecision {
  bool feasible = false;
  std::vector<int> witness;  // items to take (0-based), only when feasible
  Rat opt;
  Rat threshold;
  Rat n_cost;
  bool in_regime = true;
};
KnapsackDecision decide_knapsack(const KnapsackInstance& k, int m_cap = 20);

std::string decision_to_json(const KnapsackDecision& d);

}  // namespace treesearch
