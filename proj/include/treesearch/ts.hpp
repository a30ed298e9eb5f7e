#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treesearch/solve_report.hpp"
#include "treesearch/tree.hpp"

namespace treesearch {

struct TSConfig {
  // Skeleton iteration count override; must be >= 2 when present. The default
  // formula makes every desk-scale instance exact, so the override exists to
  // exercise the recursive machinery at sizes where results can be checked.
  std::optional<int> t_override;
  // Below this size the exact solver is used directly. Defaults: 16 under the
  // formula t (keeps small instances exact), 4 under an override (so the
  // machinery actually runs). Clamped to >= 4 either way.
  std::optional<int> small_cutoff;
  // Largest instance handed to the exact subset DP (recursion base case and
  // the auxiliary tree). Beyond it a star-decomposition fallback runs and the
  // result is no longer certified. 20 keeps the worst base-case solve around
  // a millisecond; raise it for more exactness, at exponential cost.
  int subset_dp_cap = 20;
  // Fill TSResult::trace with the top-level skeleton breakdown.
  bool want_trace = false;
};

// t = 2^(floor(log2 log2 n) + 2), the iteration budget; requires n >= 4.
// Satisfies 2*log2(n) <= t <= 4*log2(n).
int paper_t(int n);

// 4*log2(n) / log2(log2(n)) as a rational, for ratio assertions; n >= 4.
// Exact when n and log2 n are powers of two, else a hair above the real
// value (never below — upper-rounded so "ratio <= bound" stays sound).
Rat approx_bound(int n);

// Centroid of the subtree induced by `within` (every component of the induced
// tree minus the centroid has at most half its vertices); smallest id on
// ties. Throws PreconditionError if `within` is empty or disconnected.
int centroid(const WeightedTree& tree, const std::vector<int>& within);

// One hanging component of T - S with its unique edge into the skeleton.
struct HangingComponent {
  std::vector<int> vertices;  // ascending
  int attach_edge = -1;       // edge {v in S, w in component}
};

// Everything the decomposition produces; build_skeleton fills the first
// three fields, contract_to_Y the rest.
struct TSTrace {
  std::vector<int> skeleton;          // S, ascending
  std::vector<int> centroids;         // x_1..x_k in pick order
  std::vector<int> branch_vertices;   // X = centroids + deg>=3(S), ascending

  WeightedTree aux;                   // Y: vertex i is x_vertices[i]
  std::vector<int> x_vertices;        // == branch_vertices (Y id -> vertex)
  struct AuxEdge {
    int orig_edge = -1;      // e_uv: cheapest edge on the X-free path in S
    int toward_u = -1;       // endpoint of orig_edge on the side of the
  };                         //   aux edge's smaller endpoint
  std::vector<AuxEdge> aux_edges;     // parallel to aux.edges()
  std::vector<int> z_edges;           // ascending original edge ids
  std::vector<std::vector<int>> spider_components;  // of S - Z, by min vertex
  std::vector<HangingComponent> hanging;            // of T - S, by min vertex

  TSTrace() : aux(1, {}) {}
};

// Iterates: centroid of the largest remaining component of T - S (ties: the
// component holding the smallest vertex, then the smallest centroid id),
// joined to S by its path; stops early once S covers T. Sets skeleton,
// centroids and branch_vertices.
TSTrace build_skeleton(const WeightedTree& tree, int t);

// Contracts S onto the branch vertices: aux tree Y on X (adjacent iff the
// connecting path is internally X-free, cost = cheapest path edge, ties to
// the smallest edge id), the cut set Z, the spider components of S - Z and
// the hanging components of T - S. Reads trace.skeleton/branch_vertices.
void contract_to_Y(TSTrace& trace, const WeightedTree& tree);

// The skeleton strategy D_S (for the instance induced_subtree(tree, S), in
// its ids): exact or fallback solve of Y relabelled onto the cut edges, with
// each leaf replaced by its spider component's strategy. cost(D_S) is within
// 3x of the skeleton's optimum whenever Y was solved exactly (certified).
SolveReport skeleton_strategy(const WeightedTree& tree, const TSTrace& trace,
                              const TSConfig& cfg = {});

struct TSResult {
  SolveReport report;
  std::optional<TSTrace> trace;  // top level only, when requested
};

// The full approximation algorithm: exact below the cutoff, skeleton strategy
// plus boundary stars and recursion on hanging components above it. Certified
// results obey cost/OPT <= 4*log2(n)/log2(log2(n)).
TSResult solve_ts(const WeightedTree& tree, const TSConfig& cfg = {});

// Trace dump for humans and tests (vertex sets, Y with costs and cut edges,
// component inventory).
std::string trace_to_json(const TSTrace& trace);

}  // namespace treesearch
