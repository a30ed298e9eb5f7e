// Acceptance sweep: ten self-contained checks over the solver stack, printing
// exactly one [PASS]/[FAIL] line per criterion (with wall time) and exiting
// with the number of failures. Pass criterion numbers as arguments to run a
// subset: ./acceptance 4 6
//
// Every random draw is seeded with a fixed constant, so a failing line can be
// reproduced in isolation.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "treesearch/decision_tree.hpp"
#include "treesearch/exact.hpp"
#include "treesearch/generators.hpp"
#include "treesearch/knapsack.hpp"
#include "treesearch/spider.hpp"
#include "treesearch/tree.hpp"
#include "treesearch/ts.hpp"

#include "support.hpp"

namespace {

using treesearch::CostRange;
using treesearch::DecisionTree;
using treesearch::KnapsackDecision;
using treesearch::KnapsackInstance;
using treesearch::Rat;
using treesearch::Rng;
using treesearch::SolveReport;
using treesearch::TSConfig;
using treesearch::TSResult;
using treesearch::TSTrace;
using treesearch::WeightedTree;

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw CheckFailed(what);
}

std::string str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

const CostRange kCosts{1, 10, 3};  // rational costs, denominators up to 3

// ---------------------------------------------------------------------------
// 1. The subset DP is optimal: it matches the definition-level oracle on every
//    tree shape with up to 8 vertices (three cost draws each) and on 500
//    random trees with up to 10 vertices.

void criterion1() {
  Rng rng(0xACC701);
  for (int n = 1; n <= 8; ++n) {
    for (const auto& shape : test_support::free_tree_shapes(n)) {
      for (int draw = 0; draw < 3; ++draw) {
        const WeightedTree t = test_support::with_random_costs(shape, n, rng, kCosts);
        const SolveReport dp = treesearch::solve_subset_dp(t);
        const SolveReport oracle = treesearch::solve_oracle(t);
        expect(bool(treesearch::validate(t, dp.strategy)),
               "subset DP produced an invalid strategy on a " + std::to_string(n) +
                   "-vertex shape");
        expect(dp.profile.worst_case == oracle.profile.worst_case,
               "subset DP " + str(dp.profile.worst_case) + " != oracle " +
                   str(oracle.profile.worst_case) + " on a " + std::to_string(n) +
                   "-vertex shape");
      }
    }
  }
  for (int round = 0; round < 500; ++round) {
    const int n = rng.uniform(1, 10);
    const WeightedTree t = treesearch::gen_random_tree(n, 0xACC7010 + round, kCosts);
    const SolveReport dp = treesearch::solve_subset_dp(t);
    const SolveReport oracle = treesearch::solve_oracle(t);
    expect(dp.profile.worst_case == oracle.profile.worst_case,
           "subset DP " + str(dp.profile.worst_case) + " != oracle " +
               str(oracle.profile.worst_case) + " on random round " +
               std::to_string(round));
  }
}

// ---------------------------------------------------------------------------
// 2. The interval DP for paths matches the oracle on 500 random paths with up
//    to 12 vertices, and the unit-cost 7-vertex path costs exactly 3.

void criterion2() {
  {
    const std::vector<Rat> unit(6, Rat(1));
    const WeightedTree p7 = treesearch::gen_path(7, 1, {}, unit);
    const SolveReport r = treesearch::solve_path(p7);
    expect(r.profile.worst_case == Rat(3),
           "unit-cost 7-path should cost 3, got " + str(r.profile.worst_case));
  }
  Rng rng(0xACC702);
  for (int round = 0; round < 500; ++round) {
    const int n = rng.uniform(2, 12);
    const WeightedTree p = treesearch::gen_path(n, 0xACC7020 + round, kCosts);
    const SolveReport fast = treesearch::solve_path(p);
    const SolveReport oracle = treesearch::solve_oracle(p);
    expect(bool(treesearch::validate(p, fast.strategy)),
           "path solver produced an invalid strategy on round " + std::to_string(round));
    expect(fast.profile.worst_case == oracle.profile.worst_case,
           "path solver " + str(fast.profile.worst_case) + " != oracle " +
               str(oracle.profile.worst_case) + " on round " + std::to_string(round));
  }
}

// ---------------------------------------------------------------------------
// 3. The spider solver is sandwiched: OPT <= cost <= 2*OPT on 500 random
//    spiders with up to 14 vertices (OPT from the subset DP).

void criterion3() {
  Rng rng(0xACC703);
  int done = 0;
  for (uint64_t attempt = 0; done < 500; ++attempt) {
    expect(attempt < 50000, "could not draw 500 spiders with n <= 14");
    const int legs = rng.uniform(3, 5);
    const int max_len = rng.uniform(1, 4);
    const WeightedTree s =
        treesearch::gen_spider(legs, max_len, 0xACC7030 + attempt, kCosts);
    if (s.n() > 14) continue;
    ++done;
    const SolveReport approx = treesearch::solve_spider(s);
    const Rat opt = treesearch::solve_subset_dp(s).profile.worst_case;
    expect(bool(treesearch::validate(s, approx.strategy)),
           "spider solver produced an invalid strategy");
    expect(opt <= approx.profile.worst_case,
           "spider cost " + str(approx.profile.worst_case) + " below optimum " +
               str(opt));
    expect(approx.profile.worst_case <= Rat(2) * opt,
           "spider cost " + str(approx.profile.worst_case) + " exceeds twice the optimum " +
               str(opt));
  }
}

// ---------------------------------------------------------------------------
// 4. Under the default iteration budget the full solver is exact on every
//    instance with up to 16 vertices: all shapes to 8 vertices (two cost
//    draws) plus 200 random trees to 16 vertices.

void criterion4() {
  Rng rng(0xACC704);
  const auto check = [](const WeightedTree& t, const std::string& where) {
    const TSResult r = treesearch::solve_ts(t);
    expect(r.report.certified, "default-budget solve not certified " + where);
    expect(bool(treesearch::validate(t, r.report.strategy)),
           "default-budget solve produced an invalid strategy " + where);
    const Rat opt = treesearch::solve_subset_dp(t).profile.worst_case;
    expect(r.report.profile.worst_case == opt,
           "default-budget cost " + str(r.report.profile.worst_case) +
               " != optimum " + str(opt) + " " + where);
  };
  for (int n = 1; n <= 8; ++n) {
    for (const auto& shape : test_support::free_tree_shapes(n)) {
      for (int draw = 0; draw < 2; ++draw) {
        check(test_support::with_random_costs(shape, n, rng, kCosts),
              "on a " + std::to_string(n) + "-vertex shape");
      }
    }
  }
  for (int round = 0; round < 200; ++round) {
    const int n = rng.uniform(2, 16);
    check(treesearch::gen_random_tree(n, 0xACC7040 + round, kCosts),
          "on random round " + std::to_string(round));
  }
}

// ---------------------------------------------------------------------------
// 5. With the iteration budget forced down to 4 (so the decomposition really
//    runs), 200 random trees with up to 18 vertices all yield valid
//    strategies within the certified ratio bound 4*log2(n)/log2(log2(n)).

void criterion5() {
  Rng rng(0xACC705);
  for (int round = 0; round < 200; ++round) {
    const int n = rng.uniform(4, 18);
    const WeightedTree t = treesearch::gen_random_tree(n, 0xACC7050 + round, kCosts);
    TSConfig cfg;
    cfg.t_override = 4;
    const TSResult r = treesearch::solve_ts(t, cfg);
    expect(bool(treesearch::validate(t, r.report.strategy)),
           "forced-budget solve produced an invalid strategy on round " +
               std::to_string(round));
    expect(r.report.certified,
           "forced-budget solve not certified on round " + std::to_string(round));
    const Rat opt = treesearch::solve_subset_dp(t).profile.worst_case;
    const Rat bound = treesearch::approx_bound(n);
    expect(r.report.profile.worst_case <= bound * opt,
           "cost " + str(r.report.profile.worst_case) + " exceeds bound " +
               str(bound) + " * optimum " + str(opt) + " at n=" + std::to_string(n));
  }
}

// ---------------------------------------------------------------------------
// 6. Decomposition invariants at scale, under the formula budget t: every
//    hanging component has at most n/log2(n) vertices, |X| <= 2t+1,
//    |Z| = |X|-1, and every component of S - Z passes the spider predicate
//    (and holds exactly one branch vertex). Random trees up to 100000
//    vertices; the whole criterion must finish within a minute.

void criterion6() {
  const int sizes[] = {1000, 5000, 20000, 50000, 100000};
  uint64_t seed = 0xACC706;
  for (const int n : sizes) {
    const WeightedTree t = treesearch::gen_random_tree(n, seed++, kCosts);
    const int budget = treesearch::paper_t(n);
    TSTrace trace = treesearch::build_skeleton(t, budget);
    treesearch::contract_to_Y(trace, t);
    const std::string where = " at n=" + std::to_string(n);

    const long double lg = std::log2(static_cast<long double>(n));
    for (const auto& h : trace.hanging) {
      expect(static_cast<long double>(h.vertices.size()) * lg <=
                 static_cast<long double>(n) * (1.0L + 1e-12L),
             "hanging component of size " + std::to_string(h.vertices.size()) +
                 " exceeds n/log2(n)" + where);
    }
    expect(static_cast<int>(trace.branch_vertices.size()) <= 2 * budget + 1,
           std::to_string(trace.branch_vertices.size()) +
               " branch vertices exceed 2t+1 = " + std::to_string(2 * budget + 1) +
               where);
    expect(trace.z_edges.size() + 1 == trace.branch_vertices.size(),
           "|Z| = " + std::to_string(trace.z_edges.size()) + " but |X| = " +
               std::to_string(trace.branch_vertices.size()) + where);
    for (const auto& comp : trace.spider_components) {
      const auto ind = treesearch::induced_subtree(t, comp);
      expect(ind.tree.is_spider(), "a skeleton component is not a spider" + where);
      int branch_hits = 0;
      for (const int x : trace.branch_vertices) {
        branch_hits += std::binary_search(comp.begin(), comp.end(), x) ? 1 : 0;
      }
      expect(branch_hits == 1,
             "a skeleton component holds " + std::to_string(branch_hits) +
                 " branch vertices" + where);
    }
  }
}

// ---------------------------------------------------------------------------
// 7. The skeleton strategy D_S costs at most three times the skeleton's own
//    optimum, on 100 instances whose skeleton is small enough to solve
//    exactly (|S| <= 24).

void criterion7() {
  Rng rng(0xACC707);
  int done = 0;
  for (uint64_t attempt = 0; done < 100; ++attempt) {
    expect(attempt < 5000, "could not draw 100 skeletons with |S| <= 24");
    const int n = rng.uniform(10, 60);
    const int budget = rng.uniform(0, 1) ? 4 : 8;
    const WeightedTree t = treesearch::gen_random_tree(n, 0xACC7070 + attempt, kCosts);
    TSTrace trace = treesearch::build_skeleton(t, budget);
    treesearch::contract_to_Y(trace, t);
    if (trace.skeleton.size() > 24) continue;
    ++done;
    TSConfig cfg;
    cfg.subset_dp_cap = 24;
    const SolveReport ds = treesearch::skeleton_strategy(t, trace, cfg);
    const auto ind = treesearch::induced_subtree(t, trace.skeleton);
    expect(ds.certified, "skeleton strategy not certified at |S| <= 24");
    expect(bool(treesearch::validate(ind.tree, ds.strategy)),
           "skeleton strategy invalid on its induced instance");
    const Rat opt_s =
        treesearch::solve_subset_dp(ind.tree, 24).profile.worst_case;
    expect(ds.profile.worst_case <= Rat(3) * opt_s,
           "skeleton strategy " + str(ds.profile.worst_case) +
               " exceeds 3 * skeleton optimum " + str(opt_s));
  }
}

// ---------------------------------------------------------------------------
// 8. Knapsack bridge: the closed-form optimum equals the exact solver on the
//    reduced spider (two-item fixture plus 200 random instances with up to 3
//    items), and the decision procedure agrees with 2^m subset enumeration
//    for up to 12 items.

void criterion8() {
  {
    KnapsackInstance k;
    k.items = {{Rat(3), Rat(2)}, {Rat(4), Rat(5)}};
    k.capacity_w = Rat(5);
    k.target_v = Rat(4);
    const auto red = treesearch::knapsack_to_spider(k);
    const Rat dp = treesearch::solve_subset_dp(red.spider).profile.worst_case;
    const Rat closed = treesearch::opt_formula(k).opt;
    expect(closed == dp, "two-item fixture: closed form " + str(closed) +
                             " != exact " + str(dp));
  }
  Rng rng(0xACC708);
  for (int round = 0; round < 200; ++round) {
    const int m = rng.uniform(1, 3);
    const KnapsackInstance k = test_support::random_knapsack_in_regime(m, rng);
    const auto red = treesearch::knapsack_to_spider(k);
    const Rat dp = treesearch::solve_subset_dp(red.spider).profile.worst_case;
    const Rat closed = treesearch::opt_formula(k).opt;
    expect(closed == dp, "closed form " + str(closed) + " != exact " + str(dp) +
                             " on round " + std::to_string(round));
  }
  for (int round = 0; round < 500; ++round) {
    const int m = rng.uniform(1, 12);
    const KnapsackInstance k = test_support::random_knapsack_in_regime(m, rng);
    const KnapsackDecision d = treesearch::decide_knapsack(k);
    expect(d.in_regime, "generator left the asserted regime on round " +
                            std::to_string(round));
    expect(d.feasible == test_support::knapsack_bruteforce(k),
           "decision disagrees with subset enumeration on round " +
               std::to_string(round));
    if (d.feasible) {
      Rat value = 0, weight = 0;
      for (const int i : d.witness) {
        value += k.items[static_cast<size_t>(i)].first;
        weight += k.items[static_cast<size_t>(i)].second;
      }
      expect(weight <= k.capacity_w && value >= k.target_v,
             "witness violates capacity or target on round " + std::to_string(round));
    }
  }
}

// ---------------------------------------------------------------------------
// 9. Monotonicity, 300 rounds each: restricting to a connected subset,
//    lowering one edge cost, and contracting a degree-2 vertex (bridging at
//    the cheaper cost) never increase the optimum.

void criterion9() {
  Rng rng(0xACC709);
  for (int round = 0; round < 300; ++round) {
    const int n = rng.uniform(4, 12);
    const WeightedTree t = treesearch::gen_random_tree(n, 0xACC7090 + round, kCosts);
    const Rat opt0 = treesearch::solve_subset_dp(t).profile.worst_case;
    const auto keep = test_support::random_connected_subset(t, rng.uniform(1, n), rng);
    const auto ind = treesearch::induced_subtree(t, keep);
    const Rat opt1 = treesearch::solve_subset_dp(ind.tree).profile.worst_case;
    expect(opt1 <= opt0, "restriction raised the optimum from " + str(opt0) +
                             " to " + str(opt1) + " on round " + std::to_string(round));
  }
  for (int round = 0; round < 300; ++round) {
    const int n = rng.uniform(4, 12);
    const WeightedTree t = treesearch::gen_random_tree(n, 0xACC7094 + round, kCosts);
    const Rat opt0 = treesearch::solve_subset_dp(t).profile.worst_case;
    const int eid = rng.uniform(0, t.edge_count() - 1);
    const Rat factor(rng.uniform(0, 3), 4);  // 0, 1/4, 1/2 or 3/4
    const WeightedTree cheaper = t.with_edge_cost(eid, t.edge(eid).cost * factor);
    const Rat opt1 = treesearch::solve_subset_dp(cheaper).profile.worst_case;
    expect(opt1 <= opt0, "lowering one edge cost raised the optimum from " +
                             str(opt0) + " to " + str(opt1) + " on round " +
                             std::to_string(round));
  }
  int done = 0;
  for (uint64_t attempt = 0; done < 300; ++attempt) {
    expect(attempt < 5000, "could not draw 300 trees with a degree-2 vertex");
    const int n = rng.uniform(4, 12);
    const WeightedTree t = treesearch::gen_random_tree(n, 0xACC7098 + attempt, kCosts);
    std::vector<int> deg2;
    for (int v = 0; v < t.n(); ++v) {
      if (t.adjacent(v).size() == 2) deg2.push_back(v);
    }
    if (deg2.empty()) continue;
    ++done;
    const Rat opt0 = treesearch::solve_subset_dp(t).profile.worst_case;
    const int v = deg2[static_cast<size_t>(
        rng.uniform(0, static_cast<int>(deg2.size()) - 1))];
    const WeightedTree smaller = test_support::contract_degree2(t, v);
    const Rat opt1 = treesearch::solve_subset_dp(smaller).profile.worst_case;
    expect(opt1 <= opt0, "degree-2 contraction raised the optimum from " +
                             str(opt0) + " to " + str(opt1));
  }
}

// ---------------------------------------------------------------------------
// 10. A random 10000-vertex instance solves end to end in under ten seconds
//     (default configuration) and the output validates.

void criterion10() {
  const WeightedTree t = treesearch::gen_random_tree(10000, 0xACC70A, kCosts);
  const auto start = std::chrono::steady_clock::now();
  const TSResult r = treesearch::solve_ts(t);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  expect(secs < 10.0, "solve took " + std::to_string(secs) + "s");
  expect(bool(treesearch::validate(t, r.report.strategy)),
         "10000-vertex strategy does not validate");
}

// ---------------------------------------------------------------------------

struct Criterion {
  int id;
  const char* label;
  void (*run)();
  double budget_secs;  // 0 = no wall-clock requirement
};

const Criterion kCriteria[] = {
    {1, "subset DP matches the exhaustive oracle (all shapes to n=8, 500 random trees to n=10)",
     criterion1, 120.0},
    {2, "path solver matches the oracle on 500 random paths; unit 7-path costs 3",
     criterion2, 0.0},
    {3, "spider solver stays between the optimum and twice the optimum on 500 spiders",
     criterion3, 0.0},
    {4, "default budget is exact on every instance up to 16 vertices",
     criterion4, 0.0},
    {5, "forced 4-iteration budget keeps valid output within the certified ratio bound",
     criterion5, 0.0},
    {6, "decomposition invariants hold on random trees up to 100000 vertices",
     criterion6, 60.0},
    {7, "skeleton strategy costs at most 3x the skeleton optimum on 100 instances",
     criterion7, 0.0},
    {8, "knapsack closed form matches the exact solver; decision matches subset enumeration",
     criterion8, 0.0},
    {9, "restriction, edge-cost decrease and degree-2 contraction never raise the optimum",
     criterion9, 0.0},
    {10, "a random 10000-vertex instance solves in under ten seconds",
     criterion10, 10.0},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : kCriteria) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    try {
      c.run();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (detail.empty() && c.budget_secs > 0 && secs > c.budget_secs) {
      std::ostringstream os;
      os.precision(1);
      os << std::fixed << "took " << secs << "s, budget " << c.budget_secs << "s";
      detail = os.str();
    }
    const bool ok = detail.empty();
    failures += ok ? 0 : 1;
    std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", c.id,
                c.label, secs, ok ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
