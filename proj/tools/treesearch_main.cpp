// treesearch — solve / verify / gen / bench / export-schedule front end.
//
// stdout carries exactly one machine-readable document per run (report JSON,
// instance text, schedule JSON, ...); diagnostics and side metadata go to
// stderr. Exit codes: 0 success, 1 verify found the strategy invalid,
// 2 anything else went wrong.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "treesearch/errors.hpp"
#include "treesearch/exact.hpp"
#include "treesearch/generators.hpp"
#include "treesearch/knapsack.hpp"
#include "treesearch/report.hpp"
#include "treesearch/schedule.hpp"
#include "treesearch/spider.hpp"
#include "treesearch/tree.hpp"
#include "treesearch/ts.hpp"

namespace {

using namespace treesearch;
using nlohmann::json;

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
  if (!content.empty() && content.back() != '\n') out << '\n';
}

uint64_t default_seed() {
  if (const char* env = std::getenv("TREESEARCH_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

Rat parse_rat_arg(const std::string& tok, const char* what) {
  Rat value;
  if (!try_parse_rational(tok, value)) {
    throw Error(std::string("bad ") + what + " '" + tok + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
  }
};

struct SolveArgs {
  std::string instance;
  std::string alg = "ts";
  std::optional<int> t_override;
  std::optional<int> small_cutoff;
  int dp_cap = kSubsetDpCapDefault;
  bool dp_cap_set = false;  // --dp-cap given: also override the ts-internal cap
  std::string trace_path;
  std::string out_path;
  bool with_ref = false;
};

SolveReport dispatch(const WeightedTree& tree, const SolveArgs& args,
                     std::optional<TSTrace>* trace_out) {
  if (args.alg == "oracle") return solve_oracle(tree);
  if (args.alg == "exact") return solve_subset_dp(tree, args.dp_cap);
  if (args.alg == "path") return solve_path(tree);
  if (args.alg == "spider") return solve_spider(tree);
  if (args.alg == "ts") {
    TSConfig cfg;
    cfg.t_override = args.t_override;
    cfg.small_cutoff = args.small_cutoff;
    if (args.dp_cap_set) cfg.subset_dp_cap = args.dp_cap;
    cfg.want_trace = trace_out != nullptr;
    TSResult result = solve_ts(tree, cfg);
    if (trace_out) *trace_out = std::move(result.trace);
    return std::move(result.report);
  }
  throw Error("unknown algorithm '" + args.alg + "'");
}

int cmd_solve(const SolveArgs& args) {
  const WeightedTree tree = parse_instance(read_text(args.instance));
  std::optional<TSTrace> trace;
  Timer timer;
  SolveReport solved =
      dispatch(tree, args, args.trace_path.empty() ? nullptr : &trace);
  const double wall = timer.ms();

  RunReport report = make_run_report(tree, solved, wall);
  if (args.alg == "ts" && solved.certified && tree.n() >= 4) {
    report.bound = approx_bound(tree.n());
  }
  if (args.with_ref) {
    const SolveReport exact = solve_subset_dp(tree, args.dp_cap);
    report.exact_opt = exact.profile.worst_case;
    report.ratio = report.worst_case / exact.profile.worst_case;
  }

  if (!args.trace_path.empty()) {
    if (!trace) throw Error("--trace: this run never built a skeleton");
    write_text(args.trace_path, trace_to_json(*trace));
  }

  json out = json::parse(run_report_to_json(report));
  if (args.out_path.empty()) {
    out["strategy"] = json::parse(strategy_to_json(solved.strategy));
  } else {
    write_text(args.out_path, strategy_to_json(solved.strategy));
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& strategy_path) {
  const WeightedTree tree = parse_instance(read_text(instance_path));
  DecisionTree d;
  try {
    d = strategy_from_json(read_text(strategy_path));
  } catch (const InvalidStrategy& e) {
    std::cout << json{{"valid", false}, {"violation", e.what()}}.dump(2) << '\n';
    return 1;
  }
  const ValidationResult check = validate(tree, d);
  if (!check.ok) {
    std::cout << json{{"valid", false}, {"violation", check.error}, {"node", check.node}}
                     .dump(2)
              << '\n';
    return 1;
  }
  const CostProfile profile = evaluate_unchecked(tree, d);
  json per_vertex = json::array();
  for (const Rat& c : profile.per_vertex) per_vertex.push_back(format_rational(c));
  std::cout << json{{"valid", true},
                    {"digest", tree.digest()},
                    {"worst_case", format_rational(profile.worst_case)},
                    {"per_vertex", std::move(per_vertex)}}
                   .dump(2)
            << '\n';
  return 0;
}

int cmd_export_schedule(const std::string& instance_path,
                        const std::string& strategy_path) {
  const WeightedTree tree = parse_instance(read_text(instance_path));
  const DecisionTree d = strategy_from_json(read_text(strategy_path));
  std::cout << schedule_to_json(export_schedule(tree, d)) << '\n';
  return 0;
}

KnapsackInstance knapsack_from_args(const std::string& items_arg, const std::string& w,
                                    const std::string& v) {
  KnapsackInstance k;
  for (const std::string& item : split(items_arg, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) throw Error("bad item '" + item + "', expected v:w");
    k.items.emplace_back(parse_rat_arg(parts[0], "item value"),
                         parse_rat_arg(parts[1], "item weight"));
  }
  k.capacity_w = parse_rat_arg(w, "capacity");
  k.target_v = parse_rat_arg(v, "target value");
  return k;
}

struct BenchRow {
  std::string file;
  RunReport report;
  std::string skip_reason;  // non-empty: row reports a skip
};

int cmd_bench(const std::string& dir, const std::vector<std::string>& algs,
              int exact_cap, bool as_json) {
  std::vector<std::pair<std::string, WeightedTree>> corpus;
  std::vector<BenchRow> rows;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string file = entry.path().filename().string();
    try {
      corpus.emplace_back(file, parse_instance(read_text(entry.path().string())));
    } catch (const Error& e) {
      BenchRow row;
      row.file = file;
      row.skip_reason = e.what();
      rows.push_back(std::move(row));
    }
  }
  std::sort(corpus.begin(), corpus.end(), [](const auto& a, const auto& b) {
    const std::string da = a.second.digest(), db = b.second.digest();
    return std::tie(da, a.first) < std::tie(db, b.first);
  });

  std::optional<Rat> max_ratio;
  Rat ratio_sum = 0;
  int ratio_count = 0;
  for (const auto& [file, tree] : corpus) {
    std::optional<Rat> exact_opt;
    if (tree.n() <= exact_cap) {
      exact_opt = solve_subset_dp(tree, exact_cap).profile.worst_case;
    }
    for (const std::string& alg : algs) {
      SolveArgs args;
      args.alg = alg;
      args.dp_cap = exact_cap;
      BenchRow row;
      row.file = file;
      try {
        Timer timer;
        const SolveReport solved = dispatch(tree, args, nullptr);
        row.report = make_run_report(tree, solved, timer.ms());
        if (exact_opt) {
          row.report.exact_opt = exact_opt;
          row.report.ratio = row.report.worst_case / *exact_opt;
          if (!max_ratio || *row.report.ratio > *max_ratio) {
            max_ratio = row.report.ratio;
          }
          ratio_sum += *row.report.ratio;
          ++ratio_count;
        }
      } catch (const Error& e) {
        row.skip_reason = e.what();
      }
      rows.push_back(std::move(row));
    }
  }

  if (as_json) {
    json out = json::array();
    for (const BenchRow& row : rows) {
      if (!row.skip_reason.empty()) {
        out.push_back({{"file", row.file}, {"skipped", row.skip_reason}});
      } else {
        json r = json::parse(run_report_to_json(row.report));
        r["file"] = row.file;
        out.push_back(std::move(r));
      }
    }
    json doc{{"runs", std::move(out)}};
    if (max_ratio) {
      doc["max_ratio"] = format_rational(*max_ratio);
      doc["mean_ratio"] = format_rational(ratio_sum / ratio_count);
    }
    std::cout << doc.dump(2) << '\n';
    return 0;
  }

  std::cout << "file\tdigest\tn\talg\tcost\tms\tratio\tcertified\n";
  for (const BenchRow& row : rows) {
    if (!row.skip_reason.empty()) {
      std::cout << row.file << "\t-\t-\t-\tskipped: " << row.skip_reason << "\n";
      continue;
    }
    std::cout << row.file << '\t' << row.report.digest << '\t' << row.report.n << '\t'
              << row.report.algorithm << '\t' << format_rational(row.report.worst_case)
              << '\t' << row.report.wall_ms << '\t'
              << (row.report.ratio ? format_rational(*row.report.ratio) : "-") << '\t'
              << (row.report.certified ? "yes" : "no") << '\n';
  }
  if (max_ratio) {
    std::cout << "max_ratio\t" << format_rational(*max_ratio) << "\nmean_ratio\t"
              << format_rational(ratio_sum / ratio_count) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision-tree search strategies on edge-weighted trees"};
  app.require_subcommand(1);

  // ---- solve ----
  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "solve an instance, print a run report");
  solve->add_option("instance", solve_args.instance, "instance file ('-' = stdin)")
      ->required();
  solve->add_option("--alg", solve_args.alg, "oracle|exact|path|spider|ts")
      ->check(CLI::IsMember({"oracle", "exact", "path", "spider", "ts"}));
  int t_override_arg = 0;
  auto* t_opt = solve->add_option("--t-override", t_override_arg,
                                  "fixed skeleton iteration count (>= 2)");
  int cutoff_arg = 0;
  auto* cutoff_opt = solve->add_option("--small-cutoff", cutoff_arg,
                                       "exact-solve threshold override");
  auto* dp_cap_opt =
      solve->add_option("--dp-cap", solve_args.dp_cap, "exact subset-DP size cap");
  solve->add_option("--trace", solve_args.trace_path,
                    "write the skeleton breakdown JSON here (ts only)");
  solve->add_option("--out", solve_args.out_path,
                    "write strategy JSON here instead of embedding it");
  solve->add_flag("--ref", solve_args.with_ref,
                  "also solve exactly (within --dp-cap) and report the ratio");

  // ---- verify ----
  std::string verify_instance, verify_strategy;
  auto* verify = app.add_subcommand("verify", "check a strategy against an instance");
  verify->add_option("instance", verify_instance, "instance file")->required();
  verify->add_option("strategy", verify_strategy, "strategy JSON file")->required();

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate instances (seed-deterministic)");
  gen->require_subcommand(1);
  uint64_t seed = default_seed();
  int gen_n = 8;
  CostRange range;
  std::string gen_out = "-";
  auto add_common = [&](CLI::App* sub, bool with_n) {
    sub->add_option("--seed", seed, "PRNG seed (default: $TREESEARCH_SEED or 0)");
    if (with_n) sub->add_option("--n", gen_n, "vertex count");
    sub->add_option("--min", range.min, "minimum cost");
    sub->add_option("--max", range.max, "maximum cost");
    sub->add_option("--den-max", range.den_max,
                    "max denominator (1 = integer costs)");
    sub->add_option("--out", gen_out, "output file (default stdout)");
  };
  auto* gen_random = gen->add_subcommand("random-tree", "random attachment tree");
  add_common(gen_random, true);
  auto* gen_path_cmd = gen->add_subcommand("path", "path instance");
  add_common(gen_path_cmd, true);
  std::string costs_arg;
  gen_path_cmd->add_option("--costs", costs_arg,
                           "comma-separated explicit costs (overrides random)");
  auto* gen_spider_cmd = gen->add_subcommand("spider", "spider instance");
  add_common(gen_spider_cmd, false);
  int legs = 3, max_leg_len = 3;
  gen_spider_cmd->add_option("--legs", legs, "leg count (>= 3)");
  gen_spider_cmd->add_option("--max-leg-len", max_leg_len, "maximum leg length");
  auto* gen_cater = gen->add_subcommand("caterpillar", "caterpillar instance");
  add_common(gen_cater, true);
  auto* gen_knap = gen->add_subcommand(
      "knapsack", "reduction spider from a knapsack decision instance");
  std::string items_arg, w_arg = "0", v_arg = "0";
  gen_knap->add_option("--items", items_arg, "items as v:w,v:w,...")->required();
  gen_knap->add_option("--W", w_arg, "weight capacity")->required();
  gen_knap->add_option("--V", v_arg, "value target")->required();
  gen_knap->add_option("--out", gen_out, "output file (default stdout)");
  std::string meta_path;
  gen_knap->add_option("--meta", meta_path,
                       "write decision metadata JSON here (default stderr)");

  // ---- bench ----
  std::string bench_dir;
  std::vector<std::string> bench_algs{"ts"};
  int exact_cap = 20;
  bool bench_json = false;
  auto* bench = app.add_subcommand("bench", "run a corpus directory, report ratios");
  bench->add_option("dir", bench_dir, "directory of instance files")->required();
  bench->add_option("--alg", bench_algs, "algorithms to run (repeatable)")
      ->check(CLI::IsMember({"oracle", "exact", "path", "spider", "ts"}));
  bench->add_option("--exact-cap", exact_cap,
                    "compute the exact reference up to this size");
  bench->add_flag("--json", bench_json, "JSON output instead of a table");

  // ---- export-schedule ----
  std::string sched_instance, sched_strategy;
  auto* sched = app.add_subcommand("export-schedule",
                                   "assembly schedule of a strategy");
  sched->add_option("instance", sched_instance, "instance file")->required();
  sched->add_option("strategy", sched_strategy, "strategy JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*t_opt) solve_args.t_override = t_override_arg;
    if (*cutoff_opt) solve_args.small_cutoff = cutoff_arg;
    solve_args.dp_cap_set = static_cast<bool>(*dp_cap_opt);

    if (solve->parsed()) return cmd_solve(solve_args);
    if (verify->parsed()) return cmd_verify(verify_instance, verify_strategy);
    if (sched->parsed()) return cmd_export_schedule(sched_instance, sched_strategy);
    if (bench->parsed()) return cmd_bench(bench_dir, bench_algs, exact_cap, bench_json);

    if (gen->parsed()) {
      if (gen_knap->parsed()) {
        const KnapsackInstance k = knapsack_from_args(items_arg, w_arg, v_arg);
        const ReductionSpider r = knapsack_to_spider(k);
        write_text(gen_out, r.spider.serialize());
        const std::string meta = decision_to_json(decide_knapsack(k));
        if (meta_path.empty()) {
          std::cerr << meta << '\n';
        } else {
          write_text(meta_path, meta);
        }
        return 0;
      }
      WeightedTree tree(1, {});
      if (gen_random->parsed()) {
        tree = gen_random_tree(gen_n, seed, range);
      } else if (gen_path_cmd->parsed()) {
        std::optional<std::vector<Rat>> costs;
        if (!costs_arg.empty()) {
          costs.emplace();
          for (const std::string& tok : split(costs_arg, ',')) {
            costs->push_back(parse_rat_arg(tok, "cost"));
          }
        }
        tree = gen_path(gen_n, seed, range, costs);
      } else if (gen_spider_cmd->parsed()) {
        tree = gen_spider(legs, max_leg_len, seed, range);
      } else {
        tree = gen_caterpillar(gen_n, seed, range);
      }
      write_text(gen_out, tree.serialize());
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
