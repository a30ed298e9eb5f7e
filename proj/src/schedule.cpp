#include "treesearch/schedule.hpp"

#include <utility>
#include <vector>

#include <json.hpp>

#include "treesearch/errors.hpp"

namespace treesearch {

using nlohmann::json;

AssemblySchedule export_schedule(const WeightedTree& tree, const DecisionTree& d) {
  const ValidationResult check = validate(tree, d);
  if (!check.ok) throw InvalidStrategy("strategy invalid: " + check.error);

  AssemblySchedule s;
  s.makespan = evaluate_unchecked(tree, d).worst_case;
  s.jobs.resize(static_cast<size_t>(tree.edge_count()));

  // Inclusive root-path cost P per queried edge; the job is [M - P, M - P + c].
  std::vector<std::pair<int, Rat>> stack{{d.root(), Rat(0)}};
  while (!stack.empty()) {
    auto [id, prefix] = std::move(stack.back());
    stack.pop_back();
    const auto& node = d.node(id);
    if (node.is_leaf()) continue;
    const Rat& c = tree.edge(node.query).cost;
    const Rat inclusive = prefix + c;
    s.jobs[static_cast<size_t>(node.query)] = {node.query, s.makespan - inclusive,
                                               s.makespan - inclusive + c};
    stack.push_back({node.child_u, inclusive});
    stack.push_back({node.child_v, inclusive});
  }
  return s;
}

std::string schedule_to_json(const AssemblySchedule& s) {
  json jobs = json::array();
  for (const auto& job : s.jobs) {
    jobs.push_back({{"edge", job.edge},
                    {"start", format_rational(job.start)},
                    {"end", format_rational(job.end)}});
  }
  return json{{"makespan", format_rational(s.makespan)}, {"jobs", std::move(jobs)}}
      .dump(2);
}

}  // namespace treesearch
