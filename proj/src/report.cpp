#include "treesearch/report.hpp"

#include <utility>

#include <json.hpp>

namespace treesearch {

using nlohmann::json;

RunReport make_run_report(const WeightedTree& tree, const SolveReport& solved,
                          double wall_ms) {
  RunReport r;
  r.digest = tree.digest();
  r.algorithm = solved.algorithm;
  r.n = tree.n();
  r.worst_case = solved.profile.worst_case;
  r.per_vertex = solved.profile.per_vertex;
  r.wall_ms = wall_ms;
  r.certified = solved.certified;
  return r;
}

std::string run_report_to_json(const RunReport& r) {
  json per_vertex = json::array();
  for (const Rat& c : r.per_vertex) per_vertex.push_back(format_rational(c));
  json j{{"digest", r.digest},
         {"algorithm", r.algorithm},
         {"n", r.n},
         {"worst_case", format_rational(r.worst_case)},
         {"per_vertex", std::move(per_vertex)},
         {"wall_ms", r.wall_ms},
         {"certified", r.certified}};
  if (r.exact_opt) j["exact_opt"] = format_rational(*r.exact_opt);
  if (r.ratio) j["ratio"] = format_rational(*r.ratio);
  if (r.bound) j["bound"] = format_rational(*r.bound);
  return j.dump(2);
}

}  // namespace treesearch
