#include "treesearch/knapsack.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "treesearch/errors.hpp"

namespace treesearch {

using nlohmann::json;

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

Rat parse_nonneg(const std::string& tok, int line_no, const char* what) {
  Rat value;
  if (!try_parse_rational(tok, value)) {
    throw InvalidInstance(InvalidInstance::Code::MalformedLine,
                          std::string("bad ") + what + " '" + tok + "'", line_no);
  }
  if (value < 0) {
    throw InvalidInstance(InvalidInstance::Code::NegativeCost,
                          std::string(what) + " must be non-negative", line_no);
  }
  return value;
}

}  // namespace

KnapsackInstance parse_knapsack(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_line = [&](std::vector<std::string>& toks) {
    while (std::getline(in, line)) {
      ++line_no;
      toks = tokens_of(line);
      if (!toks.empty()) return true;
    }
    return false;
  };

  std::vector<std::string> toks;
  if (!next_line(toks)) {
    throw InvalidInstance(InvalidInstance::Code::MalformedLine,
                          "first line must be 'm W V'", 1);
  }
  if (toks.size() != 3) {
    throw InvalidInstance(InvalidInstance::Code::MalformedLine,
                          "expected 'm W V'", line_no);
  }
  int m = 0;
  try {
    size_t used = 0;
    m = std::stoi(toks[0], &used);
    if (used != toks[0].size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw InvalidInstance(InvalidInstance::Code::MalformedLine,
                          "bad item count '" + toks[0] + "'", line_no);
  }
  if (m < 1) {
    throw InvalidInstance(InvalidInstance::Code::MalformedLine,
                          "item count must be positive", line_no);
  }
  KnapsackInstance k;
  k.capacity_w = parse_nonneg(toks[1], line_no, "capacity");
  k.target_v = parse_nonneg(toks[2], line_no, "target value");
  for (int i = 0; i < m; ++i) {
    if (!next_line(toks)) {
      throw InvalidInstance(InvalidInstance::Code::MalformedLine,
                            "missing item line", line_no + 1);
    }
    if (toks.size() != 2) {
      throw InvalidInstance(InvalidInstance::Code::MalformedLine,
                            "expected 'v w'", line_no);
    }
    Rat v = parse_nonneg(toks[0], line_no, "item value");
    Rat w = parse_nonneg(toks[1], line_no, "item weight");
    k.items.emplace_back(std::move(v), std::move(w));
  }
  if (next_line(toks)) {
    throw InvalidInstance(InvalidInstance::Code::MalformedLine,
                          "trailing content after the last item", line_no);
  }
  return k;
}

KnapsackInstance parse_knapsack(const std::string& text) {
  std::istringstream in(text);
  return parse_knapsack(in);
}

ReductionSpider knapsack_to_spider(const KnapsackInstance& k) {
  Rat heavy_sum = 0;  // sum of v_i + w_i
  Rat value_sum = 0;
  for (const auto& [v, w] : k.items) {
    heavy_sum += v + w;
    value_sum += v;
  }
  const Rat n_cost = heavy_sum - k.capacity_w - k.target_v;
  if (n_cost < 0) {
    throw PreconditionError("reduction undefined: sum(v+w) < W + V");
  }

  std::vector<Edge> edges;
  ReductionSpider r{WeightedTree(1, {}), n_cost, value_sum + n_cost + k.capacity_w,
                    {}, {}, {}};
  int next_vertex = 1;
  for (const auto& [v, w] : k.items) {
    const int a = next_vertex++;  // femur end
    const int b = next_vertex++;  // tibia end
    const int c = next_vertex++;  // tarsus end
    r.femur_edges.push_back(static_cast<int>(edges.size()));
    edges.push_back({0, a, v + w});
    r.tibia_edges.push_back(static_cast<int>(edges.size()));
    edges.push_back({a, b, v});
    r.tarsus_edges.push_back(static_cast<int>(edges.size()));
    edges.push_back({b, c, n_cost});
  }
  r.spider = WeightedTree(next_vertex, std::move(edges));
  return r;
}

namespace {

void check_subset_cap(int m, int m_cap) {
  if (m > m_cap || m > 62) {
    throw SizeCapExceeded("closed form enumerates 2^m subsets; m=" +
                          std::to_string(m) + " exceeds the cap");
  }
}

Rat checked_n_cost(const KnapsackInstance& k, const Rat& heavy_sum) {
  Rat s = heavy_sum - k.capacity_w - k.target_v;
  if (s < 0) throw PreconditionError("closed form undefined: sum(v+w) < W + V");
  return s;
}

// Calls visit(mask, candidate_cost) for every nonempty subset I (as a
// bitmask), where candidate_cost folds in the per-I leaf families selected by
// with_chain. Families, writing P = items in I and F = the rest:
//   deep leaf of a leg in I:   N + sum_F(v+w) + sum_P v   (last tibia, tarsus)
//   head leaf:                 sum_P v + sum_all(v+w)     (whole query spine)
//   deep leaf of a leg in F:   N + prefix of F femurs + its own tibia
// The third family depends on the order the F femurs are queried in; the max
// is minimized by asking larger-value femurs first (moving a larger tibia tail
// earlier can only shrink the worst prefix+tail sum), so the scan prices F in
// value-descending order.
template <typename Visit>
void scan_subsets(const KnapsackInstance& k, bool with_chain, Visit visit) {
  const int m = k.m();
  Rat heavy_sum = 0;
  for (const auto& [v, w] : k.items) heavy_sum += v + w;
  const Rat n_cost = checked_n_cost(k, heavy_sum);

  std::vector<int> by_value(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) by_value[static_cast<size_t>(i)] = i;
  std::stable_sort(by_value.begin(), by_value.end(), [&](int a, int b) {
    return k.items[static_cast<size_t>(a)].first > k.items[static_cast<size_t>(b)].first;
  });

  for (uint64_t mask = 1; mask < (uint64_t{1} << m); ++mask) {
    Rat in_values = 0;
    Rat out_heavy = 0;
    for (int i = 0; i < m; ++i) {
      const auto& [v, w] = k.items[static_cast<size_t>(i)];
      if (mask >> i & 1) {
        in_values += v;
      } else {
        out_heavy += v + w;
      }
    }
    const Rat deep_leaf = n_cost + out_heavy + in_values;
    const Rat head_leaf = in_values + heavy_sum;
    Rat candidate = std::max(deep_leaf, head_leaf);
    if (with_chain) {
      Rat prefix = 0;
      for (int i : by_value) {
        if (mask >> i & 1) continue;
        const auto& [v, w] = k.items[static_cast<size_t>(i)];
        prefix += v + w;
        const Rat chain_leaf = n_cost + prefix + v;
        if (chain_leaf > candidate) candidate = chain_leaf;
      }
    }
    visit(mask, candidate);
  }
}

struct SubsetArgmin {
  Rat best;
  uint64_t mask = 0;
  bool have = false;
  // Ascending mask order makes the first strict minimum the lexicographically
  // smallest subset under bit-0 = item 0.
  void offer(uint64_t m, const Rat& cost) {
    if (!have || cost < best) {
      have = true;
      best = cost;
      mask = m;
    }
  }
};

std::vector<int> mask_to_items(uint64_t mask, int m) {
  std::vector<int> out;
  for (int i = 0; i < m; ++i) {
    if (mask >> i & 1) out.push_back(i);
  }
  return out;
}

}  // namespace

OptFormulaResult opt_formula(const KnapsackInstance& k, int m_cap) {
  check_subset_cap(k.m(), m_cap);
  SubsetArgmin argmin;
  scan_subsets(k, /*with_chain=*/true,
               [&](uint64_t mask, const Rat& cost) { argmin.offer(mask, cost); });
  return {argmin.best, mask_to_items(argmin.mask, k.m())};
}

KnapsackDecision decide_knapsack(const KnapsackInstance& k, int m_cap) {
  check_subset_cap(k.m(), m_cap);
  const ReductionSpider r = knapsack_to_spider(k);

  // The decision drops the complement-chain leaves: the two remaining terms
  // stay within the threshold exactly when the complement respects W and V,
  // which is the knapsack question itself. (The full three-term optimum can
  // overshoot the threshold on instances that are nonetheless feasible.)
  SubsetArgmin argmin;
  scan_subsets(k, /*with_chain=*/false,
               [&](uint64_t mask, const Rat& cost) { argmin.offer(mask, cost); });

  KnapsackDecision d;
  d.opt = argmin.best;
  d.threshold = r.threshold;
  d.n_cost = r.n_cost;

  Rat max_heavy = 0;
  for (const auto& [v, w] : k.items) max_heavy = std::max(max_heavy, Rat(v + w));
  d.in_regime = r.n_cost >= max_heavy;

  d.feasible = argmin.best <= r.threshold;
  if (d.feasible) {
    for (int i = 0; i < k.m(); ++i) {
      if (!(argmin.mask >> i & 1)) d.witness.push_back(i);
    }
  }
  return d;
}

std::string decision_to_json(const KnapsackDecision& d) {
  json j{{"feasible", d.feasible},
         {"opt", format_rational(d.opt)},
         {"threshold", format_rational(d.threshold)},
         {"N", format_rational(d.n_cost)},
         {"in_regime", d.in_regime}};
  if (d.feasible) j["witness"] = d.witness;
  return j.dump(2);
}

}  // namespace treesearch
