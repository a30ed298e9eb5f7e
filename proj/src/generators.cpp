#include "treesearch/generators.hpp"

#include <utility>

#include "treesearch/errors.hpp"

namespace treesearch {

uint64_t Rng::next() {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int Rng::uniform(int lo, int hi) {
  if (lo > hi) throw PreconditionError("uniform: empty range");
  const uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
  return lo + static_cast<int>(next() % span);
}

Rat random_cost(Rng& rng, const CostRange& range) {
  if (range.min < 0 || range.max < range.min || range.den_max < 1) {
    throw PreconditionError("bad cost range");
  }
  const int q = range.den_max == 1 ? 1 : rng.uniform(1, range.den_max);
  const long lo = range.min * q;
  const long hi = range.max * q;
  const long p = lo + static_cast<long>(rng.next() % static_cast<uint64_t>(hi - lo + 1));
  return Rat(p, q);
}

WeightedTree gen_random_tree(int n, uint64_t seed, const CostRange& range) {
  if (n < 1) throw PreconditionError("tree size must be >= 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) {
    edges.push_back({rng.uniform(0, v - 1), v, random_cost(rng, range)});
  }
  return WeightedTree(n, std::move(edges));
}

WeightedTree gen_path(int n, uint64_t seed, const CostRange& range,
                      const std::optional<std::vector<Rat>>& costs) {
  if (n < 1) throw PreconditionError("path size must be >= 1");
  if (costs && static_cast<int>(costs->size()) != n - 1) {
    throw PreconditionError("path needs exactly n-1 costs");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) {
    edges.push_back({v - 1, v,
                     costs ? (*costs)[static_cast<size_t>(v - 1)]
                           : random_cost(rng, range)});
  }
  return WeightedTree(n, std::move(edges));
}

WeightedTree gen_spider(int legs, int max_leg_len, uint64_t seed,
                        const CostRange& range) {
  if (legs < 3) throw PreconditionError("a spider needs at least 3 legs");
  if (max_leg_len < 1) throw PreconditionError("leg length must be >= 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  int next_vertex = 1;
  for (int leg = 0; leg < legs; ++leg) {
    const int len = rng.uniform(1, max_leg_len);
    int prev = 0;
    for (int step = 0; step < len; ++step) {
      edges.push_back({prev, next_vertex, random_cost(rng, range)});
      prev = next_vertex++;
    }
  }
  return WeightedTree(next_vertex, std::move(edges));
}

WeightedTree gen_caterpillar(int n, uint64_t seed, const CostRange& range) {
  if (n < 1) throw PreconditionError("tree size must be >= 1");
  Rng rng(seed);
  const int spine = n == 1 ? 1 : rng.uniform(1, (n + 1) / 2);
  std::vector<Edge> edges;
  for (int v = 1; v < spine; ++v) {
    edges.push_back({v - 1, v, random_cost(rng, range)});
  }
  for (int v = spine; v < n; ++v) {
    edges.push_back({rng.uniform(0, spine - 1), v, random_cost(rng, range)});
  }
  return WeightedTree(n, std::move(edges));
}

}  // namespace treesearch
