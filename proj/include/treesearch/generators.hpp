#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "treesearch/tree.hpp"

namespace treesearch {

// splitmix64 — tiny, seedable, and byte-stable across platforms and library
// versions, which the std distributions are not. Generator output for a
// fixed seed is part of the observable contract (tests diff it).
struct Rng {
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next();
  // Uniform in [lo, hi] by modulo; the sliver of bias is irrelevant here and
  // determinism is not.
  int uniform(int lo, int hi);
  uint64_t state;
};

// Edge costs drawn as p/q with p uniform in [min*q, max*q] after picking
// q uniform in [1, den_max]; den_max 1 gives plain integers in [min, max].
struct CostRange {
  long min = 1;
  long max = 10;
  int den_max = 1;
};

Rat random_cost(Rng& rng, const CostRange& range);

// Random attachment: vertex v joins a uniform earlier vertex; edge id v-1.
WeightedTree gen_random_tree(int n, uint64_t seed, const CostRange& range = {});

// Path 0-1-..-(n-1). Explicit costs win over random ones when provided.
WeightedTree gen_path(int n, uint64_t seed, const CostRange& range = {},
                      const std::optional<std::vector<Rat>>& costs = std::nullopt);

// Head 0, legs laid out one after another; leg lengths uniform in
// [1, max_leg_len]. legs >= 3 keeps the head's degree honest.
WeightedTree gen_spider(int legs, int max_leg_len, uint64_t seed,
                        const CostRange& range = {});

// Path spine with the remaining vertices hung off uniform spine positions.
WeightedTree gen_caterpillar(int n, uint64_t seed, const CostRange& range = {});

}  // namespace treesearch
