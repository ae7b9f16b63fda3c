#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "localforge/graph.hpp"
#include "localforge/subsets.hpp"

namespace localforge {

// Reference solvers used to audit the distributed algorithms. All are exact;
// the independent-set solvers are exponential and refuse graphs beyond
// sizeLimit, the matching solver is polynomial and unlimited.

// Maximum independent set via bitmask branch and bound (graphs <= 64
// vertices; default limit 60).
VertexSubset maxIndependentSet(const Graph& g, int sizeLimit = 60);

// Maximum-weight independent set, same machinery; weights are per-vertex and
// non-negative. Ties in weight resolve deterministically.
VertexSubset maxWeightedIndependentSet(const Graph& g, const std::vector<std::int64_t>& weights,
                                       int sizeLimit = 60);

// Maximum-cardinality matching via augmenting paths with blossom
// contraction. Pairs come back as (u, v) with u < v, sorted.
std::vector<std::pair<int, int>> maxMatchingEdges(const Graph& g);

struct ExactOptima {
    VertexSubset maxIs;
    std::vector<std::pair<int, int>> maxMatching;
};

ExactOptima bruteForceOracles(const Graph& g, int isLimit = 60);

} // namespace localforge
