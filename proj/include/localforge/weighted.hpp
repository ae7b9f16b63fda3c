#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "localforge/graph.hpp"
#include "localforge/rational.hpp"
#include "localforge/strong_family.hpp"
#include "localforge/subsets.hpp"

namespace localforge {

// Per-vertex non-negative integer weights.
using WeightFunction = std::vector<std::int64_t>;

struct WeightedIsReport {
    std::vector<VertexSubset> sets;    // one independent set per family member
    std::vector<std::int64_t> weights; // its total weight
    int bestIndex = 0;                 // first heaviest member
    VertexSubset best;
    std::int64_t bestWeight = 0;
    std::int64_t totalWeight = 0; // sum of all vertex weights
    // Filled only when the whole graph fits the exhaustive solver.
    std::optional<std::int64_t> optimum;  // exact maximum weight
    std::optional<Rational> goodFraction; // members within epsilon * total of it
};

// For each family member, solves an exact maximum-weight independent set on
// every class interior (class minus its boundary) and takes the union; the
// result is independent in G. On small graphs the report also carries the
// brute-force optimum and the fraction of members whose weight reaches
// optimum - epsilon * totalWeight, with epsilon taken per member from its
// partition contract unless overridden.
WeightedIsReport weightedIs(const Graph& g, const CodeFamily& family, const WeightFunction& w,
                            const std::optional<Rational>& epsilon = std::nullopt,
                            int sizeLimit = 60);

} // namespace localforge
