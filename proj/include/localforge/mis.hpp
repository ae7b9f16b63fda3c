#pragma once

#include "localforge/exact.hpp"
#include "localforge/graph.hpp"
#include "localforge/labeling.hpp"
#include "localforge/oracle.hpp"
#include "localforge/partition.hpp"
#include "localforge/rational.hpp"
#include "localforge/subsets.hpp"

namespace localforge {

// Maximal-independent-set pipeline: one radius-1 round per input label. In
// round k, vertices still carrying label k adopt "a" when no neighbor already
// holds "a", otherwise "b"; after all rounds the "a"-vertices form a maximal
// independent set. Input symbols are "1".."m" plus the reserved "a"/"b".
OracleSpec misOracle(int labelCount);

// Runs the pipeline on a 1-separating labeling (arbitrary alphabet; symbols
// are renamed positionally to "1".."m" first) and returns the "a"-preimage.
VertexSubset misCtda(const Graph& g, const Labeling& phi, int threads = 1,
                     RoundTrace* trace = nullptr);

struct ApproxMisReport {
    VertexSubset result;
    Rational fraction;          // |result| / |V|
    Rational starFraction;      // leftover-class mass per vertex
    Rational boundaryFraction;  // class-boundary mass per vertex
};

// Exact maximum independent set on each non-star class interior (class minus
// its boundary vertices); the union is independent in G, and any independent
// set can exceed it only on star or boundary vertices, so
// |result|/|V| >= opt/|V| - starFraction - boundaryFraction.
ApproxMisReport approxMis(const Graph& g, const StarPartition& sp, int sizeLimit = 60);

} // namespace localforge
