#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "localforge/graph.hpp"
#include "localforge/partition.hpp"
#include "localforge/rational.hpp"

namespace localforge {

// Candidate strategy for the hyperfinite sweeps. Given the ambient graph, the
// residual membership flags and a residual center, returns the sorted vertex
// set of a connected induced subgraph of the residual that contains the
// center, has size <= K and residual boundary ratio <= epsilon, or nullopt
// when no such piece is visible from that center. Every returned piece is
// audited; a finder breaking the contract is a logic error.
using PieceFinder = std::function<std::optional<std::vector<int>>(
    const Graph&, const std::vector<char>& residual, int center,
    const Rational& epsilon, int K)>;

// Smallest residual BFS ball around the center meeting the size and boundary
// contract. Sufficient whenever small balls have small boundary (cycles,
// grids, tree fringes); blind to pieces that are not balls.
PieceFinder ballPieceFinder();

// Exhaustive search over connected residual subgraphs containing the center,
// smallest piece first, ties broken lexicographically. Cost grows steeply
// with the size cap, so K > 6 is rejected.
PieceFinder exhaustivePieceFinder();

// One sweep's removals, in selection order. Pieces are pairwise at distance
// >= 2 in the residual they were cut from; starAdded lists the residual
// neighbors removed alongside them.
struct SweepRecord {
    std::vector<std::vector<int>> pieces;
    std::vector<int> starAdded;
};

struct HyperfiniteTrace {
    std::int64_t sweepBudget = 0;    // ceil(4 d^2 K^2 / epsilon) + 1
    std::vector<SweepRecord> sweeps; // one record per sweep that removed something
    bool exhaustedBudget = false;    // false: an empty sweep (or empty residual) ended the run
};

// Sweep-based partitioner. Each sweep removes a maximal 2-separated system of
// finder pieces together with their residual neighbors; the run stops when the
// sweep budget is spent, a sweep finds nothing, or the residual is empty.
// Pieces become classes in removal order; removed neighbors plus the final
// residue form the star class. Piece quality (connected, size <= K, boundary
// ratio <= epsilon measured in the residual at removal time) is enforced on
// every piece. There is no failure mode: inputs where the finder comes up
// empty simply land in the star, and the star size is the quality signal.
StarPartition hyperfiniteOracle(const Graph& g, const Rational& epsilon, int K,
                                const PieceFinder& finder,
                                HyperfiniteTrace* trace = nullptr);

} // namespace localforge
