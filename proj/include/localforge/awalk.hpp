#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace localforge {

// Shift digraph on labeled cycle windows. States are odd-length label words
// (a window of 2r+1 consecutive cycle labels); there is an edge u -> v when
// sliding the window one step can turn u into v, i.e. the last 2r symbols of
// u equal the first 2r symbols of v.
struct ContinuationDigraph {
    int radius = 0;
    std::vector<std::vector<std::string>> words; // states, sorted, distinct
    std::vector<std::vector<int>> edges;         // out-neighbors, sorted

    int stateCount() const { return static_cast<int>(words.size()); }
};

// Builds the digraph on exactly the given words (deduplicated). All words
// must share one odd length.
ContinuationDigraph continuationDigraph(std::vector<std::vector<std::string>> words);

struct AwalkReport {
    bool feasible = false; // some closed walk visits every state
    int period = 0;        // gcd of closed-walk lengths; 0 when infeasible
};

// feasible iff the digraph is strongly connected with at least one edge
// (a closed walk through all states exists exactly then); period is the
// digraph period, the gcd of all closed-walk lengths through any state.
AwalkReport awalkPeriod(const std::vector<std::vector<std::string>>& ballWords);

// Whether a closed walk of exactly the given length exists that visits at
// least one state of every class. stateClass maps each state to a class id;
// empty means every state is its own class. Exponential in the class count.
bool coveringClosedWalk(const ContinuationDigraph& dg, int length,
                        const std::vector<int>& stateClass = {});

// Divisibility classification of a positive integer sequence prefix. For
// each probe m in 1..divisorBound, inspects the suffix after the last
// violation (or last success): a clean suffix of at least minTail terms
// decides the probe, otherwise it stays undecided.
struct ArithmeticReport {
    bool convergent = false;             // every probe decided on this prefix
    std::vector<int> eventuallyDividing; // sorted probes
    std::vector<int> eventuallyNot;
    std::vector<int> undecided;
};

ArithmeticReport arithmeticSpectrum(const std::vector<std::int64_t>& seq, int divisorBound,
                                    int minTail = 3);

} // namespace localforge
