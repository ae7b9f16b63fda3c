#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "localforge/doubling.hpp"
#include "localforge/graph.hpp"
#include "localforge/partition.hpp"
#include "localforge/rational.hpp"

namespace localforge {

// One entry per scale type: (system index, radius shift). System indices are
// 1-based into the covering systems built for that type; shifts lie in
// [1, R_i] for shift-mode tuples.
using Code = std::vector<std::pair<int, BigInt>>;

struct FamilyMember {
    Code code;
    Partition partition;
};

// Family of partitions of one graph drawn from a shared construction.
// Builders guarantee: codes pairwise distinct, every partition passes
// verifyPartition for its own declared contract.
struct CodeFamily {
    std::vector<FamilyMember> members;
    std::uint64_t seed = 0;
    std::vector<int> systemCounts; // per type; empty for handmade families

    std::string toJson() const;
    static CodeFamily fromJson(const std::string& text);
};

// Repeatedly builds maximal >separation-separated center sets, preferring
// still-uncovered vertices in id order, until the coverRadius-balls around
// all centers of all systems jointly cover the graph. Each returned system
// is itself maximal, so the first one alone is the plain greedy net.
std::vector<std::vector<int>> coveringSystems(const Graph& g, const BigInt& separation,
                                              const BigInt& coverRadius);

// Samples sampleCount distinct codes from the given seed and runs the
// nice-ball pipeline once per code (chosen system per type, base radius plus
// the code's shift, discard round, extension). Every resulting partition is
// re-verified; a failing member aborts the build naming its code. Requires a
// shift-mode tuple.
CodeFamily strongFamily(const Graph& g, const GoodTuple& tuple, int sampleCount,
                        std::uint64_t seed,
                        const Rational& epsilonPrime = Rational(1, 8));

struct StrongFamilyReport {
    Rational maxFraction;       // worst per-vertex boundary fraction
    Rational meanFraction;      // average over vertices
    std::vector<int> histogram; // histogram[c] = #vertices on a boundary in c members
    Rational okFraction;        // vertices with fraction < epsilon
};

// Per-vertex boundary membership across the family: for each vertex the
// fraction of members whose partition puts it on a class boundary. Exact.
StrongFamilyReport verifyStrongFamily(const Graph& g, const CodeFamily& family,
                                      const Rational& epsilon);

// l partitions of a finite tree into blocks of diameter < 2l, indexed by a
// depth offset i = 1..l: vertices x, y share a block when the paths from the
// root meet at a vertex z within distance < l of both whose shifted depth
// depth(z) + i - 1 is divisible by l. Every vertex lies on a class boundary
// in at most two of the l partitions.
CodeFamily fractionalTreeFamily(const Graph& tree, int root, int l);

} // namespace localforge
