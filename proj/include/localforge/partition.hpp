#pragma once

#include <optional>
#include <string>
#include <vector>

#include "localforge/graph.hpp"
#include "localforge/labeling.hpp"
#include "localforge/rational.hpp"
#include "localforge/subsets.hpp"

namespace localforge {

// Partition of the vertex set with a declared (epsilon, K) contract: every
// class should have diameter <= K and boundary ratio <= epsilon. The contract
// is audited by verifyPartition, never assumed.
struct Partition {
    std::vector<int> classOf; // vertex -> class id, ids contiguous from 0
    Rational epsilon;
    int K = 0;

    int classCount() const;
    std::vector<VertexSubset> classes(const Graph& g) const;

    std::string toJson() const;
    static Partition fromJson(const std::string& text);
};

// Partition with one distinguished leftover class exempt from the contract;
// starClass = -1 means the leftover is empty.
struct StarPartition {
    Partition partition;
    int starClass = -1;

    std::string toJson() const;
    static StarPartition fromJson(const std::string& text);
};

struct PartitionReport {
    std::optional<std::string> structuralError; // set => ids or cover broken
    int maxDiam = 0;        // INT_MAX when some class spans components
    Rational maxIso;        // max class boundary ratio
    bool dichotomyHolds = false; // same-class pairs are <= K or >= 3K apart
    bool pass = false;      // structural && maxDiam <= K && maxIso <= epsilon
};

PartitionReport verifyPartition(const Graph& g, const Partition& p);

struct StarReport {
    PartitionReport classes; // non-star classes only
    Rational starFraction;
    int maxClassSize = 0;    // largest non-star class
    bool starWithinBound = false;
    bool pass = false;
};

// starBound is the allowed leftover fraction (the contract's own epsilon is
// about per-class boundaries, not the leftover).
StarReport verifyStarPartition(const Graph& g, const StarPartition& sp, const Rational& starBound);

// Encodes a partition whose classes all have diameter <= K into a labeling:
// classes within ambient distance < 3K get distinct labels (greedy coloring
// of the class-conflict graph), so equal labels at distance <= K pin down the
// class. Rejects partitions where some class has diameter above K (decoding
// would be ambiguous). The label count is audited against the degree bound
// d^(5K+1).
Labeling partitionToLabeling(const Graph& g, const Partition& p);

// Inverse direction: group same-label vertices within distance K (transitive
// closure). Round-trips partitionToLabeling exactly; class ids are renumbered
// by smallest member.
Partition labelingToPartition(const Graph& g, const Labeling& phi, const Rational& epsilon, int K);

} // namespace localforge
