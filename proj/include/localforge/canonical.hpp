#pragma once

#include "localforge/graph.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace localforge {

// Induced subgraph on B_r(G, x) with local vertex ids 0..k-1; the root is
// local id 0 and toHost maps local ids back to G. Distances from the root
// inside the ball equal the ambient distances (shortest paths to the root
// never leave the ball).
struct RootedBall {
    int radius = 0;
    std::vector<std::vector<int>> adj; // local ids, sorted
    std::vector<int> toHost;

    int size() const { return static_cast<int>(adj.size()); }
    int root() const { return 0; }
};

RootedBall ball(const Graph& g, int x, int r);

// Canonical encoding of a rooted (optionally labeled) ball. Two balls get
// equal (radius, labelAlphabet, encoding) triples iff they are
// rooted-labeled-isomorphic; the encoding is decodable.
struct CanonicalBall {
    int radius = 0;
    std::vector<std::string> labelAlphabet; // sorted symbols present in the ball; empty = unlabeled
    std::string encoding;

    auto operator<=>(const CanonicalBall&) const = default;
};

// labels, when present, give one symbol per local ball vertex.
// positionToLocal, when non-null, receives the local ball id occupying each
// canonical position (one fixed witness ordering; deterministic across runs).
CanonicalBall canonicalize(const RootedBall& b, const std::vector<std::string>& labels = {},
                           std::vector<int>* positionToLocal = nullptr);

// Convenience: canonicalize(ball(g, x, r)) with labels pulled from a
// host-indexed symbol vector (empty = unlabeled).
CanonicalBall canonicalBallAt(const Graph& g, int x, int r,
                              const std::vector<std::string>& hostLabels = {});

// Decoded canonical ball: adjacency in canonical position order, root at
// position 0, labels as indices into the alphabet (-1 when unlabeled).
struct DecodedBall {
    int radius = 0;
    std::vector<std::vector<int>> adj;
    std::vector<int> labelIndex;
    std::vector<std::string> labelAlphabet;

    int size() const { return static_cast<int>(adj.size()); }
    std::string labelOf(int pos) const;
};

DecodedBall decode(const CanonicalBall& cb);

// All canonical unlabeled balls of radii 0..r, deduplicated, keyed by radius.
using BallSet = std::map<int, std::vector<CanonicalBall>>;
BallSet ballSet(const Graph& g, int r);

// Exhaustive root-fixing isomorphism test for balls of <= 9 vertices; the
// reference oracle for canonicalize.
bool bruteForceRootedIso(const RootedBall& a, const std::vector<std::string>& labelsA,
                         const RootedBall& b, const std::vector<std::string>& labelsB);

} // namespace localforge
