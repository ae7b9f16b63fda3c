#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "localforge/graph.hpp"
#include "localforge/labeling.hpp"
#include "localforge/rational.hpp"

namespace localforge {

// Edge set with pairwise disjoint endpoints; pairs stored (u, v) with u < v,
// sorted. Structure is audited by verifyMatching, not assumed.
struct Matching {
    std::vector<std::pair<int, int>> edges;

    int size() const { return static_cast<int>(edges.size()); }
    std::string toJson() const;
    static Matching fromJson(const std::string& text);
};

// Local-improvement matching loop: families of maximal 10T-separated vertex
// systems jointly covering V(G) are swept in order; each unmatched family
// vertex searches for an augmenting path of length < T inside its 4T-ball
// and flips the first one found. Sweeps repeat until one makes no
// improvement (maxSweeps > 0 caps them instead). Requires phi to be
// 20T-separating. At the fixed point no augmenting path of length < T
// remains anywhere.
Matching matchingCtda(const Graph& g, const Labeling& phi, int T, int maxSweeps = 0);

struct MatchingReport {
    std::optional<std::string> structuralError;
    bool noShortAugmenting = false;
    std::vector<int> witnessPath; // an augmenting path of length < T, if any
    int size = 0;
    Rational sizeBound; // |M| (T+1)/T, an upper bound for the maximum matching when pass
    bool pass = false;
};

// Exhaustive alternating-path search up to length T-1 from every unmatched
// vertex.
MatchingReport verifyMatching(const Graph& g, const Matching& m, int T);

// Encodes a matching as a vertex labeling: matched pairs share the bundled
// symbol ("1", phi of the smaller-labeled endpoint), unmatched vertices get
// ("0", own phi). With phi 11-separating, equal labels within distance 5
// occur only on matched pairs. Decodes back exactly.
Labeling matchingToFunction(const Graph& g, const Matching& m, const Labeling& phi);
Matching matchingFromFunction(const Graph& g, const Labeling& rho);

// Audits the two matching-function conditions: per vertex at most one equal
// label within distance 5, and equal labels within distance 5 only across
// edges. On failure, why (when given) names the offending pair.
bool isMatchingFunction(const Graph& g, const Labeling& rho, std::string* why = nullptr);

} // namespace localforge
