#pragma once

#include "localforge/graph.hpp"
#include "localforge/rational.hpp"

#include <vector>

namespace localforge {

// Sorted vertex list inside a host graph. The host is referenced, not owned;
// callers keep the graph alive for the subset's lifetime.
struct VertexSubset {
    std::vector<int> members; // sorted, no duplicates

    static VertexSubset of(const Graph& g, std::vector<int> vertices);
    bool contains(int v) const;
    int size() const { return static_cast<int>(members.size()); }
};

struct Boundaries {
    VertexSubset inner;    // ∂(H): vertices of H with a neighbor outside H
    VertexSubset kInner;   // ∂_K(H): vertices of H within distance K of the outside
    VertexSubset kClosure; // B_K(H): vertices within distance K of H
};

Boundaries boundaries(const Graph& g, const VertexSubset& h, int k);

// |∂(H)| / |H| as an exact rational.
Rational isoperimetric(const Graph& g, const VertexSubset& h);

// Max over pairs in H of the ambient-graph distance.
int subsetDiameter(const Graph& g, const VertexSubset& h);

// Max over x and 1 <= s <= sMax of |B_2s(x)| / |B_s(x)|, exact.
Rational doublingConstant(const Graph& g, int sMax);

// Greedy maximal s-separated net inside B_2s(x); its s-balls cover B_2s(x).
std::vector<int> coverWitness(const Graph& g, int x, int s);

// Induced subgraph on a nonempty subset; vertex i of the result is
// h.members[i], and the degree bound carries over.
Graph inducedSubgraph(const Graph& g, const VertexSubset& h);

} // namespace localforge
