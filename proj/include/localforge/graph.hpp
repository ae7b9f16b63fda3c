#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace localforge {

// Deterministic random source. uniformInt uses rejection sampling on raw
// 64-bit draws, so sequences are identical across platforms and library
// versions for a fixed seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t nextRaw() { return eng_(); }

    // Uniform on [lo, hi], inclusive.
    std::int64_t uniformInt(std::int64_t lo, std::int64_t hi);

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            auto j = static_cast<std::size_t>(uniformInt(0, static_cast<std::int64_t>(i) - 1));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

// Finite simple graph with an enforced degree bound. Vertices are 0..n-1.
// Adjacency lists are sorted; the structure is immutable after construction.
class Graph {
public:
    static Graph fromEdges(int n, int d, const std::vector<std::pair<int, int>>& edges);

    int n() const { return static_cast<int>(adj_.size()); }
    int degreeBound() const { return d_; }
    int degree(int x) const { return static_cast<int>(neighbors(x).size()); }
    const std::vector<int>& neighbors(int x) const;
    bool hasEdge(int u, int v) const;

    // Edge list with u < v, sorted lexicographically.
    std::vector<std::pair<int, int>> edges() const;

    // Full BFS; -1 for unreachable vertices.
    std::vector<int> distancesFrom(int x) const;
    // BFS truncated at distance cap; -1 beyond the cap.
    std::vector<int> distancesFrom(int x, int cap) const;
    // Sorted vertex list of B_r(x).
    std::vector<int> ballVertices(int x, int r) const;

    int eccentricity(int x) const;
    // Maximum finite distance over all pairs (max over components when
    // disconnected).
    int diameter() const;
    bool isConnected() const;
    std::vector<std::vector<int>> components() const;

    std::string toJson() const;
    static Graph fromJson(const std::string& text);

private:
    Graph(std::vector<std::vector<int>> adj, int d) : adj_(std::move(adj)), d_(d) {}
    std::vector<std::vector<int>> adj_;
    int d_;
};

Graph cycleGraph(int n);
Graph pathGraph(int n);
Graph torusGraph(int rows, int cols);
Graph gridGraph(int rows, int cols);
// Truncated regular tree: the root has `branching` children, every other
// internal vertex has branching-1 children, `depth` levels below the root.
Graph regularTreeTruncation(int branching, int depth);
// Random simple graph with maximum degree <= d: candidate pairs are shuffled
// deterministically and added while both endpoints have spare degree.
Graph randomBoundedDegree(int n, int d, std::uint64_t seed);

// The generate(kind, params, seed) entry point used by the CLI.
Graph generate(const std::string& kind, const std::vector<std::int64_t>& params, std::uint64_t seed);

} // namespace localforge
