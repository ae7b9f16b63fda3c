#include "localforge/exact.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace localforge {

namespace {

struct IsSolver {
    int n;
    std::vector<std::uint64_t> adjMask;
    std::vector<std::int64_t> w;
    std::int64_t best = -1;
    std::uint64_t bestPick = 0;

    std::int64_t weightOf(std::uint64_t mask) const {
        std::int64_t total = 0;
        while (mask) {
            int v = __builtin_ctzll(mask);
            total += w[static_cast<std::size_t>(v)];
            mask &= mask - 1;
        }
        return total;
    }

    void rec(std::uint64_t rem, std::int64_t cur, std::uint64_t pick) {
        if (cur + weightOf(rem) <= best) {
            return;
        }
        if (!rem) {
            best = cur;
            bestPick = pick;
            return;
        }
        // Branch on the vertex with most remaining conflicts; isolated
        // remainder vertices all join at once.
        int branch = -1;
        int branchDeg = -1;
        for (std::uint64_t scan = rem; scan;) {
            int v = __builtin_ctzll(scan);
            scan &= scan - 1;
            int deg = __builtin_popcountll(adjMask[static_cast<std::size_t>(v)] & rem);
            if (deg > branchDeg) {
                branchDeg = deg;
                branch = v;
            }
        }
        if (branchDeg == 0) {
            // No conflicts left: take everything (weights are non-negative).
            std::int64_t total = cur + weightOf(rem);
            if (total > best) {
                best = total;
                bestPick = pick | rem;
            }
            return;
        }
        std::uint64_t bit = 1ULL << branch;
        rec(rem & ~(bit | adjMask[static_cast<std::size_t>(branch)]),
            cur + w[static_cast<std::size_t>(branch)], pick | bit);
        rec(rem & ~bit, cur, pick);
    }
};

VertexSubset solveIs(const Graph& g, const std::vector<std::int64_t>& weights, int sizeLimit) {
    if (g.n() > sizeLimit) {
        throw std::invalid_argument("graph exceeds the exhaustive-solver size limit of " +
                                    std::to_string(sizeLimit));
    }
    if (g.n() > 64) {
        throw std::invalid_argument("exhaustive solver handles at most 64 vertices");
    }
    if (weights.size() != static_cast<std::size_t>(g.n())) {
        throw std::invalid_argument("weight vector must match graph size");
    }
    for (std::int64_t x : weights) {
        if (x < 0) {
            throw std::invalid_argument("weights must be non-negative");
        }
    }
    IsSolver solver;
    solver.n = g.n();
    solver.w = weights;
    solver.adjMask.assign(static_cast<std::size_t>(g.n()), 0);
    for (int v = 0; v < g.n(); ++v) {
        for (int u : g.neighbors(v)) {
            solver.adjMask[static_cast<std::size_t>(v)] |= 1ULL << u;
        }
    }
    std::uint64_t all = g.n() == 64 ? ~0ULL : (1ULL << g.n()) - 1;
    solver.rec(all, 0, 0);
    std::vector<int> members;
    for (int v = 0; v < g.n(); ++v) {
        if (solver.bestPick & (1ULL << v)) {
            members.push_back(v);
        }
    }
    return VertexSubset::of(g, members);
}

// Classic O(V^3) maximum matching with blossom contraction.
struct BlossomSolver {
    const Graph& g;
    int n;
    std::vector<int> match, parent, base;
    std::vector<bool> used, inBlossom;

    explicit BlossomSolver(const Graph& graph)
        : g(graph), n(graph.n()), match(static_cast<std::size_t>(n), -1),
          parent(static_cast<std::size_t>(n), -1), base(static_cast<std::size_t>(n)),
          used(static_cast<std::size_t>(n), false), inBlossom(static_cast<std::size_t>(n), false) {}

    void markPath(int v, int b, int child) {
        while (base[static_cast<std::size_t>(v)] != b) {
            inBlossom[static_cast<std::size_t>(base[static_cast<std::size_t>(v)])] = true;
            inBlossom[static_cast<std::size_t>(
                base[static_cast<std::size_t>(match[static_cast<std::size_t>(v)])])] = true;
            parent[static_cast<std::size_t>(v)] = child;
            child = match[static_cast<std::size_t>(v)];
            v = parent[static_cast<std::size_t>(match[static_cast<std::size_t>(v)])];
        }
    }

    int lowestCommonBase(int a, int b) {
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        int v = a;
        while (true) {
            v = base[static_cast<std::size_t>(v)];
            seen[static_cast<std::size_t>(v)] = true;
            if (match[static_cast<std::size_t>(v)] < 0) {
                break;
            }
            v = parent[static_cast<std::size_t>(match[static_cast<std::size_t>(v)])];
        }
        int u = b;
        while (true) {
            u = base[static_cast<std::size_t>(u)];
            if (seen[static_cast<std::size_t>(u)]) {
                return u;
            }
            u = parent[static_cast<std::size_t>(match[static_cast<std::size_t>(u)])];
        }
    }

    bool augmentFrom(int root) {
        std::fill(used.begin(), used.end(), false);
        std::fill(parent.begin(), parent.end(), -1);
        for (int i = 0; i < n; ++i) {
            base[static_cast<std::size_t>(i)] = i;
        }
        used[static_cast<std::size_t>(root)] = true;
        std::deque<int> queue{root};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int to : g.neighbors(v)) {
                if (base[static_cast<std::size_t>(v)] == base[static_cast<std::size_t>(to)] ||
                    match[static_cast<std::size_t>(v)] == to) {
                    continue;
                }
                if (to == root || (match[static_cast<std::size_t>(to)] >= 0 &&
                                   parent[static_cast<std::size_t>(
                                       match[static_cast<std::size_t>(to)])] >= 0)) {
                    // Odd cycle found: contract the blossom.
                    int curBase = lowestCommonBase(v, to);
                    std::fill(inBlossom.begin(), inBlossom.end(), false);
                    markPath(v, curBase, to);
                    markPath(to, curBase, v);
                    for (int i = 0; i < n; ++i) {
                        if (inBlossom[static_cast<std::size_t>(base[static_cast<std::size_t>(i)])]) {
                            base[static_cast<std::size_t>(i)] = curBase;
                            if (!used[static_cast<std::size_t>(i)]) {
                                used[static_cast<std::size_t>(i)] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if (parent[static_cast<std::size_t>(to)] < 0) {
                    parent[static_cast<std::size_t>(to)] = v;
                    if (match[static_cast<std::size_t>(to)] < 0) {
                        // Augment along the alternating path back to the root.
                        int u = to;
                        while (u >= 0) {
                            int pv = parent[static_cast<std::size_t>(u)];
                            int next = match[static_cast<std::size_t>(pv)];
                            match[static_cast<std::size_t>(u)] = pv;
                            match[static_cast<std::size_t>(pv)] = u;
                            u = next;
                        }
                        return true;
                    }
                    used[static_cast<std::size_t>(match[static_cast<std::size_t>(to)])] = true;
                    queue.push_back(match[static_cast<std::size_t>(to)]);
                }
            }
        }
        return false;
    }
};

} // namespace

VertexSubset maxIndependentSet(const Graph& g, int sizeLimit) {
    return solveIs(g, std::vector<std::int64_t>(static_cast<std::size_t>(g.n()), 1), sizeLimit);
}

VertexSubset maxWeightedIndependentSet(const Graph& g, const std::vector<std::int64_t>& weights,
                                       int sizeLimit) {
    return solveIs(g, weights, sizeLimit);
}

std::vector<std::pair<int, int>> maxMatchingEdges(const Graph& g) {
    BlossomSolver solver(g);
    for (int v = 0; v < g.n(); ++v) {
        if (solver.match[static_cast<std::size_t>(v)] < 0) {
            solver.augmentFrom(v);
        }
    }
    std::vector<std::pair<int, int>> out;
    for (int v = 0; v < g.n(); ++v) {
        int u = solver.match[static_cast<std::size_t>(v)];
        if (u > v) {
            out.emplace_back(v, u);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ExactOptima bruteForceOracles(const Graph& g, int isLimit) {
    return ExactOptima{maxIndependentSet(g, isLimit), maxMatchingEdges(g)};
}

} // namespace localforge
