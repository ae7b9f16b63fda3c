#include "localforge/awalk.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace localforge {

namespace {

std::vector<int> reachable(const std::vector<std::vector<int>>& adj, int start) {
    std::vector<int> dist(adj.size(), -1);
    std::vector<int> queue{start};
    dist[static_cast<std::size_t>(start)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

} // namespace

ContinuationDigraph continuationDigraph(std::vector<std::vector<std::string>> words) {
    if (words.empty()) {
        throw std::invalid_argument("word set must be nonempty");
    }
    std::size_t len = words.front().size();
    if (len % 2 == 0) {
        throw std::invalid_argument("words must have odd length");
    }
    for (const auto& w : words) {
        if (w.size() != len) {
            throw std::invalid_argument("words must share one length");
        }
        for (const auto& s : w) {
            if (s.empty()) {
                throw std::invalid_argument("symbols must be nonempty");
            }
        }
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());

    ContinuationDigraph dg;
    dg.radius = static_cast<int>(len / 2);
    dg.words = std::move(words);
    int n = dg.stateCount();
    dg.edges.assign(static_cast<std::size_t>(n), {});
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            bool ok = true;
            for (std::size_t i = 0; i + 1 < len; ++i) {
                if (dg.words[static_cast<std::size_t>(u)][i + 1] !=
                    dg.words[static_cast<std::size_t>(v)][i]) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                dg.edges[static_cast<std::size_t>(u)].push_back(v);
            }
        }
    }
    return dg;
}

AwalkReport awalkPeriod(const std::vector<std::vector<std::string>>& ballWords) {
    ContinuationDigraph dg = continuationDigraph(ballWords);
    int n = dg.stateCount();

    std::vector<std::vector<int>> reverse(static_cast<std::size_t>(n));
    bool hasEdge = false;
    for (int u = 0; u < n; ++u) {
        for (int v : dg.edges[static_cast<std::size_t>(u)]) {
            reverse[static_cast<std::size_t>(v)].push_back(u);
            hasEdge = true;
        }
    }

    AwalkReport out;
    std::vector<int> forward = reachable(dg.edges, 0);
    std::vector<int> backward = reachable(reverse, 0);
    bool strong = hasEdge;
    for (int v = 0; v < n; ++v) {
        if (forward[static_cast<std::size_t>(v)] < 0 || backward[static_cast<std::size_t>(v)] < 0) {
            strong = false;
        }
        if (dg.edges[static_cast<std::size_t>(v)].empty()) {
            strong = false;
        }
    }
    if (!strong) {
        return out; // infeasible, period 0
    }

    // Digraph period: gcd over all edges of dist[u] + 1 - dist[v] with BFS
    // distances from a fixed state. Every closed-walk length is a multiple
    // of this gcd, and some closed walk realizes it.
    int g = 0;
    for (int u = 0; u < n; ++u) {
        for (int v : dg.edges[static_cast<std::size_t>(u)]) {
            int slack = forward[static_cast<std::size_t>(u)] + 1 - forward[static_cast<std::size_t>(v)];
            g = std::gcd(g, slack);
        }
    }
    out.feasible = true;
    out.period = g;
    return out;
}

bool coveringClosedWalk(const ContinuationDigraph& dg, int length,
                        const std::vector<int>& stateClass) {
    int n = dg.stateCount();
    if (length < 1) {
        throw std::invalid_argument("walk length must be positive");
    }
    std::vector<int> cls(static_cast<std::size_t>(n));
    if (stateClass.empty()) {
        std::iota(cls.begin(), cls.end(), 0);
    } else {
        if (static_cast<int>(stateClass.size()) != n) {
            throw std::invalid_argument("class vector must match state count");
        }
        cls = stateClass;
    }
    int classCount = 0;
    for (int c : cls) {
        if (c < 0) {
            throw std::invalid_argument("class ids must be nonnegative");
        }
        classCount = std::max(classCount, c + 1);
    }
    if (classCount > 20) {
        throw std::invalid_argument("too many classes for mask enumeration");
    }
    std::uint32_t full = (classCount == 0) ? 0 : ((1u << classCount) - 1);

    for (int start = 0; start < n; ++start) {
        std::size_t masks = std::size_t(1) << classCount;
        std::vector<std::vector<char>> cur(static_cast<std::size_t>(n),
                                           std::vector<char>(masks, 0));
        cur[static_cast<std::size_t>(start)]
           [std::size_t(1) << cls[static_cast<std::size_t>(start)]] = 1;
        for (int step = 0; step < length; ++step) {
            std::vector<std::vector<char>> next(static_cast<std::size_t>(n),
                                                std::vector<char>(masks, 0));
            for (int u = 0; u < n; ++u) {
                for (std::size_t mask = 0; mask < masks; ++mask) {
                    if (!cur[static_cast<std::size_t>(u)][mask]) {
                        continue;
                    }
                    for (int v : dg.edges[static_cast<std::size_t>(u)]) {
                        next[static_cast<std::size_t>(v)]
                            [mask | (std::size_t(1) << cls[static_cast<std::size_t>(v)])] = 1;
                    }
                }
            }
            cur = std::move(next);
        }
        if (cur[static_cast<std::size_t>(start)][full]) {
            return true;
        }
    }
    return false;
}

ArithmeticReport arithmeticSpectrum(const std::vector<std::int64_t>& seq, int divisorBound,
                                    int minTail) {
    if (seq.empty()) {
        throw std::invalid_argument("sequence must be nonempty");
    }
    for (std::int64_t v : seq) {
        if (v < 1) {
            throw std::invalid_argument("sequence terms must be positive");
        }
    }
    if (divisorBound < 1) {
        throw std::invalid_argument("divisor bound must be positive");
    }
    if (minTail < 1) {
        throw std::invalid_argument("decision tail must be positive");
    }
    ArithmeticReport out;
    int len = static_cast<int>(seq.size());
    for (int m = 1; m <= divisorBound; ++m) {
        int lastViolation = -1;
        int lastSuccess = -1;
        for (int i = 0; i < len; ++i) {
            if (seq[static_cast<std::size_t>(i)] % m == 0) {
                lastSuccess = i;
            } else {
                lastViolation = i;
            }
        }
        int cleanDividing = len - 1 - lastViolation;
        int cleanNot = len - 1 - lastSuccess;
        if (cleanDividing >= minTail) {
            out.eventuallyDividing.push_back(m);
        } else if (cleanNot >= minTail) {
            out.eventuallyNot.push_back(m);
        } else {
            out.undecided.push_back(m);
        }
    }
    out.convergent = out.undecided.empty();
    return out;
}

} // namespace localforge
