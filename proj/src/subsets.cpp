#include "localforge/subsets.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace localforge {

VertexSubset VertexSubset::of(const Graph& g, std::vector<int> vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    if (!vertices.empty() && (vertices.front() < 0 || vertices.back() >= g.n())) {
        throw std::invalid_argument("subset member out of range");
    }
    return VertexSubset{std::move(vertices)};
}

bool VertexSubset::contains(int v) const {
    return std::binary_search(members.begin(), members.end(), v);
}

Boundaries boundaries(const Graph& g, const VertexSubset& h, int k) {
    if (k < 1) {
        throw std::invalid_argument("boundary radius must be >= 1");
    }
    std::vector<char> inH(static_cast<std::size_t>(g.n()), 0);
    for (int v : h.members) {
        inH[static_cast<std::size_t>(v)] = 1;
    }

    std::vector<int> inner;
    for (int v : h.members) {
        for (int y : g.neighbors(v)) {
            if (!inH[static_cast<std::size_t>(y)]) {
                inner.push_back(v);
                break;
            }
        }
    }

    // Multi-source BFS from the complement gives distance-to-outside for ∂_K,
    // and one from H gives distance-to-H for B_K.
    auto multiSourceDistances = [&g](const std::vector<char>& isSource, int cap) {
        std::vector<int> dist(static_cast<std::size_t>(g.n()), -1);
        std::deque<int> queue;
        for (int v = 0; v < g.n(); ++v) {
            if (isSource[static_cast<std::size_t>(v)]) {
                dist[static_cast<std::size_t>(v)] = 0;
                queue.push_back(v);
            }
        }
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            int du = dist[static_cast<std::size_t>(u)];
            if (du >= cap) {
                continue;
            }
            for (int y : g.neighbors(u)) {
                if (dist[static_cast<std::size_t>(y)] < 0) {
                    dist[static_cast<std::size_t>(y)] = du + 1;
                    queue.push_back(y);
                }
            }
        }
        return dist;
    };

    std::vector<char> outside(static_cast<std::size_t>(g.n()), 0);
    for (int v = 0; v < g.n(); ++v) {
        outside[static_cast<std::size_t>(v)] = inH[static_cast<std::size_t>(v)] ? 0 : 1;
    }
    auto distToOutside = multiSourceDistances(outside, k);
    std::vector<int> kInner;
    for (int v : h.members) {
        int dv = distToOutside[static_cast<std::size_t>(v)];
        if (dv >= 0 && dv <= k) {
            kInner.push_back(v);
        }
    }

    auto distToH = multiSourceDistances(inH, k);
    std::vector<int> kClosure;
    for (int v = 0; v < g.n(); ++v) {
        int dv = distToH[static_cast<std::size_t>(v)];
        if (dv >= 0 && dv <= k) {
            kClosure.push_back(v);
        }
    }

    return Boundaries{VertexSubset{std::move(inner)}, VertexSubset{std::move(kInner)},
                      VertexSubset{std::move(kClosure)}};
}

Rational isoperimetric(const Graph& g, const VertexSubset& h) {
    if (h.members.empty()) {
        throw std::invalid_argument("isoperimetric constant of empty subset");
    }
    auto b = boundaries(g, h, 1);
    return Rational(b.inner.size(), h.size());
}

int subsetDiameter(const Graph& g, const VertexSubset& h) {
    if (h.members.empty()) {
        throw std::invalid_argument("diameter of empty subset");
    }
    int best = 0;
    for (int v : h.members) {
        auto dist = g.distancesFrom(v);
        for (int u : h.members) {
            int du = dist[static_cast<std::size_t>(u)];
            if (du < 0) {
                throw std::invalid_argument("subset spans disconnected components");
            }
            best = std::max(best, du);
        }
    }
    return best;
}

Rational doublingConstant(const Graph& g, int sMax) {
    if (sMax < 1) {
        throw std::invalid_argument("sMax must be >= 1");
    }
    Rational best(1);
    for (int x = 0; x < g.n(); ++x) {
        auto dist = g.distancesFrom(x, 2 * sMax);
        // ballSize[r] = |B_r(x)| for r = 0..2sMax.
        std::vector<std::int64_t> ballSize(static_cast<std::size_t>(2 * sMax) + 1, 0);
        for (int v = 0; v < g.n(); ++v) {
            int dv = dist[static_cast<std::size_t>(v)];
            if (dv >= 0 && dv <= 2 * sMax) {
                ++ballSize[static_cast<std::size_t>(dv)];
            }
        }
        for (std::size_t r = 1; r < ballSize.size(); ++r) {
            ballSize[r] += ballSize[r - 1];
        }
        for (int s = 1; s <= sMax; ++s) {
            Rational ratio(ballSize[static_cast<std::size_t>(2 * s)], ballSize[static_cast<std::size_t>(s)]);
            if (best < ratio) {
                best = ratio;
            }
        }
    }
    return best;
}

std::vector<int> coverWitness(const Graph& g, int x, int s) {
    if (s < 1) {
        throw std::invalid_argument("cover radius must be >= 1");
    }
    auto fromX = g.distancesFrom(x, 2 * s);
    std::vector<int> region;
    for (int v = 0; v < g.n(); ++v) {
        int dv = fromX[static_cast<std::size_t>(v)];
        if (dv >= 0 && dv <= 2 * s) {
            region.push_back(v);
        }
    }
    std::vector<int> centers;
    std::vector<int> nearest(static_cast<std::size_t>(g.n()), -1);
    for (int v : region) {
        bool separated = true;
        auto fromV = g.distancesFrom(v, s);
        for (int c : centers) {
            int dc = fromV[static_cast<std::size_t>(c)];
            if (dc >= 0 && dc <= s) {
                separated = false;
                break;
            }
        }
        if (separated) {
            centers.push_back(v);
            for (int u : region) {
                int du = fromV[static_cast<std::size_t>(u)];
                if (du >= 0 && du <= s) {
                    nearest[static_cast<std::size_t>(u)] = v;
                }
            }
        }
    }
    // Maximality of the net makes the s-balls cover the region.
    for (int v : region) {
        if (nearest[static_cast<std::size_t>(v)] < 0) {
            throw std::logic_error("cover witness failed to cover its region");
        }
    }
    return centers;
}

Graph inducedSubgraph(const Graph& g, const VertexSubset& h) {
    if (h.members.empty()) {
        throw std::invalid_argument("induced subgraph needs a nonempty subset");
    }
    std::vector<int> local(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < h.members.size(); ++i) {
        local[static_cast<std::size_t>(h.members[i])] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < h.members.size(); ++i) {
        for (int u : g.neighbors(h.members[i])) {
            int lu = local[static_cast<std::size_t>(u)];
            if (lu > static_cast<int>(i)) {
                edges.emplace_back(static_cast<int>(i), lu);
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    return Graph::fromEdges(static_cast<int>(h.members.size()), g.degreeBound(), edges);
}

} // namespace localforge
