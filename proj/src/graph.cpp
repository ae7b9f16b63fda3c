#include "localforge/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace localforge {

std::int64_t Rng::uniformInt(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) {
        throw std::invalid_argument("empty uniformInt range");
    }
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) {
        // Full 64-bit range.
        return static_cast<std::int64_t>(eng_()) + lo;
    }
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw;
    do {
        draw = eng_();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
}

Graph Graph::fromEdges(int n, int d, const std::vector<std::pair<int, int>>& edges) {
    if (n < 1) {
        throw std::invalid_argument("graph needs at least one vertex");
    }
    if (d < 1) {
        throw std::invalid_argument("degree bound must be >= 1");
    }
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (u == v) {
            throw std::invalid_argument("self-loop rejected");
        }
        auto key = std::minmax(u, v);
        if (!seen.insert({key.first, key.second}).second) {
            throw std::invalid_argument("parallel edge rejected");
        }
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (int x = 0; x < n; ++x) {
        auto& nb = adj[static_cast<std::size_t>(x)];
        std::sort(nb.begin(), nb.end());
        if (static_cast<int>(nb.size()) > d) {
            throw std::invalid_argument("vertex " + std::to_string(x) + " exceeds degree bound");
        }
    }
    return Graph(std::move(adj), d);
}

const std::vector<int>& Graph::neighbors(int x) const {
    if (x < 0 || x >= n()) {
        throw std::out_of_range("vertex id out of range");
    }
    return adj_[static_cast<std::size_t>(x)];
}

bool Graph::hasEdge(int u, int v) const {
    const auto& nb = neighbors(u);
    if (v < 0 || v >= n()) {
        throw std::out_of_range("vertex id out of range");
    }
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n(); ++u) {
        for (int v : adj_[static_cast<std::size_t>(u)]) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out; // already lexicographic: u ascending, sorted adjacency
}

std::vector<int> Graph::distancesFrom(int x) const { return distancesFrom(x, n()); }

std::vector<int> Graph::distancesFrom(int x, int cap) const {
    if (x < 0 || x >= n()) {
        throw std::out_of_range("vertex id out of range");
    }
    std::vector<int> dist(static_cast<std::size_t>(n()), -1);
    std::deque<int> queue;
    dist[static_cast<std::size_t>(x)] = 0;
    queue.push_back(x);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        int du = dist[static_cast<std::size_t>(u)];
        if (du >= cap) {
            continue;
        }
        for (int v : adj_[static_cast<std::size_t>(u)]) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = du + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

std::vector<int> Graph::ballVertices(int x, int r) const {
    if (r < 0) {
        throw std::invalid_argument("negative radius");
    }
    auto dist = distancesFrom(x, r);
    std::vector<int> out;
    for (int v = 0; v < n(); ++v) {
        if (dist[static_cast<std::size_t>(v)] >= 0) {
            out.push_back(v);
        }
    }
    return out;
}

int Graph::eccentricity(int x) const {
    auto dist = distancesFrom(x);
    int ecc = 0;
    for (int v : dist) {
        ecc = std::max(ecc, v);
    }
    return ecc;
}

int Graph::diameter() const {
    int best = 0;
    for (int x = 0; x < n(); ++x) {
        best = std::max(best, eccentricity(x));
    }
    return best;
}

bool Graph::isConnected() const {
    auto dist = distancesFrom(0);
    return std::find(dist.begin(), dist.end(), -1) == dist.end();
}

std::vector<std::vector<int>> Graph::components() const {
    std::vector<char> seen(static_cast<std::size_t>(n()), 0);
    std::vector<std::vector<int>> out;
    for (int x = 0; x < n(); ++x) {
        if (seen[static_cast<std::size_t>(x)]) {
            continue;
        }
        std::vector<int> comp;
        std::deque<int> queue{x};
        seen[static_cast<std::size_t>(x)] = 1;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            comp.push_back(u);
            for (int v : adj_[static_cast<std::size_t>(u)]) {
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    queue.push_back(v);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::string Graph::toJson() const {
    nlohmann::json j;
    j["n"] = n();
    j["d"] = d_;
    nlohmann::json es = nlohmann::json::array();
    for (auto [u, v] : edges()) {
        es.push_back({u, v});
    }
    j["edges"] = std::move(es);
    return j.dump(2) + "\n";
}

Graph Graph::fromJson(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("bad graph JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("d") || !j.contains("edges")) {
        throw std::invalid_argument("graph JSON must contain n, d, edges");
    }
    int n = j.at("n").get<int>();
    int d = j.at("d").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) {
            throw std::invalid_argument("edge entries must be pairs");
        }
        int u = e[0].get<int>();
        int v = e[1].get<int>();
        if (u >= v) {
            throw std::invalid_argument("edges must be stored as [u,v] with u < v");
        }
        edges.emplace_back(u, v);
    }
    if (!std::is_sorted(edges.begin(), edges.end())) {
        throw std::invalid_argument("edge list must be sorted lexicographically");
    }
    return fromEdges(n, d, edges);
}

Graph cycleGraph(int n) {
    if (n < 3) {
        throw std::invalid_argument("cycle needs n >= 3");
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) {
        edges.emplace_back(i, i + 1);
    }
    edges.emplace_back(0, n - 1);
    std::sort(edges.begin(), edges.end());
    return Graph::fromEdges(n, 2, edges);
}

Graph pathGraph(int n) {
    if (n < 1) {
        throw std::invalid_argument("path needs n >= 1");
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) {
        edges.emplace_back(i, i + 1);
    }
    return Graph::fromEdges(n, n == 1 ? 1 : 2, edges);
}

Graph torusGraph(int rows, int cols) {
    if (rows < 3 || cols < 3) {
        throw std::invalid_argument("torus needs rows, cols >= 3 to stay simple");
    }
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            int a = id(r, c);
            int b = id(r, (c + 1) % cols);
            int cc = id((r + 1) % rows, c);
            edges.emplace_back(std::min(a, b), std::max(a, b));
            edges.emplace_back(std::min(a, cc), std::max(a, cc));
        }
    }
    std::sort(edges.begin(), edges.end());
    return Graph::fromEdges(rows * cols, 4, edges);
}

Graph gridGraph(int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("grid needs rows, cols >= 1");
    }
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) {
                edges.emplace_back(id(r, c), id(r, c + 1));
            }
            if (r + 1 < rows) {
                edges.emplace_back(id(r, c), id(r + 1, c));
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    return Graph::fromEdges(rows * cols, rows * cols == 1 ? 1 : 4, edges);
}

Graph regularTreeTruncation(int branching, int depth) {
    if (branching < 2 || depth < 0) {
        throw std::invalid_argument("tree truncation needs branching >= 2, depth >= 0");
    }
    std::vector<std::pair<int, int>> edges;
    std::vector<int> frontier{0};
    int next = 1;
    for (int level = 0; level < depth; ++level) {
        std::vector<int> fresh;
        for (int parent : frontier) {
            int kids = (level == 0) ? branching : branching - 1;
            for (int k = 0; k < kids; ++k) {
                edges.emplace_back(parent, next);
                fresh.push_back(next);
                ++next;
            }
        }
        frontier = std::move(fresh);
    }
    return Graph::fromEdges(next, branching, edges);
}

Graph randomBoundedDegree(int n, int d, std::uint64_t seed) {
    if (n < 1 || d < 1) {
        throw std::invalid_argument("random graph needs n >= 1, d >= 1");
    }
    std::vector<std::pair<int, int>> candidates;
    candidates.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            candidates.emplace_back(u, v);
        }
    }
    Rng rng(seed);
    rng.shuffle(candidates);
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, int>> chosen;
    for (auto [u, v] : candidates) {
        if (deg[static_cast<std::size_t>(u)] < d && deg[static_cast<std::size_t>(v)] < d) {
            ++deg[static_cast<std::size_t>(u)];
            ++deg[static_cast<std::size_t>(v)];
            chosen.emplace_back(u, v);
        }
    }
    std::sort(chosen.begin(), chosen.end());
    return Graph::fromEdges(n, d, chosen);
}

Graph generate(const std::string& kind, const std::vector<std::int64_t>& params, std::uint64_t seed) {
    auto need = [&](std::size_t count) {
        if (params.size() != count) {
            throw std::invalid_argument("generator '" + kind + "' expects " + std::to_string(count) +
                                        " parameter(s)");
        }
    };
    if (kind == "cycle") {
        need(1);
        return cycleGraph(static_cast<int>(params[0]));
    }
    if (kind == "path") {
        need(1);
        return pathGraph(static_cast<int>(params[0]));
    }
    if (kind == "torus") {
        need(2);
        return torusGraph(static_cast<int>(params[0]), static_cast<int>(params[1]));
    }
    if (kind == "grid") {
        need(2);
        return gridGraph(static_cast<int>(params[0]), static_cast<int>(params[1]));
    }
    if (kind == "regularTreeTruncation") {
        need(2);
        return regularTreeTruncation(static_cast<int>(params[0]), static_cast<int>(params[1]));
    }
    if (kind == "randomBoundedDegree") {
        need(2);
        return randomBoundedDegree(static_cast<int>(params[0]), static_cast<int>(params[1]), seed);
    }
    throw std::invalid_argument("unknown generator kind: " + kind);
}

} // namespace localforge
