#include "localforge/matching.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "localforge/oracle.hpp"

namespace localforge {

namespace {

using nlohmann::json;

void requireSeparation(const Graph& g, const Labeling& phi, int needed) {
    if (!phi.separation || *phi.separation < needed) {
        throw std::invalid_argument("labeling must declare separation >= " +
                                    std::to_string(needed));
    }
    if (auto bad = separationViolation(g, phi, needed)) {
        throw std::invalid_argument("declared separation is violated between vertices " +
                                    std::to_string(bad->first) + " and " +
                                    std::to_string(bad->second));
    }
}

// Depth-first alternating-path search: from unmatched root, unmatched edge
// first, then forced matched edges. Paths are simple; accepts the first
// completion with fewer than T edges. `allowed` (when non-null) restricts
// the vertices the path may touch.
struct AugmentSearch {
    const Graph& g;
    const std::vector<int>& mate;
    int T;
    const std::vector<bool>* allowed;
    std::vector<int> path;
    std::vector<bool> onPath;

    AugmentSearch(const Graph& graph, const std::vector<int>& mateArr, int t,
                  const std::vector<bool>* allow)
        : g(graph), mate(mateArr), T(t), allowed(allow),
          onPath(static_cast<std::size_t>(graph.n()), false) {}

    bool ok(int v) const { return !allowed || (*allowed)[static_cast<std::size_t>(v)]; }

    bool fromVertex(int v, int edgesUsed) {
        for (int y : g.neighbors(v)) {
            if (onPath[static_cast<std::size_t>(y)] || !ok(y) ||
                mate[static_cast<std::size_t>(v)] == y) {
                continue;
            }
            if (edgesUsed + 1 >= T) {
                return false; // any continuation is already too long
            }
            if (mate[static_cast<std::size_t>(y)] < 0) {
                path.push_back(y);
                return true;
            }
            int z = mate[static_cast<std::size_t>(y)];
            if (onPath[static_cast<std::size_t>(z)] || !ok(z)) {
                continue;
            }
            if (edgesUsed + 2 >= T) {
                continue; // matched hop fits, but no room to ever finish
            }
            path.push_back(y);
            path.push_back(z);
            onPath[static_cast<std::size_t>(y)] = true;
            onPath[static_cast<std::size_t>(z)] = true;
            if (fromVertex(z, edgesUsed + 2)) {
                return true;
            }
            onPath[static_cast<std::size_t>(y)] = false;
            onPath[static_cast<std::size_t>(z)] = false;
            path.pop_back();
            path.pop_back();
        }
        return false;
    }

    // Returns the augmenting path as a vertex list, empty when none exists.
    std::vector<int> run(int root) {
        path.assign(1, root);
        std::fill(onPath.begin(), onPath.end(), false);
        onPath[static_cast<std::size_t>(root)] = true;
        if (fromVertex(root, 0)) {
            return path;
        }
        return {};
    }
};

void flipPath(std::vector<int>& mate, const std::vector<int>& path) {
    for (std::size_t i = 0; i + 1 < path.size(); i += 2) {
        mate[static_cast<std::size_t>(path[i])] = path[i + 1];
        mate[static_cast<std::size_t>(path[i + 1])] = path[i];
    }
}

std::optional<std::string> structuralCheck(const Graph& g, const Matching& m) {
    std::vector<bool> hit(static_cast<std::size_t>(g.n()), false);
    for (auto [u, v] : m.edges) {
        if (u < 0 || v < 0 || u >= g.n() || v >= g.n() || u >= v) {
            return "edge endpoints out of order or range";
        }
        if (!g.hasEdge(u, v)) {
            return "pair " + std::to_string(u) + "-" + std::to_string(v) + " is not an edge";
        }
        if (hit[static_cast<std::size_t>(u)] || hit[static_cast<std::size_t>(v)]) {
            return "vertex matched twice";
        }
        hit[static_cast<std::size_t>(u)] = hit[static_cast<std::size_t>(v)] = true;
    }
    return std::nullopt;
}

} // namespace

std::string Matching::toJson() const {
    json j;
    j["edges"] = json::array();
    for (auto [u, v] : edges) {
        j["edges"].push_back(json::array({u, v}));
    }
    return j.dump(2) + "\n";
}

Matching Matching::fromJson(const std::string& text) {
    json j = json::parse(text);
    Matching m;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) {
            throw std::invalid_argument("matching edges must be [u, v] pairs");
        }
        m.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::sort(m.edges.begin(), m.edges.end());
    return m;
}

Matching matchingCtda(const Graph& g, const Labeling& phi, int T, int maxSweeps) {
    if (T < 1) {
        throw std::invalid_argument("T must be positive");
    }
    if (phi.values.size() != static_cast<std::size_t>(g.n())) {
        throw std::invalid_argument("labeling size must match graph size");
    }
    requireSeparation(g, phi, 20 * T);
    // Families: repeated greedy maximal 10T-separated systems over the not
    // yet assigned vertices, visiting by (label, id); together they cover V.
    std::vector<std::vector<int>> families;
    std::vector<bool> assigned(static_cast<std::size_t>(g.n()), false);
    std::vector<int> order(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) {
        order[static_cast<std::size_t>(v)] = v;
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int la = phi.values[static_cast<std::size_t>(a)];
        int lb = phi.values[static_cast<std::size_t>(b)];
        return la != lb ? la < lb : a < b;
    });
    int assignedCount = 0;
    while (assignedCount < g.n()) {
        std::vector<int> family;
        std::vector<bool> inFamily(static_cast<std::size_t>(g.n()), false);
        for (int v : order) {
            if (assigned[static_cast<std::size_t>(v)]) {
                continue;
            }
            bool blocked = false;
            for (int y : g.ballVertices(v, 10 * T)) {
                if (inFamily[static_cast<std::size_t>(y)]) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked) {
                inFamily[static_cast<std::size_t>(v)] = true;
                family.push_back(v);
            }
        }
        std::sort(family.begin(), family.end());
        for (int v : family) {
            assigned[static_cast<std::size_t>(v)] = true;
        }
        assignedCount += static_cast<int>(family.size());
        families.push_back(std::move(family));
    }

    std::vector<int> mate(static_cast<std::size_t>(g.n()), -1);
    int sweeps = 0;
    while (true) {
        bool improved = false;
        for (const auto& family : families) {
            for (int x : family) {
                if (mate[static_cast<std::size_t>(x)] >= 0) {
                    continue;
                }
                std::vector<bool> ballMask(static_cast<std::size_t>(g.n()), false);
                for (int y : g.ballVertices(x, 4 * T)) {
                    ballMask[static_cast<std::size_t>(y)] = true;
                }
                AugmentSearch search(g, mate, T, &ballMask);
                std::vector<int> path = search.run(x);
                if (!path.empty()) {
                    flipPath(mate, path);
                    improved = true;
                }
            }
        }
        ++sweeps;
        if (!improved || (maxSweeps > 0 && sweeps >= maxSweeps)) {
            break;
        }
    }
    Matching m;
    for (int v = 0; v < g.n(); ++v) {
        int u = mate[static_cast<std::size_t>(v)];
        if (u > v) {
            m.edges.emplace_back(v, u);
        }
    }
    std::sort(m.edges.begin(), m.edges.end());
    return m;
}

MatchingReport verifyMatching(const Graph& g, const Matching& m, int T) {
    MatchingReport report;
    report.size = m.size();
    report.sizeBound = Rational(static_cast<std::int64_t>(m.size()) * (T + 1), T);
    report.structuralError = structuralCheck(g, m);
    if (report.structuralError) {
        return report;
    }
    std::vector<int> mate(static_cast<std::size_t>(g.n()), -1);
    for (auto [u, v] : m.edges) {
        mate[static_cast<std::size_t>(u)] = v;
        mate[static_cast<std::size_t>(v)] = u;
    }
    report.noShortAugmenting = true;
    for (int x = 0; x < g.n() && report.noShortAugmenting; ++x) {
        if (mate[static_cast<std::size_t>(x)] >= 0) {
            continue;
        }
        AugmentSearch search(g, mate, T, nullptr);
        std::vector<int> path = search.run(x);
        if (!path.empty()) {
            report.noShortAugmenting = false;
            report.witnessPath = path;
        }
    }
    report.pass = report.noShortAugmenting;
    return report;
}

Labeling matchingToFunction(const Graph& g, const Matching& m, const Labeling& phi) {
    if (phi.values.size() != static_cast<std::size_t>(g.n())) {
        throw std::invalid_argument("labeling size must match graph size");
    }
    requireSeparation(g, phi, 11);
    if (auto err = structuralCheck(g, m)) {
        throw std::invalid_argument(*err);
    }
    std::vector<int> mate(static_cast<std::size_t>(g.n()), -1);
    for (auto [u, v] : m.edges) {
        mate[static_cast<std::size_t>(u)] = v;
        mate[static_cast<std::size_t>(v)] = u;
    }
    std::vector<std::string> alphabet = productAlphabet({{"0", "1"}, phi.alphabet});
    std::vector<std::string> perVertex;
    perVertex.reserve(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) {
        int u = mate[static_cast<std::size_t>(v)];
        if (u < 0) {
            perVertex.push_back(productSymbol({"0", phi.symbol(v)}));
        } else {
            int rep = phi.values[static_cast<std::size_t>(u)] < phi.values[static_cast<std::size_t>(v)]
                          ? u
                          : v;
            perVertex.push_back(productSymbol({"1", phi.symbol(rep)}));
        }
    }
    return Labeling::fromSymbols(alphabet, perVertex);
}

Matching matchingFromFunction(const Graph& g, const Labeling& rho) {
    if (rho.values.size() != static_cast<std::size_t>(g.n())) {
        throw std::invalid_argument("labeling size must match graph size");
    }
    Matching m;
    std::vector<bool> hit(static_cast<std::size_t>(g.n()), false);
    for (auto [u, v] : g.edges()) {
        if (rho.values[static_cast<std::size_t>(u)] != rho.values[static_cast<std::size_t>(v)]) {
            continue;
        }
        if (splitProductSymbol(rho.symbol(u), 2)[0] != "1") {
            continue;
        }
        if (hit[static_cast<std::size_t>(u)] || hit[static_cast<std::size_t>(v)]) {
            throw std::invalid_argument("labeling matches a vertex twice");
        }
        hit[static_cast<std::size_t>(u)] = hit[static_cast<std::size_t>(v)] = true;
        m.edges.emplace_back(u, v);
    }
    return m;
}

bool isMatchingFunction(const Graph& g, const Labeling& rho, std::string* why) {
    for (int x = 0; x < g.n(); ++x) {
        auto dist = g.distancesFrom(x, 5);
        int twins = 0;
        for (int y = 0; y < g.n(); ++y) {
            if (y == x || dist[static_cast<std::size_t>(y)] < 0) {
                continue;
            }
            if (rho.values[static_cast<std::size_t>(x)] != rho.values[static_cast<std::size_t>(y)]) {
                continue;
            }
            ++twins;
            if (!g.hasEdge(x, y)) {
                if (why) {
                    *why = "equal labels at distance <= 5 without an edge: " + std::to_string(x) +
                           ", " + std::to_string(y);
                }
                return false;
            }
        }
        if (twins > 1) {
            if (why) {
                *why = "vertex " + std::to_string(x) + " has " + std::to_string(twins) +
                       " equal labels within distance 5";
            }
            return false;
        }
    }
    return true;
}

} // namespace localforge
