#include "localforge/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace localforge {

namespace {

using nlohmann::json;

void checkContiguousIds(const std::vector<int>& classOf) {
    if (classOf.empty()) {
        throw std::invalid_argument("partition must cover at least one vertex");
    }
    int top = *std::max_element(classOf.begin(), classOf.end());
    std::vector<bool> seen(static_cast<std::size_t>(top) + 1, false);
    for (int c : classOf) {
        if (c < 0) {
            throw std::invalid_argument("negative class id");
        }
        seen[static_cast<std::size_t>(c)] = true;
    }
    for (bool s : seen) {
        if (!s) {
            throw std::invalid_argument("class ids must be contiguous from 0");
        }
    }
}

json partitionJson(const Partition& p) {
    json j;
    j["epsilon"] = p.epsilon.str();
    j["K"] = p.K;
    j["classOf"] = p.classOf;
    return j;
}

Partition partitionFromJsonObject(const json& j) {
    Partition p;
    p.epsilon = Rational::parse(j.at("epsilon").get<std::string>());
    p.K = j.at("K").get<int>();
    p.classOf = j.at("classOf").get<std::vector<int>>();
    checkContiguousIds(p.classOf);
    return p;
}

// Union-find with path compression; id order decides nothing (renumbering is
// by smallest member afterwards).
struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        }
    }
};

} // namespace

int Partition::classCount() const {
    if (classOf.empty()) {
        return 0;
    }
    return *std::max_element(classOf.begin(), classOf.end()) + 1;
}

std::vector<VertexSubset> Partition::classes(const Graph& g) const {
    if (classOf.size() != static_cast<std::size_t>(g.n())) {
        throw std::invalid_argument("partition size must match graph size");
    }
    std::vector<std::vector<int>> byClass(static_cast<std::size_t>(classCount()));
    for (int v = 0; v < g.n(); ++v) {
        int c = classOf[static_cast<std::size_t>(v)];
        if (c < 0 || c >= classCount()) {
            throw std::invalid_argument("class id out of range");
        }
        byClass[static_cast<std::size_t>(c)].push_back(v);
    }
    std::vector<VertexSubset> out;
    out.reserve(byClass.size());
    for (auto& members : byClass) {
        out.push_back(VertexSubset::of(g, members));
    }
    return out;
}

std::string Partition::toJson() const {
    return partitionJson(*this).dump(2) + "\n";
}

Partition Partition::fromJson(const std::string& text) {
    json j = json::parse(text);
    return partitionFromJsonObject(j);
}

std::string StarPartition::toJson() const {
    json j = partitionJson(partition);
    j["star"] = starClass;
    return j.dump(2) + "\n";
}

StarPartition StarPartition::fromJson(const std::string& text) {
    json j = json::parse(text);
    StarPartition sp;
    sp.partition = partitionFromJsonObject(j);
    sp.starClass = j.at("star").get<int>();
    if (sp.starClass < -1 || sp.starClass >= sp.partition.classCount()) {
        throw std::invalid_argument("star class id out of range");
    }
    return sp;
}

namespace {

// Shared verification core; skipClass excludes one class id (-1 = none).
PartitionReport verifyClasses(const Graph& g, const Partition& p, int skipClass) {
    PartitionReport report;
    if (p.classOf.size() != static_cast<std::size_t>(g.n())) {
        report.structuralError = "partition covers " + std::to_string(p.classOf.size()) +
                                 " vertices, graph has " + std::to_string(g.n());
        return report;
    }
    try {
        checkContiguousIds(p.classOf);
    } catch (const std::invalid_argument& e) {
        report.structuralError = e.what();
        return report;
    }
    auto classes = p.classes(g);
    bool dichotomy = true;
    for (int c = 0; c < static_cast<int>(classes.size()); ++c) {
        if (c == skipClass || classes[static_cast<std::size_t>(c)].members.empty()) {
            continue;
        }
        const VertexSubset& h = classes[static_cast<std::size_t>(c)];
        int diam;
        try {
            diam = subsetDiameter(g, h);
        } catch (const std::invalid_argument&) {
            diam = std::numeric_limits<int>::max();
        }
        report.maxDiam = std::max(report.maxDiam, diam);
        Rational iso = isoperimetric(g, h);
        if (report.maxIso < iso) {
            report.maxIso = iso;
        }
        // Dichotomy: same-class distances avoid the open band (K, 3K).
        if (dichotomy) {
            for (int x : h.members) {
                auto dist = g.distancesFrom(x, std::max(0, 3 * p.K - 1));
                for (int y : h.members) {
                    int d = dist[static_cast<std::size_t>(y)];
                    if (d > p.K) {
                        dichotomy = false;
                        break;
                    }
                }
                if (!dichotomy) {
                    break;
                }
            }
        }
    }
    report.dichotomyHolds = dichotomy;
    report.pass = !report.structuralError && report.maxDiam <= p.K &&
                  !(p.epsilon < report.maxIso);
    return report;
}

} // namespace

PartitionReport verifyPartition(const Graph& g, const Partition& p) {
    return verifyClasses(g, p, -1);
}

StarReport verifyStarPartition(const Graph& g, const StarPartition& sp, const Rational& starBound) {
    StarReport report;
    report.classes = verifyClasses(g, sp.partition, sp.starClass);
    int starSize = 0;
    auto classes = sp.partition.classes(g);
    for (int c = 0; c < static_cast<int>(classes.size()); ++c) {
        int size = classes[static_cast<std::size_t>(c)].size();
        if (c == sp.starClass) {
            starSize = size;
        } else {
            report.maxClassSize = std::max(report.maxClassSize, size);
        }
    }
    report.starFraction = Rational(starSize, g.n());
    report.starWithinBound = !(starBound < report.starFraction);
    report.pass = report.classes.pass && report.starWithinBound;
    return report;
}

Labeling partitionToLabeling(const Graph& g, const Partition& p) {
    auto classes = p.classes(g);
    int k = static_cast<int>(classes.size());
    for (int c = 0; c < k; ++c) {
        int diam;
        try {
            diam = subsetDiameter(g, classes[static_cast<std::size_t>(c)]);
        } catch (const std::invalid_argument&) {
            diam = std::numeric_limits<int>::max();
        }
        if (diam > p.K) {
            throw std::invalid_argument("class " + std::to_string(c) +
                                        " has diameter above K; encoding would be ambiguous");
        }
    }
    // Conflict graph: classes whose minimum cross distance is below 3K.
    std::vector<std::vector<int>> conflicts(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
        std::vector<bool> near(static_cast<std::size_t>(k), false);
        for (int x : classes[static_cast<std::size_t>(c)].members) {
            auto dist = g.distancesFrom(x, std::max(0, 3 * p.K - 1));
            for (int y = 0; y < g.n(); ++y) {
                if (dist[static_cast<std::size_t>(y)] >= 0) {
                    near[static_cast<std::size_t>(p.classOf[static_cast<std::size_t>(y)])] = true;
                }
            }
        }
        for (int other = 0; other < k; ++other) {
            if (other != c && near[static_cast<std::size_t>(other)]) {
                conflicts[static_cast<std::size_t>(c)].push_back(other);
            }
        }
    }
    // Greedy coloring in class-id order.
    std::vector<int> color(static_cast<std::size_t>(k), -1);
    int colorCount = 0;
    for (int c = 0; c < k; ++c) {
        std::vector<bool> used(static_cast<std::size_t>(k), false);
        for (int other : conflicts[static_cast<std::size_t>(c)]) {
            if (color[static_cast<std::size_t>(other)] >= 0) {
                used[static_cast<std::size_t>(color[static_cast<std::size_t>(other)])] = true;
            }
        }
        int pick = 0;
        while (used[static_cast<std::size_t>(pick)]) {
            ++pick;
        }
        color[static_cast<std::size_t>(c)] = pick;
        colorCount = std::max(colorCount, pick + 1);
    }
    // Audit the degree-driven label budget d^(5K+1) in log space.
    double budgetLog = (5.0 * p.K + 1.0) * std::log(std::max(2, g.degreeBound()));
    if (std::log(static_cast<double>(colorCount)) > budgetLog + 1e-9) {
        throw std::logic_error("label count exceeded the d^(5K+1) budget");
    }
    std::vector<std::string> alphabet;
    for (int i = 1; i <= colorCount; ++i) {
        alphabet.push_back(std::to_string(i));
    }
    std::vector<std::string> perVertex;
    perVertex.reserve(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) {
        perVertex.push_back(
            alphabet[static_cast<std::size_t>(color[static_cast<std::size_t>(p.classOf[static_cast<std::size_t>(v)])])]);
    }
    return Labeling::fromSymbols(alphabet, perVertex);
}

Partition labelingToPartition(const Graph& g, const Labeling& phi, const Rational& epsilon, int K) {
    if (phi.values.size() != static_cast<std::size_t>(g.n())) {
        throw std::invalid_argument("labeling size must match graph size");
    }
    Dsu dsu(g.n());
    for (int x = 0; x < g.n(); ++x) {
        auto dist = g.distancesFrom(x, K);
        for (int y = x + 1; y < g.n(); ++y) {
            if (dist[static_cast<std::size_t>(y)] >= 0 &&
                phi.values[static_cast<std::size_t>(x)] == phi.values[static_cast<std::size_t>(y)]) {
                dsu.unite(x, y);
            }
        }
    }
    std::vector<int> renumber(static_cast<std::size_t>(g.n()), -1);
    int next = 0;
    Partition p;
    p.epsilon = epsilon;
    p.K = K;
    p.classOf.resize(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) {
        int root = dsu.find(v);
        if (renumber[static_cast<std::size_t>(root)] < 0) {
            renumber[static_cast<std::size_t>(root)] = next++;
        }
        p.classOf[static_cast<std::size_t>(v)] = renumber[static_cast<std::size_t>(root)];
    }
    return p;
}

} // namespace localforge
