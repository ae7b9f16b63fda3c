#include "localforge/strong_family.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace localforge {

namespace {

using nlohmann::json;

int clampToN(const BigInt& r, int n) {
    if (r >= n) {
        return n;
    }
    return static_cast<int>(r);
}

std::string codeString(const Code& code) {
    std::string s = "(";
    for (std::size_t i = 0; i < code.size(); ++i) {
        if (i > 0) {
            s += ", ";
        }
        s += "(" + std::to_string(code[i].first) + "," + code[i].second.str() + ")";
    }
    return s + ")";
}

// Uniform BigInt in [1, hi] by masked-limb rejection; deterministic for a
// fixed generator state.
BigInt uniformBig(Rng& rng, const BigInt& hi) {
    if (hi < 1) {
        throw std::invalid_argument("uniform draw needs an upper bound >= 1");
    }
    if (hi == 1) {
        return 1;
    }
    BigInt range = hi; // draw v in [0, range), return v + 1
    unsigned bits = boost::multiprecision::msb(range - 1) + 1;
    unsigned limbs = (bits + 63) / 64;
    BigInt mask = (BigInt(1) << bits) - 1;
    for (;;) {
        BigInt v = 0;
        for (unsigned k = 0; k < limbs; ++k) {
            v <<= 64;
            v |= BigInt(rng.nextRaw());
        }
        v &= mask;
        if (v < range) {
            return v + 1;
        }
    }
}

} // namespace

std::vector<std::vector<int>> coveringSystems(const Graph& g, const BigInt& separation,
                                              const BigInt& coverRadius) {
    if (separation < 1 || coverRadius < 1) {
        throw std::invalid_argument("covering systems need separation >= 1 and cover radius >= 1");
    }
    int n = g.n();
    std::vector<std::vector<int>> systems;
    if (n == 0) {
        return systems;
    }
    int sep = clampToN(separation, n);
    int coverR = clampToN(coverRadius, n);
    std::vector<bool> covered(static_cast<std::size_t>(n), false);
    int coveredCount = 0;
    while (coveredCount < n) {
        // One maximal >sep-separated system, seeding from uncovered vertices
        // in id order so the first uncovered vertex always becomes a center.
        std::vector<bool> blocked(static_cast<std::size_t>(n), false);
        std::vector<int> centers;
        auto tryCenter = [&](int v) {
            if (blocked[static_cast<std::size_t>(v)]) {
                return;
            }
            centers.push_back(v);
            for (int u : g.ballVertices(v, sep)) {
                blocked[static_cast<std::size_t>(u)] = true;
            }
        };
        for (int v = 0; v < n; ++v) {
            if (!covered[static_cast<std::size_t>(v)]) {
                tryCenter(v);
            }
        }
        for (int v = 0; v < n; ++v) {
            tryCenter(v);
        }
        for (int c : centers) {
            for (int u : g.ballVertices(c, coverR)) {
                if (!covered[static_cast<std::size_t>(u)]) {
                    covered[static_cast<std::size_t>(u)] = true;
                    ++coveredCount;
                }
            }
        }
        systems.push_back(std::move(centers));
    }
    return systems;
}

CodeFamily strongFamily(const Graph& g, const GoodTuple& tuple, int sampleCount,
                        std::uint64_t seed, const Rational& epsilonPrime) {
    validateGoodTuple(tuple);
    if (!tuple.strongMode()) {
        throw std::invalid_argument("strong family needs a shift-mode tuple");
    }
    if (sampleCount < 1) {
        throw std::invalid_argument("sample count must be at least 1");
    }
    if (g.n() == 0) {
        throw std::invalid_argument("strong family needs a nonempty graph");
    }

    std::vector<std::vector<std::vector<int>>> systems;
    std::vector<int> systemCounts;
    systems.reserve(static_cast<std::size_t>(tuple.N));
    for (int i = 0; i < tuple.N; ++i) {
        BigInt sep = 8 * tuple.S[static_cast<std::size_t>(i)];
        systems.push_back(coveringSystems(g, sep, tuple.S[static_cast<std::size_t>(i)]));
        systemCounts.push_back(static_cast<int>(systems.back().size()));
    }

    BigInt codeSpace = 1;
    for (int i = 0; i < tuple.N; ++i) {
        codeSpace *= systemCounts[static_cast<std::size_t>(i)];
        codeSpace *= tuple.R[static_cast<std::size_t>(i)];
    }
    if (codeSpace < sampleCount) {
        throw std::invalid_argument("sample count exceeds the number of distinct codes");
    }

    Rng rng(seed);
    std::set<std::string> seen;
    std::vector<Code> codes;
    while (static_cast<int>(codes.size()) < sampleCount) {
        Code code;
        code.reserve(static_cast<std::size_t>(tuple.N));
        for (int i = 0; i < tuple.N; ++i) {
            int t = static_cast<int>(rng.uniformInt(1, systemCounts[static_cast<std::size_t>(i)]));
            BigInt j = uniformBig(rng, tuple.R[static_cast<std::size_t>(i)]);
            code.emplace_back(t, j);
        }
        if (seen.insert(codeString(code)).second) {
            codes.push_back(std::move(code));
        }
    }

    std::map<std::pair<int, int>, BigInt> baseRadius; // (type, center) -> smallest admissible
    CodeFamily family;
    family.seed = seed;
    family.systemCounts = systemCounts;
    for (const Code& code : codes) {
        try {
            std::vector<NiceBall> chosen;
            for (int i = 0; i < tuple.N; ++i) {
                const std::vector<int>& centers =
                    systems[static_cast<std::size_t>(i)][static_cast<std::size_t>(code[static_cast<std::size_t>(i)].first - 1)];
                for (int q : centers) {
                    auto key = std::make_pair(i + 1, q);
                    auto it = baseRadius.find(key);
                    if (it == baseRadius.end()) {
                        it = baseRadius.emplace(key, chooseRadius(g, tuple, i + 1, q)).first;
                    }
                    NiceBall ball;
                    ball.center = q;
                    ball.radius = it->second + code[static_cast<std::size_t>(i)].second;
                    ball.type = i + 1;
                    chosen.push_back(ball);
                }
            }
            NiceBallSystem sys = runDiscardRound(g, tuple, chosen);
            Partition part = extendPartition(g, sys, epsilonPrime);
            PartitionReport rep = verifyPartition(g, part);
            if (!rep.pass) {
                throw std::runtime_error("partition verification failed");
            }
            family.members.push_back({code, std::move(part)});
        } catch (const std::exception& e) {
            throw std::runtime_error("family member with code " + codeString(code) +
                                     " rejected: " + e.what());
        }
    }
    return family;
}

StrongFamilyReport verifyStrongFamily(const Graph& g, const CodeFamily& family,
                                      const Rational& epsilon) {
    if (family.members.empty()) {
        throw std::invalid_argument("family is empty");
    }
    int n = g.n();
    if (n == 0) {
        throw std::invalid_argument("family verification needs a nonempty graph");
    }
    for (const FamilyMember& m : family.members) {
        if (static_cast<int>(m.partition.classOf.size()) != n) {
            throw std::invalid_argument("family partition does not cover the graph");
        }
    }
    int T = static_cast<int>(family.members.size());
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    for (const FamilyMember& m : family.members) {
        const std::vector<int>& classOf = m.partition.classOf;
        for (int x = 0; x < n; ++x) {
            for (int nb : g.neighbors(x)) {
                if (classOf[static_cast<std::size_t>(nb)] != classOf[static_cast<std::size_t>(x)]) {
                    ++counts[static_cast<std::size_t>(x)];
                    break;
                }
            }
        }
    }
    StrongFamilyReport report;
    report.histogram.assign(static_cast<std::size_t>(T) + 1, 0);
    long long total = 0;
    int maxCount = 0;
    int ok = 0;
    for (int x = 0; x < n; ++x) {
        int c = counts[static_cast<std::size_t>(x)];
        ++report.histogram[static_cast<std::size_t>(c)];
        total += c;
        maxCount = std::max(maxCount, c);
        if (Rational(c, T) < epsilon) {
            ++ok;
        }
    }
    report.maxFraction = Rational(maxCount, T);
    report.meanFraction = Rational(total, static_cast<long long>(T) * n);
    report.okFraction = Rational(ok, n);
    return report;
}

CodeFamily fractionalTreeFamily(const Graph& tree, int root, int l) {
    int n = tree.n();
    if (n == 0) {
        throw std::invalid_argument("tree family needs a nonempty graph");
    }
    if (root < 0 || root >= n) {
        throw std::invalid_argument("root out of range");
    }
    if (l < 3) {
        throw std::invalid_argument("tree family needs l >= 3");
    }
    long long edges = 0;
    for (int v = 0; v < n; ++v) {
        edges += static_cast<long long>(tree.neighbors(v).size());
    }
    edges /= 2;
    if (!tree.isConnected() || edges != static_cast<long long>(n) - 1) {
        throw std::invalid_argument("input graph is not a tree");
    }

    std::vector<int> depth = tree.distancesFrom(root);
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        for (int nb : tree.neighbors(v)) {
            if (depth[static_cast<std::size_t>(nb)] == depth[static_cast<std::size_t>(v)] - 1) {
                parent[static_cast<std::size_t>(v)] = nb;
                break;
            }
        }
    }

    CodeFamily family;
    family.seed = 0;
    family.systemCounts = {1};
    for (int i = 1; i <= l; ++i) {
        // Anchor of x: the ancestor z with depth(z) + i - 1 divisible by l
        // nearest to x; when the residue exceeds depth(x) the anchor sits on
        // the imagined ray above the root and the whole top slab is one class.
        std::vector<int> classOf(static_cast<std::size_t>(n), -1);
        std::map<int, int> classId; // anchor vertex id, or -height above root
        for (int x = 0; x < n; ++x) {
            int r = (depth[static_cast<std::size_t>(x)] + i - 1) % l;
            int key;
            if (r <= depth[static_cast<std::size_t>(x)]) {
                int z = x;
                for (int step = 0; step < r; ++step) {
                    z = parent[static_cast<std::size_t>(z)];
                }
                key = z;
            } else {
                key = -(r - depth[static_cast<std::size_t>(x)]);
            }
            auto it = classId.find(key);
            if (it == classId.end()) {
                it = classId.emplace(key, static_cast<int>(classId.size())).first;
            }
            classOf[static_cast<std::size_t>(x)] = it->second;
        }
        Partition part;
        part.classOf = std::move(classOf);
        Rational maxIso(0);
        int maxDiam = 0;
        for (const VertexSubset& cls : part.classes(tree)) {
            maxIso = std::max(maxIso, isoperimetric(tree, cls));
            maxDiam = std::max(maxDiam, subsetDiameter(tree, cls));
        }
        part.epsilon = maxIso;
        part.K = maxDiam;
        PartitionReport rep = verifyPartition(tree, part);
        if (!rep.pass) {
            throw std::logic_error("tree family produced an invalid partition");
        }
        Code code;
        code.emplace_back(1, BigInt(i));
        family.members.push_back({std::move(code), std::move(part)});
    }
    return family;
}

std::string CodeFamily::toJson() const {
    json j;
    j["seed"] = seed;
    j["systemCounts"] = systemCounts;
    json ms = json::array();
    for (const FamilyMember& m : members) {
        json entry;
        json code = json::array();
        for (const auto& [t, shift] : m.code) {
            code.push_back(json::array({t, shift.str()}));
        }
        entry["code"] = code;
        entry["partition"] = json::parse(m.partition.toJson());
        ms.push_back(std::move(entry));
    }
    j["members"] = std::move(ms);
    return j.dump(2) + "\n";
}

CodeFamily CodeFamily::fromJson(const std::string& text) {
    json j = json::parse(text);
    CodeFamily family;
    family.seed = j.at("seed").get<std::uint64_t>();
    family.systemCounts = j.at("systemCounts").get<std::vector<int>>();
    for (const json& entry : j.at("members")) {
        FamilyMember m;
        for (const json& pair : entry.at("code")) {
            if (!pair.is_array() || pair.size() != 2) {
                throw std::invalid_argument("malformed code entry");
            }
            m.code.emplace_back(pair[0].get<int>(), BigInt(pair[1].get<std::string>()));
        }
        m.partition = Partition::fromJson(entry.at("partition").dump());
        family.members.push_back(std::move(m));
    }
    return family;
}

} // namespace localforge
