#include "localforge/weighted.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "localforge/exact.hpp"
#include "localforge/partition.hpp"

namespace localforge {

WeightedIsReport weightedIs(const Graph& g, const CodeFamily& family, const WeightFunction& w,
                            const std::optional<Rational>& epsilon, int sizeLimit) {
    int n = g.n();
    if (family.members.empty()) {
        throw std::invalid_argument("family is empty");
    }
    if (w.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("weight vector must match graph size");
    }
    for (std::int64_t x : w) {
        if (x < 0) {
            throw std::invalid_argument("weights must be non-negative");
        }
    }

    WeightedIsReport report;
    for (std::int64_t x : w) {
        report.totalWeight += x;
    }
    for (std::size_t mi = 0; mi < family.members.size(); ++mi) {
        const Partition& p = family.members[mi].partition;
        if (p.classOf.size() != static_cast<std::size_t>(n)) {
            throw std::invalid_argument("family partition does not cover the graph");
        }
        std::vector<int> resultMembers;
        auto classes = p.classes(g);
        for (int c = 0; c < static_cast<int>(classes.size()); ++c) {
            const VertexSubset& h = classes[static_cast<std::size_t>(c)];
            std::vector<int> interior;
            for (int v : h.members) {
                bool inner = true;
                for (int u : g.neighbors(v)) {
                    if (!h.contains(u)) {
                        inner = false;
                        break;
                    }
                }
                if (inner) {
                    interior.push_back(v);
                }
            }
            if (static_cast<int>(interior.size()) > sizeLimit) {
                throw std::invalid_argument("class " + std::to_string(c) + " of member " +
                                            std::to_string(mi) +
                                            " exceeds the exhaustive-solver size limit");
            }
            if (interior.empty()) {
                continue;
            }
            VertexSubset inner = VertexSubset::of(g, interior);
            Graph sub = inducedSubgraph(g, inner);
            WeightFunction localW(interior.size());
            for (std::size_t k = 0; k < interior.size(); ++k) {
                localW[k] = w[static_cast<std::size_t>(interior[k])];
            }
            VertexSubset pick = maxWeightedIndependentSet(sub, localW, sizeLimit);
            for (int local : pick.members) {
                resultMembers.push_back(inner.members[static_cast<std::size_t>(local)]);
            }
        }
        std::sort(resultMembers.begin(), resultMembers.end());
        for (int v : resultMembers) {
            for (int u : g.neighbors(v)) {
                if (std::binary_search(resultMembers.begin(), resultMembers.end(), u)) {
                    throw std::logic_error("weighted independent set touched an edge");
                }
            }
        }
        std::int64_t weight = 0;
        for (int v : resultMembers) {
            weight += w[static_cast<std::size_t>(v)];
        }
        report.sets.push_back(VertexSubset::of(g, resultMembers));
        report.weights.push_back(weight);
    }

    report.bestIndex = 0;
    for (std::size_t i = 1; i < report.weights.size(); ++i) {
        if (report.weights[i] > report.weights[static_cast<std::size_t>(report.bestIndex)]) {
            report.bestIndex = static_cast<int>(i);
        }
    }
    report.best = report.sets[static_cast<std::size_t>(report.bestIndex)];
    report.bestWeight = report.weights[static_cast<std::size_t>(report.bestIndex)];

    if (n <= sizeLimit) {
        VertexSubset opt = maxWeightedIndependentSet(g, w, sizeLimit);
        std::int64_t optW = 0;
        for (int v : opt.members) {
            optW += w[static_cast<std::size_t>(v)];
        }
        report.optimum = optW;
        int good = 0;
        for (std::size_t i = 0; i < report.weights.size(); ++i) {
            Rational eps = epsilon ? *epsilon : family.members[i].partition.epsilon;
            // weight >= optW - eps * total, compared exactly.
            __int128 lhs = static_cast<__int128>(report.weights[i]) * eps.den();
            __int128 rhs = static_cast<__int128>(optW) * eps.den() -
                           static_cast<__int128>(eps.num()) * report.totalWeight;
            if (lhs >= rhs) {
                ++good;
            }
        }
        report.goodFraction = Rational(good, static_cast<std::int64_t>(report.weights.size()));
    }
    return report;
}

} // namespace localforge
