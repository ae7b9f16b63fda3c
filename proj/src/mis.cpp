#include "localforge/mis.hpp"

#include <algorithm>
#include <stdexcept>

namespace localforge {

namespace {

// Round k: a vertex labeled k adopts "a" unless some neighbor already did;
// everyone else keeps their symbol.
OracleSpec misRound(int k, const std::vector<std::string>& alphabet) {
    OracleSpec spec;
    spec.radius = 1;
    spec.separation = k == 1 ? 1 : 0;
    spec.inputAlphabet = alphabet;
    spec.outputAlphabet = alphabet;
    std::string target = std::to_string(k);
    spec.rule = [target](const CanonicalBall& cb) {
        DecodedBall db = decode(cb);
        std::string mine = db.labelOf(0);
        if (mine != target) {
            return mine;
        }
        for (int u : db.adj[0]) {
            if (db.labelOf(u) == "a") {
                return std::string("b");
            }
        }
        return std::string("a");
    };
    return spec;
}

} // namespace

OracleSpec misOracle(int labelCount) {
    if (labelCount < 1) {
        throw std::invalid_argument("need at least one input label");
    }
    std::vector<std::string> alphabet;
    for (int i = 1; i <= labelCount; ++i) {
        alphabet.push_back(std::to_string(i));
    }
    alphabet.push_back("a");
    alphabet.push_back("b");
    OracleSpec combined = misRound(1, alphabet);
    for (int k = 2; k <= labelCount; ++k) {
        combined = compose(combined, misRound(k, alphabet));
    }
    // The pipeline's own input never contains the reserved symbols, but the
    // uniform stage alphabet keeps the interface fixed across rounds.
    return combined;
}

VertexSubset misCtda(const Graph& g, const Labeling& phi, int threads, RoundTrace* trace) {
    if (phi.values.size() != static_cast<std::size_t>(g.n())) {
        throw std::invalid_argument("labeling size must match graph size");
    }
    for (const std::string& s : phi.alphabet) {
        if (s == "a" || s == "b") {
            throw std::invalid_argument("input alphabet must not use the reserved symbols a/b");
        }
    }
    int m = phi.alphabetSize();
    OracleSpec oracle = misOracle(m);
    // Rename symbols positionally onto "1".."m" and lift onto the working
    // alphabet; indices are already positional so values carry over.
    Labeling lifted;
    lifted.alphabet = oracle.inputAlphabet;
    lifted.values = phi.values;
    lifted.separation = phi.separation;
    Labeling final = applyOracle(g, lifted, oracle, threads, trace);
    std::vector<int> members;
    for (int x = 0; x < g.n(); ++x) {
        if (final.symbol(x) == "a") {
            members.push_back(x);
        }
    }
    return VertexSubset::of(g, members);
}

ApproxMisReport approxMis(const Graph& g, const StarPartition& sp, int sizeLimit) {
    const Partition& p = sp.partition;
    if (p.classOf.size() != static_cast<std::size_t>(g.n())) {
        throw std::invalid_argument("partition size must match graph size");
    }
    auto classes = p.classes(g);
    std::vector<int> resultMembers;
    long long starSize = 0;
    long long boundarySize = 0;
    for (int c = 0; c < static_cast<int>(classes.size()); ++c) {
        const VertexSubset& h = classes[static_cast<std::size_t>(c)];
        if (c == sp.starClass) {
            starSize = h.size();
            continue;
        }
        if (h.size() > sizeLimit) {
            throw std::invalid_argument("class " + std::to_string(c) +
                                        " exceeds the exhaustive-solver size limit");
        }
        // Interior: members with every neighbor inside the class.
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
        boundarySize += h.size() - static_cast<long long>(interior.size());
        if (interior.empty()) {
            continue;
        }
        VertexSubset inner = VertexSubset::of(g, interior);
        Graph sub = inducedSubgraph(g, inner);
        VertexSubset best = maxIndependentSet(sub, sizeLimit);
        for (int local : best.members) {
            resultMembers.push_back(inner.members[static_cast<std::size_t>(local)]);
        }
    }
    std::sort(resultMembers.begin(), resultMembers.end());
    ApproxMisReport report;
    report.result = VertexSubset::of(g, resultMembers);
    report.fraction = Rational(static_cast<std::int64_t>(resultMembers.size()), g.n());
    report.starFraction = Rational(starSize, g.n());
    report.boundaryFraction = Rational(boundarySize, g.n());
    // Interiors of distinct classes are never adjacent; audit anyway.
    for (std::size_t i = 0; i < resultMembers.size(); ++i) {
        for (int u : g.neighbors(resultMembers[i])) {
            if (std::binary_search(resultMembers.begin(), resultMembers.end(), u)) {
                throw std::logic_error("approximate independent set touched an edge");
            }
        }
    }
    return report;
}

} // namespace localforge
