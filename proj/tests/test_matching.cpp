#include "localforge/matching.hpp"

#include <gtest/gtest.h>

#include "localforge/exact.hpp"
#include "localforge/oracle.hpp"

namespace localforge {
namespace {

Labeling allDistinctLabeling(const Graph& g, int declaredSeparation) {
    std::vector<std::string> alphabet;
    std::vector<std::string> symbols;
    for (int v = 0; v < g.n(); ++v) {
        alphabet.push_back("v" + std::to_string(v));
        symbols.push_back(alphabet.back());
    }
    return Labeling::fromSymbols(alphabet, symbols, declaredSeparation);
}

// Random maximal matching by scanning shuffled edges.
Matching randomMaximalMatching(const Graph& g, std::uint64_t seed) {
    Rng rng(seed);
    auto edges = g.edges();
    rng.shuffle(edges);
    std::vector<bool> hit(static_cast<std::size_t>(g.n()), false);
    Matching m;
    for (auto [u, v] : edges) {
        if (!hit[static_cast<std::size_t>(u)] && !hit[static_cast<std::size_t>(v)]) {
            hit[static_cast<std::size_t>(u)] = hit[static_cast<std::size_t>(v)] = true;
            m.edges.emplace_back(u, v);
        }
    }
    std::sort(m.edges.begin(), m.edges.end());
    return m;
}

TEST(Matching, PathAndCycleExamples) {
    Graph p4 = pathGraph(4);
    Matching m = matchingCtda(p4, allDistinctLabeling(p4, 100), 5);
    EXPECT_EQ(m.edges, (std::vector<std::pair<int, int>>{{0, 1}, {2, 3}}));

    Graph c6 = cycleGraph(6);
    Matching perfect = matchingCtda(c6, allDistinctLabeling(c6, 100), 5);
    EXPECT_EQ(perfect.size(), 3);
    EXPECT_TRUE(verifyMatching(c6, perfect, 5).pass);

    Graph edgeless = Graph::fromEdges(5, 1, {});
    EXPECT_TRUE(matchingCtda(edgeless, allDistinctLabeling(edgeless, 100), 5).edges.empty());
}

TEST(Matching, SeparationContract) {
    Graph g = cycleGraph(8);
    Labeling weak = allDistinctLabeling(g, 3); // declares 3 < 20
    EXPECT_THROW(matchingCtda(g, weak, 1), std::invalid_argument);

    Labeling lying = Labeling::fromSymbols({"x", "y"}, {"x", "y", "x", "y", "x", "y", "x", "y"}, 20);
    EXPECT_THROW(matchingCtda(g, lying, 1), std::invalid_argument);
}

TEST(Matching, FixedPointBeatsBergeBound) {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        int n = 20 + static_cast<int>(seed % 5) * 5;
        Graph g = randomBoundedDegree(n, 3 + static_cast<int>(seed % 2), seed);
        int T = 5;
        Matching m = matchingCtda(g, allDistinctLabeling(g, 20 * T), T);
        MatchingReport report = verifyMatching(g, m, T);
        EXPECT_TRUE(report.pass) << "seed " << seed;
        int opt = static_cast<int>(maxMatchingEdges(g).size());
        // No augmenting path < T forces |M| >= T/(T+1) * opt.
        EXPECT_GE(m.size() * (T + 1), opt * T) << "seed " << seed;
        ++checked;
    }
    EXPECT_EQ(checked, 30);
}

TEST(Matching, SweepCapStopsEarly) {
    Graph g = pathGraph(12);
    Labeling phi = allDistinctLabeling(g, 20);
    Matching capped = matchingCtda(g, phi, 1, 1);
    Matching full = matchingCtda(g, phi, 1);
    EXPECT_LE(capped.size(), full.size());
    EXPECT_TRUE(verifyMatching(g, full, 1).pass);
}

TEST(Matching, VerifyFindsShortAugmentingPath) {
    Graph p4 = pathGraph(4);
    Matching middle;
    middle.edges = {{1, 2}};
    MatchingReport report = verifyMatching(p4, middle, 5);
    EXPECT_FALSE(report.pass);
    EXPECT_EQ(report.witnessPath, (std::vector<int>{0, 1, 2, 3}));
    EXPECT_EQ(report.sizeBound, Rational(6, 5));

    Matching perfect;
    perfect.edges = {{0, 1}, {2, 3}};
    EXPECT_TRUE(verifyMatching(p4, perfect, 5).pass);
}

TEST(Matching, StructuralValidation) {
    Graph c4 = cycleGraph(4);
    Matching nonEdge;
    nonEdge.edges = {{0, 2}};
    EXPECT_TRUE(verifyMatching(c4, nonEdge, 3).structuralError.has_value());

    Matching doubled;
    doubled.edges = {{0, 1}, {1, 2}};
    EXPECT_TRUE(verifyMatching(c4, doubled, 3).structuralError.has_value());

    Matching m;
    m.edges = {{0, 1}, {2, 3}};
    Matching round = Matching::fromJson(m.toJson());
    EXPECT_EQ(round.edges, m.edges);
}

TEST(Matching, FunctionCodecRoundTrip) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = randomBoundedDegree(30, 3, seed);
        Matching m = randomMaximalMatching(g, seed + 500);
        Labeling phi = allDistinctLabeling(g, 11);
        Labeling rho = matchingToFunction(g, m, phi);
        std::string why;
        EXPECT_TRUE(isMatchingFunction(g, rho, &why)) << "seed " << seed << ": " << why;
        Matching back = matchingFromFunction(g, rho);
        EXPECT_EQ(back.edges, m.edges) << "seed " << seed;
    }
}

TEST(Matching, FunctionEncodingDetails) {
    Graph p5 = pathGraph(5);
    Matching m;
    m.edges = {{0, 1}, {2, 3}};
    Labeling phi = allDistinctLabeling(p5, 11);
    Labeling rho = matchingToFunction(p5, m, phi);
    // Matched pairs share their bundled symbol; the solo vertex keeps its own.
    EXPECT_EQ(rho.symbol(0), rho.symbol(1));
    EXPECT_EQ(rho.symbol(2), rho.symbol(3));
    EXPECT_NE(rho.symbol(0), rho.symbol(2));
    EXPECT_EQ(rho.symbol(4), productSymbol({"0", phi.symbol(4)}));
    EXPECT_EQ(rho.symbol(0), productSymbol({"1", phi.symbol(0)}));

    // Weak separation is rejected.
    EXPECT_THROW(matchingToFunction(p5, m, allDistinctLabeling(p5, 5)), std::invalid_argument);

    // A labeling equal across a non-edge fails the audit.
    Labeling bad = Labeling::fromSymbols({"s", "t"}, {"s", "t", "s", "t", "t"});
    std::string why;
    EXPECT_FALSE(isMatchingFunction(p5, bad, &why));
    EXPECT_FALSE(why.empty());
}

} // namespace
} // namespace localforge
