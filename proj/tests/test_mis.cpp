#include "localforge/mis.hpp"

#include <gtest/gtest.h>

namespace localforge {
namespace {

Graph disjointDouble(const Graph& g) {
    auto edges = g.edges();
    std::vector<std::pair<int, int>> doubled = edges;
    for (auto [u, v] : edges) {
        doubled.emplace_back(u + g.n(), v + g.n());
    }
    std::sort(doubled.begin(), doubled.end());
    return Graph::fromEdges(2 * g.n(), g.degreeBound(), doubled);
}

Labeling doubledLabeling(const Labeling& phi) {
    Labeling out = phi;
    out.values.insert(out.values.end(), phi.values.begin(), phi.values.end());
    return out;
}

void expectMaximalIndependent(const Graph& g, const VertexSubset& sys) {
    for (int v : sys.members) {
        for (int u : g.neighbors(v)) {
            EXPECT_FALSE(sys.contains(u)) << "edge " << v << "-" << u << " inside the set";
        }
    }
    for (int x = 0; x < g.n(); ++x) {
        bool dominated = sys.contains(x);
        for (int u : g.neighbors(x)) {
            dominated = dominated || sys.contains(u);
        }
        EXPECT_TRUE(dominated) << "vertex " << x << " not dominated";
    }
}

TEST(Mis, ForcedSmallExamples) {
    Graph p3 = pathGraph(3);
    Labeling phi3 = Labeling::fromSymbols({"1", "2"}, {"1", "2", "1"}, 1);
    EXPECT_EQ(misCtda(p3, phi3).members, (std::vector<int>{0, 2}));

    Graph c4 = cycleGraph(4);
    Labeling phi4 = Labeling::fromSymbols({"1", "2"}, {"1", "2", "1", "2"}, 1);
    EXPECT_EQ(misCtda(c4, phi4).members, (std::vector<int>{0, 2}));
}

TEST(Mis, RandomInstancesAreIndependentAndMaximal) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        int n = 30 + static_cast<int>(seed) * 7;
        int d = 3 + static_cast<int>(seed % 3);
        Graph g = randomBoundedDegree(n, d, seed);
        Labeling phi = greedySeparatingLabeling(g, 1);
        VertexSubset sys = misCtda(g, phi);
        expectMaximalIndependent(g, sys);
    }
}

TEST(Mis, LocalityOnDisjointCopies) {
    Graph g = randomBoundedDegree(40, 4, 11);
    Labeling phi = greedySeparatingLabeling(g, 1);
    VertexSubset single = misCtda(g, phi);

    Graph twice = disjointDouble(g);
    VertexSubset doubled = misCtda(twice, doubledLabeling(phi));
    std::vector<int> left, right;
    for (int v : doubled.members) {
        (v < g.n() ? left : right).push_back(v);
    }
    for (int& v : right) {
        v -= g.n();
    }
    EXPECT_EQ(left, single.members);
    EXPECT_EQ(right, single.members);
}

TEST(Mis, TraceShowsRoundProgression) {
    Graph c4 = cycleGraph(4);
    Labeling phi = Labeling::fromSymbols({"1", "2"}, {"1", "2", "1", "2"}, 1);
    RoundTrace trace;
    misCtda(c4, phi, 1, &trace);
    ASSERT_EQ(trace.rounds.size(), 2u);
    EXPECT_EQ(trace.rounds[0].symbols(), (std::vector<std::string>{"a", "2", "a", "2"}));
    EXPECT_EQ(trace.rounds[1].symbols(), (std::vector<std::string>{"a", "b", "a", "b"}));
}

TEST(Mis, ContractViolationsRejected) {
    Graph c4 = cycleGraph(4);
    Labeling reserved = Labeling::fromSymbols({"a", "z"}, {"a", "z", "a", "z"}, 1);
    EXPECT_THROW(misCtda(c4, reserved), std::invalid_argument);

    Labeling undeclared = Labeling::fromSymbols({"1", "2"}, {"1", "2", "1", "2"});
    EXPECT_THROW(misCtda(c4, undeclared), std::invalid_argument);

    Labeling lying = Labeling::fromSymbols({"1", "2"}, {"1", "1", "2", "2"}, 1);
    EXPECT_THROW(misCtda(c4, lying), std::invalid_argument);
}

TEST(Mis, StagedAndAtomicEvaluationsAgree) {
    EXPECT_EQ(misOracle(2).radius, 2);
    EXPECT_EQ(misOracle(2).stages.size(), 2u);
    for (int n : {4, 5, 7}) {
        Graph g = cycleGraph(n);
        Labeling phi = greedySeparatingLabeling(g, 1);
        OracleSpec staged = misOracle(phi.alphabetSize());
        OracleSpec atomic = staged;
        atomic.stages.clear();
        Labeling lifted;
        lifted.alphabet = staged.inputAlphabet;
        lifted.values = phi.values;
        lifted.separation = phi.separation;
        EXPECT_EQ(applyOracle(g, lifted, staged).symbols(), applyOracle(g, lifted, atomic).symbols());
    }
}

TEST(Mis, ApproxOnArcPartition) {
    Graph g = cycleGraph(100);
    Partition p;
    p.epsilon = Rational(1, 10);
    p.K = 19;
    p.classOf.resize(100);
    for (int v = 0; v < 100; ++v) {
        p.classOf[static_cast<std::size_t>(v)] = v / 20;
    }
    ApproxMisReport report = approxMis(g, StarPartition{p, -1});
    EXPECT_EQ(report.result.size(), 45); // five interior paths of 18 vertices
    EXPECT_EQ(report.starFraction, Rational(0));
    EXPECT_EQ(report.boundaryFraction, Rational(1, 10));
    // Against the true maximum 50: loss stays within star + boundary mass.
    Rational optFraction(50, 100);
    EXPECT_FALSE(report.fraction < optFraction - report.starFraction - report.boundaryFraction);
}

TEST(Mis, ApproxWholeGraphReducesToExact) {
    Graph g = cycleGraph(9);
    Partition p;
    p.epsilon = Rational(1);
    p.K = 4;
    p.classOf.assign(9, 0);
    ApproxMisReport report = approxMis(g, StarPartition{p, -1});
    EXPECT_EQ(report.result.size(), maxIndependentSet(g).size());
    EXPECT_EQ(report.boundaryFraction, Rational(0));
}

TEST(Mis, ApproxSkipsStarAndBoundaries) {
    Graph g = cycleGraph(10);
    Partition p;
    p.epsilon = Rational(1);
    p.K = 3;
    p.classOf = {0, 0, 0, 0, 2, 1, 1, 1, 1, 2};
    ApproxMisReport report = approxMis(g, StarPartition{p, 2});
    EXPECT_EQ(report.result.size(), 2);
    EXPECT_EQ(report.starFraction, Rational(1, 5));
    EXPECT_EQ(report.boundaryFraction, Rational(2, 5));

    Partition big;
    big.epsilon = Rational(1);
    big.K = 50;
    big.classOf.assign(100, 0);
    Graph c100 = cycleGraph(100);
    EXPECT_THROW(approxMis(c100, StarPartition{big, -1}), std::invalid_argument);
}

} // namespace
} // namespace localforge
