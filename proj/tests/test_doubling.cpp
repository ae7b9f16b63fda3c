#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "localforge/doubling.hpp"
#include "localforge/graph.hpp"
#include "localforge/labeling.hpp"
#include "localforge/partition.hpp"
#include "localforge/subsets.hpp"

namespace localforge {
namespace {

Labeling idLabeling(const Graph& g) {
    std::vector<std::string> symbols;
    symbols.reserve(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) {
        symbols.push_back("v" + std::to_string(v));
    }
    return Labeling::fromSymbols(symbols, symbols, 2 * g.n() + 2);
}

GoodTuple arcTuple(const Rational& eps, std::vector<BigInt> scales) {
    GoodTuple t;
    t.N = static_cast<int>(scales.size());
    t.D = 2;
    t.epsilon = eps;
    t.S = std::move(scales);
    return t;
}

TEST(Doubling, MinimalScaleCountPins) {
    EXPECT_EQ(minimalScaleCount(2, Rational(1, 2)), 22);
    EXPECT_EQ(minimalScaleCount(4, Rational(1, 2)), 178);
    EXPECT_EQ(minimalScaleCount(2, Rational(99, 100)), 1);
    EXPECT_EQ(minimalScaleCount(2, Rational(19, 20)), 2);
    EXPECT_THROW(minimalScaleCount(0, Rational(1, 2)), std::invalid_argument);
    EXPECT_THROW(minimalScaleCount(2, Rational(1)), std::invalid_argument);
}

TEST(Doubling, ValidateCatchesEachInequality) {
    EXPECT_NO_THROW(validateGoodTuple(arcTuple(Rational(19, 20), {13, 3})));
    // separation needs S_i strictly above 4 * (sum below)
    EXPECT_THROW(validateGoodTuple(arcTuple(Rational(19, 20), {12, 3})), std::invalid_argument);
    EXPECT_NO_THROW(validateGoodTuple(arcTuple(Rational(19, 20), {100, 20, 4})));
    EXPECT_THROW(validateGoodTuple(arcTuple(Rational(19, 20), {100, 20, 5})), std::invalid_argument);
    // too few scales for this epsilon
    EXPECT_THROW(validateGoodTuple(arcTuple(Rational(1, 2), {3})), std::invalid_argument);
    // length mismatch
    {
        GoodTuple t = arcTuple(Rational(19, 20), {13, 3});
        t.N = 3;
        EXPECT_THROW(validateGoodTuple(t), std::invalid_argument);
    }
    // strong variant: R_1 must exceed 20 N S_2 / delta = 240
    {
        GoodTuple t = arcTuple(Rational(19, 20), {300, 3});
        t.delta = Rational(1, 2);
        t.R = {241, 1};
        t.marginFactor = 20;
        EXPECT_NO_THROW(validateGoodTuple(t));
        t.R = {240, 1};
        EXPECT_THROW(validateGoodTuple(t), std::invalid_argument);
    }
}

TEST(Doubling, BallMembersClampsAndValidates) {
    Graph c10 = cycleGraph(10);
    EXPECT_EQ(ballMembers(c10, 3, BigInt(0)), (std::vector<int>{3}));
    BigInt huge("1000000000000000000000");
    EXPECT_EQ(static_cast<int>(ballMembers(c10, 3, huge).size()), 10);
    EXPECT_THROW(ballMembers(c10, 10, BigInt(1)), std::invalid_argument);
    EXPECT_THROW(ballMembers(c10, 0, BigInt(-1)), std::invalid_argument);

    Graph twoTriangles = Graph::fromEdges(6, 2, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    EXPECT_EQ(ballMembers(twoTriangles, 0, BigInt(100)), (std::vector<int>{0, 1, 2}));
}

TEST(Doubling, TupleSearchOnTenThousandCycle) {
    Graph g = cycleGraph(10000);
    GoodTuple t = goodTupleSearch(g, 2, Rational(1, 2));
    EXPECT_EQ(t.N, 22);
    EXPECT_EQ(t.marginFactor, 16);
    EXPECT_TRUE(t.R.empty());
    EXPECT_NO_THROW(validateGoodTuple(t));

    // bottom scale: radius 2 is the first arc with boundary ratio below 1/2
    EXPECT_EQ(t.S[21], BigInt(2));
    // next scale: growth control forces near-saturated arcs; the smallest
    // admissible radius is 4969, reachable first from the window at 2485
    EXPECT_EQ(t.S[20], BigInt(2485));
    EXPECT_EQ(t.S[19], BigInt(9949));
    // every higher scale is pinned to the separation floor
    BigInt tail = 0;
    for (int i = 21; i >= 0; --i) {
        if (i <= 18) {
            EXPECT_EQ(t.S[static_cast<std::size_t>(i)], 4 * tail + 1) << "index " << i;
        }
        tail += t.S[static_cast<std::size_t>(i)];
    }

    EXPECT_EQ(chooseRadius(g, t, 22, 0), BigInt(2));
    EXPECT_EQ(chooseRadius(g, t, 21, 0), BigInt(4969));
    EXPECT_EQ(chooseRadius(g, t, 20, 0), BigInt(9949));
    EXPECT_EQ(chooseRadius(g, t, 1, 0), t.S[0]);
}

TEST(Doubling, StrongTupleSearchDerivesShiftBudgets) {
    Graph g = cycleGraph(100);
    GoodTuple t = goodTupleSearch(g, 2, Rational(1, 2), Rational(1, 2));
    EXPECT_EQ(t.N, 22);
    EXPECT_EQ(t.marginFactor, 20);
    ASSERT_EQ(static_cast<int>(t.R.size()), 22);
    EXPECT_NO_THROW(validateGoodTuple(t));

    EXPECT_EQ(t.R[21], BigInt(1));
    EXPECT_EQ(t.S[21], BigInt(2));
    // R_21 = 20 * 22 * 2 * 2 + 1 dwarfs the graph, so S_21 snaps to R_21 + 1
    EXPECT_EQ(t.R[20], BigInt(1761));
    EXPECT_EQ(t.S[20], BigInt(1762));
    // above the graph scale, S_i = max(separation floor, R_i + 1)
    BigInt tail = 0;
    for (int i = 21; i >= 0; --i) {
        if (i <= 20) {
            BigInt floor = 4 * tail + 1;
            BigInt bumped = t.R[static_cast<std::size_t>(i)] + 1;
            EXPECT_EQ(t.S[static_cast<std::size_t>(i)], std::max(floor, bumped)) << "index " << i;
        }
        tail += t.S[static_cast<std::size_t>(i)];
    }

    EXPECT_EQ(chooseRadius(g, t, 22, 0), BigInt(2));
    EXPECT_EQ(chooseRadius(g, t, 21, 0), BigInt(1762));
}

TEST(Doubling, ChooseRadiusRejectsShiftBudgetAboveScale) {
    Graph g = cycleGraph(10);
    GoodTuple t = arcTuple(Rational(19, 20), {300, 3});
    t.delta = Rational(1, 2);
    t.R = {301, 1};
    t.marginFactor = 20;
    ASSERT_NO_THROW(validateGoodTuple(t));
    // window [S_1, 2 S_1 - R_1) is empty because R_1 >= S_1
    EXPECT_THROW(chooseRadius(g, t, 1, 0), std::runtime_error);
}

TEST(Doubling, SingleScaleArcsOnHundredCycle) {
    Graph g = cycleGraph(100);
    GoodTuple t = arcTuple(Rational(99, 100), {3});
    Labeling phi = idLabeling(g);
    NiceBallSystem nice = basicAlgorithm(g, t, phi);

    ASSERT_EQ(static_cast<int>(nice.balls.size()), 4);
    EXPECT_TRUE(nice.discarded.empty());
    std::vector<int> centers;
    for (const NiceBall& b : nice.balls) {
        centers.push_back(b.center);
        EXPECT_EQ(b.radius, BigInt(3));
        EXPECT_EQ(b.type, 1);
    }
    EXPECT_EQ(centers, (std::vector<int>{0, 25, 50, 75}));

    VertexSubset all = VertexSubset::of(g, [&] {
        std::vector<int> v(100);
        for (int i = 0; i < 100; ++i) v[static_cast<std::size_t>(i)] = i;
        return v;
    }());
    CoverageReport full = coverageReport(g, all, nice);
    EXPECT_TRUE(full.hypothesisHolds); // the whole graph has no boundary
    EXPECT_EQ(full.boundaryRatio, Rational(0));
    EXPECT_EQ(full.coveredFraction, Rational(7, 25)); // 4 arcs of 7

    VertexSubset oneBall = VertexSubset::of(g, {22, 23, 24, 25, 26, 27, 28});
    CoverageReport own = coverageReport(g, oneBall, nice);
    EXPECT_EQ(own.coveredFraction, Rational(1));
    EXPECT_FALSE(own.hypothesisHolds); // a 7-arc is all deep boundary
    EXPECT_EQ(own.boundaryRatio, Rational(1));

    VertexSubset offBall = VertexSubset::of(g, {5, 6, 7, 8, 9, 10});
    EXPECT_EQ(coverageReport(g, offBall, nice).coveredFraction, Rational(0));

    VertexSubset window = VertexSubset::of(g, {20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30});
    EXPECT_EQ(coverageReport(g, window, nice).coveredFraction, Rational(7, 11));

    EXPECT_THROW(coverageReport(g, VertexSubset{}, nice), std::invalid_argument);
}

TEST(Doubling, TwoScaleRunDiscardsIntoTheBigBall) {
    Graph g = cycleGraph(1200);
    GoodTuple t = arcTuple(Rational(95, 100), {300, 3});
    Labeling phi = idLabeling(g);
    NiceBallSystem nice = basicAlgorithm(g, t, phi);

    // one 1200-separated center, then 48 centers every 25; the big ball
    // saturates at radius 593 and swallows every small ball except the one
    // at its antipode
    ASSERT_EQ(static_cast<int>(nice.balls.size()), 2);
    EXPECT_EQ(nice.balls[0].center, 0);
    EXPECT_EQ(nice.balls[0].radius, BigInt(593));
    EXPECT_EQ(nice.balls[0].type, 1);
    EXPECT_EQ(nice.balls[1].center, 600);
    EXPECT_EQ(nice.balls[1].radius, BigInt(3));
    EXPECT_EQ(nice.balls[1].type, 2);
    ASSERT_EQ(static_cast<int>(nice.discarded.size()), 47);
    for (std::size_t i = 0; i < nice.discarded.size(); ++i) {
        EXPECT_EQ(nice.discarded[i].type, 2);
        EXPECT_EQ(nice.discardedBy[i], 0);
    }

    std::vector<int> everything(1200);
    for (int v = 0; v < 1200; ++v) everything[static_cast<std::size_t>(v)] = v;
    CoverageReport cov = coverageReport(g, VertexSubset::of(g, everything), nice);
    EXPECT_EQ(cov.coveredFraction, Rational(199, 200));
    EXPECT_TRUE(cov.hypothesisHolds);

    ExtendTrace trace;
    Partition part = extendPartition(g, nice, Rational(1, 100), std::nullopt, &trace);

    EXPECT_EQ(trace.coverRadius, 1187); // 2 * 593 + 1
    EXPECT_EQ(trace.familyCount, 1);
    // the 7-vertex ball cannot fit a slice strictly inside (2e'|L|, 3e'|L|)
    EXPECT_EQ(trace.sliceFallbacks, (std::vector<int>{1}));
    std::vector<std::pair<int, int>> wantPsi = {
        {594, 0}, {595, 1}, {596, 2}, {604, 3}, {605, 4}, {606, 5}};
    EXPECT_EQ(trace.psi, wantPsi);
    EXPECT_EQ(trace.psiReach, 599);

    // class 0 is everything outside the small arc {597..603}
    int class0 = 0, class1 = 0;
    for (int v = 0; v < 1200; ++v) {
        int c = part.classOf[static_cast<std::size_t>(v)];
        ASSERT_TRUE(c == 0 || c == 1);
        (c == 0 ? class0 : class1) += 1;
        bool inArc = v >= 597 && v <= 603;
        EXPECT_EQ(c, inArc ? 1 : 0) << "vertex " << v;
    }
    EXPECT_EQ(class0, 1193);
    EXPECT_EQ(class1, 7);
    EXPECT_EQ(part.epsilon, Rational(2, 7));
    EXPECT_EQ(part.K, 600);

    PartitionReport check = verifyPartition(g, part);
    EXPECT_TRUE(check.pass);
    EXPECT_EQ(check.maxIso, Rational(2, 7));
    EXPECT_EQ(check.maxDiam, 600);
}

TEST(Doubling, GrowthControlCanExhaustTheWindow) {
    Graph g = cycleGraph(400);
    GoodTuple t = arcTuple(Rational(19, 20), {50, 3});
    Labeling phi = idLabeling(g);
    // every radius in [50, 100) fails the growth condition on a 400-cycle
    try {
        basicAlgorithm(g, t, phi);
        FAIL() << "expected a radius failure";
    } catch (const std::runtime_error& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("type 1"), std::string::npos);
        EXPECT_NE(msg.find("vertex 0"), std::string::npos);
    }
}

TEST(Doubling, ComponentsBecomeWholeBalls) {
    Graph g = Graph::fromEdges(6, 2, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    GoodTuple t = arcTuple(Rational(99, 100), {1});
    NiceBallSystem nice = basicAlgorithm(g, t, idLabeling(g));
    ASSERT_EQ(static_cast<int>(nice.balls.size()), 2);
    EXPECT_EQ(nice.balls[0].center, 0);
    EXPECT_EQ(nice.balls[1].center, 3);
    EXPECT_TRUE(nice.discarded.empty());

    ExtendTrace trace;
    Partition part = extendPartition(g, nice, Rational(1, 4), std::nullopt, &trace);
    EXPECT_EQ(trace.familyCount, 0); // nothing was uncovered
    EXPECT_TRUE(trace.psi.empty());
    EXPECT_EQ(part.classOf, (std::vector<int>{0, 0, 0, 1, 1, 1}));
    EXPECT_EQ(part.epsilon, Rational(0));
    EXPECT_EQ(part.K, 1);
    EXPECT_TRUE(verifyPartition(g, part).pass);
}

TEST(Doubling, DiscardRoundRejectsEqualTypeOverlap) {
    Graph g = cycleGraph(20);
    GoodTuple t = arcTuple(Rational(99, 100), {3});
    std::vector<NiceBall> chosen = {{0, BigInt(3), 1}, {4, BigInt(3), 1}};
    EXPECT_THROW(runDiscardRound(g, t, chosen), std::logic_error);
    // distinct types overlapping is the intended discard path
    GoodTuple t2 = arcTuple(Rational(99, 100), {13, 3});
    std::vector<NiceBall> mixed = {{0, BigInt(13), 1}, {4, BigInt(3), 2}, {9, BigInt(3), 2}};
    NiceBallSystem out = runDiscardRound(g, t2, mixed);
    ASSERT_EQ(static_cast<int>(out.balls.size()), 1);
    EXPECT_EQ(static_cast<int>(out.discarded.size()), 2);
    EXPECT_EQ(out.discardedBy, (std::vector<int>{0, 0}));
}

TEST(Doubling, NetCoverPinsOnTwentyCycle) {
    Graph g = cycleGraph(20);
    NetCover cover = netCover(g, 2, 0);
    ASSERT_EQ(static_cast<int>(cover.families.size()), 3);
    EXPECT_EQ(cover.families[0], (std::vector<int>{0, 9}));
    EXPECT_EQ(cover.families[1], (std::vector<int>{3, 12}));
    EXPECT_EQ(cover.families[2], (std::vector<int>{6, 15}));
    EXPECT_EQ(cover.doubling, Rational(17, 9));
    EXPECT_EQ(cover.familyBound, BigInt(4096)); // ceil(17/9)^12
    EXPECT_TRUE(cover.withinBound);

    // the 2-balls of the net cover the cycle
    std::vector<char> covered(20, 0);
    for (const auto& family : cover.families) {
        for (int c : family) {
            for (int v : g.ballVertices(c, 2)) covered[static_cast<std::size_t>(v)] = 1;
        }
    }
    EXPECT_EQ(std::count(covered.begin(), covered.end(), 1), 20);
}

TEST(Doubling, NetCoverDegeneratesToOneBall) {
    Graph g = cycleGraph(10);
    NetCover cover = netCover(g, 5, 0);
    ASSERT_EQ(static_cast<int>(cover.families.size()), 1);
    EXPECT_EQ(cover.families[0], (std::vector<int>{0}));
    EXPECT_TRUE(cover.withinBound);
    EXPECT_THROW(netCover(g, 0, 0), std::invalid_argument);
    EXPECT_THROW(netCover(g, 1, -1), std::invalid_argument);
}

TEST(Doubling, NetCoverAuditsOnRandomGraphs) {
    for (unsigned seed : {1u, 7u, 23u}) {
        Graph g = randomBoundedDegree(60, 3, seed);
        for (int s : {1, 2, 4}) {
            NetCover cover = netCover(g, s, 0);
            std::vector<int> centers;
            std::vector<char> covered(60, 0);
            for (const auto& family : cover.families) {
                // same-family centers are pairwise further than 4s apart
                for (std::size_t i = 0; i < family.size(); ++i) {
                    auto dist = g.distancesFrom(family[i]);
                    for (std::size_t j = i + 1; j < family.size(); ++j) {
                        int d = dist[static_cast<std::size_t>(family[j])];
                        EXPECT_TRUE(d < 0 || d > 4 * s);
                    }
                }
                for (int c : family) {
                    centers.push_back(c);
                    for (int v : g.ballVertices(c, s)) covered[static_cast<std::size_t>(v)] = 1;
                }
            }
            EXPECT_EQ(std::count(covered.begin(), covered.end(), 1), 60);
            // net centers pairwise further than s apart
            for (std::size_t i = 0; i < centers.size(); ++i) {
                auto dist = g.distancesFrom(centers[i]);
                for (std::size_t j = i + 1; j < centers.size(); ++j) {
                    int d = dist[static_cast<std::size_t>(centers[j])];
                    EXPECT_TRUE(d < 0 || d > s);
                }
            }
            EXPECT_TRUE(cover.withinBound);
        }
    }
}

NiceBallSystem handArcs(const Graph& g) {
    NiceBallSystem nice;
    nice.tuple = arcTuple(Rational(99, 100), {3});
    for (int c = 0; c <= 90; c += 10) {
        nice.balls.push_back(NiceBall{c, BigInt(4), 1});
    }
    return nice;
}

TEST(Doubling, ExtendPartitionArcWalkthrough) {
    Graph g = cycleGraph(100);
    NiceBallSystem nice = handArcs(g);

    ExtendTrace trace;
    Partition part = extendPartition(g, nice, Rational(1, 8), 25, &trace);

    EXPECT_EQ(trace.coverRadius, 25);
    EXPECT_EQ(trace.familyCount, 3); // net {0, 26, 52}, all mutually close
    EXPECT_TRUE(trace.sliceFallbacks.empty());
    std::vector<std::pair<int, int>> wantPsi = {
        {5, 0},  {15, 1}, {25, 2},  {35, 9},  {45, 10},
        {55, 42}, {65, 43}, {75, 6}, {85, 7},  {95, 8}};
    EXPECT_EQ(trace.psi, wantPsi);
    EXPECT_EQ(trace.psiReach, 35); // vertex 45 travels to 10

    EXPECT_EQ(part.classOf[5], 0);
    EXPECT_EQ(part.classOf[15], 0);
    EXPECT_EQ(part.classOf[25], 0);
    EXPECT_EQ(part.classOf[35], 1);
    EXPECT_EQ(part.classOf[45], 1);
    EXPECT_EQ(part.classOf[55], 4);
    EXPECT_EQ(part.classOf[65], 4);
    EXPECT_EQ(part.classOf[75], 1);
    EXPECT_EQ(part.classOf[85], 1);
    EXPECT_EQ(part.classOf[95], 1);
    EXPECT_EQ(part.epsilon, Rational(1, 2)); // class 1 is half boundary
    EXPECT_EQ(part.K, 50);                   // class 1 spans antipodes
    EXPECT_TRUE(verifyPartition(g, part).pass);
}

TEST(Doubling, ExtendPartitionCapacityFailures) {
    Graph g = cycleGraph(100);
    NiceBallSystem nice = handArcs(g);
    // one-vertex slices cannot host six uncovered vertices in one cover ball
    try {
        extendPartition(g, nice, Rational(1, 20), 25);
        FAIL() << "expected a capacity failure";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("cover ball"), std::string::npos);
    }

    // three families of slices cannot fit in a three-vertex ball
    Graph c12 = cycleGraph(12);
    NiceBallSystem small;
    small.tuple = arcTuple(Rational(99, 100), {1});
    small.balls = {{0, BigInt(1), 1}, {6, BigInt(1), 1}};
    try {
        extendPartition(c12, small, Rational(1, 2));
        FAIL() << "expected a slice failure";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("slice capacity"), std::string::npos);
    }
}

TEST(Doubling, ExtendPartitionTrivialWhenCovered) {
    Graph g = cycleGraph(30);
    NiceBallSystem nice;
    nice.tuple = arcTuple(Rational(99, 100), {15});
    nice.balls = {{0, BigInt(15), 1}};
    ExtendTrace trace;
    Partition part = extendPartition(g, nice, Rational(1, 8), std::nullopt, &trace);
    EXPECT_EQ(trace.familyCount, 0);
    EXPECT_EQ(part.epsilon, Rational(0));
    EXPECT_EQ(part.K, 15);
    EXPECT_TRUE(verifyPartition(g, part).pass);
    EXPECT_THROW(extendPartition(g, NiceBallSystem{}, Rational(1, 8)), std::invalid_argument);
}

TEST(Doubling, DeterministicAcrossRuns) {
    Graph g = cycleGraph(1200);
    GoodTuple t = arcTuple(Rational(95, 100), {300, 3});
    Labeling phi = idLabeling(g);
    NiceBallSystem a = basicAlgorithm(g, t, phi);
    NiceBallSystem b = basicAlgorithm(g, t, phi);
    EXPECT_EQ(a.balls, b.balls);
    EXPECT_EQ(a.discarded, b.discarded);
    EXPECT_EQ(a.discardedBy, b.discardedBy);
    ExtendTrace ta, tb;
    Partition pa = extendPartition(g, a, Rational(1, 100), std::nullopt, &ta);
    Partition pb = extendPartition(g, b, Rational(1, 100), std::nullopt, &tb);
    EXPECT_EQ(pa.classOf, pb.classOf);
    EXPECT_EQ(pa.epsilon, pb.epsilon);
    EXPECT_EQ(pa.K, pb.K);
    EXPECT_EQ(ta.psi, tb.psi);
    EXPECT_EQ(ta.psiReach, tb.psiReach);
}

} // namespace
} // namespace localforge
