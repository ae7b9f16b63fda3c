#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "localforge/doubling.hpp"
#include "localforge/graph.hpp"
#include "localforge/partition.hpp"
#include "localforge/strong_family.hpp"
#include "localforge/subsets.hpp"

namespace localforge {
namespace {

// Pairwise separation, per-system maximality, and joint coverage.
void auditSystems(const Graph& g, const std::vector<std::vector<int>>& systems, int sep,
                  int coverR) {
    ASSERT_FALSE(systems.empty());
    for (const auto& sys : systems) {
        ASSERT_FALSE(sys.empty());
        std::vector<int> nearest(static_cast<std::size_t>(g.n()), g.n() + 1);
        for (int c : sys) {
            std::vector<int> dist = g.distancesFrom(c);
            for (int v = 0; v < g.n(); ++v) {
                if (dist[static_cast<std::size_t>(v)] >= 0) {
                    nearest[static_cast<std::size_t>(v)] =
                        std::min(nearest[static_cast<std::size_t>(v)], dist[static_cast<std::size_t>(v)]);
                }
            }
            for (int other : sys) {
                if (other != c) {
                    EXPECT_GT(dist[static_cast<std::size_t>(other)], sep)
                        << "centers " << c << " and " << other << " too close";
                }
            }
        }
        for (int v = 0; v < g.n(); ++v) {
            EXPECT_LE(nearest[static_cast<std::size_t>(v)], sep)
                << "system not maximal at vertex " << v;
        }
    }
    for (int v = 0; v < g.n(); ++v) {
        bool covered = false;
        for (const auto& sys : systems) {
            for (int c : sys) {
                std::vector<int> dist = g.distancesFrom(c, coverR);
                if (dist[static_cast<std::size_t>(v)] >= 0 &&
                    dist[static_cast<std::size_t>(v)] <= coverR) {
                    covered = true;
                    break;
                }
            }
            if (covered) {
                break;
            }
        }
        EXPECT_TRUE(covered) << "vertex " << v << " not covered";
    }
}

GoodTuple twoScaleShiftTuple() {
    GoodTuple t;
    t.N = 2;
    t.D = 2;
    t.epsilon = Rational(95, 100);
    t.delta = Rational(999, 1000);
    t.S = {594, 3};
    t.R = {121, 1};
    t.marginFactor = 20;
    return t;
}

CodeFamily arcFamily(const Graph& g, int arcLen, const std::vector<int>& shifts) {
    int n = g.n();
    CodeFamily fam;
    fam.systemCounts = {1};
    int idx = 1;
    for (int s : shifts) {
        Partition p;
        p.classOf.resize(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) {
            p.classOf[static_cast<std::size_t>(x)] = ((x - s + n) % n) / arcLen;
        }
        p.epsilon = Rational(2, arcLen);
        p.K = arcLen - 1;
        FamilyMember m;
        m.code.emplace_back(1, BigInt(idx++));
        m.partition = std::move(p);
        fam.members.push_back(std::move(m));
    }
    return fam;
}

TEST(StrongFamily, CoveringSystemsPinsOnSmallCycles) {
    Graph g = cycleGraph(20);
    auto systems = coveringSystems(g, 4, 2);
    ASSERT_EQ(systems.size(), 1u);
    EXPECT_EQ(systems[0], (std::vector<int>{0, 5, 10, 15}));

    // A separation or cover radius past the diameter degenerates to one center.
    Graph h = cycleGraph(10);
    auto one = coveringSystems(h, BigInt("100000000000000000000"), BigInt("100000000000000000000"));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], std::vector<int>{0});

    EXPECT_THROW(coveringSystems(g, 0, 2), std::invalid_argument);
    EXPECT_THROW(coveringSystems(g, 4, 0), std::invalid_argument);
}

TEST(StrongFamily, CoveringSystemsAuditOnRandomGraphs) {
    for (std::uint64_t seed : {3u, 11u}) {
        Graph g = randomBoundedDegree(40, 3, seed);
        for (int sep : {2, 5}) {
            for (int coverR : {1, 3}) {
                auto systems = coveringSystems(g, sep, coverR);
                auditSystems(g, systems, sep, coverR);
                EXPECT_EQ(systems, coveringSystems(g, sep, coverR));
            }
        }
    }
    Graph c = cycleGraph(20);
    auditSystems(c, coveringSystems(c, 6, 1), 6, 1);
}

TEST(StrongFamily, CoveringSystemsRoundsOnHundredCycle) {
    // Separation 16 admits five centers per round; the cover radius 2 leaves
    // a shrinking tail, closed after ten rounds.
    Graph g = cycleGraph(100);
    auto systems = coveringSystems(g, 16, 2);
    ASSERT_EQ(systems.size(), 10u);
    EXPECT_EQ(systems[0], (std::vector<int>{0, 17, 34, 51, 68}));
    EXPECT_EQ(systems[5], (std::vector<int>{83, 0, 17, 34, 51}));
    auditSystems(g, systems, 16, 2);
}

TEST(StrongFamily, TrivialFamilyOnSearchedTuple) {
    // All scales but the last exceed the graph, so every code keeps the whole
    // cycle as its one nice ball and the partitions are all trivial.
    Graph g = cycleGraph(100);
    GoodTuple tuple = goodTupleSearch(g, 2, Rational(1, 2), Rational(1, 2));
    ASSERT_EQ(tuple.N, 22);

    CodeFamily fam = strongFamily(g, tuple, 4, 7);
    EXPECT_EQ(fam.seed, 7u);
    ASSERT_EQ(fam.systemCounts.size(), 22u);
    for (int i = 0; i < 21; ++i) {
        EXPECT_EQ(fam.systemCounts[static_cast<std::size_t>(i)], 1);
    }
    EXPECT_EQ(fam.systemCounts[21], 10);

    ASSERT_EQ(fam.members.size(), 4u);
    std::set<std::string> codes;
    for (const FamilyMember& m : fam.members) {
        ASSERT_EQ(m.code.size(), 22u);
        std::string key;
        for (int i = 0; i < 22; ++i) {
            const auto& [t, j] = m.code[static_cast<std::size_t>(i)];
            EXPECT_GE(t, 1);
            EXPECT_LE(t, fam.systemCounts[static_cast<std::size_t>(i)]);
            EXPECT_GE(j, 1);
            EXPECT_LE(j, tuple.R[static_cast<std::size_t>(i)]);
            key += std::to_string(t) + ":" + j.str() + ";";
        }
        codes.insert(key);
        EXPECT_EQ(m.partition.classCount(), 1);
        EXPECT_EQ(m.partition.K, 50);
        EXPECT_EQ(m.partition.epsilon, Rational(0));
    }
    EXPECT_EQ(codes.size(), 4u);

    StrongFamilyReport report = verifyStrongFamily(g, fam, Rational(1, 2));
    EXPECT_EQ(report.maxFraction, Rational(0));
    EXPECT_EQ(report.meanFraction, Rational(0));
    EXPECT_EQ(report.okFraction, Rational(1));
    ASSERT_EQ(report.histogram.size(), 5u);
    EXPECT_EQ(report.histogram[0], 100);

    // Same seed reproduces the family; a different seed draws other codes.
    EXPECT_EQ(fam.toJson(), strongFamily(g, tuple, 4, 7).toJson());
    EXPECT_NE(fam.toJson(), strongFamily(g, tuple, 4, 8).toJson());

    EXPECT_EQ(strongFamily(g, tuple, 1, 0).members.size(), 1u);

    GoodTuple basic = tuple;
    basic.R.clear();
    EXPECT_THROW(strongFamily(g, basic, 1, 0), std::invalid_argument);
    EXPECT_THROW(strongFamily(g, tuple, 0, 0), std::invalid_argument);
}

TEST(StrongFamily, RejectsWhenCodesRunOut) {
    // One scale, one covering system, one shift: a single distinct code.
    Graph g = cycleGraph(6);
    GoodTuple t;
    t.N = 1;
    t.D = 2;
    t.epsilon = Rational(99, 100);
    t.delta = Rational(1, 2);
    t.S = {7};
    t.R = {1};
    t.marginFactor = 20;
    validateGoodTuple(t);

    CodeFamily fam = strongFamily(g, t, 1, 0);
    ASSERT_EQ(fam.members.size(), 1u);
    EXPECT_EQ(fam.members[0].partition.classCount(), 1);
    EXPECT_THROW(strongFamily(g, t, 2, 0), std::invalid_argument);
}

TEST(StrongFamily, MixedScalesOnBigCycle) {
    Graph g = cycleGraph(1200);
    GoodTuple tuple = twoScaleShiftTuple();
    validateGoodTuple(tuple);

    // Scale 594 needs two rounds (center 0 leaves an 11-vertex shadow);
    // scale 3 with separation 24 needs six rings of 48 centers.
    auto big = coveringSystems(g, 8 * 594, 594);
    ASSERT_EQ(big.size(), 2u);
    EXPECT_EQ(big[0], std::vector<int>{0});
    EXPECT_EQ(big[1], std::vector<int>{595});
    auto small = coveringSystems(g, 24, 3);
    ASSERT_EQ(small.size(), 6u);
    for (const auto& ring : small) {
        EXPECT_EQ(ring.size(), 48u);
    }
    EXPECT_EQ(small[0][0], 0);
    EXPECT_EQ(small[0][1], 25);
    EXPECT_EQ(small[5][0], 20);

    // Replay of the all-ones code: the shifted big ball misses nine vertices
    // and exactly the small ball at 600 survives to tile the gap.
    std::vector<NiceBall> chosen;
    {
        NiceBall b;
        b.center = 0;
        b.radius = chooseRadius(g, tuple, 1, 0) + 1;
        b.type = 1;
        EXPECT_EQ(b.radius, BigInt(595));
        chosen.push_back(b);
    }
    for (int q : small[0]) {
        NiceBall b;
        b.center = q;
        b.radius = chooseRadius(g, tuple, 2, q) + 1;
        b.type = 2;
        EXPECT_EQ(b.radius, BigInt(4));
        chosen.push_back(b);
    }
    NiceBallSystem sys = runDiscardRound(g, tuple, chosen);
    ASSERT_EQ(sys.balls.size(), 2u);
    EXPECT_EQ(sys.balls[0].center, 0);
    EXPECT_EQ(sys.balls[1].center, 600);
    EXPECT_EQ(sys.discarded.size(), 47u);
    Partition replay = extendPartition(g, sys, Rational(1, 8));
    EXPECT_EQ(replay.classCount(), 2);
    EXPECT_NE(replay.classOf[600], replay.classOf[0]);
    EXPECT_EQ(std::count(replay.classOf.begin(), replay.classOf.end(), replay.classOf[600]), 9);
    EXPECT_EQ(replay.epsilon, Rational(2, 9));
    // Class diameter is measured in the ambient graph, so the big class tops
    // out at the cycle diameter.
    EXPECT_EQ(replay.K, 600);

    // Sampled family: a shift of 1 reproduces the two-class split, any larger
    // shift swallows the gap (directly or through the uncovered map).
    CodeFamily fam = strongFamily(g, tuple, 8, 5);
    EXPECT_EQ(fam.systemCounts, (std::vector<int>{2, 6}));
    ASSERT_EQ(fam.members.size(), 8u);
    long long boundaryTotal = 0;
    for (const FamilyMember& m : fam.members) {
        ASSERT_EQ(m.code.size(), 2u);
        int expectClasses = m.code[0].second == 1 ? 2 : 1;
        EXPECT_EQ(m.partition.classCount(), expectClasses)
            << "shift " << m.code[0].second.str();
        EXPECT_TRUE(verifyPartition(g, m.partition).pass);
        for (int x = 0; x < g.n(); ++x) {
            for (int nb : g.neighbors(x)) {
                if (m.partition.classOf[static_cast<std::size_t>(nb)] !=
                    m.partition.classOf[static_cast<std::size_t>(x)]) {
                    ++boundaryTotal;
                    break;
                }
            }
        }
    }
    StrongFamilyReport report = verifyStrongFamily(g, fam, Rational(95, 100));
    EXPECT_EQ(report.meanFraction, Rational(boundaryTotal, 8 * 1200));
    EXPECT_EQ(report.okFraction, Rational(1));
}

TEST(StrongFamily, VerifyPinsOnHandmadeFamilies) {
    // Three copies of one two-arc partition: fractions are zero or one.
    Graph c12 = cycleGraph(12);
    CodeFamily same;
    same.systemCounts = {1};
    for (int k = 0; k < 3; ++k) {
        Partition p;
        p.classOf.assign(12, 0);
        for (int x = 6; x < 12; ++x) {
            p.classOf[static_cast<std::size_t>(x)] = 1;
        }
        p.epsilon = Rational(1, 3);
        p.K = 5;
        FamilyMember m;
        m.code.emplace_back(1, BigInt(k + 1));
        m.partition = std::move(p);
        same.members.push_back(std::move(m));
    }
    StrongFamilyReport rep = verifyStrongFamily(c12, same, Rational(1, 2));
    EXPECT_EQ(rep.maxFraction, Rational(1));
    EXPECT_EQ(rep.meanFraction, Rational(1, 3));
    EXPECT_EQ(rep.histogram, (std::vector<int>{8, 0, 0, 4}));
    EXPECT_EQ(rep.okFraction, Rational(2, 3));

    // Arcs of twenty at even shifts: each vertex is an arc endpoint in
    // exactly one of the ten partitions.
    Graph c100 = cycleGraph(100);
    CodeFamily twenties = arcFamily(c100, 20, {0, 2, 4, 6, 8, 10, 12, 14, 16, 18});
    rep = verifyStrongFamily(c100, twenties, Rational(1, 5));
    EXPECT_EQ(rep.maxFraction, Rational(1, 10));
    EXPECT_EQ(rep.meanFraction, Rational(1, 10));
    ASSERT_EQ(rep.histogram.size(), 11u);
    EXPECT_EQ(rep.histogram[1], 100);
    EXPECT_EQ(rep.okFraction, Rational(1));
    EXPECT_EQ(verifyStrongFamily(c100, twenties, Rational(1, 10)).okFraction, Rational(0));

    // Arcs of ten at every shift: exactly two endpoint hits per vertex.
    CodeFamily tens = arcFamily(c100, 10, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    rep = verifyStrongFamily(c100, tens, Rational(1, 5));
    EXPECT_EQ(rep.maxFraction, Rational(1, 5));
    EXPECT_EQ(rep.meanFraction, Rational(1, 5));
    EXPECT_EQ(rep.histogram[2], 100);
    EXPECT_EQ(rep.okFraction, Rational(0));
    EXPECT_EQ(verifyStrongFamily(c100, tens, Rational(21, 100)).okFraction, Rational(1));

    // One trivial member: no boundaries at all.
    Graph c8 = cycleGraph(8);
    CodeFamily solo;
    solo.systemCounts = {1};
    FamilyMember m;
    m.code.emplace_back(1, BigInt(1));
    m.partition.classOf.assign(8, 0);
    m.partition.epsilon = Rational(0);
    m.partition.K = 4;
    solo.members.push_back(std::move(m));
    rep = verifyStrongFamily(c8, solo, Rational(1, 100));
    EXPECT_EQ(rep.maxFraction, Rational(0));
    EXPECT_EQ(rep.histogram, (std::vector<int>{8, 0}));

    EXPECT_THROW(verifyStrongFamily(c8, CodeFamily{}, Rational(1, 2)), std::invalid_argument);
    EXPECT_THROW(verifyStrongFamily(cycleGraph(10), solo, Rational(1, 2)), std::invalid_argument);
}

TEST(StrongFamily, TreeFamilyOnPathPins) {
    Graph path = pathGraph(12);
    CodeFamily fam = fractionalTreeFamily(path, 0, 4);
    ASSERT_EQ(fam.members.size(), 4u);
    EXPECT_EQ(fam.systemCounts, std::vector<int>{1});

    std::vector<std::vector<int>> expect = {
        {0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2},
        {0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 3},
        {0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3},
        {0, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3},
    };
    for (int i = 0; i < 4; ++i) {
        const FamilyMember& m = fam.members[static_cast<std::size_t>(i)];
        ASSERT_EQ(m.code.size(), 1u);
        EXPECT_EQ(m.code[0].first, 1);
        EXPECT_EQ(m.code[0].second, BigInt(i + 1));
        EXPECT_EQ(m.partition.classOf, expect[static_cast<std::size_t>(i)]);
        EXPECT_TRUE(verifyPartition(path, m.partition).pass);
    }
    EXPECT_EQ(fam.members[0].partition.epsilon, Rational(1, 2));
    EXPECT_EQ(fam.members[0].partition.K, 3);

    StrongFamilyReport rep = verifyStrongFamily(path, fam, Rational(1, 2));
    EXPECT_EQ(rep.maxFraction, Rational(1, 2));
    EXPECT_EQ(rep.meanFraction, Rational(11, 24));
    EXPECT_EQ(rep.histogram, (std::vector<int>{0, 2, 10, 0, 0}));
    EXPECT_EQ(rep.okFraction, Rational(1, 6));
}

TEST(StrongFamily, TreeFamilyOnTruncatedTree) {
    Graph tree = regularTreeTruncation(3, 8);
    CodeFamily fam = fractionalTreeFamily(tree, 0, 8);
    ASSERT_EQ(fam.members.size(), 8u);

    std::vector<int> depth = tree.distancesFrom(0);
    for (int i = 1; i <= 8; ++i) {
        const Partition& p = fam.members[static_cast<std::size_t>(i - 1)].partition;
        EXPECT_TRUE(verifyPartition(tree, p).pass);
        EXPECT_LE(p.K, 14);
        for (int x = 0; x < tree.n(); ++x) {
            bool boundary = false;
            for (int nb : tree.neighbors(x)) {
                if (p.classOf[static_cast<std::size_t>(nb)] != p.classOf[static_cast<std::size_t>(x)]) {
                    boundary = true;
                    break;
                }
            }
            if (boundary) {
                int residue = (depth[static_cast<std::size_t>(x)] + i - 1) % 8;
                EXPECT_TRUE(residue == 0 || residue == 7)
                    << "member " << i << " vertex " << x;
            }
        }
    }

    // With l = 8 > 2 / (1/3) every vertex stays under a third of the members.
    StrongFamilyReport rep = verifyStrongFamily(tree, fam, Rational(1, 3));
    EXPECT_EQ(rep.maxFraction, Rational(1, 4));
    EXPECT_EQ(rep.okFraction, Rational(1));
}

TEST(StrongFamily, TreeFamilyRejectsBadInput) {
    EXPECT_THROW(fractionalTreeFamily(cycleGraph(6), 0, 4), std::invalid_argument);
    Graph forest = Graph::fromEdges(4, 2, {{0, 1}, {2, 3}});
    EXPECT_THROW(fractionalTreeFamily(forest, 0, 4), std::invalid_argument);
    Graph path = pathGraph(6);
    EXPECT_THROW(fractionalTreeFamily(path, 0, 2), std::invalid_argument);
    EXPECT_THROW(fractionalTreeFamily(path, -1, 4), std::invalid_argument);
    EXPECT_THROW(fractionalTreeFamily(path, 6, 4), std::invalid_argument);

    CodeFamily single = fractionalTreeFamily(pathGraph(1), 0, 3);
    ASSERT_EQ(single.members.size(), 3u);
    for (const FamilyMember& m : single.members) {
        EXPECT_EQ(m.partition.classCount(), 1);
    }
}

TEST(StrongFamily, JsonRoundTrip) {
    Graph g = cycleGraph(100);
    GoodTuple tuple = goodTupleSearch(g, 2, Rational(1, 2), Rational(1, 2));
    CodeFamily fam = strongFamily(g, tuple, 2, 3);
    CodeFamily back = CodeFamily::fromJson(fam.toJson());
    EXPECT_EQ(back.seed, fam.seed);
    EXPECT_EQ(back.systemCounts, fam.systemCounts);
    ASSERT_EQ(back.members.size(), fam.members.size());
    for (std::size_t k = 0; k < fam.members.size(); ++k) {
        EXPECT_EQ(back.members[k].code, fam.members[k].code);
        EXPECT_EQ(back.members[k].partition.classOf, fam.members[k].partition.classOf);
        EXPECT_EQ(back.members[k].partition.epsilon, fam.members[k].partition.epsilon);
        EXPECT_EQ(back.members[k].partition.K, fam.members[k].partition.K);
    }
    EXPECT_EQ(back.toJson(), fam.toJson());

    CodeFamily treeFam = fractionalTreeFamily(pathGraph(9), 0, 3);
    EXPECT_EQ(CodeFamily::fromJson(treeFam.toJson()).toJson(), treeFam.toJson());
}

} // namespace
} // namespace localforge
