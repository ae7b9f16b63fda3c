#include "localforge/labeling.hpp"

#include <gtest/gtest.h>

using namespace localforge;

TEST(Labeling, FromSymbolsAndAccessors) {
    Graph g = pathGraph(3);
    Labeling phi = Labeling::fromSymbols({"a", "b"}, {"a", "b", "a"}, 1);
    EXPECT_EQ(phi.symbol(0), "a");
    EXPECT_EQ(phi.symbol(1), "b");
    EXPECT_EQ(phi.symbols(), (std::vector<std::string>{"a", "b", "a"}));
    EXPECT_EQ(phi.indexOf("b"), 1);
    EXPECT_EQ(phi.indexOf("zz"), -1);
    EXPECT_THROW(Labeling::fromSymbols({"a"}, {"a", "b"}), std::invalid_argument);
    EXPECT_TRUE(checkSeparation(g, phi, 1));
    EXPECT_FALSE(checkSeparation(g, phi, 2));
    auto viol = separationViolation(g, phi, 2);
    ASSERT_TRUE(viol.has_value());
    EXPECT_EQ(*viol, std::make_pair(0, 2));
}

TEST(Labeling, GreedySeparatingOnCycle) {
    Graph g = cycleGraph(4);
    Labeling phi = greedySeparatingLabeling(g, 1);
    EXPECT_TRUE(checkSeparation(g, phi, 1));
    EXPECT_LE(phi.alphabetSize(), 3);
    ASSERT_TRUE(phi.separation.has_value());
    EXPECT_EQ(*phi.separation, 1);
}

TEST(Labeling, GreedySeparationAtLargeRadiusAllDistinct) {
    Graph g = cycleGraph(7);
    Labeling phi = greedySeparatingLabeling(g, g.diameter());
    EXPECT_EQ(phi.alphabetSize(), 7);
    for (int x = 0; x < 7; ++x) {
        for (int y = x + 1; y < 7; ++y) {
            EXPECT_NE(phi.values[static_cast<std::size_t>(x)], phi.values[static_cast<std::size_t>(y)]);
        }
    }
}

TEST(Labeling, GreedyAlphabetWithinBallBound) {
    for (std::uint64_t seed : {0ull, 1ull, 2ull}) {
        Graph g = randomBoundedDegree(60, 4, seed);
        for (int k : {1, 2, 3}) {
            Labeling phi = greedySeparatingLabeling(g, k);
            EXPECT_TRUE(checkSeparation(g, phi, k));
            int maxBall = 0;
            for (int x = 0; x < g.n(); ++x) {
                maxBall = std::max(maxBall, static_cast<int>(g.ballVertices(x, k).size()));
            }
            EXPECT_LE(phi.alphabetSize(), maxBall);
        }
    }
}

TEST(Labeling, JsonRoundTrip) {
    Graph g = cycleGraph(5);
    Labeling phi = greedySeparatingLabeling(g, 2);
    std::string text = phi.toJson();
    Labeling back = Labeling::fromJson(text);
    EXPECT_EQ(back.alphabet, phi.alphabet);
    EXPECT_EQ(back.values, phi.values);
    EXPECT_EQ(back.separation, phi.separation);
    EXPECT_EQ(back.toJson(), text);

    Labeling noSep = Labeling::fromSymbols({"x"}, {"x", "x", "x", "x", "x"});
    Labeling noSepBack = Labeling::fromJson(noSep.toJson());
    EXPECT_FALSE(noSepBack.separation.has_value());
}

TEST(Labeling, JsonRejectsUnknownSymbol) {
    EXPECT_THROW(Labeling::fromJson(R"({"alphabet":["a"],"values":["b"],"separation":null})"),
                 std::invalid_argument);
    EXPECT_THROW(Labeling::fromJson("{"), std::invalid_argument);
}
