#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "localforge/canonical.hpp"
#include "localforge/graph.hpp"
#include "localforge/partition.hpp"
#include "localforge/spectra.hpp"
#include "localforge/subsets.hpp"

namespace lf = localforge;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Cycle Laplacian eigenvalues in closed form: 2 - 2cos(2 pi k / n).
std::vector<double> cycleSpectrumFormula(int n) {
    std::vector<double> values;
    for (int k = 0; k < n; ++k) {
        values.push_back(2.0 - 2.0 * std::cos(2.0 * kPi * k / n));
    }
    std::sort(values.begin(), values.end());
    return values;
}

void expectNearVectors(const std::vector<double>& got, const std::vector<double>& want,
                       double tol) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_NEAR(got[i], want[i], tol) << "position " << i;
    }
}

lf::Partition arcPartition(int n, int arc) {
    lf::Partition p;
    for (int x = 0; x < n; ++x) {
        p.classOf.push_back(x / arc);
    }
    p.epsilon = lf::Rational(2, arc);
    p.K = arc - 1;
    return p;
}

// Fraction of vertices inside some class l-boundary.
double boundaryFraction(const lf::Graph& g, const lf::Partition& p, int l) {
    std::set<int> touched;
    for (const lf::VertexSubset& h : p.classes(g)) {
        for (int v : lf::boundaries(g, h, l).kInner.members) {
            touched.insert(v);
        }
    }
    return static_cast<double>(touched.size()) / g.n();
}

} // namespace

TEST(Spectra, LaplacianSpectrumPins) {
    lf::Graph edge = lf::Graph::fromEdges(2, 1, {{0, 1}});
    expectNearVectors(lf::laplacianSpectrum(edge), {0.0, 2.0}, 1e-9);

    lf::Graph point = lf::Graph::fromEdges(1, 2, {});
    expectNearVectors(lf::laplacianSpectrum(point), {0.0}, 1e-12);

    expectNearVectors(lf::laplacianSpectrum(lf::cycleGraph(4)), {0.0, 2.0, 2.0, 4.0}, 1e-9);
    expectNearVectors(lf::laplacianSpectrum(lf::cycleGraph(6)), cycleSpectrumFormula(6), 1e-9);
    expectNearVectors(lf::laplacianSpectrum(lf::cycleGraph(64)), cycleSpectrumFormula(64), 1e-9);

    // 3-vertex path: analytic {0, 1, 3}.
    expectNearVectors(lf::laplacianSpectrum(lf::pathGraph(3)), {0.0, 1.0, 3.0}, 1e-9);

    std::vector<double> spec = lf::laplacianSpectrum(lf::randomBoundedDegree(20, 3, 5));
    EXPECT_EQ(spec.size(), 20u);
    EXPECT_TRUE(std::is_sorted(spec.begin(), spec.end()));
    EXPECT_GE(spec.front(), 0.0);
    EXPECT_LE(spec.back(), 6.0);
}

TEST(Spectra, HausdorffPins) {
    lf::RealSet three = lf::RealSet::finite({0.0, 2.0, 4.0});
    lf::RealSet band = lf::RealSet::closedInterval(0.0, 4.0);
    EXPECT_DOUBLE_EQ(lf::hausdorff(three, three), 0.0);
    EXPECT_DOUBLE_EQ(lf::hausdorff(band, band), 0.0);
    // Midpoints 1 and 3 of the interval sit at distance 1 from {0,2,4}.
    EXPECT_DOUBLE_EQ(lf::hausdorff(three, band), 1.0);
    EXPECT_DOUBLE_EQ(lf::hausdorff(band, three), 1.0);

    EXPECT_DOUBLE_EQ(lf::hausdorff(lf::RealSet::finite({0.0, 1.0}), lf::RealSet::finite({5.0})),
                     5.0);
    EXPECT_DOUBLE_EQ(lf::hausdorff(lf::RealSet::closedInterval(0.0, 1.0),
                                   lf::RealSet::closedInterval(2.0, 6.0)),
                     5.0);
    EXPECT_DOUBLE_EQ(lf::hausdorff(band, lf::RealSet::finite({2.0})), 2.0);

    // Cycle spectra fill [0, 4]: the distance is the largest half-gap, and it
    // shrinks as the cycle grows.
    double previous = 10.0;
    for (int n : {8, 16, 32, 64}) {
        double h = lf::hausdorff(lf::RealSet::finite(lf::laplacianSpectrum(lf::cycleGraph(n))),
                                 band);
        EXPECT_LT(h, previous) << "n = " << n;
        previous = h;
    }
    // Independent oracle for C_64: max half-gap of the cosine values.
    std::vector<double> formula = cycleSpectrumFormula(64);
    double expected = 0.0;
    for (std::size_t i = 0; i + 1 < formula.size(); ++i) {
        expected = std::max(expected, (formula[i + 1] - formula[i]) / 2.0);
    }
    EXPECT_NEAR(previous, expected, 1e-9);
    EXPECT_LT(previous, 0.1);

    EXPECT_THROW(lf::RealSet::finite({}), std::invalid_argument);
    EXPECT_THROW(lf::RealSet::closedInterval(2.0, 1.0), std::invalid_argument);
}

TEST(Spectra, IndicatorPolynomialFamily) {
    auto family = lf::indicatorPolynomials(4, 2);
    ASSERT_EQ(family.size(), 16u);
    for (std::size_t i = 0; i < family.size(); ++i) {
        const lf::IndicatorPolynomial& p = family[i];
        EXPECT_EQ(p.index, static_cast<int>(i) + 1);
        EXPECT_DOUBLE_EQ(p.center, (i + 1.0) / 16.0);
        EXPECT_GT(p.degree(), 0);

        // Peak is normalized to exactly 1.
        EXPECT_NEAR(p.evaluate(p.center), 1.0, 1e-12);

        // Independent grid audit of the three conditions.
        for (int k = 0; k <= 2000; ++k) {
            double t = 4.0 * k / 2000;
            double v = p.evaluate(t);
            ASSERT_GT(v, 0.0) << "t " << t;
            ASSERT_LE(v, 1.25) << "t " << t;
            if (std::abs(t - p.center) >= 0.25) {
                ASSERT_LT(v, 0.25) << "t " << t;
            }
            if (std::abs(t - p.center) < 0.125) {
                ASSERT_GT(v, 0.75) << "t " << t;
            }
        }
    }

    // Tiny family edge case.
    EXPECT_EQ(lf::indicatorPolynomials(1, 1).size(), 2u);
    EXPECT_EQ(lf::indicatorPolynomials(2, 3).size(), 12u);

    EXPECT_THROW(lf::indicatorPolynomials(0, 2), std::invalid_argument);
    EXPECT_THROW(lf::indicatorPolynomials(4, 0), std::invalid_argument);
}

TEST(Spectra, RestrictedNormPins) {
    // One class covering everything: no boundary, no gap.
    lf::Graph c12 = lf::cycleGraph(12);
    lf::Partition whole;
    whole.classOf.assign(12, 0);
    whole.epsilon = lf::Rational(1);
    whole.K = 6;
    lf::RestrictedNormReport same = lf::restrictedNorm(c12, {whole}, {0.0, 1.0}, 2);
    EXPECT_NEAR(same.global, 4.0, 1e-9);
    EXPECT_NEAR(same.restricted, 4.0, 1e-9);
    EXPECT_NEAR(same.gap, 0.0, 1e-9);

    // C_64 in arcs of 16, P(t) = t.
    lf::Graph c64 = lf::cycleGraph(64);
    lf::Partition arcs16 = arcPartition(64, 16);
    EXPECT_DOUBLE_EQ(boundaryFraction(c64, arcs16, 1), 1.0 / 8.0);
    lf::RestrictedNormReport r1 = lf::restrictedNorm(c64, {arcs16}, {0.0, 1.0}, 1);
    EXPECT_NEAR(r1.global, 4.0, 1e-9);
    EXPECT_LT(r1.restricted, r1.global);
    EXPECT_GT(r1.gap, 0.0);
    double delta1 = boundaryFraction(c64, arcs16, 1);
    EXPECT_LE(r1.gap, 3.0 * (1.0 - std::sqrt(1.0 - std::sqrt(delta1))));

    // Interior shrinks with l, so the restricted norm cannot grow.
    lf::RestrictedNormReport r2 = lf::restrictedNorm(c64, {arcs16}, {0.0, 1.0}, 2);
    EXPECT_LE(r2.restricted, r1.restricted + 1e-12);
    EXPECT_GE(r2.gap, r1.gap - 1e-12);

    // Bounded-polynomial instance satisfying the gap lemma hypotheses:
    // P(t) = 2t - t^2/2 has max 2 on [0, 4].
    std::vector<double> bump{0.0, 2.0, -0.5};
    lf::RestrictedNormReport rb = lf::restrictedNorm(c64, {arcs16}, bump, 2);
    double delta2 = boundaryFraction(c64, arcs16, 2);
    EXPECT_DOUBLE_EQ(delta2, 0.25);
    EXPECT_NEAR(rb.global, 2.0, 1e-9);
    EXPECT_GE(rb.gap, 0.0);
    EXPECT_LE(rb.gap, 3.0 * (1.0 - std::sqrt(1.0 - std::sqrt(delta2))));

    // A member list takes the max over members.
    lf::Partition arcs8 = arcPartition(64, 8);
    lf::RestrictedNormReport rm = lf::restrictedNorm(c64, {arcs16, arcs8}, {0.0, 1.0}, 1);
    lf::RestrictedNormReport r8 = lf::restrictedNorm(c64, {arcs8}, {0.0, 1.0}, 1);
    EXPECT_NEAR(rm.restricted, std::max(r1.restricted, r8.restricted), 1e-12);

    EXPECT_THROW(lf::restrictedNorm(c64, {arcs16}, {0.0, 0.0, 0.0, 1.0}, 2),
                 std::invalid_argument);
    EXPECT_THROW(lf::restrictedNorm(c64, {}, {0.0, 1.0}, 2), std::invalid_argument);
    EXPECT_THROW(lf::restrictedNorm(c64, {arcs16}, {}, 2), std::invalid_argument);
    EXPECT_THROW(lf::restrictedNorm(c64, {arcs16}, {0.0, 1.0}, 0), std::invalid_argument);
    lf::Partition tooSmall = arcPartition(32, 8);
    EXPECT_THROW(lf::restrictedNorm(c64, {tooSmall}, {0.0, 1.0}, 1), std::invalid_argument);
}

TEST(Spectra, DistributedSpectrumEstimatePins) {
    // The estimate is a function of the ball set alone: equivalent graphs
    // produce identical output.
    lf::SpectrumEstimate e64 = lf::distributedSpectrumEstimate(lf::ballSet(lf::cycleGraph(64), 4), 1);
    lf::SpectrumEstimate e128 =
        lf::distributedSpectrumEstimate(lf::ballSet(lf::cycleGraph(128), 4), 1);
    EXPECT_EQ(e64.values, e128.values);
    EXPECT_EQ(e64.ballCount, 1);
    EXPECT_EQ(e64.radius, 4);
    EXPECT_EQ(e64.margin, 1);

    // Deeper balls tighten the Hausdorff distance to the true spectrum.
    std::vector<double> spec = lf::laplacianSpectrum(lf::cycleGraph(64));
    lf::SpectrumEstimate e8 = lf::distributedSpectrumEstimate(lf::ballSet(lf::cycleGraph(64), 8), 1);
    EXPECT_EQ(e8.radius, 8);
    for (double v : e8.values) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 4.0);
    }
    double h8 = lf::hausdorff(lf::RealSet::finite(e8.values), lf::RealSet::finite(spec));
    double h4 = lf::hausdorff(lf::RealSet::finite(e64.values), lf::RealSet::finite(spec));
    EXPECT_LE(h8, h4);

    // Single-vertex graph: only the zero eigenvalue.
    lf::Graph point = lf::Graph::fromEdges(1, 2, {});
    lf::SpectrumEstimate ep = lf::distributedSpectrumEstimate(lf::ballSet(point, 3), 1);
    EXPECT_EQ(ep.values, (std::vector<double>{0.0}));
    EXPECT_EQ(ep.ballCount, 1);

    // Margin trims the support; a larger margin keeps fewer vertices.
    lf::SpectrumEstimate wide = lf::distributedSpectrumEstimate(lf::ballSet(lf::pathGraph(30), 5), 2);
    EXPECT_EQ(wide.margin, 2);
    for (double v : wide.values) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 4.0);
    }

    EXPECT_THROW(lf::distributedSpectrumEstimate(lf::ballSet(lf::cycleGraph(8), 2), 0),
                 std::invalid_argument);
    EXPECT_THROW(lf::distributedSpectrumEstimate(lf::ballSet(lf::cycleGraph(8), 2), 2),
                 std::invalid_argument);
    EXPECT_THROW(lf::distributedSpectrumEstimate(lf::BallSet{}, 1), std::invalid_argument);
}

TEST(Spectra, ParameterTesterPins) {
    auto vertexCount = [](const lf::Graph& g) { return static_cast<double>(g.n()); };

    // Large cycles share the radius-8 signature, so C_100 resolves to the
    // first corpus representative.
    std::vector<lf::Graph> cycles{lf::cycleGraph(64), lf::cycleGraph(128)};
    lf::ParameterEstimate viaCorpus =
        lf::parameterTester(vertexCount, cycles, lf::cycleGraph(100), 8);
    EXPECT_TRUE(viaCorpus.found);
    EXPECT_EQ(viaCorpus.corpusIndex, 0);
    EXPECT_DOUBLE_EQ(viaCorpus.value, 64.0);

    // A graph whose signature is unique in the corpus gets its own value.
    std::vector<lf::Graph> mixed{lf::pathGraph(10), lf::cycleGraph(10)};
    lf::ParameterEstimate own = lf::parameterTester(vertexCount, mixed, lf::cycleGraph(10), 3);
    EXPECT_TRUE(own.found);
    EXPECT_EQ(own.corpusIndex, 1);
    EXPECT_DOUBLE_EQ(own.value, 10.0);

    // Paths cannot represent a cycle once the radius sees an endpoint ball,
    // and the tester reports that instead of guessing.
    std::vector<lf::Graph> paths{lf::pathGraph(40), lf::pathGraph(50)};
    lf::ParameterEstimate miss = lf::parameterTester(vertexCount, paths, lf::cycleGraph(30), 2);
    EXPECT_FALSE(miss.found);
    EXPECT_EQ(miss.corpusIndex, -1);
    EXPECT_FALSE(lf::parameterTester(vertexCount, paths, lf::cycleGraph(30), 1).found);
    // At radius 0 every graph looks like a single unlabeled root.
    EXPECT_TRUE(lf::parameterTester(vertexCount, paths, lf::cycleGraph(30), 0).found);

    EXPECT_THROW(lf::parameterTester(vertexCount, {}, lf::cycleGraph(4), 2),
                 std::invalid_argument);
    EXPECT_THROW(lf::parameterTester(nullptr, cycles, lf::cycleGraph(4), 2),
                 std::invalid_argument);
}
