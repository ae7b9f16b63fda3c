#pragma once

#include "localforge/canonical.hpp"
#include "localforge/graph.hpp"
#include "localforge/partition.hpp"

#include <functional>
#include <string>
#include <vector>

namespace localforge {

// Sorted eigenvalues of the combinatorial Laplacian D - A via a dense
// symmetric eigensolve. Values are checked against [0, 2d] at absolute
// tolerance 1e-9 and clamped into the range; anything further out throws.
std::vector<double> laplacianSpectrum(const Graph& g);

// A nonempty compact subset of the line in one of the two supported forms:
// a finite point multiset or a closed interval.
struct RealSet {
    bool interval = false;
    std::vector<double> points; // sorted; finite form only
    double lo = 0.0;
    double hi = 0.0;

    static RealSet finite(std::vector<double> values);
    static RealSet closedInterval(double lo, double hi);
};

// Standard Hausdorff distance, exact in all four form combinations
// (finite midpoint analysis against intervals, endpoint analysis between
// intervals).
double hausdorff(const RealSet& a, const RealSet& b);

// Bump polynomial: a Chebyshev kernel on a quartic argument in (t - center),
// squared, floored by a tiny constant and normalized to peak value 1. As a
// function of t this is a polynomial of degree 8 * kernelDegree; it is
// evaluated in the stable cosh/cos closed form, never by expanding
// coefficients.
struct IndicatorPolynomial {
    int index = 0;        // 1-based position in the family
    double center = 0.0;  // index / (2dm)
    double window = 0.0;  // 1/m: far field beyond it, plateau inside half of it
    double domainMax = 0.0; // 2d
    int kernelDegree = 0;
    double floorTerm = 0.0;
    double peakGain = 0.0; // kernel value at the center plus floor

    double evaluate(double t) const;
    int degree() const { return 8 * kernelDegree; }
};

// The 2dm bumps centered at i/(2dm), i = 1..2dm, each certified on a uniform
// grid over [0, 2d] against the three kernel conditions:
//   (1) 0 < P(t) <= 1 + 1/m everywhere,
//   (2) P(t) < 1/m once |t - center| >= 1/m,
//   (3) P(t) > 1 - 1/m while |t - center| < 1/(2m).
// Throws std::runtime_error naming the violated condition and location if
// certification fails.
std::vector<IndicatorPolynomial> indicatorPolynomials(int m, int d, int gridPoints = 10000);

struct RestrictedNormReport {
    double global = 0.0;     // ||P(L)||
    double restricted = 0.0; // max over classes of ||P(L) f|| / ||f||, f on the interior
    double gap = 0.0;        // global - restricted, always >= 0
};

// Restricted polynomial spectral norm over a list of partitions. The
// restricted norm takes functions supported on a class interior H minus its
// l-boundary but measures the image over the whole space, so each class
// contributes the square root of the top eigenvalue of the [I x I] block of
// P(L)^2. Polynomial given by coefficients c0 + c1 t + ...; requires
// deg(P) <= l.
RestrictedNormReport restrictedNorm(const Graph& g, const std::vector<Partition>& members,
                                    const std::vector<double>& coeffs, int l);

struct SpectrumEstimate {
    std::vector<double> values; // sorted, deduplicated at 1e-9
    int radius = 0;             // s: the ball radius the estimate was read from
    int margin = 0;             // t: trimmed so the compression is exact
    int ballCount = 0;          // radius-s balls contributing
};

// Inner spectrum approximation from a ball set alone: for every canonical
// ball of the top radius s, eigensolve the ball Laplacian compressed to
// vertices within s - margin of the root. Such vertices keep their host
// degree in any graph realizing the ball, so the compression agrees with
// every host. Requires s > margin >= 1.
SpectrumEstimate distributedSpectrumEstimate(const BallSet& balls, int margin);

struct ParameterEstimate {
    bool found = false;  // false means: no representative in the corpus
    double value = 0.0;
    int corpusIndex = -1;
};

// Parameter lookup by local signature: if some corpus graph has exactly the
// ball set of g at the given radius, report that graph's parameter value;
// otherwise report no representative rather than guessing.
ParameterEstimate parameterTester(const std::function<double(const Graph&)>& parameter,
                                  const std::vector<Graph>& corpus, const Graph& g,
                                  int radius);

} // namespace localforge
