#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "localforge/graph.hpp"
#include "localforge/labeling.hpp"
#include "localforge/partition.hpp"
#include "localforge/rational.hpp"
#include "localforge/subsets.hpp"

namespace localforge {

using BigInt = boost::multiprecision::cpp_int;

// Scale tuple driving the multi-scale ball construction. The scales decrease
// fast enough that each S_i dominates four copies of everything below it, and
// N is large enough that (1 - 1/(4D^3))^N < epsilon. The strong variant adds
// per-scale shift budgets R_i: every radius in the shifted window must stay
// admissible, which is what lets codes perturb radii later. Scales routinely
// exceed 64-bit range (they grow like 5^N), hence BigInt.
struct GoodTuple {
    int N = 0;
    int D = 0;
    Rational epsilon;
    Rational delta;            // zero unless strong
    std::vector<BigInt> S;     // S[0] = S_1, strictly decreasing
    std::vector<BigInt> R;     // strong variant only, parallel to S
    int marginFactor = 16;     // ball-growth margin factor: 16 basic, 20 strong

    bool strongMode() const { return !R.empty(); }
};

// Checks the structural inequalities exactly; throws invalid_argument naming
// the first violated one. Minimality of N is not required, the inequalities
// themselves are.
void validateGoodTuple(const GoodTuple& tuple);

// Minimal N with (1 - 1/(4D^3))^N < epsilon, exact integer arithmetic.
int minimalScaleCount(int D, const Rational& epsilon);

struct NiceBall {
    int center = 0;
    BigInt radius;
    int type = 0; // 1-based scale index

    bool operator==(const NiceBall& o) const {
        return center == o.center && radius == o.radius && type == o.type;
    }
};

// Output of the two construction rounds: the surviving (nice) balls plus the
// discard audit trail. discardedBy[k] is the index in `balls` of the surviving
// smaller-type ball that discarded discarded[k].
struct NiceBallSystem {
    GoodTuple tuple;
    std::vector<NiceBall> balls;
    std::vector<NiceBall> discarded;
    std::vector<int> discardedBy;
};

// Vertices within min(radius, n) of the center, sorted. Radii beyond the
// component eccentricity return the whole component.
std::vector<int> ballMembers(const Graph& g, int center, const BigInt& radius);

// Smallest radius in [S_i, 2 S_i) (type is 1-based) around the center whose
// ball clears the exact boundary-ratio threshold and, below the top scale,
// whose growth by marginFactor*N*S_{i+1} stays under 1 + epsilon/(10 D^3).
// Strong tuples additionally require the whole shifted window [r, r + R_i]
// admissible with r + R_i < 2 S_i. Throws with the witness center when no
// radius qualifies.
BigInt chooseRadius(const Graph& g, const GoodTuple& tuple, int type, int center);

// The discard round alone: processes chosen balls by ascending type, keeping
// a ball iff it misses every surviving ball of smaller type. Exposed so
// alternative system constructions can reuse the exact same discard rule.
NiceBallSystem runDiscardRound(const Graph& g, const GoodTuple& tuple,
                               const std::vector<NiceBall>& chosen);

// Bottom-up scale search against the concrete graph: S_i is the smallest
// value clearing the separation floor 4*(S_{i+1}+...+S_N) for which every
// sampled vertex admits a radius (chooseRadius semantics). Sampling keeps the
// search affordable; a vertex the sample missed can still fail later inside
// basicAlgorithm, loudly. Providing delta switches to the strong variant:
// margin factor 20, R_i derived as the smallest budgets satisfying
// 10 S_{i+1} / R_i < delta / (2N).
GoodTuple goodTupleSearch(const Graph& g, int D, const Rational& epsilon,
                          const std::optional<Rational>& delta = std::nullopt);

// Preliminary round (one maximal 8 S_i-separated system per type, label
// order, smallest admissible radius per center) followed by the discard
// round. phi must declare separation at least 2 * min(8 S_1, n).
NiceBallSystem basicAlgorithm(const Graph& g, const GoodTuple& tuple, const Labeling& phi);

struct CoverageReport {
    Rational boundaryRatio;       // |deep boundary of A| / |A|
    bool hypothesisHolds = false; // boundaryRatio < epsilon / (10 D^3)
    Rational coveredFraction;     // |union of nice balls inside A| / |A|
};

// Exact fraction of A covered by the nice balls lying entirely inside A. The
// deep-boundary smallness hypothesis (radius marginFactor*N*S_1) is evaluated
// and flagged, never enforced.
CoverageReport coverageReport(const Graph& g, const VertexSubset& a, const NiceBallSystem& nice);

struct NetCover {
    int s = 0;
    int levels = 0;
    std::vector<std::vector<int>> families; // center lists; balls are B_s(center)
    Rational doubling;                      // doublingConstant at scale 2^(levels+2) s
    BigInt familyBound;                     // ceil(doubling)^(4 (levels + 3))
    bool withinBound = false;
};

// Maximal net with pairwise center distance > s (greedy by id), split by
// greedy coloring into families whose centers are pairwise further than
// 2^(levels+2) * s apart. The s-balls of the net cover the graph; family
// balls are pairwise disjoint.
NetCover netCover(const Graph& g, int s, int levels);

struct ExtendTrace {
    int coverRadius = 0;
    int familyCount = 0;
    std::vector<std::pair<int, int>> psi; // (uncovered vertex, target), sorted
    int psiReach = 0;                     // max distance any vertex was sent
    std::vector<int> sliceFallbacks;      // ball indices whose slice interval had no integer
};

// Upgrades a near-cover to a full partition: uncovered vertices are injected
// into reserved slices of the nice balls, one slice per cover family, each
// vertex into a slice of a ball inside the same cover ball. Classes are
// ball + preimage; the emitted partition carries the exact max class
// boundary ratio as epsilon and the exact max class diameter as K. Capacity
// shortfalls (slices too small, cover ball with more uncovered vertices than
// reachable slice room) throw with a witness instead of emitting partial
// output. coverRadius defaults to twice the largest nice-ball radius plus
// one, clamped to n.
Partition extendPartition(const Graph& g, const NiceBallSystem& nice, const Rational& epsilonPrime,
                          std::optional<int> coverRadius = std::nullopt,
                          ExtendTrace* trace = nullptr);

} // namespace localforge
