#pragma once

#include "localforge/canonical.hpp"
#include "localforge/graph.hpp"
#include "localforge/labeling.hpp"
#include "localforge/rational.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace localforge {

// Ball-set distance 2^(-n), where n is the largest radius such that the
// deduplicated canonical ball sets of the two graphs agree at every radius
// 1..n. Returns 0 when they agree at every radius up to the larger
// per-component diameter plus one (beyond that the sets cannot change).
// Throws std::overflow_error if the first disagreement lies past radius 63,
// where the exact denominator no longer fits.
Rational naiveDistance(const Graph& g, const Graph& h);

// The deduplicated set of canonical labeled r-balls realized by one labeling.
// alphabet records the declared symbol set (sorted), not just the symbols
// that happen to appear.
struct ConfigurationSet {
    int radius = 0;
    std::vector<std::string> alphabet;
    std::vector<CanonicalBall> balls; // sorted, deduplicated

    auto operator<=>(const ConfigurationSet&) const = default;
};

ConfigurationSet configurationSet(const Graph& g, const Labeling& phi, int r);

// Every configuration set achievable by some labeling of g over the given
// alphabet, via exhaustive enumeration of all |alphabet|^n labelings.
// Sorted, deduplicated. Throws std::invalid_argument when the labeling count
// exceeds budget; feasible for tiny graphs only.
std::vector<ConfigurationSet> achievableConfigurations(const Graph& g,
                                                       const std::vector<std::string>& alphabet,
                                                       int r,
                                                       std::int64_t budget = 1 << 16);

} // namespace localforge
