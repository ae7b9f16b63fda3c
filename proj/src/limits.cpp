#include "localforge/limits.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace localforge {

namespace {

// Largest eccentricity over all vertices; per-component because unreachable
// vertices report distance -1.
int maxComponentDiameter(const Graph& g) {
    int best = 0;
    for (int x = 0; x < g.n(); ++x) {
        best = std::max(best, g.eccentricity(x));
    }
    return best;
}

void checkAlphabet(const std::vector<std::string>& alphabet) {
    if (alphabet.empty()) {
        throw std::invalid_argument("alphabet must be nonempty");
    }
    std::vector<std::string> sorted = alphabet;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("alphabet symbols must be distinct");
    }
}

} // namespace

Rational naiveDistance(const Graph& g, const Graph& h) {
    // Ball sets are stable once the radius exceeds every component diameter,
    // so agreement through maxScan means agreement at every radius.
    int maxScan = std::max(maxComponentDiameter(g), maxComponentDiameter(h)) + 1;
    constexpr int kExactLimit = 63; // 2^63 overflows the rational denominator
    int scan = std::min(maxScan, kExactLimit);
    BallSet bg = ballSet(g, scan);
    BallSet bh = ballSet(h, scan);
    for (int r = 1; r <= scan; ++r) {
        if (bg[r] != bh[r]) {
            return Rational(1, std::int64_t(1) << (r - 1));
        }
    }
    if (maxScan > kExactLimit) {
        throw std::overflow_error("ball sets agree past radius 63; exact distance underflows");
    }
    return Rational(0);
}

ConfigurationSet configurationSet(const Graph& g, const Labeling& phi, int r) {
    if (static_cast<int>(phi.values.size()) != g.n()) {
        throw std::invalid_argument("labeling size must match graph");
    }
    if (r < 0) {
        throw std::invalid_argument("negative radius");
    }
    checkAlphabet(phi.alphabet);
    std::vector<std::string> symbols = phi.symbols();
    std::set<CanonicalBall> seen;
    for (int x = 0; x < g.n(); ++x) {
        seen.insert(canonicalBallAt(g, x, r, symbols));
    }
    ConfigurationSet out;
    out.radius = r;
    out.alphabet = phi.alphabet;
    std::sort(out.alphabet.begin(), out.alphabet.end());
    out.balls.assign(seen.begin(), seen.end());
    return out;
}

std::vector<ConfigurationSet> achievableConfigurations(const Graph& g,
                                                       const std::vector<std::string>& alphabet,
                                                       int r,
                                                       std::int64_t budget) {
    checkAlphabet(alphabet);
    if (r < 0) {
        throw std::invalid_argument("negative radius");
    }
    if (budget < 1) {
        throw std::invalid_argument("budget must be positive");
    }
    std::int64_t q = static_cast<std::int64_t>(alphabet.size());
    std::int64_t total = 1;
    for (int i = 0; i < g.n(); ++i) {
        if (total > budget / q) {
            throw std::invalid_argument("labeling enumeration exceeds budget");
        }
        total *= q;
    }

    std::vector<std::string> sortedAlphabet = alphabet;
    std::sort(sortedAlphabet.begin(), sortedAlphabet.end());

    // Ball structure is labeling-independent; cache it per root.
    std::vector<RootedBall> cache;
    cache.reserve(static_cast<std::size_t>(g.n()));
    for (int x = 0; x < g.n(); ++x) {
        cache.push_back(ball(g, x, r));
    }

    std::set<ConfigurationSet> found;
    std::vector<int> values(static_cast<std::size_t>(g.n()), 0);
    std::vector<std::string> localLabels;
    for (std::int64_t iter = 0; iter < total; ++iter) {
        std::set<CanonicalBall> seen;
        for (const RootedBall& b : cache) {
            localLabels.resize(static_cast<std::size_t>(b.size()));
            for (int i = 0; i < b.size(); ++i) {
                localLabels[static_cast<std::size_t>(i)] =
                    alphabet[static_cast<std::size_t>(
                        values[static_cast<std::size_t>(b.toHost[static_cast<std::size_t>(i)])])];
            }
            seen.insert(canonicalize(b, localLabels));
        }
        ConfigurationSet conf;
        conf.radius = r;
        conf.alphabet = sortedAlphabet;
        conf.balls.assign(seen.begin(), seen.end());
        found.insert(std::move(conf));

        for (int pos = 0; pos < g.n(); ++pos) {
            auto& digit = values[static_cast<std::size_t>(pos)];
            if (++digit < static_cast<int>(q)) {
                break;
            }
            digit = 0;
        }
    }
    return {found.begin(), found.end()};
}

} // namespace localforge
