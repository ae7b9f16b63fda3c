#include "localforge/doubling.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "localforge/oracle.hpp"

namespace localforge {

namespace {

using I128 = __int128;

void requireUnitInterval(const Rational& x, const char* what) {
    if (!(Rational(0) < x && x < Rational(1))) {
        throw std::invalid_argument(std::string(what) + " must lie strictly between 0 and 1");
    }
}

// Radial profile of one BFS: sizeAt[t] = |B_t(center)|, bndAt[t] = |boundary
// of B_t(center)|, both saturating at the center's component. Arrays run to
// 2n+1 so shifted-window lookups never need bounds logic.
struct BallProfile {
    std::vector<std::int64_t> sizeAt;
    std::vector<std::int64_t> bndAt;
};

BallProfile ballProfile(const Graph& g, int center) {
    int n = g.n();
    auto dist = g.distancesFrom(center);
    std::vector<std::int64_t> countAt(static_cast<std::size_t>(n) + 1, 0);
    std::vector<std::int64_t> bndAt(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v) {
        int dv = dist[static_cast<std::size_t>(v)];
        if (dv < 0) {
            continue;
        }
        countAt[static_cast<std::size_t>(dv)] += 1;
        // v sits on the boundary of B_dv exactly when some neighbor is one
        // level further out; BFS levels differ by at most one.
        for (int u : g.neighbors(v)) {
            if (dist[static_cast<std::size_t>(u)] == dv + 1) {
                bndAt[static_cast<std::size_t>(dv)] += 1;
                break;
            }
        }
    }
    int len = 2 * n + 2;
    BallProfile p;
    p.sizeAt.assign(static_cast<std::size_t>(len), 0);
    p.bndAt.assign(static_cast<std::size_t>(len), 0);
    std::int64_t cum = 0;
    for (int t = 0; t < len; ++t) {
        if (t <= n) {
            cum += countAt[static_cast<std::size_t>(t)];
            p.bndAt[static_cast<std::size_t>(t)] = bndAt[static_cast<std::size_t>(t)];
        }
        p.sizeAt[static_cast<std::size_t>(t)] = cum;
    }
    return p;
}

// Per-type admissibility thresholds, all exact via 128-bit cross products.
struct RadiusRule {
    std::int64_t epsNum = 0;
    std::int64_t epsDen = 1;
    I128 growDen = 1; // 10 D^3 epsDen
    I128 growNum = 1; // 10 D^3 epsDen + epsNum
    bool checkGrowth = false;
    int growthShift = 0; // marginFactor * N * S_{i+1}, clamped to array range
};

RadiusRule makeRule(const GoodTuple& tuple, int type, int arrayLen) {
    RadiusRule rule;
    rule.epsNum = tuple.epsilon.num();
    rule.epsDen = tuple.epsilon.den();
    rule.growDen = static_cast<I128>(10) * tuple.D * tuple.D * tuple.D * rule.epsDen;
    rule.growNum = rule.growDen + rule.epsNum;
    rule.checkGrowth = type < tuple.N;
    if (rule.checkGrowth) {
        BigInt shift = BigInt(tuple.marginFactor) * tuple.N * tuple.S[static_cast<std::size_t>(type)];
        rule.growthShift =
            shift >= arrayLen - 1 ? arrayLen - 1 : shift.convert_to<int>();
    }
    return rule;
}

bool radiusOk(const BallProfile& p, const RadiusRule& rule, int t) {
    int len = static_cast<int>(p.sizeAt.size());
    int ti = t >= len ? len - 1 : t;
    std::int64_t sz = p.sizeAt[static_cast<std::size_t>(ti)];
    // boundary ratio strictly below epsilon
    if (static_cast<I128>(p.bndAt[static_cast<std::size_t>(ti)]) * rule.epsDen >=
        static_cast<I128>(sz) * rule.epsNum) {
        return false;
    }
    if (rule.checkGrowth) {
        int gi = std::min(ti + rule.growthShift, len - 1);
        // growth factor strictly below 1 + epsilon / (10 D^3)
        if (static_cast<I128>(p.sizeAt[static_cast<std::size_t>(gi)]) * rule.growDen >=
            static_cast<I128>(sz) * rule.growNum) {
            return false;
        }
    }
    return true;
}

[[noreturn]] void throwNoRadius(const GoodTuple& tuple, int type, int center) {
    const BigInt& si = tuple.S[static_cast<std::size_t>(type - 1)];
    std::ostringstream msg;
    msg << "no admissible radius for type " << type << " at vertex " << center << " in ["
        << si.str() << ", " << (BigInt(2) * si).str() << ")";
    if (tuple.strongMode()) {
        msg << " with shift budget " << tuple.R[static_cast<std::size_t>(type - 1)].str();
    }
    throw std::runtime_error(msg.str());
}

// Smallest admissible base radius for the given type around one center, or
// nullopt. Strong tuples require the whole window [r, r + R_i] admissible and
// r + R_i < 2 S_i.
std::optional<BigInt> radiusFromProfile(const Graph& g, const BallProfile& p,
                                        const GoodTuple& tuple, int type, int center) {
    int n = g.n();
    const BigInt& si = tuple.S[static_cast<std::size_t>(type - 1)];
    BigInt ri = tuple.strongMode() ? tuple.R[static_cast<std::size_t>(type - 1)] : BigInt(0);
    if (si >= n) {
        // Every radius in the window reaches the whole component, so all the
        // conditions hold trivially; the window is nonempty iff S_i > R_i.
        if (tuple.strongMode() && si <= ri) {
            return std::nullopt;
        }
        return si;
    }
    int s = si.convert_to<int>();
    if (tuple.strongMode() && ri >= s) {
        return std::nullopt; // window [S_i, 2 S_i - R_i) is empty
    }
    int shift = tuple.strongMode() ? ri.convert_to<int>() : 0;
    int upper = 2 * s - shift; // exclusive
    RadiusRule rule = makeRule(tuple, type, static_cast<int>(p.sizeAt.size()));
    int hi = 2 * s - 1; // largest index any window can probe
    // nextBad[t] = smallest non-admissible t' >= t, with hi+1 as "none"
    std::vector<int> nextBad(static_cast<std::size_t>(hi) + 2, hi + 1);
    for (int t = hi; t >= s; --t) {
        nextBad[static_cast<std::size_t>(t)] =
            radiusOk(p, rule, t) ? nextBad[static_cast<std::size_t>(t) + 1] : t;
    }
    for (int r = s; r < upper; ++r) {
        if (nextBad[static_cast<std::size_t>(r)] > r + shift) {
            return BigInt(r);
        }
    }
    return std::nullopt;
}

} // namespace

int minimalScaleCount(int D, const Rational& epsilon) {
    if (D < 1) {
        throw std::invalid_argument("doubling parameter must be positive");
    }
    requireUnitInterval(epsilon, "epsilon");
    BigInt m = BigInt(4) * D * D * D;
    BigInt missPow = 1;
    BigInt fullPow = 1;
    for (int count = 1; count <= 1000000; ++count) {
        missPow *= m - 1;
        fullPow *= m;
        // (1 - 1/(4 D^3))^count < epsilon
        if (missPow * epsilon.den() < fullPow * epsilon.num()) {
            return count;
        }
    }
    throw std::runtime_error("scale count guard exceeded");
}

void validateGoodTuple(const GoodTuple& tuple) {
    if (tuple.N < 1) {
        throw std::invalid_argument("scale count must be positive");
    }
    if (tuple.D < 1 || tuple.D > 100000) {
        throw std::invalid_argument("doubling parameter out of supported range");
    }
    if (static_cast<int>(tuple.S.size()) != tuple.N) {
        throw std::invalid_argument("scale vector length does not match scale count");
    }
    requireUnitInterval(tuple.epsilon, "epsilon");
    if (tuple.marginFactor < 1) {
        throw std::invalid_argument("margin factor must be positive");
    }
    for (const BigInt& s : tuple.S) {
        if (s < 1) {
            throw std::invalid_argument("scales must be positive");
        }
    }
    // separation: S_i > 4 (S_{i+1} + ... + S_N)
    BigInt tail = 0;
    for (int i = tuple.N - 1; i >= 0; --i) {
        if (!(tuple.S[static_cast<std::size_t>(i)] > 4 * tail)) {
            std::ostringstream msg;
            msg << "scale separation violated at type " << (i + 1) << ": "
                << tuple.S[static_cast<std::size_t>(i)].str() << " <= 4 * " << tail.str();
            throw std::invalid_argument(msg.str());
        }
        tail += tuple.S[static_cast<std::size_t>(i)];
    }
    // miss probability: (1 - 1/(4 D^3))^N < epsilon
    BigInt m = BigInt(4) * tuple.D * tuple.D * tuple.D;
    BigInt mLess = m - 1;
    unsigned expN = static_cast<unsigned>(tuple.N);
    if (!(boost::multiprecision::pow(mLess, expN) * tuple.epsilon.den() <
          boost::multiprecision::pow(m, expN) * tuple.epsilon.num())) {
        throw std::invalid_argument("scale count too small for epsilon");
    }
    if (tuple.strongMode()) {
        requireUnitInterval(tuple.delta, "delta");
        if (static_cast<int>(tuple.R.size()) != tuple.N) {
            throw std::invalid_argument("shift vector length does not match scale count");
        }
        for (const BigInt& r : tuple.R) {
            if (r < 1) {
                throw std::invalid_argument("shift budgets must be positive");
            }
        }
        // 10 S_{i+1} / R_i < delta / (2N)
        for (int i = 0; i + 1 < tuple.N; ++i) {
            BigInt lhs = BigInt(20) * tuple.N * tuple.S[static_cast<std::size_t>(i) + 1] *
                         tuple.delta.den();
            if (!(lhs < tuple.delta.num() * tuple.R[static_cast<std::size_t>(i)])) {
                std::ostringstream msg;
                msg << "shift budget too small at type " << (i + 1);
                throw std::invalid_argument(msg.str());
            }
        }
    }
}

std::vector<int> ballMembers(const Graph& g, int center, const BigInt& radius) {
    if (center < 0 || center >= g.n()) {
        throw std::invalid_argument("ball center out of range");
    }
    if (radius < 0) {
        throw std::invalid_argument("ball radius must be nonnegative");
    }
    int r = radius >= g.n() ? g.n() : radius.convert_to<int>();
    return g.ballVertices(center, r);
}

BigInt chooseRadius(const Graph& g, const GoodTuple& tuple, int type, int center) {
    validateGoodTuple(tuple);
    if (type < 1 || type > tuple.N) {
        throw std::invalid_argument("type out of range");
    }
    if (center < 0 || center >= g.n()) {
        throw std::invalid_argument("center out of range");
    }
    BallProfile p = ballProfile(g, center);
    auto r = radiusFromProfile(g, p, tuple, type, center);
    if (!r) {
        throwNoRadius(tuple, type, center);
    }
    return *r;
}

NiceBallSystem runDiscardRound(const Graph& g, const GoodTuple& tuple,
                               const std::vector<NiceBall>& chosen) {
    NiceBallSystem out;
    out.tuple = tuple;
    int n = g.n();
    std::vector<std::size_t> order(chosen.size());
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return chosen[a].type < chosen[b].type;
    });
    std::vector<int> coveredBy(static_cast<std::size_t>(n), -1);
    for (std::size_t idx : order) {
        const NiceBall& ball = chosen[idx];
        if (ball.type < 1 || ball.type > tuple.N) {
            throw std::invalid_argument("ball type out of range");
        }
        auto members = ballMembers(g, ball.center, ball.radius);
        int hit = -1;
        for (int v : members) {
            if (coveredBy[static_cast<std::size_t>(v)] >= 0) {
                hit = coveredBy[static_cast<std::size_t>(v)];
                break;
            }
        }
        if (hit >= 0) {
            if (out.balls[static_cast<std::size_t>(hit)].type == ball.type) {
                std::ostringstream msg;
                msg << "balls of equal type " << ball.type << " overlap at centers "
                    << out.balls[static_cast<std::size_t>(hit)].center << " and " << ball.center;
                throw std::logic_error(msg.str());
            }
            out.discarded.push_back(ball);
            out.discardedBy.push_back(hit);
        } else {
            int slot = static_cast<int>(out.balls.size());
            out.balls.push_back(ball);
            for (int v : members) {
                coveredBy[static_cast<std::size_t>(v)] = slot;
            }
        }
    }
    return out;
}

GoodTuple goodTupleSearch(const Graph& g, int D, const Rational& epsilon,
                          const std::optional<Rational>& delta) {
    int n = g.n();
    if (n < 1) {
        throw std::invalid_argument("tuple search needs a nonempty graph");
    }
    if (D < 1 || D > 100000) {
        throw std::invalid_argument("doubling parameter out of supported range");
    }
    requireUnitInterval(epsilon, "epsilon");
    bool strong = delta.has_value();
    if (strong) {
        requireUnitInterval(*delta, "delta");
    }

    GoodTuple tuple;
    tuple.D = D;
    tuple.epsilon = epsilon;
    tuple.delta = strong ? *delta : Rational(0);
    tuple.marginFactor = strong ? 20 : 16;
    tuple.N = minimalScaleCount(D, epsilon);

    int sampleCount = std::min(n, 32);
    std::vector<int> samples;
    samples.reserve(static_cast<std::size_t>(sampleCount));
    for (int k = 0; k < sampleCount; ++k) {
        samples.push_back(static_cast<int>(static_cast<std::int64_t>(k) * n / sampleCount));
    }
    std::vector<BallProfile> profiles;
    profiles.reserve(samples.size());
    for (int q : samples) {
        profiles.push_back(ballProfile(g, q));
    }
    int len = 2 * n + 2;

    std::vector<BigInt> sRev;
    std::vector<BigInt> rRev;
    BigInt sumBelow = 0;
    for (int type = tuple.N; type >= 1; --type) {
        BigInt lb = 4 * sumBelow + 1;
        BigInt below = type < tuple.N ? sRev.back() : BigInt(0);
        BigInt shiftBudget = 1;
        if (strong && type < tuple.N) {
            // smallest R with 10 S_{i+1} / R < delta / (2N)
            shiftBudget = (BigInt(20) * tuple.N * below * delta->den()) / delta->num() + 1;
        }
        BigInt chosenS;
        if (lb >= n || (strong && shiftBudget >= n)) {
            // Balls at this scale swallow whole components, so every radius
            // in the window works for every vertex; only the window
            // constraints S_i >= lb and S_i > R_i bind.
            chosenS = lb;
            if (strong && chosenS <= shiftBudget) {
                chosenS = shiftBudget + 1;
            }
        } else {
            // Per sample: smallest admissible radius >= r for every r, used
            // to test candidate scales in one comparison each.
            RadiusRule rule;
            rule.epsNum = epsilon.num();
            rule.epsDen = epsilon.den();
            rule.growDen = static_cast<I128>(10) * D * D * D * rule.epsDen;
            rule.growNum = rule.growDen + rule.epsNum;
            rule.checkGrowth = type < tuple.N;
            if (rule.checkGrowth) {
                BigInt shiftLen = BigInt(tuple.marginFactor) * tuple.N * below;
                rule.growthShift =
                    shiftLen >= len - 1 ? len - 1 : shiftLen.convert_to<int>();
            }
            int shift = strong ? shiftBudget.convert_to<int>() : 0;
            int lbInt = lb.convert_to<int>();
            int start = std::max(lbInt, shift + 1);
            std::vector<std::vector<int>> goodFrom(profiles.size());
            for (std::size_t pi = 0; pi < profiles.size(); ++pi) {
                const BallProfile& p = profiles[pi];
                std::vector<int>& gf = goodFrom[pi];
                gf.assign(static_cast<std::size_t>(len) + 1, len);
                std::vector<int> nextBad(static_cast<std::size_t>(len) + 1, len);
                for (int t = len - 1; t >= start; --t) {
                    nextBad[static_cast<std::size_t>(t)] =
                        radiusOk(p, rule, t) ? nextBad[static_cast<std::size_t>(t) + 1] : t;
                }
                for (int r = len - 1; r >= start; --r) {
                    bool admissible = r + shift < len && nextBad[static_cast<std::size_t>(r)] > r + shift;
                    gf[static_cast<std::size_t>(r)] =
                        admissible ? r : gf[static_cast<std::size_t>(r) + 1];
                }
            }
            int found = -1;
            for (int s = start; s <= n; ++s) {
                bool all = true;
                for (const auto& gf : goodFrom) {
                    if (gf[static_cast<std::size_t>(s)] >= 2 * s - shift) {
                        all = false;
                        break;
                    }
                }
                if (all) {
                    found = s;
                    break;
                }
            }
            if (found < 0) {
                // A full-component radius is always admissible at s = n, so
                // this indicates a logic fault, not a bad input.
                throw std::logic_error("scale search failed to terminate");
            }
            chosenS = found;
        }
        sRev.push_back(chosenS);
        rRev.push_back(shiftBudget);
        sumBelow += chosenS;
    }
    tuple.S.assign(sRev.rbegin(), sRev.rend());
    if (strong) {
        tuple.R.assign(rRev.rbegin(), rRev.rend());
    }
    validateGoodTuple(tuple);
    return tuple;
}

NiceBallSystem basicAlgorithm(const Graph& g, const GoodTuple& tuple, const Labeling& phi) {
    validateGoodTuple(tuple);
    NiceBallSystem empty;
    empty.tuple = tuple;
    int n = g.n();
    if (n == 0) {
        return empty;
    }
    std::map<int, std::vector<int>> systems; // keyed by clamped 8 S_i
    std::unordered_map<int, BallProfile> profiles;
    std::vector<NiceBall> chosen;
    for (int type = 1; type <= tuple.N; ++type) {
        BigInt span = 8 * tuple.S[static_cast<std::size_t>(type - 1)];
        int rsys = span >= n ? n : span.convert_to<int>();
        auto sysIt = systems.find(rsys);
        if (sysIt == systems.end()) {
            sysIt = systems.emplace(rsys, maximalSeparatedSystem(g, phi, rsys).members).first;
        }
        for (int center : sysIt->second) {
            auto profIt = profiles.find(center);
            if (profIt == profiles.end()) {
                profIt = profiles.emplace(center, ballProfile(g, center)).first;
            }
            auto radius = radiusFromProfile(g, profIt->second, tuple, type, center);
            if (!radius) {
                throwNoRadius(tuple, type, center);
            }
            chosen.push_back(NiceBall{center, *radius, type});
        }
    }
    return runDiscardRound(g, tuple, chosen);
}

CoverageReport coverageReport(const Graph& g, const VertexSubset& a, const NiceBallSystem& nice) {
    if (a.members.empty()) {
        throw std::invalid_argument("coverage of an empty subset");
    }
    const GoodTuple& tuple = nice.tuple;
    validateGoodTuple(tuple);
    int n = g.n();
    BigInt depth = BigInt(tuple.marginFactor) * tuple.N * tuple.S.front();
    int k = depth >= n ? n : depth.convert_to<int>();
    Boundaries b = boundaries(g, a, k);
    CoverageReport rep;
    std::int64_t deep = b.kInner.size();
    std::int64_t total = a.size();
    rep.boundaryRatio = Rational(deep, total);
    // |deep boundary| / |A| < epsilon / (10 D^3), exact
    I128 lhs = static_cast<I128>(deep) * 10 * tuple.D * tuple.D * tuple.D * tuple.epsilon.den();
    I128 rhs = static_cast<I128>(tuple.epsilon.num()) * total;
    rep.hypothesisHolds = lhs < rhs;
    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    for (const NiceBall& ball : nice.balls) {
        auto members = ballMembers(g, ball.center, ball.radius);
        bool inside = true;
        for (int v : members) {
            if (!a.contains(v)) {
                inside = false;
                break;
            }
        }
        if (inside) {
            for (int v : members) {
                covered[static_cast<std::size_t>(v)] = 1;
            }
        }
    }
    std::int64_t coveredCount = 0;
    for (int v : a.members) {
        coveredCount += covered[static_cast<std::size_t>(v)];
    }
    rep.coveredFraction = Rational(coveredCount, total);
    return rep;
}

NetCover netCover(const Graph& g, int s, int levels) {
    if (s < 1) {
        throw std::invalid_argument("net scale must be positive");
    }
    if (levels < 0 || levels > 32) {
        throw std::invalid_argument("level count out of range");
    }
    NetCover out;
    out.s = s;
    out.levels = levels;
    int n = g.n();
    if (n == 0) {
        out.doubling = Rational(1);
        out.familyBound = 1;
        out.withinBound = true;
        return out;
    }
    // Greedy maximal net: pairwise center distance > s, s-balls cover.
    std::vector<char> blocked(static_cast<std::size_t>(n), 0);
    std::vector<int> net;
    for (int v = 0; v < n; ++v) {
        if (blocked[static_cast<std::size_t>(v)]) {
            continue;
        }
        net.push_back(v);
        for (int u : g.ballVertices(v, s)) {
            blocked[static_cast<std::size_t>(u)] = 1;
        }
    }
    int sep = static_cast<int>(std::min<std::int64_t>(
        static_cast<std::int64_t>(s) << (levels + 2), n));
    int netSize = static_cast<int>(net.size());
    std::vector<std::vector<int>> conflicts(static_cast<std::size_t>(netSize));
    for (int i = 0; i < netSize; ++i) {
        auto dist = g.distancesFrom(net[static_cast<std::size_t>(i)], sep);
        for (int j = 0; j < netSize; ++j) {
            if (j == i) {
                continue;
            }
            int d = dist[static_cast<std::size_t>(net[static_cast<std::size_t>(j)])];
            if (d >= 0 && d <= sep) {
                conflicts[static_cast<std::size_t>(i)].push_back(j);
            }
        }
    }
    std::vector<int> color(static_cast<std::size_t>(netSize), -1);
    int colorCount = 0;
    for (int i = 0; i < netSize; ++i) {
        std::vector<char> used(static_cast<std::size_t>(colorCount) + 1, 0);
        for (int j : conflicts[static_cast<std::size_t>(i)]) {
            int c = color[static_cast<std::size_t>(j)];
            if (c >= 0) {
                used[static_cast<std::size_t>(c)] = 1;
            }
        }
        int c = 0;
        while (used[static_cast<std::size_t>(c)]) {
            ++c;
        }
        color[static_cast<std::size_t>(i)] = c;
        colorCount = std::max(colorCount, c + 1);
    }
    out.families.assign(static_cast<std::size_t>(colorCount), {});
    for (int i = 0; i < netSize; ++i) {
        out.families[static_cast<std::size_t>(color[static_cast<std::size_t>(i)])].push_back(
            net[static_cast<std::size_t>(i)]);
    }
    out.doubling = doublingConstant(g, sep);
    std::int64_t ceilD = (out.doubling.num() + out.doubling.den() - 1) / out.doubling.den();
    out.familyBound =
        boost::multiprecision::pow(BigInt(ceilD), static_cast<unsigned>(4 * (levels + 3)));
    out.withinBound = BigInt(colorCount) <= out.familyBound;
    return out;
}

Partition extendPartition(const Graph& g, const NiceBallSystem& nice, const Rational& epsilonPrime,
                          std::optional<int> coverRadius, ExtendTrace* trace) {
    requireUnitInterval(epsilonPrime, "slice fraction");
    if (trace) {
        *trace = ExtendTrace{};
    }
    int n = g.n();
    Partition part;
    if (n == 0) {
        part.epsilon = Rational(0);
        part.K = 0;
        return part;
    }
    if (nice.balls.empty()) {
        throw std::invalid_argument("cannot extend an empty ball system");
    }
    int ballCount = static_cast<int>(nice.balls.size());
    std::vector<std::vector<int>> mem(static_cast<std::size_t>(ballCount));
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    for (int k = 0; k < ballCount; ++k) {
        mem[static_cast<std::size_t>(k)] =
            ballMembers(g, nice.balls[static_cast<std::size_t>(k)].center,
                        nice.balls[static_cast<std::size_t>(k)].radius);
        for (int v : mem[static_cast<std::size_t>(k)]) {
            if (owner[static_cast<std::size_t>(v)] >= 0) {
                throw std::logic_error("nice balls overlap");
            }
            owner[static_cast<std::size_t>(v)] = k;
        }
    }
    std::vector<int> classOf(owner);
    std::vector<int> uncovered;
    for (int v = 0; v < n; ++v) {
        if (owner[static_cast<std::size_t>(v)] < 0) {
            uncovered.push_back(v);
        }
    }

    if (!uncovered.empty()) {
        BigInt maxRadius = 0;
        for (const NiceBall& ball : nice.balls) {
            maxRadius = std::max(maxRadius, ball.radius);
        }
        BigInt defRadius = 2 * maxRadius + 1;
        int coverR =
            coverRadius.value_or(defRadius >= n ? n : defRadius.convert_to<int>());
        if (coverR < 1) {
            throw std::invalid_argument("cover radius must be positive");
        }
        NetCover cover = netCover(g, coverR, 0);
        int familyCount = static_cast<int>(cover.families.size());
        if (trace) {
            trace->coverRadius = coverR;
            trace->familyCount = familyCount;
        }
        // One slice per family is reserved in every nice ball; the slice must
        // exceed a 2 epsilon' fraction, and all slices must fit.
        std::vector<std::int64_t> sliceSize(static_cast<std::size_t>(ballCount), 0);
        for (int k = 0; k < ballCount; ++k) {
            std::int64_t lk = static_cast<std::int64_t>(mem[static_cast<std::size_t>(k)].size());
            std::int64_t sz = static_cast<std::int64_t>(
                static_cast<I128>(2) * epsilonPrime.num() * lk / epsilonPrime.den()) + 1;
            sliceSize[static_cast<std::size_t>(k)] = sz;
            if (!(static_cast<I128>(sz) * epsilonPrime.den() <
                  static_cast<I128>(3) * epsilonPrime.num() * lk)) {
                // No integer in the open target interval; keep the smallest
                // workable size and record the fallback.
                if (trace) {
                    trace->sliceFallbacks.push_back(k);
                }
            }
            if (static_cast<I128>(familyCount) * sz > lk) {
                std::ostringstream msg;
                msg << "slice capacity exhausted: ball " << k << " holds " << lk
                    << " vertices but needs " << familyCount << " slices of " << sz;
                throw std::runtime_error(msg.str());
            }
        }
        std::vector<int> psiOf(static_cast<std::size_t>(n), -1);
        for (int f = 0; f < familyCount; ++f) {
            for (int center : cover.families[static_cast<std::size_t>(f)]) {
                auto coverBall = g.ballVertices(center, coverR);
                std::vector<int> inside;
                for (int x : uncovered) {
                    if (std::binary_search(coverBall.begin(), coverBall.end(), x)) {
                        inside.push_back(x);
                    }
                }
                if (inside.empty()) {
                    continue;
                }
                std::vector<int> targets;
                for (int k = 0; k < ballCount; ++k) {
                    const auto& members = mem[static_cast<std::size_t>(k)];
                    bool contained = true;
                    for (int v : members) {
                        if (!std::binary_search(coverBall.begin(), coverBall.end(), v)) {
                            contained = false;
                            break;
                        }
                    }
                    if (!contained) {
                        continue;
                    }
                    std::int64_t sz = sliceSize[static_cast<std::size_t>(k)];
                    auto first = members.begin() + static_cast<std::ptrdiff_t>(f * sz);
                    targets.insert(targets.end(), first, first + static_cast<std::ptrdiff_t>(sz));
                }
                std::sort(targets.begin(), targets.end());
                if (!(static_cast<std::int64_t>(inside.size()) <
                      static_cast<std::int64_t>(targets.size()))) {
                    std::ostringstream msg;
                    msg << "cover ball at " << center << " (family " << f << ") holds "
                        << inside.size() << " uncovered vertices but only " << targets.size()
                        << " slice targets";
                    throw std::runtime_error(msg.str());
                }
                std::size_t next = 0;
                for (int x : inside) {
                    if (psiOf[static_cast<std::size_t>(x)] < 0) {
                        psiOf[static_cast<std::size_t>(x)] = targets[next++];
                    }
                }
            }
        }
        int reach = 0;
        for (int x : uncovered) {
            int target = psiOf[static_cast<std::size_t>(x)];
            if (target < 0) {
                throw std::logic_error("uncovered vertex missed by every cover family");
            }
            classOf[static_cast<std::size_t>(x)] = owner[static_cast<std::size_t>(target)];
            int d = g.distancesFrom(x)[static_cast<std::size_t>(target)];
            reach = std::max(reach, d);
            if (trace) {
                trace->psi.emplace_back(x, target);
            }
        }
        if (trace) {
            trace->psiReach = reach;
        }
    }

    std::vector<std::vector<int>> classes(static_cast<std::size_t>(ballCount));
    for (int v = 0; v < n; ++v) {
        classes[static_cast<std::size_t>(classOf[static_cast<std::size_t>(v)])].push_back(v);
    }
    Rational maxIso(0);
    int maxDiam = 0;
    for (const auto& members : classes) {
        VertexSubset h = VertexSubset::of(g, members);
        maxIso = std::max(maxIso, isoperimetric(g, h));
        maxDiam = std::max(maxDiam, subsetDiameter(g, h));
    }
    part.classOf = classOf;
    part.epsilon = maxIso;
    part.K = maxDiam;
    return part;
}

} // namespace localforge
