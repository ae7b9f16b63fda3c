#include "localforge/canonical.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace localforge {

RootedBall ball(const Graph& g, int x, int r) {
    if (r < 0) {
        throw std::invalid_argument("negative radius");
    }
    if (x < 0 || x >= g.n()) {
        throw std::out_of_range("vertex id out of range");
    }
    auto dist = g.distancesFrom(x, r);
    std::vector<int> local(static_cast<std::size_t>(g.n()), -1);
    std::vector<int> toHost;
    // Local ids in BFS order: distance ascending, host id ascending per layer.
    for (int layer = 0; layer <= r; ++layer) {
        for (int v = 0; v < g.n(); ++v) {
            if (dist[static_cast<std::size_t>(v)] == layer) {
                local[static_cast<std::size_t>(v)] = static_cast<int>(toHost.size());
                toHost.push_back(v);
            }
        }
    }
    std::vector<std::vector<int>> adj(toHost.size());
    for (std::size_t i = 0; i < toHost.size(); ++i) {
        for (int y : g.neighbors(toHost[i])) {
            int ly = local[static_cast<std::size_t>(y)];
            if (ly >= 0) {
                adj[i].push_back(ly);
            }
        }
        std::sort(adj[i].begin(), adj[i].end());
    }
    return RootedBall{r, std::move(adj), std::move(toHost)};
}

namespace {

std::vector<int> ballDistances(const RootedBall& b) {
    std::vector<int> dist(static_cast<std::size_t>(b.size()), -1);
    std::deque<int> queue{0};
    dist[0] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : b.adj[static_cast<std::size_t>(u)]) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(v);
            }
        }
    }
    for (int d : dist) {
        if (d < 0) {
            throw std::invalid_argument("rooted ball must be connected to its root");
        }
    }
    return dist;
}

// The encoded per-position row; its sequence is what defines the canonical
// string. Branching additionally uses an isomorphism-invariant candidate
// profile to cut ties without affecting canonicity.
struct Row {
    int dist;
    int label;
    std::vector<int> earlier;

    auto operator<=>(const Row&) const = default;
};

struct CanonSearch {
    const RootedBall& b;
    const std::vector<int>& labels;
    const std::vector<int>& dist;
    std::vector<std::vector<std::array<int, 3>>> profile; // per vertex: sorted neighbor (dist,label,deg)

    std::vector<int> order;
    std::vector<int> posOf;
    std::vector<Row> rows;
    std::vector<Row> best;
    std::vector<int> bestOrder;
    bool haveBest = false;

    CanonSearch(const RootedBall& ball, const std::vector<int>& lab, const std::vector<int>& d)
        : b(ball), labels(lab), dist(d) {
        int k = b.size();
        profile.resize(static_cast<std::size_t>(k));
        for (int v = 0; v < k; ++v) {
            for (int u : b.adj[static_cast<std::size_t>(v)]) {
                profile[static_cast<std::size_t>(v)].push_back(
                    {dist[static_cast<std::size_t>(u)], labels[static_cast<std::size_t>(u)],
                     static_cast<int>(b.adj[static_cast<std::size_t>(u)].size())});
            }
            std::sort(profile[static_cast<std::size_t>(v)].begin(), profile[static_cast<std::size_t>(v)].end());
        }
        posOf.assign(static_cast<std::size_t>(k), -1);
    }

    Row rowFor(int v) const {
        Row r;
        r.dist = dist[static_cast<std::size_t>(v)];
        r.label = labels[static_cast<std::size_t>(v)];
        for (int u : b.adj[static_cast<std::size_t>(v)]) {
            int p = posOf[static_cast<std::size_t>(u)];
            if (p >= 0) {
                r.earlier.push_back(p);
            }
        }
        std::sort(r.earlier.begin(), r.earlier.end());
        return r;
    }

    void run() {
        // Root occupies position 0 by definition of rooted isomorphism.
        place(0);
        recurse();
        unplace(0);
    }

    void place(int v) {
        posOf[static_cast<std::size_t>(v)] = static_cast<int>(order.size());
        rows.push_back(rowFor(v));
        order.push_back(v);
    }

    void unplace(int v) {
        order.pop_back();
        rows.pop_back();
        posOf[static_cast<std::size_t>(v)] = -1;
    }

    void recurse() {
        const std::size_t pos = order.size();
        if (pos == static_cast<std::size_t>(b.size())) {
            if (!haveBest || rows < best) {
                best = rows;
                bestOrder = order;
                haveBest = true;
            }
            return;
        }
        // Prefix pruning against the current best.
        if (haveBest) {
            for (std::size_t i = 0; i < pos; ++i) {
                if (rows[i] != best[i]) {
                    if (rows[i] > best[i]) {
                        return;
                    }
                    break; // strictly smaller prefix: keep going
                }
            }
        }
        // Candidates achieving the minimal (row, profile) branching key.
        int k = b.size();
        std::vector<int> ties;
        Row minRow;
        const std::vector<std::array<int, 3>>* minProfile = nullptr;
        for (int v = 0; v < k; ++v) {
            if (posOf[static_cast<std::size_t>(v)] >= 0) {
                continue;
            }
            Row r = rowFor(v);
            const auto& pr = profile[static_cast<std::size_t>(v)];
            if (ties.empty() || r < minRow || (r == minRow && pr < *minProfile)) {
                ties.assign(1, v);
                minRow = std::move(r);
                minProfile = &pr;
            } else if (r == minRow && pr == *minProfile) {
                ties.push_back(v);
            }
        }
        for (int v : ties) {
            place(v);
            recurse();
            unplace(v);
        }
    }
};

std::string renderRows(const std::vector<Row>& rows, int radius, int alphabetSize) {
    std::ostringstream os;
    os << "B|r=" << radius << "|n=" << rows.size() << "|q=" << alphabetSize << "\n";
    for (const Row& r : rows) {
        os << r.dist << ":" << r.label << ":";
        for (std::size_t i = 0; i < r.earlier.size(); ++i) {
            if (i) {
                os << ",";
            }
            os << r.earlier[i];
        }
        os << "\n";
    }
    return os.str();
}

} // namespace

CanonicalBall canonicalize(const RootedBall& b, const std::vector<std::string>& labels,
                           std::vector<int>* positionToLocal) {
    if (!labels.empty() && labels.size() != static_cast<std::size_t>(b.size())) {
        throw std::invalid_argument("label vector must match ball size");
    }
    std::vector<std::string> alphabet;
    std::vector<int> labelIdx(static_cast<std::size_t>(b.size()), -1);
    if (!labels.empty()) {
        alphabet = labels;
        std::sort(alphabet.begin(), alphabet.end());
        alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
        for (std::size_t i = 0; i < labels.size(); ++i) {
            labelIdx[i] = static_cast<int>(
                std::lower_bound(alphabet.begin(), alphabet.end(), labels[i]) - alphabet.begin());
        }
    }
    auto dist = ballDistances(b);
    CanonSearch search(b, labelIdx, dist);
    search.run();
    std::string encoding = renderRows(search.best, b.radius, static_cast<int>(alphabet.size()));
    if (positionToLocal) {
        *positionToLocal = search.bestOrder;
    }
    return CanonicalBall{b.radius, std::move(alphabet), std::move(encoding)};
}

CanonicalBall canonicalBallAt(const Graph& g, int x, int r, const std::vector<std::string>& hostLabels) {
    RootedBall b = ball(g, x, r);
    std::vector<std::string> labels;
    if (!hostLabels.empty()) {
        if (hostLabels.size() != static_cast<std::size_t>(g.n())) {
            throw std::invalid_argument("host label vector must match graph size");
        }
        labels.reserve(b.toHost.size());
        for (int h : b.toHost) {
            labels.push_back(hostLabels[static_cast<std::size_t>(h)]);
        }
    }
    return canonicalize(b, labels);
}

std::string DecodedBall::labelOf(int pos) const {
    int idx = labelIndex[static_cast<std::size_t>(pos)];
    if (idx < 0) {
        throw std::logic_error("unlabeled ball has no symbol at positions");
    }
    return labelAlphabet[static_cast<std::size_t>(idx)];
}

DecodedBall decode(const CanonicalBall& cb) {
    std::istringstream is(cb.encoding);
    std::string header;
    if (!std::getline(is, header) || header.rfind("B|", 0) != 0) {
        throw std::invalid_argument("bad canonical encoding header");
    }
    DecodedBall out;
    out.radius = cb.radius;
    out.labelAlphabet = cb.labelAlphabet;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        std::size_t c1 = line.find(':');
        std::size_t c2 = line.find(':', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw std::invalid_argument("bad canonical encoding row");
        }
        out.labelIndex.push_back(std::stoi(line.substr(c1 + 1, c2 - c1 - 1)));
        std::vector<int> earlier;
        std::string rest = line.substr(c2 + 1);
        std::size_t start = 0;
        while (start < rest.size()) {
            std::size_t comma = rest.find(',', start);
            if (comma == std::string::npos) {
                comma = rest.size();
            }
            earlier.push_back(std::stoi(rest.substr(start, comma - start)));
            start = comma + 1;
        }
        int self = static_cast<int>(out.adj.size());
        out.adj.emplace_back();
        for (int e : earlier) {
            out.adj[static_cast<std::size_t>(self)].push_back(e);
            out.adj[static_cast<std::size_t>(e)].push_back(self);
        }
    }
    for (auto& nb : out.adj) {
        std::sort(nb.begin(), nb.end());
    }
    return out;
}

BallSet ballSet(const Graph& g, int r) {
    if (r < 0) {
        throw std::invalid_argument("negative radius");
    }
    BallSet out;
    for (int radius = 0; radius <= r; ++radius) {
        std::vector<CanonicalBall> balls;
        for (int x = 0; x < g.n(); ++x) {
            balls.push_back(canonicalBallAt(g, x, radius));
        }
        std::sort(balls.begin(), balls.end());
        balls.erase(std::unique(balls.begin(), balls.end()), balls.end());
        out[radius] = std::move(balls);
    }
    return out;
}

bool bruteForceRootedIso(const RootedBall& a, const std::vector<std::string>& labelsA,
                         const RootedBall& b, const std::vector<std::string>& labelsB) {
    if (a.size() > 9 || b.size() > 9) {
        throw std::invalid_argument("brute-force isomorphism limited to 9 vertices");
    }
    if (a.size() != b.size() || a.radius != b.radius) {
        return false;
    }
    const bool labeled = !labelsA.empty() || !labelsB.empty();
    if (labeled && (labelsA.size() != static_cast<std::size_t>(a.size()) ||
                    labelsB.size() != static_cast<std::size_t>(b.size()))) {
        throw std::invalid_argument("label vectors must match ball sizes");
    }
    int k = a.size();
    std::vector<int> perm(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        perm[static_cast<std::size_t>(i)] = i;
    }
    // Root must map to root; permute only positions 1..k-1.
    do {
        bool ok = true;
        if (labeled) {
            for (int i = 0; ok && i < k; ++i) {
                ok = labelsA[static_cast<std::size_t>(i)] ==
                     labelsB[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
            }
        }
        for (int i = 0; ok && i < k; ++i) {
            for (int j = i + 1; ok && j < k; ++j) {
                bool ea = std::binary_search(a.adj[static_cast<std::size_t>(i)].begin(),
                                             a.adj[static_cast<std::size_t>(i)].end(), j);
                bool eb = std::binary_search(
                    b.adj[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])].begin(),
                    b.adj[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])].end(),
                    perm[static_cast<std::size_t>(j)]);
                ok = ea == eb;
            }
        }
        if (ok) {
            return true;
        }
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return false;
}

} // namespace localforge
