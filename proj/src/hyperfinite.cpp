#include "localforge/hyperfinite.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace localforge {

namespace {

// Boundary ratio of a piece inside the residual graph: fraction of members
// with a residual neighbor outside the piece.
Rational residualBoundaryRatio(const Graph& g, const std::vector<char>& residual,
                               const std::vector<char>& inPiece, const std::vector<int>& piece) {
    int boundary = 0;
    for (int v : piece) {
        for (int w : g.neighbors(v)) {
            if (residual[w] && !inPiece[w]) {
                ++boundary;
                break;
            }
        }
    }
    return Rational(boundary, static_cast<std::int64_t>(piece.size()));
}

void auditPiece(const Graph& g, const std::vector<char>& residual, int center,
                const Rational& epsilon, int K, const std::vector<int>& piece) {
    if (piece.empty()) {
        throw std::logic_error("piece finder returned an empty piece");
    }
    if (static_cast<int>(piece.size()) > K) {
        throw std::logic_error("piece finder returned a piece larger than K");
    }
    for (std::size_t i = 0; i < piece.size(); ++i) {
        int v = piece[i];
        if (v < 0 || v >= g.n()) {
            throw std::logic_error("piece finder returned an out-of-range vertex");
        }
        if (i > 0 && piece[i - 1] >= v) {
            throw std::logic_error("piece finder must return a sorted duplicate-free piece");
        }
        if (!residual[v]) {
            throw std::logic_error("piece finder returned a removed vertex");
        }
    }
    if (!std::binary_search(piece.begin(), piece.end(), center)) {
        throw std::logic_error("piece finder returned a piece missing its center");
    }
    std::vector<char> inPiece(g.n(), 0);
    for (int v : piece) {
        inPiece[v] = 1;
    }
    // Connectivity of the induced subgraph on the piece.
    std::vector<int> stack{piece[0]};
    std::vector<char> seen(g.n(), 0);
    seen[piece[0]] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v)) {
            if (inPiece[w] && !seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    if (reached != static_cast<int>(piece.size())) {
        throw std::logic_error("piece finder returned a disconnected piece");
    }
    if (epsilon < residualBoundaryRatio(g, residual, inPiece, piece)) {
        throw std::logic_error("piece finder returned a piece with boundary ratio above epsilon");
    }
}

} // namespace

PieceFinder ballPieceFinder() {
    return [](const Graph& g, const std::vector<char>& residual, int center,
              const Rational& epsilon, int K) -> std::optional<std::vector<int>> {
        std::vector<char> inBall(g.n(), 0);
        std::vector<int> ball{center};
        std::vector<int> frontier{center};
        inBall[center] = 1;
        while (static_cast<int>(ball.size()) <= K) {
            if (residualBoundaryRatio(g, residual, inBall, ball) <= epsilon) {
                std::vector<int> piece = ball;
                std::sort(piece.begin(), piece.end());
                return piece;
            }
            std::vector<int> next;
            for (int v : frontier) {
                for (int w : g.neighbors(v)) {
                    if (residual[w] && !inBall[w]) {
                        inBall[w] = 1;
                        next.push_back(w);
                        ball.push_back(w);
                    }
                }
            }
            if (next.empty()) {
                // Whole residual component collected; its ratio is 0, so the
                // check above already returned. Kept as a guard.
                return std::nullopt;
            }
            frontier = std::move(next);
        }
        return std::nullopt;
    };
}

PieceFinder exhaustivePieceFinder() {
    return [](const Graph& g, const std::vector<char>& residual, int center,
              const Rational& epsilon, int K) -> std::optional<std::vector<int>> {
        if (K > 6) {
            throw std::invalid_argument("exhaustive piece finder is limited to K <= 6");
        }
        std::vector<char> inPiece(g.n(), 0);
        // Level s holds every connected residual subgraph of size s containing
        // the center, as sorted vertex lists; std::set gives lexicographic
        // order within the level.
        std::set<std::vector<int>> level{{center}};
        for (int size = 1; size <= K; ++size) {
            for (const auto& cand : level) {
                for (int v : cand) {
                    inPiece[v] = 1;
                }
                bool ok = residualBoundaryRatio(g, residual, inPiece, cand) <= epsilon;
                for (int v : cand) {
                    inPiece[v] = 0;
                }
                if (ok) {
                    return cand;
                }
            }
            if (size == K) {
                break;
            }
            std::set<std::vector<int>> next;
            for (const auto& cand : level) {
                for (int v : cand) {
                    for (int w : g.neighbors(v)) {
                        if (!residual[w] || std::binary_search(cand.begin(), cand.end(), w)) {
                            continue;
                        }
                        std::vector<int> grown = cand;
                        grown.insert(std::lower_bound(grown.begin(), grown.end(), w), w);
                        next.insert(std::move(grown));
                    }
                }
            }
            level = std::move(next);
        }
        return std::nullopt;
    };
}

StarPartition hyperfiniteOracle(const Graph& g, const Rational& epsilon, int K,
                                const PieceFinder& finder, HyperfiniteTrace* trace) {
    if (!(Rational(0) < epsilon && epsilon < Rational(1))) {
        throw std::invalid_argument("hyperfiniteOracle: epsilon must lie in (0, 1)");
    }
    if (K < 1) {
        throw std::invalid_argument("hyperfiniteOracle: K must be positive");
    }
    if (!finder) {
        throw std::invalid_argument("hyperfiniteOracle: finder is empty");
    }
    const int n = g.n();
    const int d = g.degreeBound();
    // ceil(4 d^2 K^2 / epsilon) + 1 sweeps. Any sweep beyond an empty one
    // would repeat it verbatim, so an empty sweep ends the run exactly.
    const __int128 quadratic = static_cast<__int128>(4) * d * d * K * K;
    __int128 wide = (quadratic * epsilon.den() + epsilon.num() - 1) / epsilon.num() + 1;
    const std::int64_t cap = std::numeric_limits<std::int64_t>::max();
    const std::int64_t budget = wide > cap ? cap : static_cast<std::int64_t>(wide);
    if (trace != nullptr) {
        *trace = HyperfiniteTrace{};
        trace->sweepBudget = budget;
    }

    std::vector<char> residual(n, 1);
    int residualCount = n;
    std::vector<int> classOf(n, -1);
    int pieceCount = 0;
    std::vector<int> starMembers;

    for (std::int64_t sweep = 0; sweep < budget && residualCount > 0; ++sweep) {
        // Greedy pass in vertex order; blocked = selected pieces plus their
        // residual neighbors, so accepted pieces stay pairwise >= 2 apart and
        // no further finder candidate fits (the finder only sees the residual,
        // which is fixed within a sweep).
        std::vector<char> blocked(n, 0);
        SweepRecord rec;
        for (int x = 0; x < n; ++x) {
            if (!residual[x] || blocked[x]) {
                continue;
            }
            auto cand = finder(g, residual, x, epsilon, K);
            if (!cand.has_value()) {
                continue;
            }
            auditPiece(g, residual, x, epsilon, K, *cand);
            bool clash = false;
            for (int v : *cand) {
                if (blocked[v]) {
                    clash = true;
                    break;
                }
            }
            if (clash) {
                continue;
            }
            for (int v : *cand) {
                blocked[v] = 1;
                for (int w : g.neighbors(v)) {
                    if (residual[w]) {
                        blocked[w] = 1;
                    }
                }
            }
            rec.pieces.push_back(std::move(*cand));
        }
        if (rec.pieces.empty()) {
            break;
        }
        // Remove the system: pieces become classes, their residual neighbors
        // join the star. Pieces are >= 2 apart, so neighbor sets never touch
        // another piece and removal order does not matter.
        std::vector<char> inPiece(n, 0);
        for (const auto& piece : rec.pieces) {
            for (int v : piece) {
                inPiece[v] = 1;
            }
        }
        for (const auto& piece : rec.pieces) {
            for (int v : piece) {
                for (int w : g.neighbors(v)) {
                    if (residual[w] && !inPiece[w]) {
                        residual[w] = 0;
                        --residualCount;
                        rec.starAdded.push_back(w);
                        starMembers.push_back(w);
                    }
                }
            }
        }
        for (const auto& piece : rec.pieces) {
            for (int v : piece) {
                residual[v] = 0;
                --residualCount;
                classOf[v] = pieceCount;
            }
            ++pieceCount;
        }
        std::sort(rec.starAdded.begin(), rec.starAdded.end());
        if (trace != nullptr) {
            trace->sweeps.push_back(std::move(rec));
            if (sweep + 1 == budget && residualCount > 0) {
                trace->exhaustedBudget = true;
            }
        }
    }

    for (int v = 0; v < n; ++v) {
        if (residual[v]) {
            starMembers.push_back(v);
        }
    }
    StarPartition out;
    out.partition.epsilon = epsilon;
    out.partition.K = K;
    out.partition.classOf = std::move(classOf);
    if (!starMembers.empty()) {
        out.starClass = pieceCount;
        for (int v : starMembers) {
            out.partition.classOf[v] = pieceCount;
        }
    }
    return out;
}

} // namespace localforge
