#include "localforge/oracle.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "localforge/threads.hpp"

namespace localforge {

namespace {

constexpr char kProductSep = '\x1f';

std::vector<std::string> sortedCopy(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

void requireSameAlphabet(const std::vector<std::string>& a, const std::vector<std::string>& b,
                         const char* what) {
    if (sortedCopy(a) != sortedCopy(b)) {
        throw std::invalid_argument(std::string("alphabet mismatch: ") + what);
    }
}

void requireSeparationContract(const Graph& g, const Labeling& phi, int needed) {
    if (needed <= 0) {
        return;
    }
    if (!phi.separation || *phi.separation < needed) {
        throw std::invalid_argument("input labeling does not declare the required separation");
    }
    if (auto bad = separationViolation(g, phi, needed)) {
        throw std::invalid_argument("declared separation is violated between vertices " +
                                    std::to_string(bad->first) + " and " +
                                    std::to_string(bad->second));
    }
}

std::vector<int> decodedDistances(const DecodedBall& db, int from) {
    std::vector<int> dist(static_cast<std::size_t>(db.size()), -1);
    std::deque<int> queue{from};
    dist[static_cast<std::size_t>(from)] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : db.adj[static_cast<std::size_t>(u)]) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

// Evaluates `spec` at position p of a decoded ball carrying `symbols`. Valid
// whenever dist(root, p) + spec.radius stays within the decoded radius, so
// the extracted sub-ball coincides with the true ball around p.
std::string evaluateAt(const DecodedBall& db, const std::vector<std::string>& symbols, int p,
                       const OracleSpec& spec) {
    std::vector<int> local(static_cast<std::size_t>(db.size()), -1);
    std::vector<int> toOuter{p};
    local[static_cast<std::size_t>(p)] = 0;
    std::vector<int> depth{0};
    for (std::size_t head = 0; head < toOuter.size(); ++head) {
        int u = toOuter[head];
        if (depth[head] == spec.radius) {
            continue;
        }
        for (int v : db.adj[static_cast<std::size_t>(u)]) {
            if (local[static_cast<std::size_t>(v)] < 0) {
                local[static_cast<std::size_t>(v)] = static_cast<int>(toOuter.size());
                toOuter.push_back(v);
                depth.push_back(depth[head] + 1);
            }
        }
    }
    RootedBall sub;
    sub.radius = spec.radius;
    sub.adj.resize(toOuter.size());
    sub.toHost = toOuter;
    std::vector<std::string> subLabels;
    subLabels.reserve(toOuter.size());
    for (std::size_t i = 0; i < toOuter.size(); ++i) {
        for (int v : db.adj[static_cast<std::size_t>(toOuter[i])]) {
            int lv = local[static_cast<std::size_t>(v)];
            if (lv >= 0) {
                sub.adj[i].push_back(lv);
            }
        }
        std::sort(sub.adj[i].begin(), sub.adj[i].end());
        subLabels.push_back(symbols[static_cast<std::size_t>(toOuter[i])]);
    }
    return spec.rule(canonicalize(sub, subLabels));
}

std::vector<std::string> decodedSymbols(const DecodedBall& db) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(db.size()));
    for (int i = 0; i < db.size(); ++i) {
        out.push_back(db.labelOf(i));
    }
    return out;
}

} // namespace

OracleSpec identityOracle(const std::vector<std::string>& alphabet) {
    OracleSpec spec;
    spec.radius = 0;
    spec.separation = 0;
    spec.inputAlphabet = alphabet;
    spec.outputAlphabet = alphabet;
    spec.rule = [](const CanonicalBall& cb) { return decode(cb).labelOf(0); };
    return spec;
}

Labeling applyOracle(const Graph& g, const Labeling& phi, const OracleSpec& oracle, int threads,
                     RoundTrace* trace) {
    if (phi.values.size() != static_cast<std::size_t>(g.n())) {
        throw std::invalid_argument("labeling size must match graph size");
    }
    requireSameAlphabet(phi.alphabet, oracle.inputAlphabet, "oracle input");
    requireSeparationContract(g, phi, oracle.separation);
    if (!oracle.stages.empty()) {
        Labeling current = phi;
        for (const OracleSpec& stage : oracle.stages) {
            current = applyOracle(g, current, stage, threads, trace);
        }
        requireSameAlphabet(current.alphabet, oracle.outputAlphabet, "staged oracle output");
        return current;
    }
    if (!oracle.rule) {
        throw std::invalid_argument("oracle has no rule");
    }
    auto symbols = phi.symbols();
    std::vector<int> values(static_cast<std::size_t>(g.n()), -1);
    Labeling out;
    out.alphabet = oracle.outputAlphabet;
    parallelFor(g.n(), threads, [&](int x) {
        std::string symbol = oracle.rule(canonicalBallAt(g, x, oracle.radius, symbols));
        int idx = out.indexOf(symbol);
        if (idx < 0) {
            throw std::logic_error("oracle rule produced a symbol outside its output alphabet: " +
                                   symbol);
        }
        values[static_cast<std::size_t>(x)] = idx;
    });
    out.values = std::move(values);
    if (trace) {
        trace->rounds.push_back(out);
    }
    return out;
}

OracleSpec compose(const OracleSpec& first, const OracleSpec& second) {
    requireSameAlphabet(first.outputAlphabet, second.inputAlphabet, "composition interface");
    if (second.separation > 0) {
        throw std::invalid_argument(
            "second stage reads an oracle output, which carries no separation guarantee");
    }
    OracleSpec out;
    out.radius = first.radius + second.radius;
    out.separation = first.separation;
    out.inputAlphabet = first.inputAlphabet;
    out.outputAlphabet = second.outputAlphabet;
    auto appendLeaves = [&out](const OracleSpec& spec, auto&& self) -> void {
        if (spec.stages.empty()) {
            out.stages.push_back(spec);
        } else {
            for (const OracleSpec& s : spec.stages) {
                self(s, self);
            }
        }
    };
    appendLeaves(first, appendLeaves);
    appendLeaves(second, appendLeaves);
    OracleSpec firstCopy = first;
    OracleSpec secondCopy = second;
    out.rule = [firstCopy, secondCopy](const CanonicalBall& cb) {
        DecodedBall db = decode(cb);
        auto symbols = decodedSymbols(db);
        auto dist = decodedDistances(db, 0);
        std::vector<std::string> mid(symbols.size());
        for (int p = 0; p < db.size(); ++p) {
            if (dist[static_cast<std::size_t>(p)] >= 0 &&
                dist[static_cast<std::size_t>(p)] <= secondCopy.radius) {
                mid[static_cast<std::size_t>(p)] = evaluateAt(db, symbols, p, firstCopy);
            }
        }
        return evaluateAt(db, mid, 0, secondCopy);
    };
    return out;
}

std::string productSymbol(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) {
            out.push_back(kProductSep);
        }
        out += parts[i];
    }
    return out;
}

std::vector<std::string> splitProductSymbol(const std::string& symbol, int arity) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t sep = symbol.find(kProductSep, start);
        if (sep == std::string::npos) {
            parts.push_back(symbol.substr(start));
            break;
        }
        parts.push_back(symbol.substr(start, sep - start));
        start = sep + 1;
    }
    if (static_cast<int>(parts.size()) != arity) {
        throw std::invalid_argument("product symbol has wrong arity");
    }
    return parts;
}

std::vector<std::string> productAlphabet(const std::vector<std::vector<std::string>>& parts) {
    if (parts.empty()) {
        throw std::invalid_argument("empty product");
    }
    std::vector<std::string> out;
    std::vector<std::size_t> idx(parts.size(), 0);
    while (true) {
        std::vector<std::string> combo;
        combo.reserve(parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i) {
            combo.push_back(parts[i][idx[i]]);
        }
        out.push_back(productSymbol(combo));
        std::size_t i = parts.size();
        while (i > 0) {
            --i;
            if (++idx[i] < parts[i].size()) {
                break;
            }
            idx[i] = 0;
            if (i == 0) {
                return out;
            }
        }
    }
}

OracleSpec parallel(const std::vector<OracleSpec>& factors, const OracleSpec& outer) {
    if (factors.empty()) {
        throw std::invalid_argument("parallel combination needs at least one factor");
    }
    for (const OracleSpec& f : factors) {
        requireSameAlphabet(f.inputAlphabet, factors.front().inputAlphabet, "parallel factors");
    }
    std::vector<std::vector<std::string>> outputs;
    outputs.reserve(factors.size());
    for (const OracleSpec& f : factors) {
        outputs.push_back(f.outputAlphabet);
    }
    requireSameAlphabet(outer.inputAlphabet, productAlphabet(outputs), "parallel interface");
    if (outer.separation > 0) {
        throw std::invalid_argument(
            "outer stage reads bundled oracle outputs, which carry no separation guarantee");
    }
    int rMax = 0;
    int sep = 0;
    for (const OracleSpec& f : factors) {
        rMax = std::max(rMax, f.radius);
        sep = std::max(sep, f.separation);
    }
    OracleSpec out;
    out.radius = rMax + outer.radius;
    out.separation = sep;
    out.inputAlphabet = factors.front().inputAlphabet;
    out.outputAlphabet = outer.outputAlphabet;
    std::vector<OracleSpec> factorCopies = factors;
    OracleSpec outerCopy = outer;
    out.rule = [factorCopies, outerCopy](const CanonicalBall& cb) {
        DecodedBall db = decode(cb);
        auto symbols = decodedSymbols(db);
        auto dist = decodedDistances(db, 0);
        std::vector<std::string> mid(symbols.size());
        for (int p = 0; p < db.size(); ++p) {
            if (dist[static_cast<std::size_t>(p)] >= 0 &&
                dist[static_cast<std::size_t>(p)] <= outerCopy.radius) {
                std::vector<std::string> combo;
                combo.reserve(factorCopies.size());
                for (const OracleSpec& f : factorCopies) {
                    combo.push_back(evaluateAt(db, symbols, p, f));
                }
                mid[static_cast<std::size_t>(p)] = productSymbol(combo);
            }
        }
        return evaluateAt(db, mid, 0, outerCopy);
    };
    return out;
}

Labeling compressLabels(const Graph& g, const Labeling& phi, int m, int r) {
    if (phi.values.size() != static_cast<std::size_t>(g.n())) {
        throw std::invalid_argument("labeling size must match graph size");
    }
    if (m < 1 || r < 0) {
        throw std::invalid_argument("need m >= 1 and r >= 0");
    }
    int n = static_cast<int>(phi.alphabet.size());
    if (n <= m) {
        return phi;
    }
    requireSeparationContract(g, phi, r);
    for (int x = 0; x < g.n(); ++x) {
        if (static_cast<int>(g.ballVertices(x, r).size()) > m) {
            throw std::invalid_argument("label budget below the largest radius-" +
                                        std::to_string(r) + " ball");
        }
    }
    std::vector<int> cur = phi.values;
    // One relabeling round per alphabet symbol beyond the first m. Vertices
    // sharing the round's symbol are more than r apart, so the simultaneous
    // writes of a round never read each other.
    for (int j = m; j < n; ++j) {
        std::vector<std::pair<int, int>> writes;
        for (int x = 0; x < g.n(); ++x) {
            if (cur[static_cast<std::size_t>(x)] != j) {
                continue;
            }
            std::vector<bool> used(static_cast<std::size_t>(m), false);
            for (int y : g.ballVertices(x, r)) {
                int ly = cur[static_cast<std::size_t>(y)];
                if (ly < m) {
                    used[static_cast<std::size_t>(ly)] = true;
                }
            }
            int pick = -1;
            for (int i = 0; i < m; ++i) {
                if (!used[static_cast<std::size_t>(i)]) {
                    pick = i;
                    break;
                }
            }
            if (pick < 0) {
                throw std::logic_error("no free label despite ball capacity check");
            }
            writes.emplace_back(x, pick);
        }
        for (auto [x, v] : writes) {
            cur[static_cast<std::size_t>(x)] = v;
        }
    }
    Labeling out;
    out.alphabet.assign(phi.alphabet.begin(), phi.alphabet.begin() + m);
    out.values = std::move(cur);
    out.separation = r;
    return out;
}

VertexSubset maximalSeparatedSystem(const Graph& g, const Labeling& phi, int r) {
    if (r < 1) {
        throw std::invalid_argument("separation radius must be positive");
    }
    if (phi.values.size() != static_cast<std::size_t>(g.n())) {
        throw std::invalid_argument("labeling size must match graph size");
    }
    requireSeparationContract(g, phi, 2 * r);
    std::vector<int> order(static_cast<std::size_t>(g.n()));
    for (int x = 0; x < g.n(); ++x) {
        order[static_cast<std::size_t>(x)] = x;
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int la = phi.values[static_cast<std::size_t>(a)];
        int lb = phi.values[static_cast<std::size_t>(b)];
        return la != lb ? la < lb : a < b;
    });
    std::vector<bool> selected(static_cast<std::size_t>(g.n()), false);
    std::vector<int> members;
    for (int v : order) {
        bool blocked = false;
        for (int y : g.ballVertices(v, r)) {
            if (selected[static_cast<std::size_t>(y)]) {
                blocked = true;
                break;
            }
        }
        if (!blocked) {
            selected[static_cast<std::size_t>(v)] = true;
            members.push_back(v);
        }
    }
    std::sort(members.begin(), members.end());
    return VertexSubset::of(g, members);
}

Labeling ballLocalLabeling(const Graph& g, const Labeling& phi, const VertexSubset& centers, int r,
                           const std::vector<std::string>& outputAlphabet,
                           const BallRewriteRule& rule, const Labeling* prior,
                           const std::string& blank) {
    if (phi.values.size() != static_cast<std::size_t>(g.n())) {
        throw std::invalid_argument("labeling size must match graph size");
    }
    if (prior && prior->values.size() != static_cast<std::size_t>(g.n())) {
        throw std::invalid_argument("prior labeling size must match graph size");
    }
    for (int c : centers.members) {
        for (int y : g.ballVertices(c, 2 * r)) {
            if (y != c && centers.contains(y)) {
                throw std::invalid_argument("write regions overlap: centers " + std::to_string(c) +
                                            " and " + std::to_string(y));
            }
        }
    }
    Labeling out;
    out.alphabet = outputAlphabet;
    if (std::find(outputAlphabet.begin(), outputAlphabet.end(), blank) == outputAlphabet.end()) {
        out.alphabet.push_back(blank);
    }
    int blankIdx = out.indexOf(blank);
    out.values.assign(static_cast<std::size_t>(g.n()), blankIdx);
    auto phiSymbols = phi.symbols();
    std::vector<std::string> priorSymbols;
    if (prior) {
        priorSymbols = prior->symbols();
    }
    for (int c : centers.members) {
        RootedBall b = ball(g, c, r);
        std::vector<std::string> labels;
        labels.reserve(b.toHost.size());
        for (int h : b.toHost) {
            if (prior) {
                labels.push_back(productSymbol(
                    {phiSymbols[static_cast<std::size_t>(h)], priorSymbols[static_cast<std::size_t>(h)]}));
            } else {
                labels.push_back(phiSymbols[static_cast<std::size_t>(h)]);
            }
        }
        std::vector<int> posToLocal;
        CanonicalBall cb = canonicalize(b, labels, &posToLocal);
        std::vector<std::string> rewritten = rule(cb);
        if (rewritten.size() != static_cast<std::size_t>(b.size())) {
            throw std::logic_error("rewrite rule must return one symbol per ball position");
        }
        for (std::size_t pos = 0; pos < rewritten.size(); ++pos) {
            int host = b.toHost[static_cast<std::size_t>(posToLocal[pos])];
            int idx = out.indexOf(rewritten[pos]);
            if (idx < 0) {
                throw std::logic_error("rewrite rule produced a symbol outside its alphabet: " +
                                       rewritten[pos]);
            }
            out.values[static_cast<std::size_t>(host)] = idx;
        }
    }
    return out;
}

} // namespace localforge
