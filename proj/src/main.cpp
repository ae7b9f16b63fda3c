// Batch command surface: generators, algorithms, verifiers, spectra, and
// comparisons behind one binary with reproducible JSON I/O. Every invocation
// writes a RunManifest recording parameters, seed, and file digests; every
// `run` re-verifies its own output unless --no-verify. Exit codes: 0 pass,
// 2 contract failure, 3 structural or input failure.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "localforge/awalk.hpp"
#include "localforge/canonical.hpp"
#include "localforge/doubling.hpp"
#include "localforge/exact.hpp"
#include "localforge/graph.hpp"
#include "localforge/hyperfinite.hpp"
#include "localforge/labeling.hpp"
#include "localforge/limits.hpp"
#include "localforge/manifest.hpp"
#include "localforge/matching.hpp"
#include "localforge/mis.hpp"
#include "localforge/oracle.hpp"
#include "localforge/partition.hpp"
#include "localforge/rational.hpp"
#include "localforge/spectra.hpp"
#include "localforge/strong_family.hpp"
#include "localforge/subsets.hpp"
#include "localforge/weighted.hpp"

namespace {

using namespace localforge;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitContract = 2;
constexpr int kExitStructural = 3;

// Verification said no: the artifact exists but breaks its contract.
struct ContractFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The input side is broken: missing files, malformed JSON, bad parameters.
struct StructuralFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Routes all file I/O of one invocation so the manifest digests stay
// complete, and owns the wall clock. finish() writes the manifest next to
// the first output unless an explicit path was given.
class RunContext {
public:
    RunContext(std::string command, std::uint64_t seed)
        : start_(std::chrono::steady_clock::now()) {
        manifest_.command = std::move(command);
        manifest_.seed = seed;
    }

    void param(const std::string& key, const std::string& value) {
        manifest_.addParameter(key, value);
    }

    std::string readInput(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw StructuralFailure("cannot read input file: " + path);
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        std::string text = buffer.str();
        manifest_.addInput(path, fnv1a64Hex(text));
        return text;
    }

    void writeOutput(const std::string& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw StructuralFailure("cannot write output file: " + path);
        }
        out << text;
        if (!out) {
            throw StructuralFailure("failed while writing output file: " + path);
        }
        out.close();
        manifest_.addOutput(path, fnv1a64Hex(text));
        if (primaryOutput_.empty()) {
            primaryOutput_ = path;
        }
    }

    void finish(const std::string& manifestPath) {
        auto elapsed = std::chrono::steady_clock::now() - start_;
        manifest_.wallTimeMs =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
        std::string path = manifestPath;
        if (path.empty()) {
            path = primaryOutput_.empty() ? (slug() + ".manifest.json")
                                          : (primaryOutput_ + ".manifest.json");
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw StructuralFailure("cannot write manifest file: " + path);
        }
        out << manifest_.toJson();
    }

private:
    std::string slug() const {
        std::string s = manifest_.command;
        std::replace(s.begin(), s.end(), ' ', '-');
        return s;
    }

    RunManifest manifest_;
    std::string primaryOutput_;
    std::chrono::steady_clock::time_point start_;
};

Rational parseRational(const std::string& text, const std::string& flag) {
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        throw StructuralFailure(flag + " expects an exact rational \"p/q\": " + e.what());
    }
}

std::vector<std::string> splitList(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        out.push_back(item);
    }
    return out;
}

std::vector<double> parseCoeffs(const std::string& text) {
    std::vector<double> out;
    for (const std::string& item : splitList(text)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception&) {
            throw StructuralFailure("cannot parse coefficient '" + item + "'");
        }
    }
    if (out.empty()) {
        throw StructuralFailure("empty coefficient list");
    }
    return out;
}

Graph loadGraph(RunContext& ctx, const std::string& path) {
    return Graph::fromJson(ctx.readInput(path));
}

Labeling loadLabeling(RunContext& ctx, const std::string& path) {
    return Labeling::fromJson(ctx.readInput(path));
}

json subsetJson(const Graph& g, const VertexSubset& s) {
    json j;
    j["n"] = g.n();
    j["members"] = s.members;
    return j;
}

std::string doubleListCsv(const std::vector<double>& values) {
    std::ostringstream out;
    out << "index,eigenvalue\n";
    out.precision(17);
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << i << ',' << values[i] << '\n';
    }
    return out.str();
}

// Exact maximality audit for the independent-set pipeline.
std::optional<std::string> auditMis(const Graph& g, const VertexSubset& s) {
    std::vector<char> in(static_cast<std::size_t>(g.n()), 0);
    for (int x : s.members) {
        if (x < 0 || x >= g.n()) {
            return "member " + std::to_string(x) + " outside the graph";
        }
        in[static_cast<std::size_t>(x)] = 1;
    }
    for (int x : s.members) {
        for (int y : g.neighbors(x)) {
            if (in[static_cast<std::size_t>(y)]) {
                return "edge inside the set: " + std::to_string(x) + "-" + std::to_string(y);
            }
        }
    }
    for (int x = 0; x < g.n(); ++x) {
        if (in[static_cast<std::size_t>(x)]) {
            continue;
        }
        bool dominated = false;
        for (int y : g.neighbors(x)) {
            if (in[static_cast<std::size_t>(y)]) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            return "vertex " + std::to_string(x) + " could join the set";
        }
    }
    return std::nullopt;
}

void printPartitionReport(const PartitionReport& report) {
    std::cout << "maxDiam " << report.maxDiam << ", maxIso " << report.maxIso.str()
              << ", dichotomy " << (report.dichotomyHolds ? "holds" : "broken") << ", "
              << (report.pass ? "pass" : "fail") << "\n";
}

// Checks a partition report: structural breakage exits 3, contract breakage 2.
void gatePartitionReport(const PartitionReport& report, const std::string& what) {
    if (report.structuralError) {
        throw StructuralFailure(what + ": " + *report.structuralError);
    }
    if (!report.pass) {
        throw ContractFailure(what + " failed: maxDiam " + std::to_string(report.maxDiam) +
                              ", maxIso " + report.maxIso.str());
    }
}

// Re-verifies every family member against its own declared contract.
void gateFamily(const Graph& g, const CodeFamily& family, const std::string& what) {
    if (family.members.empty()) {
        throw StructuralFailure(what + ": family has no members");
    }
    for (std::size_t i = 0; i < family.members.size(); ++i) {
        for (std::size_t j = i + 1; j < family.members.size(); ++j) {
            if (family.members[i].code == family.members[j].code) {
                throw StructuralFailure(what + ": duplicate code at members " + std::to_string(i) +
                                        " and " + std::to_string(j));
            }
        }
    }
    for (std::size_t i = 0; i < family.members.size(); ++i) {
        gatePartitionReport(verifyPartition(g, family.members[i].partition),
                            what + " member " + std::to_string(i));
    }
}

void printFamilyReport(const StrongFamilyReport& report) {
    std::cout << "maxFraction " << report.maxFraction.str() << ", meanFraction "
              << report.meanFraction.str() << ", okFraction " << report.okFraction.str() << "\n";
}

// Everything the subcommands can set. Sentinel -1 marks unset integers.
struct Opts {
    std::uint64_t seed = 0;
    int threads = 1;
    bool noVerify = false;
    bool trace = false;
    std::string manifestPath;

    std::string kind;
    int n = -1, d = -1, rows = -1, cols = -1, branching = -1, depth = -1;

    std::string graphPath, labelingPath, partitionPath, familyPath, weightsPath;
    std::string matchingPath, outputPath, csvPath;
    std::string pathA, pathB;

    int sep = 1;
    int rounds = 9;
    int maxSweeps = 0;
    std::string eps, delta, epsPrime = "1/8", starBound, minOk;
    int K = -1;
    std::string finder = "ball";
    int samples = 10;
    int root = 0;
    int l = -1;
    int radius = -1;
    int margin = 1;
    std::string coeffs;
    std::string alphabet = "1,2";
    std::int64_t budget = 1 << 16;
    std::string words;
    int length = -1;
    std::string classes;
    bool check = false;
    std::vector<std::string> manifests;
};

int cmdGenerate(Opts& o) {
    RunContext ctx("generate", o.seed);
    std::string kind = o.kind;
    std::vector<std::int64_t> params;
    ctx.param("kind", kind);
    auto need = [&](const char* name, int value) {
        if (value < 0) {
            throw StructuralFailure("generate " + kind + " requires --" + name);
        }
        ctx.param(name, std::to_string(value));
        params.push_back(value);
    };
    if (kind == "cycle" || kind == "path") {
        need("n", o.n);
    } else if (kind == "torus" || kind == "grid") {
        need("rows", o.rows);
        need("cols", o.cols);
    } else if (kind == "tree") {
        kind = "regularTreeTruncation";
        need("branching", o.branching);
        need("depth", o.depth);
    } else if (kind == "random") {
        kind = "randomBoundedDegree";
        need("n", o.n);
        need("d", o.d);
    } else {
        throw StructuralFailure("unknown generator kind: " + kind);
    }
    Graph g = generate(kind, params, o.seed);
    ctx.writeOutput(o.outputPath, g.toJson());
    std::cout << "generated " << o.kind << ": " << g.n() << " vertices, degree bound "
              << g.degreeBound() << "\n";
    ctx.finish(o.manifestPath);
    return kExitPass;
}

int cmdLabel(Opts& o) {
    RunContext ctx("label", o.seed);
    ctx.param("sep", std::to_string(o.sep));
    Graph g = loadGraph(ctx, o.graphPath);
    Labeling phi = greedySeparatingLabeling(g, o.sep);
    if (!o.noVerify && !checkSeparation(g, phi, o.sep)) {
        throw ContractFailure("labeling is not " + std::to_string(o.sep) + "-separating");
    }
    ctx.writeOutput(o.outputPath, phi.toJson());
    std::cout << "labeled with " << phi.alphabet.size() << " symbols, separation " << o.sep
              << "\n";
    ctx.finish(o.manifestPath);
    return kExitPass;
}

int cmdRunMis(Opts& o) {
    RunContext ctx("run mis", o.seed);
    Graph g = loadGraph(ctx, o.graphPath);
    Labeling phi = o.labelingPath.empty() ? greedySeparatingLabeling(g, 1)
                                          : loadLabeling(ctx, o.labelingPath);
    RoundTrace trace;
    VertexSubset result = misCtda(g, phi, o.threads, o.trace ? &trace : nullptr);
    if (o.trace) {
        std::cerr << "trace: " << trace.rounds.size() << " stages\n";
    }
    ctx.writeOutput(o.outputPath, subsetJson(g, result).dump(2) + "\n");
    std::cout << "independent set of size " << result.size() << " / " << g.n() << "\n";
    ctx.finish(o.manifestPath);
    if (!o.noVerify) {
        if (auto error = auditMis(g, result)) {
            throw ContractFailure("mis verification failed: " + *error);
        }
        std::cout << "verify mis: pass\n";
    }
    return kExitPass;
}

int cmdRunMatching(Opts& o) {
    RunContext ctx("run matching", o.seed);
    ctx.param("rounds", std::to_string(o.rounds));
    Graph g = loadGraph(ctx, o.graphPath);
    Labeling phi = o.labelingPath.empty() ? greedySeparatingLabeling(g, 20 * o.rounds)
                                          : loadLabeling(ctx, o.labelingPath);
    Matching m = matchingCtda(g, phi, o.rounds, o.maxSweeps);
    ctx.writeOutput(o.outputPath, m.toJson());
    std::cout << "matching of size " << m.size() << "\n";
    ctx.finish(o.manifestPath);
    if (!o.noVerify) {
        MatchingReport report = verifyMatching(g, m, o.rounds);
        if (report.structuralError) {
            throw StructuralFailure("matching structure: " + *report.structuralError);
        }
        if (!report.pass) {
            throw ContractFailure("matching verification failed: augmenting path of length < " +
                                  std::to_string(o.rounds) + " exists");
        }
        std::cout << "verify matching: pass, size bound " << report.sizeBound.str() << "\n";
    }
    return kExitPass;
}

int cmdRunPartition(Opts& o) {
    RunContext ctx("run partition", o.seed);
    Rational eps = parseRational(o.eps, "--eps");
    Rational epsPrime = parseRational(o.epsPrime, "--eps-prime");
    ctx.param("eps", eps.str());
    ctx.param("eps-prime", epsPrime.str());
    Graph g = loadGraph(ctx, o.graphPath);
    GoodTuple tuple = goodTupleSearch(g, g.degreeBound(), eps);
    BigInt sepBig = 8 * tuple.S.front();
    int sepNeeded = 2 * static_cast<int>(std::min<BigInt>(sepBig, g.n()));
    Labeling phi = o.labelingPath.empty() ? greedySeparatingLabeling(g, sepNeeded)
                                          : loadLabeling(ctx, o.labelingPath);
    NiceBallSystem nice = basicAlgorithm(g, tuple, phi);
    ExtendTrace trace;
    Partition p = extendPartition(g, nice, epsPrime, std::nullopt, o.trace ? &trace : nullptr);
    if (o.trace) {
        std::cerr << "trace: " << nice.balls.size() << " nice balls, " << trace.psi.size()
                  << " vertices injected, reach " << trace.psiReach << "\n";
    }
    ctx.writeOutput(o.outputPath, p.toJson());
    std::cout << "partition with " << p.classCount() << " classes, eps " << p.epsilon.str()
              << ", K " << p.K << "\n";
    ctx.finish(o.manifestPath);
    if (!o.noVerify) {
        PartitionReport report = verifyPartition(g, p);
        gatePartitionReport(report, "partition");
        std::cout << "verify partition: ";
        printPartitionReport(report);
    }
    return kExitPass;
}

int cmdRunHyperfinite(Opts& o) {
    RunContext ctx("run hyperfinite", o.seed);
    Rational eps = parseRational(o.eps, "--eps");
    if (o.K < 1) {
        throw StructuralFailure("run hyperfinite requires --K >= 1");
    }
    ctx.param("eps", eps.str());
    ctx.param("K", std::to_string(o.K));
    ctx.param("finder", o.finder);
    Graph g = loadGraph(ctx, o.graphPath);
    PieceFinder finder;
    if (o.finder == "ball") {
        finder = ballPieceFinder();
    } else if (o.finder == "exhaustive") {
        finder = exhaustivePieceFinder();
    } else {
        throw StructuralFailure("--finder must be ball or exhaustive");
    }
    HyperfiniteTrace trace;
    StarPartition sp = hyperfiniteOracle(g, eps, o.K, finder, o.trace ? &trace : nullptr);
    if (o.trace) {
        std::cerr << "trace: " << trace.sweeps.size() << " sweeps, budget "
                  << trace.sweepBudget << (trace.exhaustedBudget ? " exhausted" : "") << "\n";
    }
    ctx.writeOutput(o.outputPath, sp.toJson());
    std::cout << "star partition with " << sp.partition.classCount() << " classes\n";
    ctx.finish(o.manifestPath);
    if (!o.noVerify) {
        Rational starBound = o.starBound.empty() ? Rational(g.degreeBound() + 1) * eps
                                                 : parseRational(o.starBound, "--star-bound");
        StarReport report = verifyStarPartition(g, sp, starBound);
        if (report.classes.structuralError) {
            throw StructuralFailure("star partition: " + *report.classes.structuralError);
        }
        if (report.maxClassSize > o.K) {
            throw ContractFailure("class of size " + std::to_string(report.maxClassSize) +
                                  " exceeds K = " + std::to_string(o.K));
        }
        if (!report.starWithinBound) {
            throw ContractFailure("star fraction " + report.starFraction.str() +
                                  " exceeds the bound " + starBound.str());
        }
        std::cout << "verify hyperfinite: pass, star fraction " << report.starFraction.str()
                  << ", max class size " << report.maxClassSize << ", residual maxIso "
                  << report.classes.maxIso.str() << "\n";
    }
    return kExitPass;
}

int cmdRunStrongFamily(Opts& o) {
    RunContext ctx("run strong-family", o.seed);
    Rational eps = parseRational(o.eps, "--eps");
    if (o.delta.empty()) {
        throw StructuralFailure("run strong-family requires --delta (shift-mode scales)");
    }
    Rational delta = parseRational(o.delta, "--delta");
    Rational epsPrime = parseRational(o.epsPrime, "--eps-prime");
    ctx.param("eps", eps.str());
    ctx.param("delta", delta.str());
    ctx.param("eps-prime", epsPrime.str());
    ctx.param("samples", std::to_string(o.samples));
    Graph g = loadGraph(ctx, o.graphPath);
    GoodTuple tuple = goodTupleSearch(g, g.degreeBound(), eps, delta);
    CodeFamily family = strongFamily(g, tuple, o.samples, o.seed, epsPrime);
    ctx.writeOutput(o.outputPath, family.toJson());
    std::cout << "family with " << family.members.size() << " members\n";
    ctx.finish(o.manifestPath);
    if (!o.noVerify) {
        gateFamily(g, family, "strong family");
        StrongFamilyReport report = verifyStrongFamily(g, family, eps);
        std::cout << "verify strong-family: pass, ";
        printFamilyReport(report);
    }
    return kExitPass;
}

int cmdRunWeightedIs(Opts& o) {
    RunContext ctx("run weighted-is", o.seed);
    std::optional<Rational> eps;
    if (!o.eps.empty()) {
        eps = parseRational(o.eps, "--eps");
        ctx.param("eps", eps->str());
    }
    Graph g = loadGraph(ctx, o.graphPath);
    CodeFamily family = CodeFamily::fromJson(ctx.readInput(o.familyPath));
    json wj = json::parse(ctx.readInput(o.weightsPath));
    if (!wj.is_array()) {
        throw StructuralFailure("weights file must be a JSON array");
    }
    WeightFunction w = wj.get<WeightFunction>();
    WeightedIsReport report = weightedIs(g, family, w, eps);
    json out;
    out["bestIndex"] = report.bestIndex;
    out["bestWeight"] = report.bestWeight;
    out["totalWeight"] = report.totalWeight;
    out["best"] = report.best.members;
    out["weights"] = report.weights;
    json sets = json::array();
    for (const VertexSubset& s : report.sets) {
        sets.push_back(s.members);
    }
    out["sets"] = sets;
    out["optimum"] = report.optimum ? json(*report.optimum) : json(nullptr);
    out["goodFraction"] = report.goodFraction ? json(report.goodFraction->str()) : json(nullptr);
    ctx.writeOutput(o.outputPath, out.dump(2) + "\n");
    std::cout << "best member " << report.bestIndex << " with weight " << report.bestWeight
              << " / " << report.totalWeight << "\n";
    ctx.finish(o.manifestPath);
    if (!o.noVerify) {
        for (std::size_t i = 0; i < report.sets.size(); ++i) {
            std::int64_t total = 0;
            for (int x : report.sets[i].members) {
                if (x < 0 || x >= g.n()) {
                    throw ContractFailure("member set " + std::to_string(i) +
                                          " leaves the graph");
                }
                total += w[static_cast<std::size_t>(x)];
            }
            if (total != report.weights[i]) {
                throw ContractFailure("member set " + std::to_string(i) +
                                      " weight mismatch");
            }
            if (auto error = auditMis(g, report.sets[i]); error && error->find("edge") == 0) {
                throw ContractFailure("member set " + std::to_string(i) + ": " + *error);
            }
        }
        std::cout << "verify weighted-is: pass\n";
    }
    return kExitPass;
}

int cmdRunTreeFractional(Opts& o) {
    RunContext ctx("run tree-fractional", o.seed);
    if (o.l < 1) {
        throw StructuralFailure("run tree-fractional requires --l >= 1");
    }
    ctx.param("root", std::to_string(o.root));
    ctx.param("l", std::to_string(o.l));
    Graph g = loadGraph(ctx, o.graphPath);
    CodeFamily family = fractionalTreeFamily(g, o.root, o.l);
    ctx.writeOutput(o.outputPath, family.toJson());
    std::cout << "tree family with " << family.members.size() << " partitions\n";
    ctx.finish(o.manifestPath);
    if (!o.noVerify) {
        gateFamily(g, family, "tree family");
        StrongFamilyReport report = verifyStrongFamily(g, family, Rational(1));
        for (std::size_t c = 3; c < report.histogram.size(); ++c) {
            if (report.histogram[c] > 0) {
                throw ContractFailure("a vertex sits on " + std::to_string(c) +
                                      " member boundaries; the contract allows 2");
            }
        }
        std::cout << "verify tree-fractional: pass, ";
        printFamilyReport(report);
    }
    return kExitPass;
}

int cmdVerifyPartition(Opts& o) {
    RunContext ctx("verify partition", o.seed);
    Graph g = loadGraph(ctx, o.graphPath);
    std::string text = ctx.readInput(o.partitionPath);
    bool star = json::parse(text).contains("star");
    int exitCode = kExitPass;
    if (star) {
        StarPartition sp = StarPartition::fromJson(text);
        Rational starBound = o.starBound.empty()
                                 ? Rational(g.degreeBound() + 1) * sp.partition.epsilon
                                 : parseRational(o.starBound, "--star-bound");
        ctx.param("star-bound", starBound.str());
        StarReport report = verifyStarPartition(g, sp, starBound);
        if (report.classes.structuralError) {
            throw StructuralFailure("star partition: " + *report.classes.structuralError);
        }
        // For star partitions K caps the class SIZE (sweep-oracle semantics)
        // and per-class boundary ratios are informational: removal-time
        // quality is not reconstructible from the file alone.
        bool pass = report.starWithinBound && report.maxClassSize <= sp.partition.K;
        std::cout << "star fraction " << report.starFraction.str() << " (bound "
                  << starBound.str() << "), max class size " << report.maxClassSize << " (cap "
                  << sp.partition.K << "), maxIso " << report.classes.maxIso.str() << ", "
                  << (pass ? "pass" : "fail") << "\n";
        if (!pass) {
            exitCode = kExitContract;
        }
    } else {
        Partition p = Partition::fromJson(text);
        PartitionReport report = verifyPartition(g, p);
        if (report.structuralError) {
            throw StructuralFailure("partition: " + *report.structuralError);
        }
        printPartitionReport(report);
        if (!report.pass) {
            exitCode = kExitContract;
        }
    }
    ctx.finish(o.manifestPath);
    return exitCode;
}

int cmdVerifyMatching(Opts& o) {
    RunContext ctx("verify matching", o.seed);
    ctx.param("rounds", std::to_string(o.rounds));
    Graph g = loadGraph(ctx, o.graphPath);
    Matching m = Matching::fromJson(ctx.readInput(o.matchingPath));
    MatchingReport report = verifyMatching(g, m, o.rounds);
    if (report.structuralError) {
        throw StructuralFailure("matching: " + *report.structuralError);
    }
    std::cout << "size " << report.size << ", "
              << (report.noShortAugmenting ? "no augmenting path" : "augmenting path exists")
              << " below length " << o.rounds << ", "
              << (report.pass ? "pass" : "fail") << "\n";
    if (report.pass) {
        std::cout << "maximum matching bounded by " << report.sizeBound.str() << "\n";
    }
    ctx.finish(o.manifestPath);
    return report.pass ? kExitPass : kExitContract;
}

int cmdVerifyStrongFamily(Opts& o) {
    RunContext ctx("verify strong-family", o.seed);
    Rational eps = parseRational(o.eps, "--eps");
    ctx.param("eps", eps.str());
    Graph g = loadGraph(ctx, o.graphPath);
    CodeFamily family = CodeFamily::fromJson(ctx.readInput(o.familyPath));
    gateFamily(g, family, "strong family");
    StrongFamilyReport report = verifyStrongFamily(g, family, eps);
    printFamilyReport(report);
    int exitCode = kExitPass;
    if (!o.minOk.empty()) {
        Rational minOk = parseRational(o.minOk, "--min-ok");
        ctx.param("min-ok", minOk.str());
        if (report.okFraction < minOk) {
            std::cout << "okFraction below " << minOk.str() << ", fail\n";
            exitCode = kExitContract;
        }
    }
    ctx.finish(o.manifestPath);
    return exitCode;
}

int cmdSpectrumFull(Opts& o) {
    RunContext ctx("spectrum full", o.seed);
    Graph g = loadGraph(ctx, o.graphPath);
    std::vector<double> values = laplacianSpectrum(g);
    json out;
    out["count"] = values.size();
    out["values"] = values;
    ctx.writeOutput(o.outputPath, out.dump(2) + "\n");
    if (!o.csvPath.empty()) {
        ctx.writeOutput(o.csvPath, doubleListCsv(values));
    }
    std::cout << "spectrum with " << values.size() << " eigenvalues in [" << values.front()
              << ", " << values.back() << "]\n";
    ctx.finish(o.manifestPath);
    return kExitPass;
}

int cmdSpectrumEstimate(Opts& o) {
    RunContext ctx("spectrum estimate", o.seed);
    if (o.radius < 2) {
        throw StructuralFailure("spectrum estimate requires --radius >= 2");
    }
    ctx.param("radius", std::to_string(o.radius));
    ctx.param("margin", std::to_string(o.margin));
    Graph g = loadGraph(ctx, o.graphPath);
    SpectrumEstimate est = distributedSpectrumEstimate(ballSet(g, o.radius), o.margin);
    json out;
    out["radius"] = est.radius;
    out["margin"] = est.margin;
    out["ballCount"] = est.ballCount;
    out["values"] = est.values;
    ctx.writeOutput(o.outputPath, out.dump(2) + "\n");
    if (!o.csvPath.empty()) {
        ctx.writeOutput(o.csvPath, doubleListCsv(est.values));
    }
    std::cout << "estimate from " << est.ballCount << " balls: " << est.values.size()
              << " values\n";
    ctx.finish(o.manifestPath);
    return kExitPass;
}

int cmdSpectrumRestrictedNorm(Opts& o) {
    RunContext ctx("spectrum restricted-norm", o.seed);
    std::vector<double> coeffs = parseCoeffs(o.coeffs);
    ctx.param("coeffs", o.coeffs);
    Graph g = loadGraph(ctx, o.graphPath);
    std::vector<Partition> members;
    if (!o.familyPath.empty()) {
        CodeFamily family = CodeFamily::fromJson(ctx.readInput(o.familyPath));
        for (const FamilyMember& member : family.members) {
            members.push_back(member.partition);
        }
    } else if (!o.partitionPath.empty()) {
        members.push_back(Partition::fromJson(ctx.readInput(o.partitionPath)));
    } else {
        throw StructuralFailure("spectrum restricted-norm needs --family or --partition");
    }
    int degree = static_cast<int>(coeffs.size()) - 1;
    while (degree > 0 && coeffs[static_cast<std::size_t>(degree)] == 0.0) {
        --degree;
    }
    int l = o.l > 0 ? o.l : std::max(1, degree);
    ctx.param("l", std::to_string(l));
    RestrictedNormReport report = restrictedNorm(g, members, coeffs, l);
    json out;
    out["global"] = report.global;
    out["restricted"] = report.restricted;
    out["gap"] = report.gap;
    out["l"] = l;
    out["members"] = members.size();
    ctx.writeOutput(o.outputPath, out.dump(2) + "\n");
    std::cout << "global " << report.global << ", restricted " << report.restricted << ", gap "
              << report.gap << "\n";
    ctx.finish(o.manifestPath);
    return kExitPass;
}

int cmdCompareNaiveDistance(Opts& o) {
    RunContext ctx("compare naive-distance", o.seed);
    Graph a = loadGraph(ctx, o.pathA);
    Graph b = loadGraph(ctx, o.pathB);
    Rational distance = naiveDistance(a, b);
    std::cout << distance.str() << "\n";
    if (!o.outputPath.empty()) {
        json out;
        out["distance"] = distance.str();
        ctx.writeOutput(o.outputPath, out.dump(2) + "\n");
    }
    ctx.finish(o.manifestPath);
    return kExitPass;
}

int cmdCompareConfigurations(Opts& o) {
    RunContext ctx("compare configurations", o.seed);
    if (o.radius < 0) {
        throw StructuralFailure("compare configurations requires --radius >= 0");
    }
    std::vector<std::string> alphabet = splitList(o.alphabet);
    ctx.param("alphabet", o.alphabet);
    ctx.param("radius", std::to_string(o.radius));
    ctx.param("budget", std::to_string(o.budget));
    Graph a = loadGraph(ctx, o.pathA);
    Graph b = loadGraph(ctx, o.pathB);
    std::vector<ConfigurationSet> confA = achievableConfigurations(a, alphabet, o.radius, o.budget);
    std::vector<ConfigurationSet> confB = achievableConfigurations(b, alphabet, o.radius, o.budget);
    bool identical = confA == confB;
    std::cout << "achievable configuration sets: " << confA.size() << " vs " << confB.size()
              << ", " << (identical ? "identical" : "different") << "\n";
    if (!o.outputPath.empty()) {
        json out;
        out["countA"] = confA.size();
        out["countB"] = confB.size();
        out["identical"] = identical;
        ctx.writeOutput(o.outputPath, out.dump(2) + "\n");
    }
    ctx.finish(o.manifestPath);
    return kExitPass;
}

int cmdCompareAwalk(Opts& o) {
    RunContext ctx("compare awalk", o.seed);
    if (o.words.empty()) {
        throw StructuralFailure("compare awalk requires --words");
    }
    ctx.param("words", o.words);
    std::vector<std::vector<std::string>> words;
    for (const std::string& item : splitList(o.words)) {
        std::vector<std::string> word;
        for (char c : item) {
            word.emplace_back(1, c);
        }
        words.push_back(word);
    }
    AwalkReport report = awalkPeriod(words);
    json out;
    out["feasible"] = report.feasible;
    out["period"] = report.period;
    std::cout << (report.feasible ? "feasible, period " + std::to_string(report.period)
                                  : "infeasible")
              << "\n";
    if (o.length >= 0) {
        ctx.param("length", std::to_string(o.length));
        ContinuationDigraph dg = continuationDigraph(words);
        bool covering = coveringClosedWalk(dg, o.length);
        out["length"] = o.length;
        out["coveringWalk"] = covering;
        std::cout << "covering closed walk of length " << o.length << ": "
                  << (covering ? "yes" : "no") << "\n";
    }
    if (!o.outputPath.empty()) {
        ctx.writeOutput(o.outputPath, out.dump(2) + "\n");
    }
    ctx.finish(o.manifestPath);
    return kExitPass;
}

int cmdReport(Opts& o) {
    RunContext ctx("report", o.seed);
    bool stale = false;
    for (const std::string& path : o.manifests) {
        RunManifest m = RunManifest::fromJson(ctx.readInput(path));
        std::cout << path << ": " << m.command << " (seed " << m.seed << ", "
                  << m.wallTimeMs << " ms)\n";
        for (const auto& [key, value] : m.parameters) {
            std::cout << "  param " << key << " = " << value << "\n";
        }
        auto audit = [&](const char* label, const auto& entries) {
            for (const auto& [file, digest] : entries) {
                std::cout << "  " << label << " " << file << " fnv " << digest;
                if (o.check) {
                    try {
                        std::string actual = fileDigest(file);
                        bool ok = actual == digest;
                        stale = stale || !ok;
                        std::cout << (ok ? " [OK]" : " [STALE]");
                    } catch (const std::runtime_error&) {
                        stale = true;
                        std::cout << " [MISSING]";
                    }
                }
                std::cout << "\n";
            }
        };
        audit("input", m.inputs);
        audit("output", m.outputs);
    }
    ctx.finish(o.manifestPath);
    if (o.check && stale) {
        std::cout << "digest check: fail\n";
        return kExitContract;
    }
    if (o.check) {
        std::cout << "digest check: pass\n";
    }
    return kExitPass;
}

std::uint64_t defaultSeed() {
    const char* env = std::getenv("LOCALFORGE_SEED");
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    char* end = nullptr;
    unsigned long long value = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0') {
        throw StructuralFailure("LOCALFORGE_SEED must be an unsigned integer");
    }
    return value;
}

} // namespace

int main(int argc, char** argv) {
    Opts o;
    CLI::App app{"deterministic local-model toolkit"};
    app.require_subcommand(1);

    app.add_option("--seed", o.seed, "RNG seed (LOCALFORGE_SEED overrides the default 0)");
    app.add_option("--threads", o.threads, "worker threads; outputs never depend on it")
        ->check(CLI::PositiveNumber);
    app.add_flag("--no-verify", o.noVerify, "skip the automatic verification after run");
    app.add_flag("--trace", o.trace, "print execution traces to stderr");
    app.add_option("--manifest", o.manifestPath, "manifest path (default: derived)");

    auto addGraph = [&](CLI::App* cmd) {
        cmd->add_option("-g,--graph", o.graphPath, "graph JSON file")->required();
    };
    auto addOut = [&](CLI::App* cmd) {
        cmd->add_option("-o,--output", o.outputPath, "output JSON file")->required();
    };

    CLI::App* gen = app.add_subcommand("generate", "write a generated graph");
    gen->add_option("kind", o.kind, "cycle|path|torus|grid|tree|random")->required();
    gen->add_option("--n", o.n, "vertex count");
    gen->add_option("--d", o.d, "degree bound");
    gen->add_option("--rows", o.rows, "grid rows");
    gen->add_option("--cols", o.cols, "grid columns");
    gen->add_option("--branching", o.branching, "tree branching");
    gen->add_option("--depth", o.depth, "tree depth");
    addOut(gen);

    CLI::App* label = app.add_subcommand("label", "write a greedy separating labeling");
    addGraph(label);
    label->add_option("--sep", o.sep, "separation to guarantee");
    addOut(label);

    CLI::App* run = app.add_subcommand("run", "run an algorithm and verify its output");
    run->require_subcommand(1);
    CLI::App* runMis = run->add_subcommand("mis", "maximal independent set pipeline");
    addGraph(runMis);
    runMis->add_option("-l,--labeling", o.labelingPath, "1-separating labeling JSON");
    addOut(runMis);
    CLI::App* runMatching = run->add_subcommand("matching", "local-improvement matching");
    addGraph(runMatching);
    runMatching->add_option("-l,--labeling", o.labelingPath, "20*rounds-separating labeling");
    runMatching->add_option("--rounds", o.rounds, "augmenting-path length bound");
    runMatching->add_option("--max-sweeps", o.maxSweeps, "cap improvement sweeps (0 = none)");
    addOut(runMatching);
    CLI::App* runPartition = run->add_subcommand("partition", "multi-scale ball partition");
    addGraph(runPartition);
    runPartition->add_option("-l,--labeling", o.labelingPath, "separating labeling JSON");
    runPartition->add_option("--eps", o.eps, "target boundary ratio p/q")->required();
    runPartition->add_option("--eps-prime", o.epsPrime, "extension slice ratio p/q");
    addOut(runPartition);
    CLI::App* runHyperfinite = run->add_subcommand("hyperfinite", "sweep-based star partition");
    addGraph(runHyperfinite);
    runHyperfinite->add_option("--eps", o.eps, "piece boundary ratio p/q")->required();
    runHyperfinite->add_option("--K", o.K, "piece size cap")->required();
    runHyperfinite->add_option("--finder", o.finder, "ball|exhaustive");
    runHyperfinite->add_option("--star-bound", o.starBound, "star fraction bound p/q");
    addOut(runHyperfinite);
    CLI::App* runStrong = run->add_subcommand("strong-family", "partition family from codes");
    addGraph(runStrong);
    runStrong->add_option("--eps", o.eps, "target boundary ratio p/q")->required();
    runStrong->add_option("--delta", o.delta, "per-vertex fraction target p/q")->required();
    runStrong->add_option("--eps-prime", o.epsPrime, "extension slice ratio p/q");
    runStrong->add_option("--samples", o.samples, "family size");
    addOut(runStrong);
    CLI::App* runWeighted = run->add_subcommand("weighted-is", "weighted independent sets");
    addGraph(runWeighted);
    runWeighted->add_option("-f,--family", o.familyPath, "partition family JSON")->required();
    runWeighted->add_option("-w,--weights", o.weightsPath, "weights JSON array")->required();
    runWeighted->add_option("--eps", o.eps, "override quality threshold p/q");
    addOut(runWeighted);
    CLI::App* runTree = run->add_subcommand("tree-fractional", "depth-shift tree partitions");
    addGraph(runTree);
    runTree->add_option("--root", o.root, "tree root vertex");
    runTree->add_option("--l", o.l, "partition count and depth period")->required();
    addOut(runTree);

    CLI::App* verify = app.add_subcommand("verify", "verify an artifact file");
    verify->require_subcommand(1);
    CLI::App* verifyPartitionCmd = verify->add_subcommand("partition", "audit a partition");
    addGraph(verifyPartitionCmd);
    verifyPartitionCmd->add_option("-p,--partition", o.partitionPath, "partition JSON")
        ->required();
    verifyPartitionCmd->add_option("--star-bound", o.starBound, "star fraction bound p/q");
    CLI::App* verifyMatchingCmd = verify->add_subcommand("matching", "audit a matching");
    addGraph(verifyMatchingCmd);
    verifyMatchingCmd->add_option("-m,--matching", o.matchingPath, "matching JSON")->required();
    verifyMatchingCmd->add_option("--rounds", o.rounds, "augmenting-path length bound");
    CLI::App* verifyStrong = verify->add_subcommand("strong-family", "audit a family");
    addGraph(verifyStrong);
    verifyStrong->add_option("-f,--family", o.familyPath, "family JSON")->required();
    verifyStrong->add_option("--eps", o.eps, "per-vertex fraction threshold p/q")->required();
    verifyStrong->add_option("--min-ok", o.minOk, "required ok fraction p/q");

    CLI::App* spectrum = app.add_subcommand("spectrum", "Laplacian spectra");
    spectrum->require_subcommand(1);
    CLI::App* spectrumFull = spectrum->add_subcommand("full", "dense spectrum");
    addGraph(spectrumFull);
    addOut(spectrumFull);
    spectrumFull->add_option("--csv", o.csvPath, "also write index,eigenvalue CSV");
    CLI::App* spectrumEstimate = spectrum->add_subcommand("estimate", "ball-set estimate");
    addGraph(spectrumEstimate);
    spectrumEstimate->add_option("--radius", o.radius, "ball radius s")->required();
    spectrumEstimate->add_option("--margin", o.margin, "trim margin t");
    addOut(spectrumEstimate);
    spectrumEstimate->add_option("--csv", o.csvPath, "also write index,eigenvalue CSV");
    CLI::App* spectrumNorm = spectrum->add_subcommand("restricted-norm", "interior norm gap");
    addGraph(spectrumNorm);
    spectrumNorm->add_option("-f,--family", o.familyPath, "partition family JSON");
    spectrumNorm->add_option("-p,--partition", o.partitionPath, "single partition JSON");
    spectrumNorm->add_option("--coeffs", o.coeffs, "polynomial c0,c1,...")->required();
    spectrumNorm->add_option("--l", o.l, "interior depth (default: polynomial degree)");
    addOut(spectrumNorm);

    CLI::App* compare = app.add_subcommand("compare", "comparisons and invariants");
    compare->require_subcommand(1);
    CLI::App* compareNaive = compare->add_subcommand("naive-distance", "ball-set metric");
    compareNaive->add_option("a", o.pathA, "first graph JSON")->required();
    compareNaive->add_option("b", o.pathB, "second graph JSON")->required();
    compareNaive->add_option("-o,--output", o.outputPath, "optional output JSON");
    CLI::App* compareConf = compare->add_subcommand("configurations", "achievable ball sets");
    compareConf->add_option("a", o.pathA, "first graph JSON")->required();
    compareConf->add_option("b", o.pathB, "second graph JSON")->required();
    compareConf->add_option("--alphabet", o.alphabet, "comma-separated symbols");
    compareConf->add_option("--radius", o.radius, "ball radius")->required();
    compareConf->add_option("--budget", o.budget, "labeling enumeration budget");
    compareConf->add_option("-o,--output", o.outputPath, "optional output JSON");
    CLI::App* compareAwalk = compare->add_subcommand("awalk", "word digraph period");
    compareAwalk->add_option("--words", o.words, "comma-separated label words")->required();
    compareAwalk->add_option("--length", o.length, "also test a covering closed walk");
    compareAwalk->add_option("-o,--output", o.outputPath, "optional output JSON");

    CLI::App* report = app.add_subcommand("report", "summarize manifests");
    report->add_option("manifests", o.manifests, "manifest JSON files")->required();
    report->add_flag("--check", o.check, "re-digest referenced files");

    for (CLI::App* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (CLI::App* leaf : sub->get_subcommands({})) {
            leaf->fallthrough();
        }
    }

    try {
        o.seed = defaultSeed();
    } catch (const StructuralFailure& e) {
        std::cerr << "structural failure: " << e.what() << "\n";
        return kExitStructural;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitStructural;
    }

    try {
        if (gen->parsed()) return cmdGenerate(o);
        if (label->parsed()) return cmdLabel(o);
        if (runMis->parsed()) return cmdRunMis(o);
        if (runMatching->parsed()) return cmdRunMatching(o);
        if (runPartition->parsed()) return cmdRunPartition(o);
        if (runHyperfinite->parsed()) return cmdRunHyperfinite(o);
        if (runStrong->parsed()) return cmdRunStrongFamily(o);
        if (runWeighted->parsed()) return cmdRunWeightedIs(o);
        if (runTree->parsed()) return cmdRunTreeFractional(o);
        if (verifyPartitionCmd->parsed()) return cmdVerifyPartition(o);
        if (verifyMatchingCmd->parsed()) return cmdVerifyMatching(o);
        if (verifyStrong->parsed()) return cmdVerifyStrongFamily(o);
        if (spectrumFull->parsed()) return cmdSpectrumFull(o);
        if (spectrumEstimate->parsed()) return cmdSpectrumEstimate(o);
        if (spectrumNorm->parsed()) return cmdSpectrumRestrictedNorm(o);
        if (compareNaive->parsed()) return cmdCompareNaiveDistance(o);
        if (compareConf->parsed()) return cmdCompareConfigurations(o);
        if (compareAwalk->parsed()) return cmdCompareAwalk(o);
        if (report->parsed()) return cmdReport(o);
        std::cerr << "structural failure: no subcommand\n";
        return kExitStructural;
    } catch (const ContractFailure& e) {
        std::cerr << "contract failure: " << e.what() << "\n";
        return kExitContract;
    } catch (const StructuralFailure& e) {
        std::cerr << "structural failure: " << e.what() << "\n";
        return kExitStructural;
    } catch (const json::exception& e) {
        std::cerr << "structural failure: " << e.what() << "\n";
        return kExitStructural;
    } catch (const std::invalid_argument& e) {
        std::cerr << "structural failure: " << e.what() << "\n";
        return kExitStructural;
    } catch (const std::exception& e) {
        std::cerr << "contract failure: " << e.what() << "\n";
        return kExitContract;
    }
}
