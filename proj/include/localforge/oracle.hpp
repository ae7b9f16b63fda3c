#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "localforge/canonical.hpp"
#include "localforge/graph.hpp"
#include "localforge/labeling.hpp"
#include "localforge/subsets.hpp"

namespace localforge {

// A local rule: maps the canonical form of a labeled ball around a vertex to
// an output symbol. Rules must be pure functions of the canonical form.
using OracleRule = std::function<std::string(const CanonicalBall&)>;

// Finite description of a constant-radius distributed algorithm. `separation`
// is the minimum separation the input labeling must carry (0 = none).
// A spec may carry `stages`; then it is the left-to-right composition of the
// stages and `rule` evaluates that pipeline inside a single decoded ball.
struct OracleSpec {
    int radius = 0;
    int separation = 0;
    std::vector<std::string> inputAlphabet;
    std::vector<std::string> outputAlphabet;
    OracleRule rule;
    std::vector<OracleSpec> stages;
};

// Labeling after each atomic stage, in evaluation order. For an unstaged
// oracle the trace holds the single output labeling.
struct RoundTrace {
    std::vector<Labeling> rounds;
};

// Oracle whose output at every vertex is its own input label.
OracleSpec identityOracle(const std::vector<std::string>& alphabet);

// Evaluates the oracle at every vertex simultaneously. Rejects an input whose
// alphabet differs from the oracle's input alphabet, and verifies the
// declared and actual separation when the oracle requires one. Staged specs
// are evaluated stage by stage; `trace` (when non-null) receives the labeling
// after each atomic stage.
Labeling applyOracle(const Graph& g, const Labeling& phi, const OracleSpec& oracle,
                     int threads = 1, RoundTrace* trace = nullptr);

// Sequential composition: run `first` everywhere, then `second` on the
// result. Radius adds; the separation requirement is the first stage's and
// the second stage must not require one (its input is an oracle output with
// no separation guarantee).
OracleSpec compose(const OracleSpec& first, const OracleSpec& second);

// Parallel combination: run every factor on the shared input, bundle the
// outputs into product symbols, then run `outer` on the bundled labeling.
// Product symbols join the factor outputs with the 0x1f separator byte.
OracleSpec parallel(const std::vector<OracleSpec>& factors, const OracleSpec& outer);

// Product alphabet of `parts` in lexicographic index order, joined by 0x1f.
std::vector<std::string> productAlphabet(const std::vector<std::vector<std::string>>& parts);
std::string productSymbol(const std::vector<std::string>& parts);
std::vector<std::string> splitProductSymbol(const std::string& symbol, int arity);

// Shrinks an r-separating labeling onto the first m symbols of its alphabet,
// one alphabet symbol per relabeling round, preserving r-separation. Requires
// m >= |B_r(x)| for every x; inputs already within the first m symbols pass
// through unchanged.
Labeling compressLabels(const Graph& g, const Labeling& phi, int m, int r);

// Greedy maximal r-separated vertex system, visiting vertices by
// (label index, vertex id). Requires phi to be 2r-separating so that the
// visiting order is locally determined. The result is pairwise more than r
// apart and every vertex lies within r of it.
VertexSubset maximalSeparatedSystem(const Graph& g, const Labeling& phi, int r);

// One ball-local rewrite pass: for each center, `rule` sees the canonical
// ball of radius `r` with input labels (and prior output labels when `prior`
// is given, bundled as input0x1fprior) and returns one output symbol per ball
// position in canonical order. Vertices outside every ball get `blank`.
// Centers must be pairwise more than 2r apart so write regions are disjoint.
using BallRewriteRule = std::function<std::vector<std::string>(const CanonicalBall&)>;
Labeling ballLocalLabeling(const Graph& g, const Labeling& phi, const VertexSubset& centers,
                           int r, const std::vector<std::string>& outputAlphabet,
                           const BallRewriteRule& rule,
                           const Labeling* prior = nullptr,
                           const std::string& blank = "_");

} // namespace localforge
