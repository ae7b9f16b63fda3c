#pragma once

#include "localforge/graph.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace localforge {

// Vertex labeling over a finite symbol alphabet. Values are stored as indices
// into the alphabet list; a declared separation k promises distinct symbols
// for every pair at distance 1..k (validated by checkSeparation, not assumed).
struct Labeling {
    std::vector<std::string> alphabet;
    std::vector<int> values; // per vertex, index into alphabet
    std::optional<int> separation;

    int alphabetSize() const { return static_cast<int>(alphabet.size()); }
    const std::string& symbol(int v) const;
    int indexOf(const std::string& symbol) const; // -1 when absent
    // Host-indexed symbol vector, the canonicalization input.
    std::vector<std::string> symbols() const;

    static Labeling fromSymbols(std::vector<std::string> alphabet,
                                const std::vector<std::string>& perVertex,
                                std::optional<int> separation = std::nullopt);

    std::string toJson() const;
    static Labeling fromJson(const std::string& text);
};

// First violating pair (x, y) with 0 < d(x,y) <= k and equal symbols, if any.
std::optional<std::pair<int, int>> separationViolation(const Graph& g, const Labeling& phi, int k);
bool checkSeparation(const Graph& g, const Labeling& phi, int k);

// Greedy k-separating labeling over {"1".."q"}; q never exceeds the largest
// k-ball size.
Labeling greedySeparatingLabeling(const Graph& g, int k);

} // namespace localforge
