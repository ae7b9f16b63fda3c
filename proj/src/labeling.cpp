#include "localforge/labeling.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace localforge {

const std::string& Labeling::symbol(int v) const {
    return alphabet.at(static_cast<std::size_t>(values.at(static_cast<std::size_t>(v))));
}

int Labeling::indexOf(const std::string& symbol) const {
    auto it = std::find(alphabet.begin(), alphabet.end(), symbol);
    return it == alphabet.end() ? -1 : static_cast<int>(it - alphabet.begin());
}

std::vector<std::string> Labeling::symbols() const {
    std::vector<std::string> out;
    out.reserve(values.size());
    for (std::size_t v = 0; v < values.size(); ++v) {
        out.push_back(symbol(static_cast<int>(v)));
    }
    return out;
}

Labeling Labeling::fromSymbols(std::vector<std::string> alphabet,
                               const std::vector<std::string>& perVertex,
                               std::optional<int> separation) {
    Labeling out;
    out.alphabet = std::move(alphabet);
    out.separation = separation;
    out.values.reserve(perVertex.size());
    for (const auto& s : perVertex) {
        int idx = out.indexOf(s);
        if (idx < 0) {
            throw std::invalid_argument("symbol '" + s + "' not in alphabet");
        }
        out.values.push_back(idx);
    }
    return out;
}

std::string Labeling::toJson() const {
    nlohmann::json j;
    j["alphabet"] = alphabet;
    if (separation) {
        j["separation"] = *separation;
    } else {
        j["separation"] = nullptr;
    }
    nlohmann::json vals = nlohmann::json::array();
    for (std::size_t v = 0; v < values.size(); ++v) {
        vals.push_back(symbol(static_cast<int>(v)));
    }
    j["values"] = std::move(vals);
    return j.dump(2) + "\n";
}

Labeling Labeling::fromJson(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("bad labeling JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("alphabet") || !j.contains("values")) {
        throw std::invalid_argument("labeling JSON must contain alphabet and values");
    }
    std::vector<std::string> alphabet = j.at("alphabet").get<std::vector<std::string>>();
    std::vector<std::string> perVertex = j.at("values").get<std::vector<std::string>>();
    std::optional<int> separation;
    if (j.contains("separation") && !j.at("separation").is_null()) {
        separation = j.at("separation").get<int>();
    }
    return fromSymbols(std::move(alphabet), perVertex, separation);
}

std::optional<std::pair<int, int>> separationViolation(const Graph& g, const Labeling& phi, int k) {
    if (phi.values.size() != static_cast<std::size_t>(g.n())) {
        throw std::invalid_argument("labeling size does not match graph");
    }
    if (k < 1) {
        return std::nullopt;
    }
    for (int x = 0; x < g.n(); ++x) {
        auto dist = g.distancesFrom(x, k);
        for (int y = 0; y < g.n(); ++y) {
            if (y == x) {
                continue;
            }
            int dy = dist[static_cast<std::size_t>(y)];
            if (dy > 0 && dy <= k &&
                phi.values[static_cast<std::size_t>(x)] == phi.values[static_cast<std::size_t>(y)]) {
                return std::make_pair(std::min(x, y), std::max(x, y));
            }
        }
    }
    return std::nullopt;
}

bool checkSeparation(const Graph& g, const Labeling& phi, int k) {
    return !separationViolation(g, phi, k).has_value();
}

Labeling greedySeparatingLabeling(const Graph& g, int k) {
    if (k < 1) {
        throw std::invalid_argument("separation radius must be >= 1");
    }
    std::vector<int> assigned(static_cast<std::size_t>(g.n()), -1);
    int maxLabel = 0;
    for (int x = 0; x < g.n(); ++x) {
        auto dist = g.distancesFrom(x, k);
        std::vector<char> used(static_cast<std::size_t>(maxLabel) + 2, 0);
        for (int y = 0; y < g.n(); ++y) {
            int dy = dist[static_cast<std::size_t>(y)];
            if (dy > 0 && dy <= k && assigned[static_cast<std::size_t>(y)] >= 0 &&
                assigned[static_cast<std::size_t>(y)] < static_cast<int>(used.size())) {
                used[static_cast<std::size_t>(assigned[static_cast<std::size_t>(y)])] = 1;
            }
        }
        int label = 0;
        while (used[static_cast<std::size_t>(label)]) {
            ++label;
        }
        assigned[static_cast<std::size_t>(x)] = label;
        maxLabel = std::max(maxLabel, label + 1);
    }
    Labeling out;
    for (int i = 1; i <= maxLabel; ++i) {
        out.alphabet.push_back(std::to_string(i));
    }
    out.values = std::move(assigned);
    out.separation = k;
    return out;
}

} // namespace localforge
