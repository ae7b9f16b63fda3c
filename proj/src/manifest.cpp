#include "localforge/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace localforge {

using nlohmann::json;

std::string fnv1a64Hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

std::string fileDigest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return fnv1a64Hex(buffer.str());
}

namespace {

void insertSorted(std::vector<std::pair<std::string, std::string>>& entries,
                  const std::string& key, const std::string& value, const char* what) {
    auto it = std::lower_bound(entries.begin(), entries.end(), key,
                               [](const auto& e, const std::string& k) { return e.first < k; });
    if (it != entries.end() && it->first == key) {
        throw std::invalid_argument(std::string("duplicate manifest ") + what + ": " + key);
    }
    entries.insert(it, {key, value});
}

json pairsJson(const std::vector<std::pair<std::string, std::string>>& entries) {
    json j = json::object();
    for (const auto& [key, value] : entries) {
        j[key] = value;
    }
    return j;
}

std::vector<std::pair<std::string, std::string>> pairsFromJson(const json& j, const char* what) {
    if (!j.is_object()) {
        throw std::invalid_argument(std::string("manifest ") + what + " must be an object");
    }
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [key, value] : j.items()) {
        out.emplace_back(key, value.get<std::string>());
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

void RunManifest::addParameter(const std::string& key, const std::string& value) {
    insertSorted(parameters, key, value, "parameter");
}

void RunManifest::addInput(const std::string& path, const std::string& digest) {
    insertSorted(inputs, path, digest, "input");
}

void RunManifest::addOutput(const std::string& path, const std::string& digest) {
    insertSorted(outputs, path, digest, "output");
}

bool RunManifest::sameRun(const RunManifest& other) const {
    return command == other.command && parameters == other.parameters && seed == other.seed &&
           inputs == other.inputs && outputs == other.outputs;
}

std::string RunManifest::toJson() const {
    json j;
    j["command"] = command;
    j["parameters"] = pairsJson(parameters);
    j["seed"] = seed;
    j["inputs"] = pairsJson(inputs);
    j["outputs"] = pairsJson(outputs);
    j["wallTimeMs"] = wallTimeMs;
    return j.dump(2) + "\n";
}

RunManifest RunManifest::fromJson(const std::string& text) {
    json j = json::parse(text);
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.parameters = pairsFromJson(j.at("parameters"), "parameters");
    m.seed = j.at("seed").get<std::uint64_t>();
    m.inputs = pairsFromJson(j.at("inputs"), "inputs");
    m.outputs = pairsFromJson(j.at("outputs"), "outputs");
    m.wallTimeMs = j.at("wallTimeMs").get<std::int64_t>();
    return m;
}

} // namespace localforge
