#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace localforge {

// 64-bit FNV-1a over raw bytes, rendered as 16 lowercase hex digits.
std::string fnv1a64Hex(const std::string& bytes);

// Digest of a file's full contents; throws std::runtime_error when the file
// cannot be read.
std::string fileDigest(const std::string& path);

// Record of one CLI invocation: the subcommand, the parameters that shape its
// outputs, the seed, and a digest of every file read and written. Execution
// knobs that cannot change outputs (thread count, tracing) are deliberately
// not recorded, so equal runs produce manifests equal up to wall time;
// sameRun checks exactly that. Replaying the command against inputs with
// matching digests must reproduce outputs with matching digests.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters; // key -> value, sorted
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> inputs;  // path -> digest, sorted
    std::vector<std::pair<std::string, std::string>> outputs; // path -> digest, sorted
    std::int64_t wallTimeMs = 0;

    // Insert keeping the vector sorted; duplicate keys are rejected.
    void addParameter(const std::string& key, const std::string& value);
    void addInput(const std::string& path, const std::string& digest);
    void addOutput(const std::string& path, const std::string& digest);

    // Field-wise equality ignoring wallTimeMs.
    bool sameRun(const RunManifest& other) const;

    std::string toJson() const;
    static RunManifest fromJson(const std::string& text);
};

} // namespace localforge
