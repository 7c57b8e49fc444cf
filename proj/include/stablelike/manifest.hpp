#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace stablelike::manifest {

// Canonical JSON rendering: object keys sorted, floats printed with %.17g,
// no insignificant whitespace. Stable across runs and platforms; used for
// hashing and for every artifact the tool writes.
std::string canonical_dump(const nlohmann::json& j, int indent = -1);

// FNV-1a 64-bit over bytes, rendered as 16 hex digits.
std::string fnv1a64_hex(const std::string& bytes);

// Hash of the canonicalized config document (whitespace/key-order invariant).
std::string config_hash(const std::string& config_json_text);

struct RunManifest {
    std::string tool_version;
    std::string config_hash;  // empty when the command takes no config
    std::string command;
    std::optional<std::uint64_t> seed;
    std::string timestamp;  // ISO-8601 UTC; honors SOURCE_DATE_EPOCH
};

RunManifest make_manifest(const std::string& command,
                          const std::string& config_json_text,
                          std::optional<std::uint64_t> seed);

nlohmann::json to_json(const RunManifest& m);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace stablelike::manifest
