#include "stablelike/manifest.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>

#include "stablelike/errors.hpp"

namespace stablelike::manifest {

namespace {

void dump_value(const nlohmann::json& j, std::string& out, int indent, int depth) {
    const auto pad = [&](int d) {
        if (indent >= 0) {
            out += '\n';
            out.append(static_cast<std::size_t>(indent) * d, ' ');
        }
    };
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {  // nlohmann sorts keys
                if (!first) out += ',';
                first = false;
                pad(depth + 1);
                out += nlohmann::json(it.key()).dump();
                out += indent >= 0 ? ": " : ":";
                dump_value(it.value(), out, indent, depth + 1);
            }
            if (!first) pad(depth);
            out += '}';
            return;
        }
        case nlohmann::json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ',';
                first = false;
                pad(depth + 1);
                dump_value(v, out, indent, depth + 1);
            }
            if (!first) pad(depth);
            out += ']';
            return;
        }
        case nlohmann::json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v))
                throw DomainError("canonical JSON cannot hold non-finite numbers");
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out += buf;
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string canonical_dump(const nlohmann::json& j, int indent) {
    std::string out;
    dump_value(j, out, indent, 0);
    if (indent >= 0) out += '\n';
    return out;
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char b : bytes) {
        hash ^= b;
        hash *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string config_hash(const std::string& config_json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(config_json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("config hash: invalid JSON: ") + e.what());
    }
    return fnv1a64_hex(canonical_dump(j));
}

RunManifest make_manifest(const std::string& command,
                          const std::string& config_json_text,
                          std::optional<std::uint64_t> seed) {
    RunManifest m;
    m.tool_version = kToolVersion;
    if (!config_json_text.empty()) m.config_hash = config_hash(config_json_text);
    m.command = command;
    m.seed = seed;
    std::time_t now = std::time(nullptr);
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"))
        now = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    m.timestamp = buf;
    return m;
}

nlohmann::json to_json(const RunManifest& m) {
    nlohmann::json j;
    j["tool_version"] = m.tool_version;
    j["config_hash"] = m.config_hash;
    j["command"] = m.command;
    if (m.seed)
        j["seed"] = *m.seed;
    else
        j["seed"] = nullptr;
    j["timestamp"] = m.timestamp;
    return j;
}

}  // namespace stablelike::manifest
