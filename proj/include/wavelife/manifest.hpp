#pragma once

// Run manifest written next to every CLI output: config snapshot, seed,
// tool version, timing, and a digest per output file. Reruns with identical
// inputs reproduce identical file digests (timing is informational).

#include <wavelife/hash.hpp>
#include <wavelife/version.hpp>

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wavelife {

struct RunManifest {
    nlohmann::json config_snapshot;
    std::uint64_t seed = 0;
    double timing_ms = 0.0;
    std::vector<std::pair<std::string, std::string>> outputs; // path, digest

    void add_output(const std::string& path) { outputs.emplace_back(path, file_digest_hex(path)); }

    void write(const std::string& path) const {
        nlohmann::json j;
        j["tool_version"] = version_string;
        j["config"] = config_snapshot;
        j["seed"] = seed;
        j["timing_ms"] = timing_ms;
        auto& outs = j["outputs"] = nlohmann::json::array();
        for (const auto& [file, digest] : outputs)
            outs.push_back({{"file", file}, {"fnv1a64", digest}});
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write manifest: " + path);
        out << j.dump(2) << '\n';
    }
};

} // namespace wavelife
