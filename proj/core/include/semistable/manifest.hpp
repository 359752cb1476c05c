#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semistable/config.hpp"

namespace semistable {

struct Verdict {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
};

// Record of one CLI run: full config echo, produced files with checksums,
// and the tolerance verdicts.  Replaying the manifest must reproduce the
// file checksums byte for byte.
struct RunManifest {
    std::string command;         // "figure" or "experiment"
    std::string name;            // experiment name or figure id
    std::uint64_t seed = 0;
    int threads = 1;
    std::string config_echo;     // canonical config text
    std::string artifact_version;
    std::string compiler;
    double wall_seconds = 0.0;
    std::vector<std::pair<std::string, std::uint64_t>> outputs;  // path, fnv1a64
    std::vector<Verdict> verdicts;

    bool all_pass() const;
    void write(const std::string& path) const;
    static RunManifest read(const std::string& path);
};

struct ReplayReport {
    bool ok = false;
    std::vector<std::string> mismatched;
    std::vector<std::string> missing;
};

}  // namespace semistable
