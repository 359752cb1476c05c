#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semistable/config.hpp"
#include "semistable/manifest.hpp"

namespace semistable {

struct ExperimentResult {
    std::string name;
    std::vector<Verdict> verdicts;
    std::vector<std::string> files;  // paths written under out_dir
    bool pass = true;

    void add(const std::string& vname, bool ok, double value, double threshold) {
        verdicts.push_back({vname, ok, value, threshold});
        pass = pass && ok;
    }
};

// Experiment names accepted by the command line surface.
const std::vector<std::string>& experiment_names();

// Full set including the acceptance-only experiments.
const std::vector<std::string>& all_experiment_names();

// Runs a named experiment; writes CSV outputs under out_dir (created if
// needed). Unknown config keys raise ConfigError.
ExperimentResult run_experiment(const std::string& name, const KvConfig& cfg,
                                std::uint64_t seed, const std::string& out_dir,
                                int threads = 1);

}  // namespace semistable
