// Command line surface: regenerates the figure datasets, runs the named
// verification experiments with manifests, and replays manifests for
// byte-identical outputs.
//
// Exit codes: 0 pass, 1 tolerance failure, 2 usage/config error, 3 numeric
// failure inside the quadrature machinery.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "semistable/config.hpp"
#include "semistable/experiments.hpp"
#include "semistable/figures.hpp"
#include "semistable/fnv.hpp"
#include "semistable/manifest.hpp"
#include "semistable/semistable_law.hpp"

namespace fs = std::filesystem;
using namespace semistable;

namespace {

constexpr const char* kVersion = "0.1.0";

RunManifest base_manifest(const std::string& command, const std::string& name,
                          std::uint64_t seed, int threads, const std::string& config_echo) {
    RunManifest m;
    m.command = command;
    m.name = name;
    m.seed = seed;
    m.threads = threads;
    m.config_echo = config_echo;
    m.artifact_version = kVersion;
    m.compiler = __VERSION__;
    return m;
}

void checksum_outputs(RunManifest& m, const std::vector<std::string>& files) {
    for (const auto& f : files) {
        std::uint64_t h = 0;
        if (!fnv1a64_file(f, h)) throw std::runtime_error("missing output file: " + f);
        m.outputs.emplace_back(f, h);
    }
}

int run_figure_cmd(int id, const std::string& out, std::uint64_t seed, int threads) {
    auto t0 = std::chrono::steady_clock::now();
    auto files = write_figure(id, out);
    RunManifest m = base_manifest("figure", std::to_string(id), seed, threads, "");
    checksum_outputs(m, files);
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.write(out + "/manifest_fig" + std::to_string(id) + ".json");
    std::printf("figure %d: %zu file(s) written under %s\n", id, files.size(), out.c_str());
    return 0;
}

int run_experiment_cmd(const std::string& name, const std::string& config_path,
                       std::uint64_t seed, const std::string& out, int threads) {
    KvConfig cfg;
    if (!config_path.empty()) cfg = KvConfig::parse_file(config_path);
    auto t0 = std::chrono::steady_clock::now();
    ExperimentResult res = run_experiment(name, cfg, seed, out, threads);
    RunManifest m = base_manifest("experiment", name, seed, threads, cfg.dump());
    m.verdicts = res.verdicts;
    checksum_outputs(m, res.files);
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.write(out + "/manifest_" + name + ".json");
    for (const auto& v : res.verdicts)
        std::printf("[%s] %s: value=%.6g threshold=%.6g\n", v.pass ? "PASS" : "FAIL",
                    v.name.c_str(), v.value, v.threshold);
    return res.pass ? 0 : 1;
}

int run_replay_cmd(const std::string& manifest_path) {
    RunManifest m = RunManifest::read(manifest_path);
    fs::path tmp = fs::temp_directory_path() /
                   ("semistable-replay-" + std::to_string(fnv1a64_str(manifest_path)));
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    std::vector<std::string> files;
    if (m.command == "figure") {
        files = write_figure(std::stoi(m.name), tmp.string());
    } else {
        KvConfig cfg = KvConfig::parse(m.config_echo);
        ExperimentResult res = run_experiment(m.name, cfg, m.seed, tmp.string(), m.threads);
        files = res.files;
    }
    ReplayReport rep;
    rep.ok = true;
    if (files.size() != m.outputs.size()) rep.ok = false;
    for (std::size_t i = 0; i < std::min(files.size(), m.outputs.size()); ++i) {
        std::uint64_t h = 0;
        if (!fnv1a64_file(files[i], h)) {
            rep.missing.push_back(files[i]);
            rep.ok = false;
            continue;
        }
        if (h != m.outputs[i].second) {
            rep.mismatched.push_back(m.outputs[i].first);
            rep.ok = false;
        }
    }
    if (rep.ok) {
        std::printf("replay OK: %zu file(s) byte-identical\n", files.size());
        return 0;
    }
    for (const auto& f : rep.missing) std::fprintf(stderr, "missing: %s\n", f.c_str());
    for (const auto& f : rep.mismatched) std::fprintf(stderr, "checksum mismatch: %s\n", f.c_str());
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semistable occupation-time numerics"};
    app.require_subcommand(1);

    int fig_id = 1;
    std::string out = "out";
    std::uint64_t seed = 20240501;
    int threads = 1;
    auto* fig = app.add_subcommand("figure", "write a figure dataset (CSV)");
    fig->add_option("--id", fig_id, "figure id 1..4")->required()->check(CLI::Range(1, 4));
    fig->add_option("--out", out, "output directory");
    fig->add_option("--seed", seed, "seed (recorded; figures are deterministic)");
    fig->add_option("--threads", threads, "worker threads (never affects results)");

    std::string exp_name, config_path;
    auto* exp = app.add_subcommand("experiment", "run a named verification experiment");
    exp->add_option("--name,--experiment", exp_name, "experiment name")->required();
    exp->add_option("--config", config_path, "config file (flat sectioned text)");
    exp->add_option("--seed", seed, "base seed");
    exp->add_option("--out", out, "output directory");
    exp->add_option("--threads", threads, "worker threads (never affects results)");

    std::string manifest_path;
    auto* rep = app.add_subcommand("replay", "re-run a manifest and compare checksums");
    rep->add_option("--manifest", manifest_path, "manifest path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (fig->parsed()) return run_figure_cmd(fig_id, out, seed, threads);
        if (exp->parsed()) {
            const auto& names = experiment_names();
            if (std::find(names.begin(), names.end(), exp_name) == names.end()) {
                std::fprintf(stderr, "unknown experiment '%s'; known:", exp_name.c_str());
                for (const auto& n : names) std::fprintf(stderr, " %s", n.c_str());
                std::fprintf(stderr, "\n");
                return 2;
            }
            return run_experiment_cmd(exp_name, config_path, seed, out, threads);
        }
        if (rep->parsed()) return run_replay_cmd(manifest_path);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const QuadratureError& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
