#include "semistable/manifest.hpp"

#include <fstream>

#include "json.hpp"

namespace semistable {

bool RunManifest::all_pass() const {
    for (const auto& v : verdicts)
        if (!v.pass) return false;
    return true;
}

void RunManifest::write(const std::string& path) const {
    nlohmann::json j;
    j["command"] = command;
    j["name"] = name;
    j["seed"] = seed;
    j["threads"] = threads;
    j["config_echo"] = config_echo;
    j["versions"] = {{"artifact", artifact_version}, {"compiler", compiler}};
    j["wall_seconds"] = wall_seconds;
    nlohmann::json outs = nlohmann::json::array();
    for (const auto& [p, h] : outputs) {
        char buf[20];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        outs.push_back({{"path", p}, {"fnv1a64", std::string(buf)}});
    }
    j["outputs"] = outs;
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : verdicts)
        vs.push_back({{"name", v.name}, {"pass", v.pass}, {"value", v.value},
                      {"threshold", v.threshold}});
    j["verdicts"] = vs;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << j.dump(2) << "\n";
}

RunManifest RunManifest::read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read manifest: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.name = j.at("name").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.threads = j.at("threads").get<int>();
    m.config_echo = j.at("config_echo").get<std::string>();
    m.artifact_version = j.at("versions").at("artifact").get<std::string>();
    m.compiler = j.at("versions").at("compiler").get<std::string>();
    m.wall_seconds = j.at("wall_seconds").get<double>();
    for (const auto& o : j.at("outputs")) {
        std::string hex = o.at("fnv1a64").get<std::string>();
        m.outputs.emplace_back(o.at("path").get<std::string>(),
                               std::stoull(hex, nullptr, 16));
    }
    for (const auto& v : j.at("verdicts")) {
        Verdict vd;
        vd.name = v.at("name").get<std::string>();
        vd.pass = v.at("pass").get<bool>();
        vd.value = v.at("value").get<double>();
        vd.threshold = v.at("threshold").get<double>();
        m.verdicts.push_back(vd);
    }
    return m;
}

}  // namespace semistable
