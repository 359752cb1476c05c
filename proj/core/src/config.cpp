#include "semistable/config.hpp"

#include <fstream>
#include <sstream>

namespace semistable {

namespace {
std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}
}  // namespace

KvConfig KvConfig::parse(const std::string& text) {
    KvConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (section.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
        std::string dotted = section + "." + key;
        if (cfg.vals_.count(dotted))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key " + dotted);
        cfg.vals_[dotted] = val;
        cfg.lines_[dotted] = lineno;
    }
    return cfg;
}

KvConfig KvConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

double KvConfig::get_double(const std::string& dotted, double fallback) const {
    auto it = vals_.find(dotted);
    if (it == vals_.end()) return fallback;
    try {
        std::size_t pos = 0;
        double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (...) {
        throw ConfigError("key " + dotted + " (line " + std::to_string(lines_.at(dotted)) +
                          "): not a number: " + it->second);
    }
}

long KvConfig::get_long(const std::string& dotted, long fallback) const {
    auto it = vals_.find(dotted);
    if (it == vals_.end()) return fallback;
    try {
        std::size_t pos = 0;
        long v = std::stol(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (...) {
        throw ConfigError("key " + dotted + " (line " + std::to_string(lines_.at(dotted)) +
                          "): not an integer: " + it->second);
    }
}

std::string KvConfig::get_string(const std::string& dotted, const std::string& fallback) const {
    auto it = vals_.find(dotted);
    return it == vals_.end() ? fallback : it->second;
}

void KvConfig::set(const std::string& dotted, const std::string& value) {
    vals_[dotted] = value;
    lines_[dotted] = 0;
}

void KvConfig::restrict_keys(const std::set<std::string>& known) const {
    for (const auto& [k, v] : vals_) {
        if (!known.count(k)) {
            int line = lines_.count(k) ? lines_.at(k) : 0;
            throw ConfigError("unknown key " + k + " (line " + std::to_string(line) + ")");
        }
    }
}

std::string KvConfig::dump() const {
    std::string cur_section;
    std::ostringstream out;
    for (const auto& [k, v] : vals_) {
        std::size_t dot = k.find('.');
        std::string sec = k.substr(0, dot), key = k.substr(dot + 1);
        if (sec != cur_section) {
            out << "[" << sec << "]\n";
            cur_section = sec;
        }
        out << key << " = " << v << "\n";
    }
    return out.str();
}

}  // namespace semistable
