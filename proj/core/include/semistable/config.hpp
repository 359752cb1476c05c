#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace semistable {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat sectioned key = value text.  Keys are addressed as "section.key";
// unknown keys are errors so that runs are fully pinned.
class KvConfig {
  public:
    KvConfig() = default;
    static KvConfig parse(const std::string& text);
    static KvConfig parse_file(const std::string& path);

    bool has(const std::string& dotted) const { return vals_.count(dotted) != 0; }
    double get_double(const std::string& dotted, double fallback) const;
    long get_long(const std::string& dotted, long fallback) const;
    std::string get_string(const std::string& dotted, const std::string& fallback) const;

    void set(const std::string& dotted, const std::string& value);
    const std::map<std::string, std::string>& entries() const { return vals_; }

    // throws ConfigError naming the first key outside the accepted set
    void restrict_keys(const std::set<std::string>& known) const;

    std::string dump() const;  // canonical text (sorted; reparses to itself)

  private:
    std::map<std::string, std::string> vals_;
    std::map<std::string, int> lines_;
};

}  // namespace semistable
