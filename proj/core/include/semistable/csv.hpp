#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace semistable {

// CSV writer with a fixed float format (17 significant digits) so that
// identical values always serialize to identical bytes.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header)
        : out_(path, std::ios::binary), ncols_(header.size()) {
        if (!out_) throw std::runtime_error("cannot open CSV for writing: " + path);
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) out_ << ',';
            out_ << header[i];
        }
        out_ << '\n';
    }

    static std::string fmt(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    void row(const std::vector<double>& vals) {
        if (vals.size() != ncols_) throw std::runtime_error("CSV row arity mismatch");
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) out_ << ',';
            out_ << fmt(vals[i]);
        }
        out_ << '\n';
    }

    void row_mixed(const std::vector<std::string>& vals) {
        if (vals.size() != ncols_) throw std::runtime_error("CSV row arity mismatch");
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) out_ << ',';
            out_ << vals[i];
        }
        out_ << '\n';
    }

  private:
    std::ofstream out_;
    std::size_t ncols_;
};

}  // namespace semistable
