#pragma once

#include <cstdint>
#include <fstream>
#include <string>

namespace semistable {

inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a64_str(const std::string& s) {
    return fnv1a64(s.data(), s.size());
}

// Checksum of a file's bytes; returns false if the file cannot be read.
inline bool fnv1a64_file(const std::string& path, std::uint64_t& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 15];
    while (in.read(buf, sizeof buf) || in.gcount() > 0)
        h = fnv1a64(buf, static_cast<std::size_t>(in.gcount()), h);
    out = h;
    return true;
}

}  // namespace semistable
