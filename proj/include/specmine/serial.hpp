#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "specmine/errors.hpp"

// Small helpers shared by the model/table persistence code. All formats
// are line-oriented text; floating-point values are written as C hexfloat
// so a save/load round-trip is bitwise exact.
namespace specmine::serial {

inline std::string hex(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

inline double unhex(std::string_view s, std::string_view context) {
    std::string tmp(s);
    char* end = nullptr;
    double v = std::strtod(tmp.c_str(), &end);
    if (end == tmp.c_str() || (end && *end != '\0')) {
        throw FormatError("bad numeric field in " + std::string(context) +
                          ": '" + tmp + "'");
    }
    return v;
}

inline long long to_int(std::string_view s, std::string_view context) {
    std::string tmp(s);
    char* end = nullptr;
    long long v = std::strtoll(tmp.c_str(), &end, 10);
    if (end == tmp.c_str() || (end && *end != '\0')) {
        throw FormatError("bad integer field in " + std::string(context) +
                          ": '" + tmp + "'");
    }
    return v;
}

inline uint64_t to_u64(std::string_view s, std::string_view context) {
    std::string tmp(s);
    char* end = nullptr;
    unsigned long long v = std::strtoull(tmp.c_str(), &end, 10);
    if (end == tmp.c_str() || (end && *end != '\0')) {
        throw FormatError("bad integer field in " + std::string(context) +
                          ": '" + tmp + "'");
    }
    return v;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

inline std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    return in;
}

inline std::string read_line(std::istream& in, std::string_view context) {
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("unexpected end of file while reading " +
                          std::string(context));
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

inline std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream iss{std::string(line)};
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

// Reads a "key v1 v2 ..." line, enforcing the key and the value count.
inline std::vector<std::string> read_fields(std::istream& in,
                                            std::string_view key,
                                            size_t count) {
    std::string line = read_line(in, key);
    auto toks = split_ws(line);
    if (toks.empty() || toks[0] != key) {
        throw FormatError("expected '" + std::string(key) + "' line, got: " +
                          line);
    }
    if (toks.size() != count + 1) {
        throw FormatError("expected " + std::to_string(count) +
                          " values for '" + std::string(key) + "', got " +
                          std::to_string(toks.size() - 1));
    }
    return {toks.begin() + 1, toks.end()};
}

inline void expect_header(std::istream& in, std::string_view magic) {
    std::string line = read_line(in, "header");
    if (line != magic) {
        throw FormatError("bad or mismatched file header: expected '" +
                          std::string(magic) + "', got '" + line + "'");
    }
}

}  // namespace specmine::serial
