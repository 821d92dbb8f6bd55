#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pqa/errors.hpp"

namespace pqa {

inline std::string hex_encode(const std::uint8_t* p, std::size_t n) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        s.push_back(digits[p[i] >> 4]);
        s.push_back(digits[p[i] & 0xf]);
    }
    return s;
}

inline std::string hex_encode(const std::vector<std::uint8_t>& v) {
    return hex_encode(v.data(), v.size());
}

inline int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

// Decodes hex, skipping ASCII whitespace. Throws ParseError on bad input.
inline std::vector<std::uint8_t> hex_decode(const std::string& s) {
    std::vector<std::uint8_t> out;
    out.reserve(s.size() / 2);
    int hi = -1;
    for (char c : s) {
        if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
        int v = hex_nibble(c);
        if (v < 0) throw ParseError("invalid hex character");
        if (hi < 0) {
            hi = v;
        } else {
            out.push_back(static_cast<std::uint8_t>((hi << 4) | v));
            hi = -1;
        }
    }
    if (hi >= 0) throw ParseError("odd-length hex string");
    return out;
}

}  // namespace pqa
