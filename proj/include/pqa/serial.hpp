#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "pqa/errors.hpp"
#include "pqa/hex.hpp"

namespace pqa {

// Append-only byte buffer used by every file/wire format in the library.
// Integers are little-endian fixed width unless a _be variant is used.
class ByteWriter {
public:
    void magic(const char tag[8]) { raw(reinterpret_cast<const std::uint8_t*>(tag), 8); }

    void u8(std::uint8_t v) { buf_.push_back(v); }

    void u32le(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    void u64le(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    void u32be(std::uint32_t v) {
        for (int i = 3; i >= 0; --i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    void u64be(std::uint64_t v) {
        for (int i = 7; i >= 0; --i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    void raw(const std::uint8_t* p, std::size_t n) { buf_.insert(buf_.end(), p, p + n); }
    void raw(const std::vector<std::uint8_t>& v) { raw(v.data(), v.size()); }

    const std::vector<std::uint8_t>& bytes() const { return buf_; }
    std::vector<std::uint8_t> take() { return std::move(buf_); }

private:
    std::vector<std::uint8_t> buf_;
};

class ByteReader {
public:
    ByteReader(const std::uint8_t* p, std::size_t n) : p_(p), n_(n) {}
    explicit ByteReader(const std::vector<std::uint8_t>& v) : p_(v.data()), n_(v.size()) {}

    void expect_magic(const char tag[8]) {
        if (n_ - pos_ < 8 || std::memcmp(p_ + pos_, tag, 8) != 0)
            throw ParseError(std::string("bad magic, expected ") + std::string(tag, 8));
        pos_ += 8;
    }

    bool peek_magic(const char tag[8]) const {
        return n_ - pos_ >= 8 && std::memcmp(p_ + pos_, tag, 8) == 0;
    }

    std::uint8_t u8() {
        need(1);
        return p_[pos_++];
    }

    std::uint32_t u32le() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p_[pos_ + i]) << (8 * i);
        pos_ += 4;
        return v;
    }

    std::uint64_t u64le() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p_[pos_ + i]) << (8 * i);
        pos_ += 8;
        return v;
    }

    std::uint32_t u32be() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | p_[pos_ + i];
        pos_ += 4;
        return v;
    }

    std::uint64_t u64be() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | p_[pos_ + i];
        pos_ += 8;
        return v;
    }

    std::vector<std::uint8_t> raw(std::size_t n) {
        need(n);
        std::vector<std::uint8_t> out(p_ + pos_, p_ + pos_ + n);
        pos_ += n;
        return out;
    }

    std::size_t remaining() const { return n_ - pos_; }
    void done() const {
        if (pos_ != n_) throw ParseError("trailing bytes after artifact");
    }

private:
    void need(std::size_t n) const {
        if (n_ - pos_ < n) throw ParseError("truncated artifact");
    }
    const std::uint8_t* p_;
    std::size_t n_;
    std::size_t pos_ = 0;
};

inline void write_file(const std::string& path, const std::vector<std::uint8_t>& data) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open file for writing: " + path);
    f.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
    if (!f) throw ParseError("write failed: " + path);
}

inline std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open file: " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
    return data;
}

// Reads an artifact file that may be raw binary or hex-armored text.
// Detection: binary artifacts start with an ASCII magic like "PQALWE01";
// if the first bytes are not printable magic, try hex decoding.
inline std::vector<std::uint8_t> read_artifact(const std::string& path) {
    std::vector<std::uint8_t> data = read_file(path);
    if (data.size() >= 3 && data[0] == 'P' && data[1] == 'Q' && data[2] == 'A') return data;
    std::string text(data.begin(), data.end());
    std::vector<std::uint8_t> decoded = hex_decode(text);
    return decoded;
}

}  // namespace pqa
