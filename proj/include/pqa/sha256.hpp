#pragma once

// SHA-256 (FIPS 180-4), HMAC-SHA-256 (RFC 2104) and a counter-mode PRG on top
// of HMAC. Self-contained so hashing-heavy workloads (many-time signatures do
// hundreds of thousands of short hashes) avoid per-call library overhead.
// Verified against FIPS/RFC test vectors in the unit suite.

#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

namespace pqa {

using Digest = std::array<std::uint8_t, 32>;

class Sha256 {
public:
    Sha256() { reset(); }

    void reset() {
        state_ = {0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u, 0xa54ff53au,
                  0x510e527fu, 0x9b05688cu, 0x1f83d9abu, 0x5be0cd19u};
        total_ = 0;
        buflen_ = 0;
    }

    void update(const std::uint8_t* p, std::size_t n) {
        total_ += n;
        if (buflen_ > 0) {
            std::size_t take = std::min(n, std::size_t{64} - buflen_);
            std::memcpy(buf_ + buflen_, p, take);
            buflen_ += take;
            p += take;
            n -= take;
            if (buflen_ == 64) {
                compress(buf_);
                buflen_ = 0;
            }
        }
        while (n >= 64) {
            compress(p);
            p += 64;
            n -= 64;
        }
        if (n > 0) {
            std::memcpy(buf_, p, n);
            buflen_ = n;
        }
    }

    void update(const std::vector<std::uint8_t>& v) { update(v.data(), v.size()); }
    void update(const std::string& s) {
        update(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
    }

    Digest finish() {
        std::uint64_t bitlen = total_ * 8;
        std::uint8_t pad = 0x80;
        update(&pad, 1);
        std::uint8_t zero = 0;
        while (buflen_ != 56) update(&zero, 1);
        std::uint8_t len[8];
        for (int i = 0; i < 8; ++i) len[i] = static_cast<std::uint8_t>(bitlen >> (56 - 8 * i));
        update(len, 8);
        Digest out;
        for (int i = 0; i < 8; ++i) {
            out[4 * i + 0] = static_cast<std::uint8_t>(state_[i] >> 24);
            out[4 * i + 1] = static_cast<std::uint8_t>(state_[i] >> 16);
            out[4 * i + 2] = static_cast<std::uint8_t>(state_[i] >> 8);
            out[4 * i + 3] = static_cast<std::uint8_t>(state_[i]);
        }
        return out;
    }

private:
    static std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

    void compress(const std::uint8_t* p) {
        static const std::uint32_t K[64] = {
            0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
            0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
            0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
            0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
            0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
            0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
            0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
            0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
            0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
            0xc67178f2};
        std::uint32_t w[64];
        for (int i = 0; i < 16; ++i) {
            w[i] = (std::uint32_t{p[4 * i]} << 24) | (std::uint32_t{p[4 * i + 1]} << 16) |
                   (std::uint32_t{p[4 * i + 2]} << 8) | std::uint32_t{p[4 * i + 3]};
        }
        for (int i = 16; i < 64; ++i) {
            std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        std::uint32_t a = state_[0], b = state_[1], c = state_[2], d = state_[3];
        std::uint32_t e = state_[4], f = state_[5], g = state_[6], h = state_[7];
        for (int i = 0; i < 64; ++i) {
            std::uint32_t S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            std::uint32_t ch = (e & f) ^ (~e & g);
            std::uint32_t t1 = h + S1 + ch + K[i] + w[i];
            std::uint32_t S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            std::uint32_t t2 = S0 + maj;
            h = g; g = f; f = e; e = d + t1;
            d = c; c = b; b = a; a = t1 + t2;
        }
        state_[0] += a; state_[1] += b; state_[2] += c; state_[3] += d;
        state_[4] += e; state_[5] += f; state_[6] += g; state_[7] += h;
    }

    std::array<std::uint32_t, 8> state_;
    std::uint8_t buf_[64];
    std::size_t buflen_ = 0;
    std::uint64_t total_ = 0;
};

inline Digest sha256(const std::uint8_t* p, std::size_t n) {
    Sha256 h;
    h.update(p, n);
    return h.finish();
}

inline Digest sha256(const std::vector<std::uint8_t>& v) { return sha256(v.data(), v.size()); }

inline Digest sha256(const std::string& s) {
    return sha256(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
}

// HMAC-SHA-256 with a reusable key schedule: the padded-key compressions are
// done once at construction, so each mac() call costs two compressions for
// short messages.
class HmacSha256 {
public:
    HmacSha256(const std::uint8_t* key, std::size_t keylen) {
        std::uint8_t k[64] = {0};
        if (keylen > 64) {
            Digest kd = sha256(key, keylen);
            std::memcpy(k, kd.data(), 32);
        } else {
            std::memcpy(k, key, keylen);
        }
        std::uint8_t pad[64];
        for (int i = 0; i < 64; ++i) pad[i] = k[i] ^ 0x36;
        inner_.update(pad, 64);
        for (int i = 0; i < 64; ++i) pad[i] = k[i] ^ 0x5c;
        outer_.update(pad, 64);
    }

    Digest mac(const std::uint8_t* msg, std::size_t msglen) const {
        Sha256 inner = inner_;
        inner.update(msg, msglen);
        Digest id = inner.finish();
        Sha256 outer = outer_;
        outer.update(id.data(), id.size());
        return outer.finish();
    }

private:
    Sha256 inner_, outer_;
};

inline Digest hmac_sha256(const std::uint8_t* key, std::size_t keylen, const std::uint8_t* msg,
                          std::size_t msglen) {
    return HmacSha256(key, keylen).mac(msg, msglen);
}

inline Digest hmac_sha256(const std::vector<std::uint8_t>& key,
                          const std::vector<std::uint8_t>& msg) {
    return hmac_sha256(key.data(), key.size(), msg.data(), msg.size());
}

// Deterministic expander: block i is HMAC(seed, BE64(i)). Used as the PRG that
// derives signature key material from per-node seeds.
inline std::vector<std::uint8_t> prg_expand(const std::uint8_t* seed, std::size_t seedlen,
                                            std::size_t outlen) {
    std::vector<std::uint8_t> out;
    out.reserve(outlen + 32);
    HmacSha256 h(seed, seedlen);
    std::uint64_t counter = 0;
    while (out.size() < outlen) {
        std::uint8_t ctr[8];
        for (int i = 0; i < 8; ++i) ctr[i] = static_cast<std::uint8_t>(counter >> (56 - 8 * i));
        Digest block = h.mac(ctr, 8);
        out.insert(out.end(), block.begin(), block.end());
        ++counter;
    }
    out.resize(outlen);
    return out;
}

}  // namespace pqa
