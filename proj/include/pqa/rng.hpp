#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace pqa {

// Seedable randomness source passed explicitly to every randomized operation.
// Wraps std::mt19937_64 (whose output sequence is fixed by the standard) and
// does bounded sampling by rejection, so identical seeds give identical
// results on every platform. No global RNG exists anywhere in the library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, n). n = 0 is a caller bug; returns 0.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        // rejection sampling over the smallest covering power-of-two range
        std::uint64_t mask = ~std::uint64_t{0};
        std::uint64_t limit = n - 1;
        int bits = 0;
        while (limit >> bits) ++bits;
        mask = (bits >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
        for (;;) {
            std::uint64_t v = eng_() & mask;
            if (v < n) return v;
        }
    }

    // Uniform in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool bit() { return (eng_() >> 63) != 0; }

    // Uniform double in [0, 1) with 53 bits of entropy.
    double real01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    std::vector<std::uint8_t> bytes(std::size_t n) {
        std::vector<std::uint8_t> out(n);
        fill_bytes(out.data(), n);
        return out;
    }

    void fill_bytes(std::uint8_t* p, std::size_t n) {
        std::size_t i = 0;
        while (i + 8 <= n) {
            std::uint64_t v = eng_();
            for (int k = 0; k < 8; ++k) p[i++] = static_cast<std::uint8_t>(v >> (8 * k));
        }
        if (i < n) {
            std::uint64_t v = eng_();
            while (i < n) {
                p[i++] = static_cast<std::uint8_t>(v);
                v >>= 8;
            }
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace pqa
