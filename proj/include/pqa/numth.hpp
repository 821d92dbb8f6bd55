#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "pqa/errors.hpp"

namespace pqa {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                            31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                            31ull, 37ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// Extended Euclid; returns g = gcd(a, b) and x with a*x = g (mod b).
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t t = 0, new_t = 1, r = m, new_r = ((a % m) + m) % m;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw ValueError("mod_inverse: not invertible");
    return ((t % m) + m) % m;
}

inline bool is_perfect_power(std::uint64_t n) {
    if (n < 4) return false;
    for (int k = 2; (1ull << k) <= n; ++k) {
        // integer k-th root by binary search
        std::uint64_t lo = 2, hi = 1ull << (64 / k);
        while (lo <= hi) {
            std::uint64_t mid = lo + (hi - lo) / 2;
            unsigned __int128 pw = 1;
            bool over = false;
            for (int i = 0; i < k; ++i) {
                pw *= mid;
                if (pw > n) {
                    over = true;
                    break;
                }
            }
            if (!over && pw == n) return true;
            if (over || pw > n)
                hi = mid - 1;
            else
                lo = mid + 1;
        }
    }
    return false;
}

// Convergents p/q of the continued fraction of num/den with q <= q_bound.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> convergents(std::uint64_t num,
                                                                        std::uint64_t den,
                                                                        std::uint64_t q_bound) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    std::uint64_t p_prev = 1, q_prev = 0, p_cur = 0, q_cur = 1;
    // p_cur/q_cur tracks the convergent before the first coefficient is applied
    std::uint64_t a = num, b = den;
    while (b != 0) {
        std::uint64_t coef = a / b;
        std::uint64_t p_next = coef * p_prev + p_cur;
        std::uint64_t q_next = coef * q_prev + q_cur;
        if (q_next > q_bound) break;
        out.emplace_back(p_next, q_next);
        p_cur = p_prev;
        q_cur = q_prev;
        p_prev = p_next;
        q_prev = q_next;
        std::uint64_t r = a % b;
        a = b;
        b = r;
    }
    return out;
}

}  // namespace pqa
