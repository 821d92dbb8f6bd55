#pragma once

// F_{p^2} = F_p[i]/(i^2 + 1) for primes p = 3 (mod 4) (so -1 is a
// non-residue and the extension is a field). Elements carry their modulus;
// all arithmetic is exact 64-bit (toy primes are far below 2^20).

#include <cstdint>
#include <optional>

#include "pqa/errors.hpp"
#include "pqa/numth.hpp"

namespace pqa::isogeny {

struct Fp2 {
    std::uint64_t p = 0;
    std::uint64_t c0 = 0, c1 = 0;  // value c0 + c1*i

    Fp2() = default;
    Fp2(std::uint64_t p_, std::uint64_t a, std::uint64_t b) : p(p_), c0(a % p_), c1(b % p_) {}

    static Fp2 zero(std::uint64_t p) { return Fp2(p, 0, 0); }
    static Fp2 one(std::uint64_t p) { return Fp2(p, 1, 0); }
    static Fp2 from_int(std::uint64_t p, std::int64_t v) {
        std::int64_t m = static_cast<std::int64_t>(p);
        return Fp2(p, static_cast<std::uint64_t>(((v % m) + m) % m), 0);
    }

    bool is_zero() const { return c0 == 0 && c1 == 0; }
    bool operator==(const Fp2& o) const { return p == o.p && c0 == o.c0 && c1 == o.c1; }
    bool operator!=(const Fp2& o) const { return !(*this == o); }
};

namespace detail {
inline void check_same_field(const Fp2& a, const Fp2& b) {
    if (a.p != b.p) throw DimensionError("Fp2: mixed moduli");
}
}  // namespace detail

inline Fp2 add(const Fp2& a, const Fp2& b) {
    detail::check_same_field(a, b);
    return Fp2(a.p, (a.c0 + b.c0) % a.p, (a.c1 + b.c1) % a.p);
}

inline Fp2 sub(const Fp2& a, const Fp2& b) {
    detail::check_same_field(a, b);
    return Fp2(a.p, (a.c0 + a.p - b.c0) % a.p, (a.c1 + a.p - b.c1) % a.p);
}

inline Fp2 neg(const Fp2& a) {
    return Fp2(a.p, a.c0 == 0 ? 0 : a.p - a.c0, a.c1 == 0 ? 0 : a.p - a.c1);
}

inline Fp2 mul(const Fp2& a, const Fp2& b) {
    detail::check_same_field(a, b);
    const std::uint64_t p = a.p;
    // (a0 + a1 i)(b0 + b1 i) = a0b0 - a1b1 + (a0b1 + a1b0) i
    std::uint64_t re = (a.c0 * b.c0 % p + p - a.c1 * b.c1 % p) % p;
    std::uint64_t im = (a.c0 * b.c1 + a.c1 * b.c0) % p;
    return Fp2(p, re, im);
}

inline Fp2 mul_int(const Fp2& a, std::uint64_t k) {
    return Fp2(a.p, a.c0 * (k % a.p) % a.p, a.c1 * (k % a.p) % a.p);
}

inline Fp2 square(const Fp2& a) { return mul(a, a); }

inline Fp2 pow(Fp2 a, std::uint64_t e) {
    Fp2 r = Fp2::one(a.p);
    while (e) {
        if (e & 1) r = mul(r, a);
        a = square(a);
        e >>= 1;
    }
    return r;
}

inline Fp2 inv(const Fp2& a) {
    if (a.is_zero()) throw ValueError("Fp2: inverse of zero");
    const std::uint64_t p = a.p;
    // (c0 + c1 i)^{-1} = (c0 - c1 i) / (c0^2 + c1^2)
    std::uint64_t norm = (a.c0 * a.c0 + a.c1 * a.c1) % p;
    std::uint64_t ninv = pow_mod(norm, p - 2, p);
    return Fp2(p, a.c0 * ninv % p, (p - a.c1) % p * ninv % p);
}

inline Fp2 div(const Fp2& a, const Fp2& b) { return mul(a, inv(b)); }

// Square root for p = 3 (mod 4); every candidate is verified by squaring, so
// nullopt is returned exactly for non-squares.
inline std::optional<Fp2> sqrt(const Fp2& a) {
    const std::uint64_t p = a.p;
    if (a.is_zero()) return Fp2::zero(p);
    auto sqrt_fp = [&](std::uint64_t v) -> std::optional<std::uint64_t> {
        std::uint64_t r = pow_mod(v, (p + 1) / 4, p);
        if (r * r % p == v % p) return r;
        return std::nullopt;
    };
    if (a.c1 == 0) {
        if (auto r = sqrt_fp(a.c0)) return Fp2(p, *r, 0);
        if (auto r = sqrt_fp(p - a.c0)) return Fp2(p, 0, *r);  // a = -s^2 -> sqrt = s*i
        return std::nullopt;
    }
    std::uint64_t norm = (a.c0 * a.c0 + a.c1 * a.c1) % p;
    auto t = sqrt_fp(norm);
    if (!t) return std::nullopt;
    const std::uint64_t inv2 = pow_mod(2, p - 2, p);
    for (std::uint64_t tt : {*t, p - *t}) {
        std::uint64_t u = (a.c0 + tt) % p * inv2 % p;
        auto x0 = sqrt_fp(u);
        if (!x0 || *x0 == 0) continue;
        std::uint64_t y0 = a.c1 * pow_mod(2 * *x0 % p, p - 2, p) % p;
        Fp2 cand(p, *x0, y0);
        if (square(cand) == a) return cand;
    }
    return std::nullopt;
}

inline bool is_square(const Fp2& a) { return sqrt(a).has_value(); }

}  // namespace pqa::isogeny
