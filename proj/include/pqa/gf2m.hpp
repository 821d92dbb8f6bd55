#pragma once

// F_{2^m} arithmetic (2 <= m <= 13) and polynomials over it: the algebra
// underneath binary Goppa codes. Field elements are m-bit integers; the
// reduction modulus comes from a fixed table of primitive polynomials and is
// re-verified irreducible at construction by trial division.

#include <cstdint>
#include <vector>

#include "pqa/errors.hpp"
#include "pqa/rng.hpp"

namespace pqa::codecrypt {

// degree-m primitive polynomials over F_2, bit i = coefficient of x^i
inline constexpr std::uint32_t kFieldModulus[14] = {
    0, 0,
    0x7,     // m=2:  x^2 + x + 1
    0xB,     // m=3:  x^3 + x + 1
    0x13,    // m=4:  x^4 + x + 1
    0x25,    // m=5:  x^5 + x^2 + 1
    0x43,    // m=6:  x^6 + x + 1
    0x89,    // m=7:  x^7 + x^3 + 1
    0x11D,   // m=8:  x^8 + x^4 + x^3 + x^2 + 1
    0x211,   // m=9:  x^9 + x^4 + 1
    0x409,   // m=10: x^10 + x^3 + 1
    0x805,   // m=11: x^11 + x^2 + 1
    0x1053,  // m=12: x^12 + x^6 + x^4 + x + 1
    0x201B   // m=13: x^13 + x^4 + x^3 + x + 1
};

namespace detail {

inline int poly2_degree(std::uint64_t p) {
    int d = -1;
    while (p) {
        ++d;
        p >>= 1;
    }
    return d;
}

// remainder of binary polynomial division
inline std::uint64_t poly2_mod(std::uint64_t a, std::uint64_t b) {
    int db = poly2_degree(b);
    int da = poly2_degree(a);
    while (da >= db) {
        a ^= b << (da - db);
        da = poly2_degree(a);
    }
    return a;
}

inline bool poly2_irreducible(std::uint64_t p) {
    int d = poly2_degree(p);
    if (d < 1) return false;
    for (int dd = 1; dd <= d / 2; ++dd) {
        for (std::uint64_t q = (std::uint64_t{1} << dd); q < (std::uint64_t{1} << (dd + 1)); ++q) {
            if (poly2_mod(p, q) == 0) return false;
        }
    }
    return true;
}

}  // namespace detail

class GF2mField {
public:
    explicit GF2mField(int m) : GF2mField(m, kFieldModulus[check_m(m)]) {}

    GF2mField(int m, std::uint32_t modulus) : m_(check_m(m)), modulus_(modulus) {
        if (detail::poly2_degree(modulus) != m) throw ValueError("field modulus degree mismatch");
        if (!detail::poly2_irreducible(modulus)) throw ValueError("field modulus is reducible");
    }

    int m() const { return m_; }
    std::uint32_t size() const { return 1u << m_; }
    std::uint32_t modulus() const { return modulus_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t acc = 0;
        while (b) {
            if (b & 1) acc ^= a;
            b >>= 1;
            a <<= 1;
            if (a & size()) a ^= modulus_;
        }
        return acc;
    }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1;
        a &= size() - 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw ValueError("inverse of zero field element");
        return pow(a, size() - 2);
    }

private:
    static int check_m(int m) {
        if (m < 2 || m > 13) throw ValueError("field degree m must be in [2, 13]");
        return m;
    }
    int m_;
    std::uint32_t modulus_;
};

// Polynomial over F_{2^m}; coeffs[i] multiplies x^i, no trailing zeros.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<std::uint32_t> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly constant(std::uint32_t v) { return Poly({v}); }
    static Poly x() { return Poly({0, 1}); }

    // x - a (equals x + a in characteristic 2)
    static Poly linear(std::uint32_t a) { return Poly({a, 1}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<std::uint32_t>& coeffs() const { return c_; }
    std::uint32_t lead() const { return c_.empty() ? 0 : c_.back(); }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    friend Poly add(const Poly& a, const Poly& b) {
        std::vector<std::uint32_t> out(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) ^ b.coeff(i);
        return Poly(std::move(out));
    }

    friend Poly mul(const GF2mField& f, const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<std::uint32_t> out(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] ^= f.mul(a.c_[i], b.c_[j]);
        }
        return Poly(std::move(out));
    }

    friend Poly scale(const GF2mField& f, std::uint32_t k, const Poly& a) {
        std::vector<std::uint32_t> out(a.c_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.mul(k, a.c_[i]);
        return Poly(std::move(out));
    }

    // division with remainder: a = q*b + r
    friend std::pair<Poly, Poly> divmod(const GF2mField& f, const Poly& a, const Poly& b) {
        if (b.is_zero()) throw ValueError("polynomial division by zero");
        Poly r = a;
        std::vector<std::uint32_t> q(a.c_.size() > b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 1,
                                     0);
        std::uint32_t lead_inv = f.inv(b.lead());
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int shift = r.degree() - b.degree();
            std::uint32_t factor = f.mul(r.lead(), lead_inv);
            q[shift] ^= factor;
            for (std::size_t i = 0; i < b.c_.size(); ++i)
                r.c_[i + shift] ^= f.mul(factor, b.c_[i]);
            r.trim();
        }
        return {Poly(std::move(q)), r};
    }

    friend Poly mod(const GF2mField& f, const Poly& a, const Poly& b) {
        return divmod(f, a, b).second;
    }

    friend Poly gcd(const GF2mField& f, Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = mod(f, a, b);
            a = b;
            b = r;
        }
        if (!a.is_zero()) a = scale(f, f.inv(a.lead()), a);  // monic normal form
        return a;
    }

    std::uint32_t eval(const GF2mField& f, std::uint32_t x) const {
        std::uint32_t acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = f.add(f.mul(acc, x), c_[i]);
        return acc;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<std::uint32_t> c_;
};

inline Poly poly_pow_mod(const GF2mField& f, Poly base, std::uint64_t e, const Poly& modulus) {
    Poly r = Poly::constant(1);
    base = mod(f, base, modulus);
    while (e) {
        if (e & 1) r = mod(f, mul(f, r, base), modulus);
        base = mod(f, mul(f, base, base), modulus);
        e >>= 1;
    }
    return r;
}

// Inverse of a mod g via extended Euclid; requires gcd(a, g) constant.
inline Poly poly_inv_mod(const GF2mField& f, const Poly& a, const Poly& g) {
    Poly r0 = g, r1 = mod(f, a, g);
    Poly t0 = Poly::zero(), t1 = Poly::constant(1);
    if (r1.is_zero()) throw ValueError("poly_inv_mod: not invertible");
    while (r1.degree() > 0) {
        auto [q, r2] = divmod(f, r0, r1);
        Poly t2 = add(t0, mul(f, q, t1));
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
        if (r1.is_zero()) throw ValueError("poly_inv_mod: not invertible");
    }
    // r1 is a nonzero constant
    return scale(f, f.inv(r1.coeff(0)), t1);
}

// Rabin test: h irreducible of degree t over F_{2^m} iff x^{q^t} = x (mod h)
// and gcd(x^{q^{t/p}} - x, h) = 1 for every prime p | t, q = 2^m.
inline bool poly_irreducible(const GF2mField& f, const Poly& h) {
    int t = h.degree();
    if (t < 1) return false;
    if (t == 1) return true;
    auto frob_power = [&](std::uint64_t steps) {
        // x^(q^steps) mod h by repeated q-th powering
        Poly r = Poly::x();
        for (std::uint64_t s = 0; s < steps; ++s)
            r = poly_pow_mod(f, r, f.size(), h);
        return r;
    };
    std::vector<int> prime_divisors;
    int tt = t;
    for (int p = 2; p * p <= tt; ++p)
        if (tt % p == 0) {
            prime_divisors.push_back(p);
            while (tt % p == 0) tt /= p;
        }
    if (tt > 1) prime_divisors.push_back(tt);

    if (frob_power(t) != Poly::x()) return false;
    for (int p : prime_divisors) {
        Poly diff = add(frob_power(t / p), Poly::x());
        Poly g = gcd(f, diff, h);
        if (g.degree() != 0) return false;
    }
    return true;
}

inline Poly random_irreducible(const GF2mField& f, int t, Rng& rng) {
    if (t < 1) throw ValueError("degree must be positive");
    for (int tries = 0; tries < 4096; ++tries) {
        std::vector<std::uint32_t> coeffs(t + 1);
        for (int i = 0; i < t; ++i) coeffs[i] = static_cast<std::uint32_t>(rng.below(f.size()));
        coeffs[t] = 1;  // monic
        Poly cand{std::move(coeffs)};
        if (poly_irreducible(f, cand)) return cand;
    }
    throw RetryExhausted("random_irreducible: no irreducible found");
}

}  // namespace pqa::codecrypt
