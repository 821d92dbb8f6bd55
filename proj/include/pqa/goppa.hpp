#pragma once

// Binary Goppa codes Gamma(a_1..a_n, g): parity-check construction from the
// kernel equation sum_i c_i/(x - a_i) = 0 mod g, generator as its null
// space, and syndrome decoding via Patterson's algorithm (split sigma into
// a^2 + x b^2 and find (a, b) with a partial extended Euclid run).

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pqa/errors.hpp"
#include "pqa/f2.hpp"
#include "pqa/gf2m.hpp"

namespace pqa::codecrypt {

struct GoppaCode {
    GF2mField field;
    std::vector<std::uint32_t> support;          // a_1..a_n, distinct, g(a_i) != 0
    Poly g;                                      // irreducible, degree t
    std::vector<std::vector<std::uint32_t>> h_field;  // t x n over F_{2^m}
    F2Mat h_bin;                                 // (m*t) x n binary expansion
    F2Mat gen;                                   // k x n, k = n - m*t

    std::size_t n() const { return support.size(); }
    int t() const { return g.degree(); }
    std::size_t k() const { return gen.rows(); }
};

// Column i of the field parity check: coefficients of (x - a_i)^{-1} mod g.
inline GoppaCode goppa_build(const GF2mField& field, std::vector<std::uint32_t> support,
                             const Poly& g) {
    const std::size_t n = support.size();
    const int t = g.degree();
    if (t < 1) throw ValueError("goppa_build: g must have positive degree");
    if (!poly_irreducible(field, g)) throw ValueError("goppa_build: g must be irreducible");
    if (n < 2 || n > field.size()) throw ValueError("goppa_build: bad support size");
    {
        std::vector<bool> seen(field.size(), false);
        for (std::uint32_t a : support) {
            if (a >= field.size() || seen[a]) throw ValueError("goppa_build: support not distinct");
            seen[a] = true;
            if (g.eval(field, a) == 0) throw ValueError("goppa_build: g vanishes on support");
        }
    }
    const std::size_t mt = static_cast<std::size_t>(field.m()) * t;
    if (n <= mt) throw ValueError("goppa_build: need n - m*t >= 1");

    GoppaCode code{field, std::move(support), g, {}, {}, {}};
    code.h_field.assign(t, std::vector<std::uint32_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        Poly col = poly_inv_mod(field, Poly::linear(code.support[i]), g);
        for (int j = 0; j < t; ++j) code.h_field[j][i] = col.coeff(j);
    }
    // binary expansion: each field entry becomes m rows, ascending bit index
    code.h_bin = F2Mat(mt, n);
    for (int j = 0; j < t; ++j)
        for (int bit = 0; bit < field.m(); ++bit)
            for (std::size_t i = 0; i < n; ++i)
                if ((code.h_field[j][i] >> bit) & 1)
                    code.h_bin.set(static_cast<std::size_t>(j) * field.m() + bit, i, true);

    std::vector<F2Vec> null = code.h_bin.nullspace();
    if (null.size() != n - mt)
        throw ValueError("goppa_build: parity check is rank deficient; pick another g/support");
    code.gen = F2Mat(0, n);
    for (const F2Vec& v : null) code.gen.append_row(v);
    return code;
}

// S(x) = sum over set bits of (x - a_i)^{-1} mod g, assembled from the
// precomputed parity columns.
inline Poly syndrome_poly(const GoppaCode& code, const F2Vec& word) {
    if (word.size() != code.n()) throw DimensionError("syndrome: word length mismatch");
    std::vector<std::uint32_t> coeffs(code.t(), 0);
    for (std::size_t i = 0; i < code.n(); ++i) {
        if (!word.get(i)) continue;
        for (int j = 0; j < code.t(); ++j) coeffs[j] ^= code.h_field[j][i];
    }
    return Poly(std::move(coeffs));
}

// Rebuilds S(x) from an m*t-bit binary syndrome (bit layout of h_bin).
inline Poly syndrome_from_bits(const GoppaCode& code, const F2Vec& bits) {
    if (bits.size() != code.h_bin.rows()) throw DimensionError("syndrome bit-length mismatch");
    const int m = code.field.m();
    std::vector<std::uint32_t> coeffs(code.t(), 0);
    for (int j = 0; j < code.t(); ++j)
        for (int bit = 0; bit < m; ++bit)
            if (bits.get(static_cast<std::size_t>(j) * m + bit))
                coeffs[j] |= (1u << bit);
    return Poly(std::move(coeffs));
}

// Square root in F_{2^m}[x]/(g): u -> u^(2^(m*t - 1)) (Frobenius inverse).
inline Poly poly_sqrt_mod(const GF2mField& f, Poly u, const Poly& g) {
    const std::uint64_t half_steps = static_cast<std::uint64_t>(f.m()) * g.degree() - 1;
    for (std::uint64_t s = 0; s < half_steps; ++s) u = mod(f, mul(f, u, u), g);
    return u;
}

// Patterson: recovers the weight-<=t error pattern from its syndrome
// polynomial, or nullopt when none exists.
inline std::optional<F2Vec> decode_syndrome(const GoppaCode& code, const Poly& s_poly) {
    const GF2mField& f = code.field;
    const int t = code.t();
    if (s_poly.is_zero()) return F2Vec(code.n());

    Poly sigma;
    Poly t_poly = poly_inv_mod(f, s_poly, code.g);
    if (t_poly == Poly::x()) {
        sigma = Poly::x();
    } else {
        Poly r = poly_sqrt_mod(f, add(t_poly, Poly::x()), code.g);
        // partial EEA on (g, r): stop at deg(a) <= t/2; then a = b*r mod g
        Poly r0 = code.g, r1 = r;
        Poly v0 = Poly::zero(), v1 = Poly::constant(1);
        while (!r1.is_zero() && r1.degree() > t / 2) {
            auto [q, r2] = divmod(f, r0, r1);
            Poly v2 = add(v0, mul(f, q, v1));
            r0 = r1;
            r1 = r2;
            v0 = v1;
            v1 = v2;
        }
        const Poly& a = r1;
        const Poly& b = v1;
        if (b.degree() > (t - 1) / 2) return std::nullopt;
        Poly a2 = mul(f, a, a);
        Poly b2 = mul(f, b, b);
        sigma = add(a2, mul(f, Poly::x(), b2));
    }
    if (sigma.is_zero() || sigma.degree() > t) return std::nullopt;

    F2Vec e(code.n());
    std::size_t weight = 0;
    for (std::size_t i = 0; i < code.n(); ++i) {
        if (sigma.eval(f, code.support[i]) == 0) {
            e.set(i, true);
            ++weight;
        }
    }
    if (weight == 0 || static_cast<int>(weight) > t) return std::nullopt;
    if (static_cast<int>(weight) != sigma.degree()) return std::nullopt;
    // confirm: the recovered pattern must reproduce the syndrome
    if (!(syndrome_poly(code, e) == s_poly)) return std::nullopt;
    return e;
}

struct DecodeResult {
    F2Vec codeword;
    F2Vec error;
};

// Corrects up to t errors; throws DecodeFailure when no weight-<=t pattern
// matches the received word's syndrome.
inline DecodeResult goppa_decode(const GoppaCode& code, const F2Vec& received) {
    Poly s = syndrome_poly(code, received);
    std::optional<F2Vec> e = decode_syndrome(code, s);
    if (!e) throw DecodeFailure("goppa_decode: no error pattern of weight <= t matches");
    F2Vec codeword = received;
    codeword.xor_in(*e);
    return {codeword, *e};
}

}  // namespace pqa::codecrypt
