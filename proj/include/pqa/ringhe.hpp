#pragma once

// Arithmetic in R = Z_q[x]/(x^n + 1) (n a power of two), the additively
// homomorphic encryption (c0, c1) = (-a, as + m + et), and the single-server
// PIR protocol built on it.
//
// Noise accounting: noise_bound tracks an integer B such that the decryption
// payload c1 + c0*s, lifted to centered representatives, has every
// coefficient within t*(B + 1) - 1 in absolute value. Fresh encryptions start
// at err_bound; addition uses B + B' + 1 (the +1 absorbs the message carry)
// and plaintext multiplication uses n*t*(B + 1). Decryption is correct while
// (t - 1) + t*B < q/2.

#include <cstdint>
#include <string>
#include <vector>

#include "pqa/errors.hpp"
#include "pqa/numth.hpp"
#include "pqa/rng.hpp"
#include "pqa/serial.hpp"

namespace pqa::ringhe {

struct RingElement {
    std::uint32_t n = 0;      // power-of-two degree bound
    std::uint64_t q = 0;      // coefficient modulus
    std::vector<std::uint64_t> coeffs;  // length n, entries in [0, q)

    RingElement() = default;
    RingElement(std::uint32_t n_, std::uint64_t q_) : n(n_), q(q_), coeffs(n_, 0) {
        if (n_ == 0 || (n_ & (n_ - 1)) != 0) throw ValueError("ring degree must be a power of two");
    }

    static RingElement constant(std::uint32_t n, std::uint64_t q, std::uint64_t c) {
        RingElement r(n, q);
        r.coeffs[0] = c % q;
        return r;
    }

    static RingElement one(std::uint32_t n, std::uint64_t q) { return constant(n, q, 1); }

    bool operator==(const RingElement& o) const {
        return n == o.n && q == o.q && coeffs == o.coeffs;
    }
};

inline void check_compatible(const RingElement& a, const RingElement& b) {
    if (a.n != b.n || a.q != b.q) throw DimensionError("ring parameter mismatch");
}

inline RingElement ring_add(const RingElement& a, const RingElement& b) {
    check_compatible(a, b);
    RingElement out(a.n, a.q);
    for (std::uint32_t i = 0; i < a.n; ++i) out.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % a.q;
    return out;
}

inline RingElement ring_sub(const RingElement& a, const RingElement& b) {
    check_compatible(a, b);
    RingElement out(a.n, a.q);
    for (std::uint32_t i = 0; i < a.n; ++i)
        out.coeffs[i] = (a.coeffs[i] + a.q - b.coeffs[i]) % a.q;
    return out;
}

inline RingElement ring_neg(const RingElement& a) {
    RingElement out(a.n, a.q);
    for (std::uint32_t i = 0; i < a.n; ++i)
        out.coeffs[i] = a.coeffs[i] == 0 ? 0 : a.q - a.coeffs[i];
    return out;
}

// Negacyclic convolution: coefficient k gets sum_{i+j=k} a_i b_j minus
// sum_{i+j=k+n} a_i b_j (x^n = -1). 128-bit accumulators; q up to ~2^56.
inline RingElement ring_mul(const RingElement& a, const RingElement& b) {
    check_compatible(a, b);
    const std::uint32_t n = a.n;
    const std::uint64_t q = a.q;
    std::vector<unsigned __int128> pos(n, 0), neg(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint64_t ai = a.coeffs[i];
        if (ai == 0) continue;
        for (std::uint32_t j = 0; j < n; ++j) {
            const std::uint32_t k = i + j;
            const unsigned __int128 prod = static_cast<unsigned __int128>(ai) * b.coeffs[j];
            if (k < n)
                pos[k] += prod;
            else
                neg[k - n] += prod;
        }
    }
    RingElement out(n, q);
    for (std::uint32_t k = 0; k < n; ++k) {
        std::uint64_t p = static_cast<std::uint64_t>(pos[k] % q);
        std::uint64_t m = static_cast<std::uint64_t>(neg[k] % q);
        out.coeffs[k] = (p + q - m) % q;
    }
    return out;
}

struct HeParams {
    std::uint32_t n = 256;
    std::uint64_t q = (std::uint64_t{1} << 40) - 87;
    std::uint64_t t = 256;  // plaintext modulus, much smaller than q
    std::uint64_t err_bound = 1;

    void validate() const {
        if (n == 0 || (n & (n - 1)) != 0) throw ValueError("HeParams: n must be a power of two");
        if (!is_prime_u64(q)) throw ValueError("HeParams: q must be prime");
        if (t < 2 || t * 4 > q) throw ValueError("HeParams: t must satisfy 2 <= t << q");
        if (!noise_within_budget(err_bound))
            throw ValueError("HeParams: fresh-noise budget already exceeds q/2");
    }

    // Decryption is exact while (t-1) + t*B < q/2.
    bool noise_within_budget(std::uint64_t noise_bound) const {
        unsigned __int128 payload =
            static_cast<unsigned __int128>(t) * noise_bound + (t - 1);
        return payload < static_cast<unsigned __int128>(q) / 2;
    }
};

inline HeParams he_preset(const std::string& name) {
    if (name == "default" || name == "pir64") return HeParams{};
    if (name == "small") return HeParams{64, (std::uint64_t{1} << 40) - 87, 256, 1};
    throw ValueError("unknown HE preset: " + name);
}

struct HeCiphertext {
    RingElement c0, c1;
    std::uint64_t noise_bound = 0;  // diagnostic field, see header comment

    static HeCiphertext zero(const HeParams& p) {
        HeCiphertext ct;
        ct.c0 = RingElement(p.n, p.q);
        ct.c1 = RingElement(p.n, p.q);
        ct.noise_bound = 0;
        return ct;
    }
};

// Secret key: ternary polynomial with coefficients in {-1, 0, 1}.
inline RingElement he_keygen(const HeParams& params, Rng& rng) {
    params.validate();
    RingElement s(params.n, params.q);
    for (auto& c : s.coeffs) {
        std::int64_t v = rng.range(-1, 1);
        c = v < 0 ? params.q - 1 : static_cast<std::uint64_t>(v);
    }
    return s;
}

// Test hook: encryption with caller-chosen mask a and error e (centered).
inline HeCiphertext he_encrypt_with(const HeParams& params, const RingElement& s,
                                    const RingElement& m, const RingElement& a,
                                    const std::vector<std::int64_t>& e) {
    if (m.n != params.n || m.q != params.q) throw DimensionError("message parameter mismatch");
    for (auto c : m.coeffs)
        if (c >= params.t) throw ValueError("message coefficient out of [0, t)");
    RingElement et(params.n, params.q);
    std::uint64_t max_e = 0;
    for (std::uint32_t i = 0; i < params.n; ++i) {
        std::int64_t ei = e[i];
        std::uint64_t mag = static_cast<std::uint64_t>(ei < 0 ? -ei : ei);
        max_e = std::max(max_e, mag);
        std::uint64_t eq =
            ei < 0 ? params.q - (mag % params.q) : mag % params.q;
        et.coeffs[i] = mul_mod(eq % params.q, params.t, params.q);
    }
    HeCiphertext ct;
    ct.c0 = ring_neg(a);
    ct.c1 = ring_add(ring_add(ring_mul(a, s), m), et);
    ct.noise_bound = max_e;
    return ct;
}

inline HeCiphertext he_encrypt(const HeParams& params, const RingElement& s, const RingElement& m,
                               Rng& rng, std::vector<std::int64_t>* e_witness = nullptr) {
    RingElement a(params.n, params.q);
    for (auto& c : a.coeffs) c = rng.below(params.q);
    std::vector<std::int64_t> e(params.n);
    for (auto& ei : e)
        ei = rng.range(-static_cast<std::int64_t>(params.err_bound),
                       static_cast<std::int64_t>(params.err_bound));
    if (e_witness) *e_witness = e;
    HeCiphertext ct = he_encrypt_with(params, s, m, a, e);
    ct.noise_bound = params.err_bound;
    return ct;
}

// c1 + c0*s over Z_q, centered lift, then mod t. Returns a ring element with
// modulus t.
inline RingElement he_decrypt(const HeParams& params, const RingElement& s,
                              const HeCiphertext& ct) {
    RingElement v = ring_add(ct.c1, ring_mul(ct.c0, s));
    RingElement out(params.n, params.t);
    const std::int64_t q = static_cast<std::int64_t>(params.q);
    const std::int64_t t = static_cast<std::int64_t>(params.t);
    for (std::uint32_t i = 0; i < params.n; ++i) {
        std::int64_t c = static_cast<std::int64_t>(v.coeffs[i]);
        if (c * 2 > q) c -= q;  // centered representative
        out.coeffs[i] = static_cast<std::uint64_t>(((c % t) + t) % t);
    }
    return out;
}

// The exact centered payload c1 + c0*s (diagnostic; lets tests compute the
// witnessed noise floor((payload - payload mod t)/t)).
inline std::vector<std::int64_t> he_payload(const HeParams& params, const RingElement& s,
                                            const HeCiphertext& ct) {
    RingElement v = ring_add(ct.c1, ring_mul(ct.c0, s));
    std::vector<std::int64_t> out(params.n);
    const std::int64_t q = static_cast<std::int64_t>(params.q);
    for (std::uint32_t i = 0; i < params.n; ++i) {
        std::int64_t c = static_cast<std::int64_t>(v.coeffs[i]);
        if (c * 2 > q) c -= q;
        out[i] = c;
    }
    return out;
}

inline HeCiphertext ct_add(const HeCiphertext& a, const HeCiphertext& b) {
    HeCiphertext out;
    out.c0 = ring_add(a.c0, b.c0);
    out.c1 = ring_add(a.c1, b.c1);
    out.noise_bound = a.noise_bound + b.noise_bound + 1;  // +1: message carry
    return out;
}

// Plaintext-ciphertext product p*(c0, c1); p must have coefficients in [0, t).
inline HeCiphertext ct_scale(const HeParams& params, const RingElement& p,
                             const HeCiphertext& ct) {
    if (p.n != params.n || p.q != params.q) throw DimensionError("plaintext parameter mismatch");
    for (auto c : p.coeffs)
        if (c >= params.t) throw ValueError("plaintext coefficient out of [0, t)");
    HeCiphertext out;
    out.c0 = ring_mul(p, ct.c0);
    out.c1 = ring_mul(p, ct.c1);
    out.noise_bound =
        static_cast<std::uint64_t>(params.n) * params.t * (ct.noise_bound + 1);
    return out;
}

// ---- PIR ----

struct PirQuery {
    std::vector<HeCiphertext> cts;  // Enc(1) at the wanted index, Enc(0) elsewhere
};

inline PirQuery pir_build_query(std::size_t index, std::size_t n_db, const HeParams& params,
                                const RingElement& s, Rng& rng) {
    if (index >= n_db) throw ValueError("pir index out of range");
    PirQuery q;
    q.cts.reserve(n_db);
    for (std::size_t j = 0; j < n_db; ++j) {
        RingElement m = (j == index) ? RingElement::one(params.n, params.q)
                                      : RingElement(params.n, params.q);
        q.cts.push_back(he_encrypt(params, s, m, rng));
    }
    return q;
}

// answer = sum_j db[j] * query[j]; the server never learns the index.
inline HeCiphertext pir_answer(const HeParams& params, const std::vector<RingElement>& db,
                               const PirQuery& query) {
    if (db.size() != query.cts.size()) throw DimensionError("db/query size mismatch");
    HeCiphertext acc = HeCiphertext::zero(params);
    for (std::size_t j = 0; j < db.size(); ++j)
        acc = ct_add(acc, ct_scale(params, db[j], query.cts[j]));
    return acc;
}

// ---- plaintext packing: items as base-t digit streams with a length header ----

inline std::uint32_t bits_per_coeff(const HeParams& params) {
    std::uint32_t b = 0;
    while ((std::uint64_t{1} << (b + 1)) <= params.t) ++b;
    return b;  // floor(log2 t)
}

inline std::size_t bytes_per_poly(const HeParams& params) {
    return static_cast<std::size_t>(params.n) * bits_per_coeff(params) / 8;
}

// Packs [u32le length | bytes] into polys of n coefficients, each coefficient
// holding bits_per_coeff bits (little-endian bit order), zero padded.
inline std::vector<RingElement> pack_item(const std::vector<std::uint8_t>& item,
                                          const HeParams& params) {
    ByteWriter w;
    w.u32le(static_cast<std::uint32_t>(item.size()));
    w.raw(item);
    const std::vector<std::uint8_t>& stream = w.bytes();
    const std::uint32_t bits = bits_per_coeff(params);
    const std::uint64_t total_bits = static_cast<std::uint64_t>(stream.size()) * 8;
    std::vector<RingElement> polys;
    std::uint64_t bitpos = 0;
    while (bitpos < total_bits) {
        RingElement poly(params.n, params.q);
        for (std::uint32_t c = 0; c < params.n && bitpos < total_bits; ++c) {
            std::uint64_t v = 0;
            for (std::uint32_t b = 0; b < bits && bitpos < total_bits; ++b, ++bitpos) {
                std::uint64_t bit = (stream[bitpos >> 3] >> (bitpos & 7)) & 1;
                v |= bit << b;
            }
            poly.coeffs[c] = v;
        }
        polys.push_back(std::move(poly));
    }
    if (polys.empty()) polys.emplace_back(params.n, params.q);
    return polys;
}

// Inverse of pack_item given the decrypted polys (modulus t).
inline std::vector<std::uint8_t> unpack_item(const std::vector<RingElement>& polys,
                                             const HeParams& params) {
    const std::uint32_t bits = bits_per_coeff(params);
    std::vector<std::uint8_t> stream((polys.size() * params.n * bits + 7) / 8, 0);
    std::uint64_t bitpos = 0;
    for (const RingElement& poly : polys) {
        for (std::uint32_t c = 0; c < params.n; ++c) {
            for (std::uint32_t b = 0; b < bits; ++b, ++bitpos) {
                if ((poly.coeffs[c] >> b) & 1) stream[bitpos >> 3] |= 1u << (bitpos & 7);
            }
        }
    }
    ByteReader r(stream);
    std::uint32_t len = r.u32le();
    if (len > stream.size() - 4) throw ParseError("unpack_item: corrupt length header");
    return r.raw(len);
}

// ---- ciphertext wire format: "PQAHE001", (n, q, t), c0 and c1 little-endian ----

inline constexpr char kHeMagic[9] = "PQAHE001";

inline void serialize_ciphertext(ByteWriter& w, const HeCiphertext& ct, const HeParams& params) {
    w.magic(kHeMagic);
    w.u64le(params.n);
    w.u64le(params.q);
    w.u64le(params.t);
    for (std::uint64_t c : ct.c0.coeffs) w.u64le(c);
    for (std::uint64_t c : ct.c1.coeffs) w.u64le(c);
}

// Wire ciphertexts are treated as fresh encryptions; the noise bound is reset
// to the preset's err_bound.
inline HeCiphertext deserialize_ciphertext(ByteReader& r, const HeParams& params) {
    r.expect_magic(kHeMagic);
    std::uint64_t n = r.u64le(), q = r.u64le(), t = r.u64le();
    if (n != params.n || q != params.q || t != params.t)
        throw ParseError("ciphertext parameters do not match the active preset");
    HeCiphertext ct;
    ct.c0 = RingElement(params.n, params.q);
    ct.c1 = RingElement(params.n, params.q);
    for (auto& c : ct.c0.coeffs) c = r.u64le() % params.q;
    for (auto& c : ct.c1.coeffs) c = r.u64le() % params.q;
    ct.noise_bound = params.err_bound;
    return ct;
}

}  // namespace pqa::ringhe
