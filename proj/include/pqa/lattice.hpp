#pragma once

// Z_q linear algebra, the SIS hash f_A(z) = Az, and Regev's single-bit
// public-key encryption. Entries are kept canonically reduced to [0, q);
// "closeness to 0" tests use centered representatives in (-q/2, q/2].

#include <cstdint>
#include <vector>

#include "pqa/errors.hpp"
#include "pqa/numth.hpp"
#include "pqa/rng.hpp"
#include "pqa/serial.hpp"

namespace pqa::lattice {

struct ZqVector {
    std::uint64_t q = 0;
    std::vector<std::uint64_t> v;

    ZqVector() = default;
    ZqVector(std::uint64_t q_, std::size_t n) : q(q_), v(n, 0) {}

    std::size_t size() const { return v.size(); }
    bool operator==(const ZqVector& o) const { return q == o.q && v == o.v; }
};

struct ZqMatrix {
    std::uint64_t q = 0;
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint64_t> a;  // row-major

    ZqMatrix() = default;
    ZqMatrix(std::uint64_t q_, std::size_t r, std::size_t c) : q(q_), rows(r), cols(c), a(r * c, 0) {}

    std::uint64_t& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    std::uint64_t at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    static ZqMatrix uniform(std::uint64_t q, std::size_t r, std::size_t c, Rng& rng) {
        ZqMatrix m(q, r, c);
        for (auto& e : m.a) e = rng.below(q);
        return m;
    }
};

inline std::int64_t centered(std::uint64_t x, std::uint64_t q) {
    // representative in (-q/2, q/2]
    return (x * 2 > q) ? static_cast<std::int64_t>(x) - static_cast<std::int64_t>(q)
                       : static_cast<std::int64_t>(x);
}

inline ZqVector uniform_vector(std::uint64_t q, std::size_t n, Rng& rng) {
    ZqVector out(q, n);
    for (auto& e : out.v) e = rng.below(q);
    return out;
}

// A * x (column-vector convention).
inline ZqVector matvec(const ZqMatrix& m, const ZqVector& x) {
    if (m.q != x.q || m.cols != x.size()) throw DimensionError("matvec shape mismatch");
    ZqVector out(m.q, m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) {
        unsigned __int128 acc = 0;
        for (std::size_t c = 0; c < m.cols; ++c)
            acc += static_cast<unsigned __int128>(m.at(r, c)) * x.v[c];
        out.v[r] = static_cast<std::uint64_t>(acc % m.q);
    }
    return out;
}

// s^t * A (row-vector convention).
inline ZqVector vecmat(const ZqVector& s, const ZqMatrix& m) {
    if (m.q != s.q || m.rows != s.size()) throw DimensionError("vecmat shape mismatch");
    ZqVector out(m.q, m.cols);
    for (std::size_t c = 0; c < m.cols; ++c) {
        unsigned __int128 acc = 0;
        for (std::size_t r = 0; r < m.rows; ++r)
            acc += static_cast<unsigned __int128>(s.v[r]) * m.at(r, c);
        out.v[c] = static_cast<std::uint64_t>(acc % m.q);
    }
    return out;
}

inline std::uint64_t dot(const ZqVector& a, const ZqVector& b) {
    if (a.q != b.q || a.size() != b.size()) throw DimensionError("dot shape mismatch");
    unsigned __int128 acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += static_cast<unsigned __int128>(a.v[i]) * b.v[i];
    return static_cast<std::uint64_t>(acc % a.q);
}

inline ZqVector add(const ZqVector& a, const ZqVector& b) {
    if (a.q != b.q || a.size() != b.size()) throw DimensionError("add shape mismatch");
    ZqVector out(a.q, a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.v[i] = (a.v[i] + b.v[i]) % a.q;
    return out;
}

// f_A(z) = A z for a bit vector z; the SIS collision-resistant hash.
inline ZqVector sis_hash(const ZqMatrix& a, const std::vector<std::uint8_t>& z_bits) {
    if (z_bits.size() != a.cols) throw DimensionError("sis_hash: input length must be m");
    ZqVector out(a.q, a.rows);
    for (std::size_t c = 0; c < a.cols; ++c) {
        if (z_bits[c] > 1) throw ValueError("sis_hash: input must be a bit vector");
        if (!z_bits[c]) continue;
        for (std::size_t r = 0; r < a.rows; ++r) out.v[r] = (out.v[r] + a.at(r, c)) % a.q;
    }
    return out;
}

struct LweParams {
    std::size_t n = 64;     // secret dimension
    std::size_t m = 512;    // sample count
    std::uint64_t q = 12289;
    std::uint64_t error_bound = 1;  // errors uniform on [-error_bound, error_bound]

    void validate() const {
        if (n == 0 || m == 0) throw ValueError("LweParams: n, m must be positive");
        if (q < 3 || q > (std::uint64_t{1} << 31) || !is_prime_u64(q))
            throw ValueError("LweParams: q must be a prime at most 2^31");
        // deterministic decryption correctness: |e^t x| <= m*error_bound < q/4 - 1
        if (q <= 4 * m * error_bound + 2)
            throw ValueError("LweParams: need q > 4*m*error_bound + 2");
    }
};

// Demo-grade default; NOT a secure parameter set.
inline LweParams default_lwe_params() { return LweParams{64, 512, 12289, 1}; }

struct LwePublicKey {
    LweParams params;
    ZqMatrix a;   // n x m
    ZqVector b;   // length m, b^t = s^t A + e^t
};

struct LweSecretKey {
    LweParams params;
    ZqVector s;  // length n
};

struct LweKeyPair {
    LwePublicKey pub;
    LweSecretKey sec;
    std::vector<std::int64_t> error_witness;  // e, kept for diagnostics/tests only
};

struct LweCiphertext {
    ZqVector u;              // length n, u = A x
    std::uint64_t u_prime = 0;  // b^t x + mu * round(q/2)
};

inline LweKeyPair lwe_keygen(const LweParams& params, Rng& rng) {
    params.validate();
    LweKeyPair kp;
    kp.pub.params = params;
    kp.sec.params = params;
    kp.pub.a = ZqMatrix::uniform(params.q, params.n, params.m, rng);
    kp.sec.s = uniform_vector(params.q, params.n, rng);
    ZqVector b = vecmat(kp.sec.s, kp.pub.a);
    kp.error_witness.resize(params.m);
    for (std::size_t i = 0; i < params.m; ++i) {
        std::int64_t e = rng.range(-static_cast<std::int64_t>(params.error_bound),
                                   static_cast<std::int64_t>(params.error_bound));
        kp.error_witness[i] = e;
        std::uint64_t eq = static_cast<std::uint64_t>((e % static_cast<std::int64_t>(params.q) +
                                                       static_cast<std::int64_t>(params.q))) %
                           params.q;
        b.v[i] = (b.v[i] + eq) % params.q;
    }
    kp.pub.b = b;
    return kp;
}

inline std::uint64_t half_q(std::uint64_t q) { return (q + 1) / 2; }  // round(q/2)

// Test hook: encryption with caller-chosen randomness x.
inline LweCiphertext lwe_encrypt_bit_with_x(const LwePublicKey& pk, int mu,
                                            const std::vector<std::uint8_t>& x_bits) {
    if (mu != 0 && mu != 1) throw ValueError("plaintext must be a bit");
    LweCiphertext ct;
    ct.u = sis_hash(pk.a, x_bits);  // u = A x
    unsigned __int128 acc = 0;
    for (std::size_t i = 0; i < pk.b.size(); ++i)
        if (x_bits[i]) acc += pk.b.v[i];
    std::uint64_t btx = static_cast<std::uint64_t>(acc % pk.params.q);
    ct.u_prime = (btx + (mu ? half_q(pk.params.q) : 0)) % pk.params.q;
    return ct;
}

inline LweCiphertext lwe_encrypt_bit(const LwePublicKey& pk, int mu, Rng& rng) {
    std::vector<std::uint8_t> x(pk.params.m);
    for (auto& b : x) b = rng.bit() ? 1 : 0;
    return lwe_encrypt_bit_with_x(pk, mu, x);
}

// d = u' - s^t u mod q; equals e^t x + mu*round(q/2) exactly.
inline std::uint64_t lwe_decision_value(const LweSecretKey& sk, const LweCiphertext& ct) {
    std::uint64_t stu = dot(sk.s, ct.u);
    return (ct.u_prime + sk.params.q - stu) % sk.params.q;
}

inline int lwe_decrypt_bit(const LweSecretKey& sk, const LweCiphertext& ct) {
    std::uint64_t d = lwe_decision_value(sk, ct);
    std::int64_t c = centered(d, sk.params.q);
    return (static_cast<std::uint64_t>(c < 0 ? -c : c) < sk.params.q / 4) ? 0 : 1;
}

// Gaussian elimination mod prime q; returns one solution (free variables 0).
// Throws ValueError if the system is inconsistent.
inline ZqVector solve_linear_zq(const ZqMatrix& m_in, const ZqVector& rhs_in) {
    if (m_in.rows != rhs_in.size() || m_in.q != rhs_in.q)
        throw DimensionError("solve_linear_zq shape mismatch");
    const std::uint64_t q = m_in.q;
    ZqMatrix m = m_in;
    ZqVector rhs = rhs_in;
    const std::size_t rows = m.rows, cols = m.cols;

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m.at(sel, c) == 0) ++sel;
        if (sel == rows) continue;
        for (std::size_t k = 0; k < cols; ++k) std::swap(m.at(r, k), m.at(sel, k));
        std::swap(rhs.v[r], rhs.v[sel]);
        std::uint64_t inv = static_cast<std::uint64_t>(
            mod_inverse(static_cast<std::int64_t>(m.at(r, c)), static_cast<std::int64_t>(q)));
        for (std::size_t k = 0; k < cols; ++k) m.at(r, k) = mul_mod(m.at(r, k), inv, q);
        rhs.v[r] = mul_mod(rhs.v[r], inv, q);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            std::uint64_t f = m.at(i, c);
            for (std::size_t k = 0; k < cols; ++k)
                m.at(i, k) = (m.at(i, k) + q - mul_mod(f, m.at(r, k), q)) % q;
            rhs.v[i] = (rhs.v[i] + q - mul_mod(f, rhs.v[r], q)) % q;
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (rhs.v[i] != 0) throw ValueError("solve_linear_zq: inconsistent system");

    ZqVector sol(q, cols);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) sol.v[pivot_col[i]] = rhs.v[i];
    return sol;
}

// ---- serialization: magic "PQALWE01", kind byte, (q, n, m), then entries ----

inline constexpr char kLweMagic[9] = "PQALWE01";

inline std::vector<std::uint8_t> serialize(const LwePublicKey& pk) {
    ByteWriter w;
    w.magic(kLweMagic);
    w.u8('P');
    w.u64le(pk.params.q);
    w.u64le(pk.params.n);
    w.u64le(pk.params.m);
    w.u64le(pk.params.error_bound);
    for (std::uint64_t e : pk.a.a) w.u64le(e);
    for (std::uint64_t e : pk.b.v) w.u64le(e);
    return w.take();
}

inline std::vector<std::uint8_t> serialize(const LweSecretKey& sk) {
    ByteWriter w;
    w.magic(kLweMagic);
    w.u8('S');
    w.u64le(sk.params.q);
    w.u64le(sk.params.n);
    w.u64le(sk.params.m);
    w.u64le(sk.params.error_bound);
    for (std::uint64_t e : sk.s.v) w.u64le(e);
    return w.take();
}

inline std::vector<std::uint8_t> serialize(const std::vector<LweCiphertext>& cts,
                                           const LweParams& params) {
    ByteWriter w;
    w.magic(kLweMagic);
    w.u8('C');
    w.u64le(params.q);
    w.u64le(params.n);
    w.u64le(params.m);
    w.u64le(params.error_bound);
    w.u64le(cts.size());
    for (const LweCiphertext& ct : cts) {
        for (std::uint64_t e : ct.u.v) w.u64le(e);
        w.u64le(ct.u_prime);
    }
    return w.take();
}

namespace detail {
inline LweParams read_lwe_params(ByteReader& r) {
    LweParams p;
    p.q = r.u64le();
    p.n = r.u64le();
    p.m = r.u64le();
    p.error_bound = r.u64le();
    p.validate();
    return p;
}
}  // namespace detail

inline LwePublicKey deserialize_public_key(const std::vector<std::uint8_t>& bytes) {
    ByteReader r(bytes);
    r.expect_magic(kLweMagic);
    if (r.u8() != 'P') throw ParseError("not an LWE public key");
    LwePublicKey pk;
    pk.params = detail::read_lwe_params(r);
    pk.a = ZqMatrix(pk.params.q, pk.params.n, pk.params.m);
    for (auto& e : pk.a.a) e = r.u64le() % pk.params.q;
    pk.b = ZqVector(pk.params.q, pk.params.m);
    for (auto& e : pk.b.v) e = r.u64le() % pk.params.q;
    r.done();
    return pk;
}

inline LweSecretKey deserialize_secret_key(const std::vector<std::uint8_t>& bytes) {
    ByteReader r(bytes);
    r.expect_magic(kLweMagic);
    if (r.u8() != 'S') throw ParseError("not an LWE secret key");
    LweSecretKey sk;
    sk.params = detail::read_lwe_params(r);
    sk.s = ZqVector(sk.params.q, sk.params.n);
    for (auto& e : sk.s.v) e = r.u64le() % sk.params.q;
    r.done();
    return sk;
}

inline std::vector<LweCiphertext> deserialize_ciphertexts(const std::vector<std::uint8_t>& bytes,
                                                          LweParams* params_out = nullptr) {
    ByteReader r(bytes);
    r.expect_magic(kLweMagic);
    if (r.u8() != 'C') throw ParseError("not an LWE ciphertext bundle");
    LweParams p = detail::read_lwe_params(r);
    if (params_out) *params_out = p;
    std::uint64_t count = r.u64le();
    if (count > (1u << 20)) throw ParseError("unreasonable ciphertext count");
    std::vector<LweCiphertext> cts(count);
    for (auto& ct : cts) {
        ct.u = ZqVector(p.q, p.n);
        for (auto& e : ct.u.v) e = r.u64le() % p.q;
        ct.u_prime = r.u64le() % p.q;
    }
    r.done();
    return cts;
}

}  // namespace pqa::lattice
