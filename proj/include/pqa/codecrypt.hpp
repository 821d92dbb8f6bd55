#pragma once

// McEliece (hidden generator matrix, G' = SGP) and Niederreiter (hidden
// parity check, K = SHP) over binary Goppa codes, plus the constant-weight
// encoding that maps payload bits onto weight-t vectors for Niederreiter.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pqa/errors.hpp"
#include "pqa/f2.hpp"
#include "pqa/goppa.hpp"
#include "pqa/rng.hpp"
#include "pqa/serial.hpp"

namespace pqa::codecrypt {

struct CodeParams {
    int m = 5;
    std::size_t n = 32;
    int t = 2;

    std::size_t k() const { return n - static_cast<std::size_t>(m) * t; }
};

// Demo-grade parameter presets; NOT secure sizes.
inline CodeParams code_preset(const std::string& name) {
    if (name == "demo" || name == "default") return {5, 32, 2};
    if (name == "tiny") return {4, 16, 2};
    if (name == "large") return {10, 1024, 32};
    throw ValueError("unknown code preset: " + name);
}

// Builds a Goppa code with random support order and random irreducible g.
inline GoppaCode random_goppa_code(const CodeParams& p, Rng& rng) {
    GF2mField field(p.m);
    if (p.n > field.size()) throw ValueError("support cannot exceed field size");
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<std::uint32_t> all(field.size());
        for (std::uint32_t i = 0; i < field.size(); ++i) all[i] = i;
        for (std::size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[rng.below(i)]);
        Poly g = random_irreducible(field, p.t, rng);
        std::vector<std::uint32_t> support;
        for (std::uint32_t a : all) {
            if (support.size() == p.n) break;
            if (g.eval(field, a) != 0) support.push_back(a);
        }
        if (support.size() < p.n) continue;
        try {
            return goppa_build(field, std::move(support), g);
        } catch (const ValueError&) {
            continue;  // rank-deficient draw; resample g
        }
    }
    throw RetryExhausted("random_goppa_code: could not build a full-rank code");
}

// ---- McEliece ----

struct McElieceKeyPair {
    F2Mat pub_g;  // k x n, S G P
    F2Mat s, s_inv;
    std::vector<std::size_t> perm, perm_inv;
    GoppaCode code;
};

inline F2Mat permute_columns(const F2Mat& m, const std::vector<std::size_t>& perm) {
    F2Mat out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) out.set(r, perm[c], true);
    return out;
}

inline McElieceKeyPair mceliece_keygen(const GoppaCode& code, Rng& rng) {
    McElieceKeyPair kp{{}, {}, {}, {}, {}, code};
    kp.s = random_invertible(code.k(), rng);
    kp.s_inv = kp.s.inverse();
    kp.perm = random_permutation(code.n(), rng);
    kp.perm_inv = invert_permutation(kp.perm);
    kp.pub_g = permute_columns(kp.s.mul(code.gen), kp.perm);
    return kp;
}

inline F2Vec random_weight_t_error(std::size_t n, int t, Rng& rng) {
    F2Vec e(n);
    int placed = 0;
    while (placed < t) {
        std::size_t pos = rng.below(n);
        if (!e.get(pos)) {
            e.set(pos, true);
            ++placed;
        }
    }
    return e;
}

inline F2Vec mceliece_encrypt_with_e(const F2Mat& pub_g, const F2Vec& message, const F2Vec& e) {
    if (message.size() != pub_g.rows()) throw DimensionError("mceliece: message length != k");
    F2Vec c = pub_g.mul_left(message);
    c.xor_in(e);
    return c;
}

inline F2Vec mceliece_encrypt(const F2Mat& pub_g, const F2Vec& message, int t, Rng& rng) {
    return mceliece_encrypt_with_e(pub_g, message,
                                   random_weight_t_error(pub_g.cols(), t, rng));
}

inline F2Vec mceliece_decrypt(const McElieceKeyPair& kp, const F2Vec& ciphertext) {
    if (ciphertext.size() != kp.code.n()) throw DimensionError("mceliece: ciphertext length != n");
    // c P^{-1} = (mS) G + e P^{-1}; decode, then solve (mS) G = codeword, undo S
    F2Vec cp = apply_permutation(kp.perm_inv, ciphertext);
    DecodeResult dec = goppa_decode(kp.code, cp);
    F2Vec ms;
    if (!kp.code.gen.transposed().solve(dec.codeword, ms))
        throw DecodeFailure("mceliece: decoded word is not in the code");
    return kp.s_inv.mul_left(ms);
}

// ---- Niederreiter ----

struct NiederreiterKeyPair {
    F2Mat pub_k;  // (n-k) x n, S H P
    F2Mat s, s_inv;
    std::vector<std::size_t> perm, perm_inv;
    GoppaCode code;
};

inline NiederreiterKeyPair niederreiter_keygen(const GoppaCode& code, Rng& rng) {
    NiederreiterKeyPair kp{{}, {}, {}, {}, {}, code};
    std::size_t rows = code.h_bin.rows();
    kp.s = random_invertible(rows, rng);
    kp.s_inv = kp.s.inverse();
    kp.perm = random_permutation(code.n(), rng);
    kp.perm_inv = invert_permutation(kp.perm);
    kp.pub_k = permute_columns(kp.s.mul(code.h_bin), kp.perm);
    return kp;
}

// c = K m^t for a weight-t message vector.
inline F2Vec niederreiter_encrypt(const F2Mat& pub_k, const F2Vec& message, int t) {
    if (message.size() != pub_k.cols()) throw DimensionError("niederreiter: message length != n");
    if (message.weight() != static_cast<std::size_t>(t))
        throw ValueError("niederreiter: message weight must be exactly t");
    return pub_k.mul_right(message);
}

inline F2Vec niederreiter_decrypt(const NiederreiterKeyPair& kp, const F2Vec& ciphertext) {
    if (ciphertext.size() != kp.pub_k.rows())
        throw DimensionError("niederreiter: ciphertext length mismatch");
    // S^{-1} c = H (P m^t): syndrome-decode, then invert the permutation
    F2Vec syn_bits = kp.s_inv.mul_right(ciphertext);
    Poly s_poly = syndrome_from_bits(kp.code, syn_bits);
    std::optional<F2Vec> pm = decode_syndrome(kp.code, s_poly);
    if (!pm) throw DecodeFailure("niederreiter: syndrome does not decode");
    // pm holds P m^t, whose entry i is m_{perm[i]}; undo the permutation
    return apply_permutation(kp.perm, *pm);
}

// ---- constant-weight encoding (combinadic ranking of weight-t vectors) ----

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > ~std::uint64_t{0}) throw CapacityError("binomial overflows 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

// Lexicographic rank of a weight-t bitstring (position 0 leftmost, 0 < 1);
// rank 0 is 0^(n-t) 1^t.
inline std::uint64_t cw_rank(const F2Vec& v, int t) {
    std::uint64_t rank = 0;
    std::size_t n = v.size();
    std::uint64_t w = static_cast<std::uint64_t>(t);
    for (std::size_t p = 0; p < n; ++p) {
        std::uint64_t len = n - p;
        if (v.get(p)) {
            rank += binomial(len - 1, w);  // strings with 0 here come first
            if (w == 0) throw ValueError("cw_rank: weight exceeds t");
            --w;
        }
    }
    if (w != 0) throw ValueError("cw_rank: weight below t");
    return rank;
}

inline F2Vec cw_unrank(std::uint64_t j, std::size_t n, int t) {
    if (j >= binomial(n, t)) throw ValueError("cw_unrank: rank out of range");
    F2Vec v(n);
    std::uint64_t w = static_cast<std::uint64_t>(t);
    for (std::size_t p = 0; p < n; ++p) {
        std::uint64_t len = n - p;
        std::uint64_t zeros_first = binomial(len - 1, w);
        if (j < zeros_first) continue;
        j -= zeros_first;
        v.set(p, true);
        --w;
    }
    return v;
}

// Payload bits carried by one weight-t block.
inline std::uint32_t cw_capacity_bits(std::size_t n, int t) {
    std::uint64_t total = binomial(n, t);
    std::uint32_t bits = 0;
    while ((std::uint64_t{1} << (bits + 1)) <= total) ++bits;
    return bits;
}

// ---- key serialization ----

inline constexpr char kMcElieceMagic[9] = "PQAMC001";
inline constexpr char kNiederreiterMagic[9] = "PQANR001";

namespace detail {

inline void write_bitmatrix(ByteWriter& w, const F2Mat& m) {
    w.u64le(m.rows());
    w.u64le(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::uint8_t acc = 0;
        int fill = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            acc = static_cast<std::uint8_t>((acc << 1) | (m.get(r, c) ? 1 : 0));
            if (++fill == 8) {
                w.u8(acc);
                acc = 0;
                fill = 0;
            }
        }
        if (fill) w.u8(static_cast<std::uint8_t>(acc << (8 - fill)));
    }
}

inline F2Mat read_bitmatrix(ByteReader& r) {
    std::uint64_t rows = r.u64le(), cols = r.u64le();
    if (rows > 1u << 16 || cols > 1u << 16) throw ParseError("unreasonable matrix size");
    F2Mat m(rows, cols);
    for (std::size_t row = 0; row < rows; ++row) {
        std::size_t c = 0;
        while (c < cols) {
            std::uint8_t byte = r.u8();
            for (int bit = 7; bit >= 0 && c < cols; --bit, ++c)
                if ((byte >> bit) & 1) m.set(row, c, true);
        }
    }
    return m;
}

inline void write_code(ByteWriter& w, const GoppaCode& code) {
    w.u32le(static_cast<std::uint32_t>(code.field.m()));
    w.u32le(code.field.modulus());
    w.u64le(code.n());
    w.u32le(static_cast<std::uint32_t>(code.t()));
    for (std::uint32_t a : code.support) w.u32le(a);
    for (int j = 0; j <= code.t(); ++j) w.u32le(code.g.coeff(j));
}

inline GoppaCode read_code(ByteReader& r) {
    int m = static_cast<int>(r.u32le());
    std::uint32_t modulus = r.u32le();
    GF2mField field(m, modulus);
    std::uint64_t n = r.u64le();
    int t = static_cast<int>(r.u32le());
    if (n > field.size() || t < 1 || t > 64) throw ParseError("bad code parameters");
    std::vector<std::uint32_t> support(n);
    for (auto& a : support) a = r.u32le();
    std::vector<std::uint32_t> gc(t + 1);
    for (auto& c : gc) c = r.u32le();
    return goppa_build(field, std::move(support), Poly(std::move(gc)));
}

inline void write_perm(ByteWriter& w, const std::vector<std::size_t>& perm) {
    w.u64le(perm.size());
    for (std::size_t p : perm) w.u32le(static_cast<std::uint32_t>(p));
}

inline std::vector<std::size_t> read_perm(ByteReader& r) {
    std::uint64_t n = r.u64le();
    if (n > 1u << 16) throw ParseError("unreasonable permutation size");
    std::vector<std::size_t> perm(n);
    std::vector<bool> seen(n, false);
    for (auto& p : perm) {
        p = r.u32le();
        if (p >= n || seen[p]) throw ParseError("not a permutation");
        seen[p] = true;
    }
    return perm;
}

}  // namespace detail

inline std::vector<std::uint8_t> serialize_public(const McElieceKeyPair& kp) {
    ByteWriter w;
    w.magic(kMcElieceMagic);
    w.u8('P');
    w.u32le(static_cast<std::uint32_t>(kp.code.field.m()));
    w.u64le(kp.code.n());
    w.u32le(static_cast<std::uint32_t>(kp.code.t()));
    w.u64le(kp.code.k());
    detail::write_bitmatrix(w, kp.pub_g);
    return w.take();
}

inline std::vector<std::uint8_t> serialize_secret(const McElieceKeyPair& kp) {
    ByteWriter w;
    w.magic(kMcElieceMagic);
    w.u8('S');
    detail::write_code(w, kp.code);
    detail::write_bitmatrix(w, kp.s);
    detail::write_perm(w, kp.perm);
    return w.take();
}

struct McEliecePublic {
    std::size_t n = 0, k = 0;
    int m = 0, t = 0;
    F2Mat pub_g;
};

inline McEliecePublic deserialize_mceliece_public(const std::vector<std::uint8_t>& bytes) {
    ByteReader r(bytes);
    r.expect_magic(kMcElieceMagic);
    if (r.u8() != 'P') throw ParseError("not a McEliece public key");
    McEliecePublic pk;
    pk.m = static_cast<int>(r.u32le());
    pk.n = r.u64le();
    pk.t = static_cast<int>(r.u32le());
    pk.k = r.u64le();
    pk.pub_g = detail::read_bitmatrix(r);
    if (pk.pub_g.rows() != pk.k || pk.pub_g.cols() != pk.n) throw ParseError("matrix shape");
    r.done();
    return pk;
}

inline McElieceKeyPair deserialize_mceliece_secret(const std::vector<std::uint8_t>& bytes) {
    ByteReader r(bytes);
    r.expect_magic(kMcElieceMagic);
    if (r.u8() != 'S') throw ParseError("not a McEliece secret key");
    GoppaCode code = detail::read_code(r);
    McElieceKeyPair kp{{}, {}, {}, {}, {}, code};
    kp.s = detail::read_bitmatrix(r);
    kp.perm = detail::read_perm(r);
    r.done();
    kp.s_inv = kp.s.inverse();
    kp.perm_inv = invert_permutation(kp.perm);
    kp.pub_g = permute_columns(kp.s.mul(code.gen), kp.perm);
    return kp;
}

inline std::vector<std::uint8_t> serialize_public(const NiederreiterKeyPair& kp) {
    ByteWriter w;
    w.magic(kNiederreiterMagic);
    w.u8('P');
    w.u32le(static_cast<std::uint32_t>(kp.code.field.m()));
    w.u64le(kp.code.n());
    w.u32le(static_cast<std::uint32_t>(kp.code.t()));
    w.u64le(kp.code.k());
    detail::write_bitmatrix(w, kp.pub_k);
    return w.take();
}

inline std::vector<std::uint8_t> serialize_secret(const NiederreiterKeyPair& kp) {
    ByteWriter w;
    w.magic(kNiederreiterMagic);
    w.u8('S');
    detail::write_code(w, kp.code);
    detail::write_bitmatrix(w, kp.s);
    detail::write_perm(w, kp.perm);
    return w.take();
}

struct NiederreiterPublic {
    std::size_t n = 0, k = 0;
    int m = 0, t = 0;
    F2Mat pub_k;
};

inline NiederreiterPublic deserialize_niederreiter_public(const std::vector<std::uint8_t>& bytes) {
    ByteReader r(bytes);
    r.expect_magic(kNiederreiterMagic);
    if (r.u8() != 'P') throw ParseError("not a Niederreiter public key");
    NiederreiterPublic pk;
    pk.m = static_cast<int>(r.u32le());
    pk.n = r.u64le();
    pk.t = static_cast<int>(r.u32le());
    pk.k = r.u64le();
    pk.pub_k = detail::read_bitmatrix(r);
    if (pk.pub_k.cols() != pk.n) throw ParseError("matrix shape");
    r.done();
    return pk;
}

inline NiederreiterKeyPair deserialize_niederreiter_secret(const std::vector<std::uint8_t>& bytes) {
    ByteReader r(bytes);
    r.expect_magic(kNiederreiterMagic);
    if (r.u8() != 'S') throw ParseError("not a Niederreiter secret key");
    GoppaCode code = detail::read_code(r);
    NiederreiterKeyPair kp{{}, {}, {}, {}, {}, code};
    kp.s = detail::read_bitmatrix(r);
    kp.perm = detail::read_perm(r);
    r.done();
    kp.s_inv = kp.s.inverse();
    kp.perm_inv = invert_permutation(kp.perm);
    kp.pub_k = permute_columns(kp.s.mul(code.h_bin), kp.perm);
    return kp;
}

}  // namespace pqa::codecrypt
