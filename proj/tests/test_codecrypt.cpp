#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "pqa/codecrypt.hpp"

using namespace pqa;
using namespace pqa::codecrypt;

namespace {

// Brute-force syndrome-table decoder: enumerate every error pattern of
// weight <= t, map its binary syndrome to the pattern. Independent of the
// Patterson path.
struct SyndromeTable {
    std::map<std::vector<std::uint64_t>, F2Vec> table;

    explicit SyndromeTable(const GoppaCode& code) {
        const std::size_t n = code.n();
        const int t = code.t();
        // weight 0
        table[code.h_bin.mul_right(F2Vec(n)).words()] = F2Vec(n);
        // weight 1..t (t <= 2 in the demo codes)
        for (std::size_t i = 0; i < n; ++i) {
            F2Vec e1(n);
            e1.set(i, true);
            table[code.h_bin.mul_right(e1).words()] = e1;
            if (t >= 2) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    F2Vec e2 = e1;
                    e2.set(j, true);
                    table[code.h_bin.mul_right(e2).words()] = e2;
                }
            }
        }
    }

    std::optional<F2Vec> decode(const GoppaCode& code, const F2Vec& received) const {
        auto it = table.find(code.h_bin.mul_right(received).words());
        if (it == table.end()) return std::nullopt;
        return it->second;
    }
};

GoppaCode demo_code_m4(Rng& rng) { return random_goppa_code(code_preset("tiny"), rng); }

}  // namespace

TEST_CASE("gf2m field axioms exhaustively at m=4", "[codecrypt]") {
    GF2mField f(4);
    REQUIRE(f.size() == 16);
    for (std::uint32_t a = 0; a < 16; ++a) {
        REQUIRE(f.add(a, a) == 0);           // characteristic 2
        REQUIRE(f.mul(a, 1) == a);           // multiplicative identity
        if (a != 0) REQUIRE(f.mul(a, f.inv(a)) == 1);
    }
    REQUIRE_THROWS_AS(f.inv(0), ValueError);
    for (std::uint32_t a = 0; a < 16; ++a)
        for (std::uint32_t b = 0; b < 16; ++b)
            for (std::uint32_t c = 0; c < 16; ++c) {
                REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            }
}

TEST_CASE("field modulus table entries are irreducible for every m", "[codecrypt]") {
    for (int m = 2; m <= 13; ++m) REQUIRE_NOTHROW(GF2mField(m));
    REQUIRE_THROWS_AS(GF2mField(4, 0x18), ValueError);  // x^4 + x^3 = x^3(x+1)
    REQUIRE_THROWS_AS(GF2mField(1), ValueError);
    REQUIRE_THROWS_AS(GF2mField(14), ValueError);
}

TEST_CASE("polynomial division, gcd, modular inverse", "[codecrypt]") {
    GF2mField f(5);
    Rng rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::uint32_t> ac(5), bc(3);
        for (auto& c : ac) c = static_cast<std::uint32_t>(rng.below(32));
        for (auto& c : bc) c = static_cast<std::uint32_t>(rng.below(32));
        bc[2] = 1 + static_cast<std::uint32_t>(rng.below(31));
        Poly a(ac), b(bc);
        auto [q, r] = divmod(f, a, b);
        REQUIRE(add(mul(f, q, b), r) == a);
        REQUIRE((r.is_zero() || r.degree() < b.degree()));
    }

    Poly g = random_irreducible(f, 3, rng);
    REQUIRE(poly_irreducible(f, g));
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::uint32_t> ac(3);
        for (auto& c : ac) c = static_cast<std::uint32_t>(rng.below(32));
        Poly a(ac);
        if (a.is_zero()) continue;
        Poly inv = poly_inv_mod(f, a, g);
        REQUIRE(mod(f, mul(f, a, inv), g) == Poly::constant(1));
    }

    // a product of linears is reducible
    Poly composite = mul(f, Poly::linear(3), Poly::linear(7));
    REQUIRE_FALSE(poly_irreducible(f, composite));
}

TEST_CASE("goppa construction satisfies the kernel equation", "[codecrypt]") {
    Rng rng(2);
    GoppaCode code = demo_code_m4(rng);
    REQUIRE(code.n() == 16);
    REQUIRE(code.t() == 2);
    REQUIRE(code.k() == 8);

    // G H^t = 0
    F2Mat prod = code.gen.mul(code.h_bin.transposed());
    for (std::size_t r = 0; r < prod.rows(); ++r) REQUIRE(prod.row(r).is_zero());

    // every codeword satisfies sum c_i/(x - a_i) = 0 mod g, symbolically,
    // and has zero binary syndrome
    for (std::uint64_t mbits = 0; mbits < 256; ++mbits) {
        F2Vec m = F2Vec::from_u64(mbits, 8);
        F2Vec c = code.gen.mul_left(m);
        REQUIRE(syndrome_poly(code, c).is_zero());
        REQUIRE(code.h_bin.mul_right(c).is_zero());
    }
}

TEST_CASE("minimum distance of the m=4 demo code is at least 2t+1", "[codecrypt]") {
    Rng rng(3);
    GoppaCode code = demo_code_m4(rng);
    std::size_t min_weight = code.n();
    for (std::uint64_t mbits = 1; mbits < 256; ++mbits) {
        F2Vec c = code.gen.mul_left(F2Vec::from_u64(mbits, 8));
        min_weight = std::min(min_weight, c.weight());
    }
    REQUIRE(min_weight >= 5);
}

TEST_CASE("patterson decoding agrees with the syndrome-table oracle on all patterns",
          "[codecrypt]") {
    Rng rng(4);
    GoppaCode code = demo_code_m4(rng);
    SyndromeTable oracle(code);

    // zero errors
    F2Vec cw = code.gen.mul_left(F2Vec::from_u64(0b10110101, 8));
    DecodeResult r0 = goppa_decode(code, cw);
    REQUIRE(r0.error.is_zero());
    REQUIRE(r0.codeword == cw);

    // all single- and double-bit patterns on several codewords
    for (std::uint64_t mbits : {0ull, 37ull, 255ull, 160ull}) {
        F2Vec c = code.gen.mul_left(F2Vec::from_u64(mbits, 8));
        for (std::size_t i = 0; i < code.n(); ++i) {
            for (std::size_t j = i; j < code.n(); ++j) {
                F2Vec e(code.n());
                e.set(i, true);
                e.set(j, true);  // i == j gives weight 1
                F2Vec received = c;
                received.xor_in(e);
                DecodeResult dec = goppa_decode(code, received);
                auto expected = oracle.decode(code, received);
                REQUIRE(expected.has_value());
                REQUIRE(dec.error == *expected);
                REQUIRE(dec.codeword == c);
            }
        }
    }
}

TEST_CASE("weight t+1 injections fail or mis-decode, never silently succeed", "[codecrypt]") {
    Rng rng(5);
    GoppaCode code = demo_code_m4(rng);
    int failures = 0, wrong = 0;
    for (int trial = 0; trial < 50; ++trial) {
        F2Vec m = F2Vec::from_u64(rng.below(256), 8);
        F2Vec c = code.gen.mul_left(m);
        F2Vec e = random_weight_t_error(code.n(), code.t() + 1, rng);
        F2Vec received = c;
        received.xor_in(e);
        try {
            DecodeResult dec = goppa_decode(code, received);
            // decoded to SOME codeword within distance t, but not the sent one
            REQUIRE(dec.error.weight() <= static_cast<std::size_t>(code.t()));
            if (!(dec.codeword == c)) ++wrong;
        } catch (const DecodeFailure&) {
            ++failures;
        }
    }
    REQUIRE(failures + wrong == 50);
}

TEST_CASE("mceliece key material invariants", "[codecrypt]") {
    Rng rng(6);
    GoppaCode code = random_goppa_code(code_preset("demo"), rng);
    REQUIRE(code.n() == 32);
    REQUIRE(code.k() == 22);
    McElieceKeyPair kp = mceliece_keygen(code, rng);

    REQUIRE(kp.s.mul(kp.s_inv) == F2Mat::identity(code.k()));
    F2Mat p = permutation_matrix(kp.perm);
    REQUIRE(p.mul(p.transposed()) == F2Mat::identity(code.n()));
    REQUIRE(kp.pub_g.rank() == code.k());
    // G' = S G P exactly
    REQUIRE(kp.pub_g == permute_columns(kp.s.mul(code.gen), kp.perm));
}

TEST_CASE("mceliece round trips and error-weight properties", "[codecrypt]") {
    Rng rng(7);
    GoppaCode code = random_goppa_code(code_preset("demo"), rng);
    McElieceKeyPair kp = mceliece_keygen(code, rng);

    for (int trial = 0; trial < 100; ++trial) {
        F2Vec m(code.k());
        for (std::size_t i = 0; i < code.k(); ++i) m.set(i, rng.bit());
        F2Vec c = mceliece_encrypt(kp.pub_g, m, code.t(), rng);
        // weight(c - m G') = t by construction
        F2Vec diff = c;
        diff.xor_in(kp.pub_g.mul_left(m));
        REQUIRE(diff.weight() == static_cast<std::size_t>(code.t()));
        REQUIRE(mceliece_decrypt(kp, c) == m);
    }

    // e = 0 hook: ciphertext is a codeword of the public code
    F2Vec m(code.k());
    m.set(3, true);
    F2Vec c0 = mceliece_encrypt_with_e(kp.pub_g, m, F2Vec(code.n()));
    F2Vec sol;
    REQUIRE(kp.pub_g.transposed().solve(c0, sol));
    REQUIRE(sol == m);

    // wrong private key: failure or wrong message, flagged either way
    McElieceKeyPair other = mceliece_keygen(random_goppa_code(code_preset("demo"), rng), rng);
    F2Vec c = mceliece_encrypt(kp.pub_g, m, code.t(), rng);
    bool flagged = false;
    try {
        flagged = !(mceliece_decrypt(other, c) == m);
    } catch (const DecodeFailure&) {
        flagged = true;
    }
    REQUIRE(flagged);
}

TEST_CASE("niederreiter round trips all weight-2 messages exhaustively", "[codecrypt]") {
    Rng rng(8);
    GoppaCode code = random_goppa_code(code_preset("demo"), rng);
    NiederreiterKeyPair kp = niederreiter_keygen(code, rng);

    // S^{-1} c = H (P m^t) algebraic identity, spot checks of the sweep
    int count = 0;
    for (std::size_t i = 0; i < code.n(); ++i) {
        for (std::size_t j = i + 1; j < code.n(); ++j) {
            F2Vec m(code.n());
            m.set(i, true);
            m.set(j, true);
            F2Vec c = niederreiter_encrypt(kp.pub_k, m, code.t());
            F2Vec lhs = kp.s_inv.mul_right(c);
            F2Vec pm(code.n());
            for (std::size_t idx = 0; idx < code.n(); ++idx)
                if (m.get(kp.perm[idx])) pm.set(idx, true);
            REQUIRE(lhs == code.h_bin.mul_right(pm));
            REQUIRE(niederreiter_decrypt(kp, c) == m);
            ++count;
        }
    }
    REQUIRE(count == 496);

    F2Vec heavy(code.n());
    heavy.set(0, true);
    heavy.set(1, true);
    heavy.set(2, true);
    REQUIRE_THROWS_AS(niederreiter_encrypt(kp.pub_k, heavy, code.t()), ValueError);
}

TEST_CASE("constant-weight rank/unrank is a bijection (exhaustive n=16, t=2)", "[codecrypt]") {
    const std::size_t n = 16;
    const int t = 2;
    REQUIRE(binomial(n, t) == 120);
    for (std::uint64_t j = 0; j < 120; ++j) {
        F2Vec v = cw_unrank(j, n, t);
        REQUIRE(v.weight() == 2);
        REQUIRE(cw_rank(v, t) == j);
    }
    // j = 0 is the lexicographically first string 0^(n-t) 1^t
    F2Vec first = cw_unrank(0, n, t);
    for (std::size_t p = 0; p < n; ++p) REQUIRE(first.get(p) == (p >= n - t));
    REQUIRE_THROWS_AS(cw_unrank(120, n, t), ValueError);
    REQUIRE(cw_capacity_bits(32, 2) == 8);  // C(32,2) = 496
}

TEST_CASE("code key serialization round trips", "[codecrypt]") {
    Rng rng(9);
    GoppaCode code = random_goppa_code(code_preset("demo"), rng);
    McElieceKeyPair mc = mceliece_keygen(code, rng);
    NiederreiterKeyPair nr = niederreiter_keygen(code, rng);

    McEliecePublic mp = deserialize_mceliece_public(serialize_public(mc));
    REQUIRE(mp.pub_g == mc.pub_g);
    McElieceKeyPair ms = deserialize_mceliece_secret(serialize_secret(mc));
    REQUIRE(ms.pub_g == mc.pub_g);
    REQUIRE(ms.perm == mc.perm);

    NiederreiterPublic np = deserialize_niederreiter_public(serialize_public(nr));
    REQUIRE(np.pub_k == nr.pub_k);
    NiederreiterKeyPair nrs = deserialize_niederreiter_secret(serialize_secret(nr));
    REQUIRE(nrs.pub_k == nr.pub_k);

    // cross round trip: encrypt with deserialized public, decrypt with
    // deserialized secret
    F2Vec m(code.k());
    m.set(1, true);
    m.set(20, true);
    F2Vec c = mceliece_encrypt(mp.pub_g, m, mp.t, rng);
    REQUIRE(mceliece_decrypt(ms, c) == m);

    REQUIRE_THROWS_AS(deserialize_mceliece_public(serialize_public(nr)), ParseError);
    REQUIRE_THROWS_AS(deserialize_niederreiter_secret(serialize_public(nr)), ParseError);
}
