#include <catch2/catch_amalgamated.hpp>

#include "pqa/hashsig.hpp"

using namespace pqa;
using namespace pqa::hashsig;

namespace {

std::vector<std::uint8_t> random_bits(std::uint32_t v, Rng& rng) {
    std::vector<std::uint8_t> bits(v);
    for (auto& b : bits) b = rng.bit() ? 1 : 0;
    return bits;
}

std::vector<std::uint8_t> to_bytes(const std::string& s) {
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

}  // namespace

TEST_CASE("lamport ots: round trip, determinism, pk differs from sk", "[hashsig]") {
    Rng rng(1);
    OtsKeyPair kp = ots_keygen(256, rng);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = random_bits(256, rng);
        OtsSignature sig = ots_sign(kp, m);
        REQUIRE(ots_verify(ots_public(kp), m, sig));
    }

    Rng r1(2), r2(2);
    OtsKeyPair a = ots_keygen(16, r1), b = ots_keygen(16, r2);
    REQUIRE(a.sk == b.sk);
    REQUIRE(a.pk == b.pk);

    // hash never fixes a point: every pk entry differs from its sk entry
    for (std::size_t i = 0; i < a.sk.size(); ++i) {
        bool same = std::equal(a.sk[i].begin(), a.sk[i].end(), a.pk[i].begin());
        REQUIRE_FALSE(same);
    }

    REQUIRE_THROWS_AS(ots_keygen(0, rng), ValueError);
    REQUIRE_THROWS_AS(ots_sign(kp, random_bits(255, rng)), DimensionError);
}

TEST_CASE("ots rejects every single-bit tamper (exhaustive at v=8)", "[hashsig]") {
    Rng rng(3);
    OtsKeyPair kp = ots_keygen(8, rng);
    auto m = random_bits(8, rng);
    OtsSignature sig = ots_sign(kp, m);
    REQUIRE(ots_verify(ots_public(kp), m, sig));

    for (std::uint32_t i = 0; i < 8; ++i) {  // message bit flips
        auto tampered = m;
        tampered[i] ^= 1;
        REQUIRE_FALSE(ots_verify(ots_public(kp), tampered, sig));
    }
    for (std::uint32_t i = 0; i < 8; ++i) {  // every bit of every revealed secret
        for (int byte = 0; byte < 32; ++byte) {
            for (int bit = 0; bit < 8; ++bit) {
                OtsSignature bad = sig;
                bad.revealed[i][byte] ^= static_cast<std::uint8_t>(1 << bit);
                REQUIRE_FALSE(ots_verify(ots_public(kp), m, bad));
            }
        }
    }
}

TEST_CASE("the v=2 two-message attack recovers all secrets and forges", "[hashsig]") {
    Rng rng(4);
    OtsKeyPair kp = ots_keygen(2, rng);
    // sign m=00 and m=11; together they reveal all four secrets
    OtsSignature s00 = ots_sign(kp, {0, 0});
    OtsSignature s11 = ots_sign(kp, {1, 1});
    // attacker reassembles the full secret key from the two signatures
    std::vector<Secret> leaked(4);
    leaked[2 * 0 + 0] = s00.revealed[0];
    leaked[2 * 1 + 0] = s00.revealed[1];
    leaked[2 * 0 + 1] = s11.revealed[0];
    leaked[2 * 1 + 1] = s11.revealed[1];
    REQUIRE(leaked == kp.sk);
    // forging m = 01 now succeeds
    OtsSignature forged;
    forged.revealed = {leaked[2 * 0 + 0], leaked[2 * 1 + 1]};
    REQUIRE(ots_verify(ots_public(kp), {0, 1}, forged));
}

TEST_CASE("q-indexed signatures", "[hashsig]") {
    Rng rng(5);
    std::vector<OtsKeyPair> keys;
    std::vector<OtsPublicKey> pks;
    for (int i = 0; i < 4; ++i) {
        keys.push_back(ots_keygen(kDigestBits, rng));
        pks.push_back(ots_public(keys.back()));
    }
    auto m = to_bytes("the same message");

    IdxSignature s1 = idx_sign(keys, 1, m);
    IdxSignature s2 = idx_sign(keys, 2, m);
    REQUIRE(idx_verify(pks, 1, m, s1));
    REQUIRE(idx_verify(pks, 2, m, s2));
    REQUIRE_FALSE(s1.sig.revealed == s2.sig.revealed);

    // wrong index rejects (pk mismatch and encoding mismatch)
    REQUIRE_FALSE(idx_verify(pks, 2, m, s1));
    IdxSignature forged = s1;
    forged.u = 2;
    REQUIRE_FALSE(idx_verify(pks, 2, m, forged));

    for (std::uint64_t u = 1; u <= 4; ++u) {
        IdxSignature s = idx_sign(keys, u, m);
        REQUIRE(idx_verify(pks, u, m, s));
    }
    REQUIRE_THROWS_AS(idx_sign(keys, 0, m), ValueError);
    REQUIRE_THROWS_AS(idx_sign(keys, 5, m), ValueError);
}

TEST_CASE("node derivation is deterministic per path and distinct across paths", "[hashsig]") {
    Rng rng(6);
    MtsKey key = mts_keygen(rng, 16);

    std::vector<std::uint8_t> path = {1, 0, 1, 1};
    NodeKey n1 = derive_node(key, path, 4);
    NodeKey n2 = derive_node(key, path, 4);
    REQUIRE(node_public(n1) == node_public(n2));

    // distinct paths give distinct keys (spot sweep over many paths)
    std::set<std::vector<std::uint8_t>> seen;
    for (std::uint32_t code = 0; code < 512; ++code) {
        std::vector<std::uint8_t> bits(9);
        for (int i = 0; i < 9; ++i) bits[i] = (code >> i) & 1;
        NodeKey n = derive_node(key, bits, 9);
        std::vector<std::uint8_t> fp = node_pk_digest(node_public(n));
        REQUIRE(seen.insert(fp).second);
    }
    // a path is distinguished from its own prefix
    NodeKey npref = derive_node(key, path, 3);
    REQUIRE_FALSE(node_public(npref) == node_public(n1));

    // root pk stable across restarts given the seed
    MtsKey copy = key;
    REQUIRE(mts_public_key(copy) == mts_public_key(key));
}

TEST_CASE("mts sign/verify round trip at the test profile", "[hashsig]") {
    Rng rng(7);
    MtsKey key = mts_keygen(rng, 16);
    NodePublicKey pk = mts_public_key(key);

    for (int trial = 0; trial < 5; ++trial) {
        auto msg = to_bytes("message " + std::to_string(trial));
        MtsSignature sig = mts_sign(key, msg, rng);
        REQUIRE(sig.chain.size() == key.depth);
        REQUIRE(mts_verify(pk, msg, sig));
        REQUIRE_FALSE(mts_verify(pk, to_bytes("other"), sig));
    }
}

TEST_CASE("mts rejects tampered chains", "[hashsig]") {
    Rng rng(8);
    MtsKey key = mts_keygen(rng, 8);
    NodePublicKey pk = mts_public_key(key);
    auto msg = to_bytes("payload");
    MtsSignature sig = mts_sign(key, msg, rng);
    REQUIRE(mts_verify(pk, msg, sig));

    // tamper an intermediate child pk: certification breaks at that level
    for (std::size_t level : {std::size_t{0}, std::size_t{3}, std::size_t{6}}) {
        MtsSignature bad = sig;
        bad.chain[level].child_pk.slots[0].pk[5][0] ^= 1;
        REQUIRE_FALSE(mts_verify(pk, msg, bad));
    }
    // flipped leaf bit: wrong slot is checked
    {
        MtsSignature bad = sig;
        bad.leaf_bits[2] ^= 1;
        REQUIRE_FALSE(mts_verify(pk, msg, bad));
    }
    // malformed chain length
    {
        MtsSignature bad = sig;
        bad.chain.pop_back();
        REQUIRE_FALSE(mts_verify(pk, msg, bad));
    }
    // wrong root
    {
        Rng other(9);
        MtsKey k2 = mts_keygen(other, 8);
        REQUIRE_FALSE(mts_verify(mts_public_key(k2), msg, sig));
    }
}

TEST_CASE("mts is stateless: fresh handles from one seed are safe", "[hashsig]") {
    Rng rng(10);
    MtsKey key = mts_keygen(rng, 8);
    NodePublicKey pk = mts_public_key(key);
    // two independent signer handles built from the same key material
    MtsKey handle1 = key, handle2 = key;
    Rng r1(11), r2(12);
    auto msg = to_bytes("same message, two signers");
    MtsSignature s1 = mts_sign(handle1, msg, r1);
    MtsSignature s2 = mts_sign(handle2, msg, r2);
    REQUIRE(mts_verify(pk, msg, s1));
    REQUIRE(mts_verify(pk, msg, s2));
    REQUIRE(s1.leaf_bits != s2.leaf_bits);
}

TEST_CASE("repeated signatures use distinct leaf indices", "[hashsig]") {
    Rng rng(13);
    MtsKey key = mts_keygen(rng, 64);
    auto msg = to_bytes("x");
    std::set<std::vector<std::uint8_t>> leaves;
    for (int i = 0; i < 30; ++i) {
        MtsSignature sig = mts_sign(key, msg, rng);
        REQUIRE(leaves.insert(sig.leaf_bits).second);
    }
}

TEST_CASE("hashsig serialization round trips", "[hashsig]") {
    Rng rng(14);
    MtsKey key = mts_keygen(rng, 8);
    MtsKey kback = deserialize_mts_key(serialize(key));
    REQUIRE(kback.seed == key.seed);
    REQUIRE(kback.depth == key.depth);

    NodePublicKey pk = mts_public_key(key);
    NodePublicKey pback = deserialize_public_key(serialize(pk));
    REQUIRE(pback == pk);

    auto msg = to_bytes("serialize me");
    MtsSignature sig = mts_sign(key, msg, rng);
    MtsSignature sback = deserialize_signature(serialize(sig));
    REQUIRE(mts_verify(pk, msg, sback));
    REQUIRE(sback.leaf_bits == sig.leaf_bits);

    auto bytes = serialize(sig);
    bytes[9] = 'X';  // kind byte
    REQUIRE_THROWS_AS(deserialize_signature(bytes), ParseError);
    auto trunc = serialize(pk);
    trunc.resize(trunc.size() / 2);
    REQUIRE_THROWS_AS(deserialize_public_key(trunc), ParseError);
}
