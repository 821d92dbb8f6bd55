#pragma once

// Hash-based signatures: Lamport one-time signatures over v-bit messages,
// the q-indexed extension (q one-time keys, message domain (u, m)), and the
// stateless many-time scheme that derives a depth-d binary tree of 2-indexed
// keys on the fly from a PRF seed and signs under a random leaf path.
//
// Concrete primitives: f = SHA-256, PRF = HMAC-SHA-256, PRG = HMAC-SHA-256 in
// counter mode. Bit-exact encodings (PRF path input, (u, m) hashing, key
// material layout) are documented in docs/formats.md.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pqa/errors.hpp"
#include "pqa/rng.hpp"
#include "pqa/serial.hpp"
#include "pqa/sha256.hpp"

namespace pqa::hashsig {

using Secret = std::array<std::uint8_t, 32>;

struct OtsKeyPair {
    std::uint32_t v = 0;            // message bit-length
    std::vector<Secret> sk;         // 2v secrets, index 2*i + b
    std::vector<Digest> pk;         // pk[2*i + b] = H(sk[2*i + b])
};

struct OtsPublicKey {
    std::uint32_t v = 0;
    std::vector<Digest> pk;
};

struct OtsSignature {
    std::vector<Secret> revealed;  // v secrets, one per message bit
};

inline OtsPublicKey ots_public(const OtsKeyPair& kp) { return {kp.v, kp.pk}; }

namespace detail {

inline OtsKeyPair ots_from_secrets(std::uint32_t v, std::vector<Secret> secrets) {
    OtsKeyPair kp;
    kp.v = v;
    kp.sk = std::move(secrets);
    kp.pk.resize(2 * v);
    for (std::size_t i = 0; i < kp.sk.size(); ++i)
        kp.pk[i] = sha256(kp.sk[i].data(), kp.sk[i].size());
    return kp;
}

}  // namespace detail

inline OtsKeyPair ots_keygen(std::uint32_t v, Rng& rng) {
    if (v < 1) throw ValueError("ots_keygen: v must be at least 1");
    std::vector<Secret> secrets(2 * v);
    for (Secret& s : secrets) rng.fill_bytes(s.data(), s.size());
    return detail::ots_from_secrets(v, std::move(secrets));
}

// Deterministic variant used for tree nodes: secrets come from PRG(seed).
inline OtsKeyPair ots_keygen_prg(std::uint32_t v, const std::uint8_t* seed, std::size_t seedlen) {
    std::vector<std::uint8_t> material = prg_expand(seed, seedlen, std::size_t{2} * v * 32);
    std::vector<Secret> secrets(2 * v);
    for (std::size_t i = 0; i < secrets.size(); ++i)
        std::copy_n(material.data() + 32 * i, 32, secrets[i].data());
    return detail::ots_from_secrets(v, std::move(secrets));
}

// Message bits: m_bits[i] in {0,1}, length v. Sign-once discipline is the
// caller's duty.
inline OtsSignature ots_sign(const OtsKeyPair& kp, const std::vector<std::uint8_t>& m_bits) {
    if (m_bits.size() != kp.v) throw DimensionError("ots_sign: message length mismatch");
    OtsSignature sig;
    sig.revealed.resize(kp.v);
    for (std::uint32_t i = 0; i < kp.v; ++i) {
        if (m_bits[i] > 1) throw ValueError("ots_sign: message must be bits");
        sig.revealed[i] = kp.sk[2 * i + m_bits[i]];
    }
    return sig;
}

inline bool ots_verify(const OtsPublicKey& pk, const std::vector<std::uint8_t>& m_bits,
                       const OtsSignature& sig) {
    if (m_bits.size() != pk.v || sig.revealed.size() != pk.v) return false;
    for (std::uint32_t i = 0; i < pk.v; ++i) {
        if (m_bits[i] > 1) return false;
        Digest h = sha256(sig.revealed[i].data(), sig.revealed[i].size());
        if (h != pk.pk[2 * i + m_bits[i]]) return false;
    }
    return true;
}

// ---- q-indexed signatures over (u, m), u in [1, q] ----

inline constexpr std::uint32_t kDigestBits = 256;

// Digest of (u, m): SHA-256 over 8-byte big-endian u followed by m, expanded
// to 256 message bits (MSB-first within each byte).
inline std::vector<std::uint8_t> indexed_message_bits(std::uint64_t u,
                                                      const std::vector<std::uint8_t>& m) {
    ByteWriter w;
    w.u64be(u);
    w.raw(m);
    Digest d = sha256(w.bytes());
    std::vector<std::uint8_t> bits(kDigestBits);
    for (std::size_t i = 0; i < kDigestBits; ++i) bits[i] = (d[i / 8] >> (7 - i % 8)) & 1;
    return bits;
}

struct IdxSignature {
    std::uint64_t u = 0;
    OtsSignature sig;
};

inline IdxSignature idx_sign(const std::vector<OtsKeyPair>& keys, std::uint64_t u,
                             const std::vector<std::uint8_t>& m) {
    if (u < 1 || u > keys.size()) throw ValueError("idx_sign: index out of range");
    return {u, ots_sign(keys[u - 1], indexed_message_bits(u, m))};
}

inline bool idx_verify(const std::vector<OtsPublicKey>& pks, std::uint64_t u,
                       const std::vector<std::uint8_t>& m, const IdxSignature& sig) {
    if (u < 1 || u > pks.size() || sig.u != u) return false;
    return ots_verify(pks[u - 1], indexed_message_bits(u, m), sig.sig);
}

// ---- stateless many-time scheme ----

// A tree node is a 2-indexed key: two one-time keypairs over 256-bit digests.
struct NodeKey {
    std::array<OtsKeyPair, 2> slots;
};

struct NodePublicKey {
    std::array<OtsPublicKey, 2> slots;

    bool operator==(const NodePublicKey& o) const {
        for (int s = 0; s < 2; ++s) {
            if (slots[s].v != o.slots[s].v || slots[s].pk != o.slots[s].pk) return false;
        }
        return true;
    }
};

inline NodePublicKey node_public(const NodeKey& node) {
    return {{ots_public(node.slots[0]), ots_public(node.slots[1])}};
}

// Byte encoding of a node public key: slot 0 hashes then slot 1 hashes.
inline std::vector<std::uint8_t> node_pk_bytes(const NodePublicKey& pk) {
    std::vector<std::uint8_t> out;
    out.reserve(2 * pk.slots[0].pk.size() * 32);
    for (int s = 0; s < 2; ++s)
        for (const Digest& d : pk.slots[s].pk) out.insert(out.end(), d.begin(), d.end());
    return out;
}

// Certified chains sign H(node pk bytes) rather than the full key.
inline std::vector<std::uint8_t> node_pk_digest(const NodePublicKey& pk) {
    Digest d = sha256(node_pk_bytes(pk));
    return std::vector<std::uint8_t>(d.begin(), d.end());
}

struct MtsKey {
    std::array<std::uint8_t, 32> seed{};  // PRF key k
    std::uint32_t depth = 256;            // d
};

struct MtsChainEntry {
    NodePublicKey child_pk;  // empty/unused in the final entry
    IdxSignature cert;
};

struct MtsSignature {
    std::uint32_t depth = 0;
    std::vector<std::uint8_t> leaf_bits;   // d bits, a_1..a_d
    std::vector<MtsChainEntry> chain;      // d-1 certifications + final signature
};

// PRF input for the node at path (a_1..a_i): one length byte i, then the
// path bits packed MSB-first.
inline std::vector<std::uint8_t> path_encoding(const std::vector<std::uint8_t>& bits,
                                               std::size_t depth_i) {
    if (depth_i > 255) throw ValueError("path depth exceeds one byte");
    std::vector<std::uint8_t> out(1 + (depth_i + 7) / 8, 0);
    out[0] = static_cast<std::uint8_t>(depth_i);
    for (std::size_t i = 0; i < depth_i; ++i)
        if (bits[i]) out[1 + i / 8] |= static_cast<std::uint8_t>(0x80 >> (i % 8));
    return out;
}

// Node key at the given path prefix: r = PRF(k, path), slots from PRG(r).
inline NodeKey derive_node(const MtsKey& key, const std::vector<std::uint8_t>& bits,
                           std::size_t depth_i) {
    std::vector<std::uint8_t> input = path_encoding(bits, depth_i);
    Digest r = hmac_sha256(key.seed.data(), key.seed.size(), input.data(), input.size());
    std::vector<std::uint8_t> material =
        prg_expand(r.data(), r.size(), std::size_t{2} * 2 * kDigestBits * 32);
    NodeKey node;
    for (int s = 0; s < 2; ++s) {
        std::vector<Secret> secrets(2 * kDigestBits);
        const std::uint8_t* base = material.data() + s * std::size_t{2} * kDigestBits * 32;
        for (std::size_t i = 0; i < secrets.size(); ++i)
            std::copy_n(base + 32 * i, 32, secrets[i].data());
        node.slots[s] = detail::ots_from_secrets(kDigestBits, std::move(secrets));
    }
    return node;
}

inline MtsKey mts_keygen(Rng& rng, std::uint32_t depth = 256) {
    if (depth < 1 || depth > 256) throw ValueError("mts depth must be in [1, 256]");
    MtsKey key;
    key.depth = depth;
    rng.fill_bytes(key.seed.data(), key.seed.size());
    return key;
}

inline NodePublicKey mts_public_key(const MtsKey& key) {
    return node_public(derive_node(key, {}, 0));
}

namespace detail {

inline IdxSignature sign_under_node(const NodeKey& node, std::uint64_t u,
                                    const std::vector<std::uint8_t>& m) {
    std::vector<OtsKeyPair> keys = {node.slots[0], node.slots[1]};
    return idx_sign(keys, u, m);
}

inline bool verify_under_node(const NodePublicKey& pk, std::uint64_t u,
                              const std::vector<std::uint8_t>& m, const IdxSignature& sig) {
    std::vector<OtsPublicKey> pks = {pk.slots[0], pk.slots[1]};
    return idx_verify(pks, u, m, sig);
}

}  // namespace detail

// Stateless signing: draw a random depth-bit leaf index, certify the node
// chain from the root, then sign (a_d, m) under the depth-(d-1) key.
inline MtsSignature mts_sign(const MtsKey& key, const std::vector<std::uint8_t>& message,
                             Rng& rng) {
    MtsSignature sig;
    sig.depth = key.depth;
    sig.leaf_bits.resize(key.depth);
    for (auto& b : sig.leaf_bits) b = rng.bit() ? 1 : 0;

    NodeKey current = derive_node(key, sig.leaf_bits, 0);
    for (std::uint32_t i = 1; i < key.depth; ++i) {
        NodeKey child = derive_node(key, sig.leaf_bits, i);
        NodePublicKey child_pk = node_public(child);
        std::uint64_t u = sig.leaf_bits[i - 1] + 1;
        MtsChainEntry entry;
        entry.child_pk = child_pk;
        entry.cert = detail::sign_under_node(current, u, node_pk_digest(child_pk));
        sig.chain.push_back(std::move(entry));
        current = std::move(child);
    }
    MtsChainEntry last;
    last.cert = detail::sign_under_node(current, sig.leaf_bits[key.depth - 1] + 1, message);
    sig.chain.push_back(std::move(last));
    return sig;
}

inline bool mts_verify(const NodePublicKey& root_pk, const std::vector<std::uint8_t>& message,
                       const MtsSignature& sig) {
    if (sig.depth < 1 || sig.chain.size() != sig.depth || sig.leaf_bits.size() != sig.depth)
        return false;
    NodePublicKey current = root_pk;
    for (std::uint32_t i = 1; i < sig.depth; ++i) {
        const MtsChainEntry& entry = sig.chain[i - 1];
        std::uint64_t u = sig.leaf_bits[i - 1] + 1;
        if (!detail::verify_under_node(current, u, node_pk_digest(entry.child_pk), entry.cert))
            return false;
        current = entry.child_pk;
    }
    return detail::verify_under_node(current, sig.leaf_bits[sig.depth - 1] + 1, message,
                                     sig.chain.back().cert);
}

// ---- serialization: magic "PQAHS001" ----

inline constexpr char kSigMagic[9] = "PQAHS001";

inline std::vector<std::uint8_t> serialize(const MtsKey& key) {
    ByteWriter w;
    w.magic(kSigMagic);
    w.u8('K');
    w.u32le(key.depth);
    w.raw(key.seed.data(), key.seed.size());
    return w.take();
}

inline MtsKey deserialize_mts_key(const std::vector<std::uint8_t>& bytes) {
    ByteReader r(bytes);
    r.expect_magic(kSigMagic);
    if (r.u8() != 'K') throw ParseError("not a signing key");
    MtsKey key;
    key.depth = r.u32le();
    if (key.depth < 1 || key.depth > 256) throw ParseError("bad depth");
    auto seed = r.raw(32);
    std::copy(seed.begin(), seed.end(), key.seed.begin());
    r.done();
    return key;
}

namespace detail {

inline void write_ots_pk(ByteWriter& w, const OtsPublicKey& pk) {
    w.u32le(pk.v);
    for (const Digest& d : pk.pk) w.raw(d.data(), d.size());
}

inline OtsPublicKey read_ots_pk(ByteReader& r) {
    OtsPublicKey pk;
    pk.v = r.u32le();
    if (pk.v < 1 || pk.v > 4096) throw ParseError("bad ots width");
    pk.pk.resize(2 * std::size_t{pk.v});
    for (Digest& d : pk.pk) {
        auto raw = r.raw(32);
        std::copy(raw.begin(), raw.end(), d.begin());
    }
    return pk;
}

inline void write_node_pk(ByteWriter& w, const NodePublicKey& pk) {
    write_ots_pk(w, pk.slots[0]);
    write_ots_pk(w, pk.slots[1]);
}

inline NodePublicKey read_node_pk(ByteReader& r) {
    NodePublicKey pk;
    pk.slots[0] = read_ots_pk(r);
    pk.slots[1] = read_ots_pk(r);
    return pk;
}

inline void write_ots_sig(ByteWriter& w, const OtsSignature& sig) {
    w.u32le(static_cast<std::uint32_t>(sig.revealed.size()));
    for (const Secret& s : sig.revealed) w.raw(s.data(), s.size());
}

inline OtsSignature read_ots_sig(ByteReader& r) {
    OtsSignature sig;
    std::uint32_t v = r.u32le();
    if (v < 1 || v > 4096) throw ParseError("bad signature width");
    sig.revealed.resize(v);
    for (Secret& s : sig.revealed) {
        auto raw = r.raw(32);
        std::copy(raw.begin(), raw.end(), s.begin());
    }
    return sig;
}

}  // namespace detail

inline std::vector<std::uint8_t> serialize(const NodePublicKey& pk) {
    ByteWriter w;
    w.magic(kSigMagic);
    w.u8('P');
    detail::write_node_pk(w, pk);
    return w.take();
}

inline NodePublicKey deserialize_public_key(const std::vector<std::uint8_t>& bytes) {
    ByteReader r(bytes);
    r.expect_magic(kSigMagic);
    if (r.u8() != 'P') throw ParseError("not a verification key");
    NodePublicKey pk = detail::read_node_pk(r);
    r.done();
    return pk;
}

inline std::vector<std::uint8_t> serialize(const MtsSignature& sig) {
    ByteWriter w;
    w.magic(kSigMagic);
    w.u8('G');
    w.u32le(sig.depth);
    std::vector<std::uint8_t> packed((sig.depth + 7) / 8, 0);
    for (std::uint32_t i = 0; i < sig.depth; ++i)
        if (sig.leaf_bits[i]) packed[i / 8] |= static_cast<std::uint8_t>(0x80 >> (i % 8));
    w.raw(packed);
    for (std::uint32_t i = 0; i + 1 < sig.depth; ++i) {
        detail::write_node_pk(w, sig.chain[i].child_pk);
        w.u64le(sig.chain[i].cert.u);
        detail::write_ots_sig(w, sig.chain[i].cert.sig);
    }
    w.u64le(sig.chain.back().cert.u);
    detail::write_ots_sig(w, sig.chain.back().cert.sig);
    return w.take();
}

inline MtsSignature deserialize_signature(const std::vector<std::uint8_t>& bytes) {
    ByteReader r(bytes);
    r.expect_magic(kSigMagic);
    if (r.u8() != 'G') throw ParseError("not a signature");
    MtsSignature sig;
    sig.depth = r.u32le();
    if (sig.depth < 1 || sig.depth > 256) throw ParseError("bad depth");
    auto packed = r.raw((sig.depth + 7) / 8);
    sig.leaf_bits.resize(sig.depth);
    for (std::uint32_t i = 0; i < sig.depth; ++i)
        sig.leaf_bits[i] = (packed[i / 8] >> (7 - i % 8)) & 1;
    sig.chain.resize(sig.depth);
    for (std::uint32_t i = 0; i + 1 < sig.depth; ++i) {
        sig.chain[i].child_pk = detail::read_node_pk(r);
        sig.chain[i].cert.u = r.u64le();
        sig.chain[i].cert.sig = detail::read_ots_sig(r);
    }
    sig.chain.back().cert.u = r.u64le();
    sig.chain.back().cert.sig = detail::read_ots_sig(r);
    r.done();
    return sig;
}

}  // namespace pqa::hashsig
