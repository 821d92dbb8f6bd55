#include <catch2/catch_amalgamated.hpp>

#include "pqa/f2.hpp"
#include "pqa/hex.hpp"
#include "pqa/numth.hpp"
#include "pqa/rng.hpp"
#include "pqa/serial.hpp"
#include "pqa/sha256.hpp"

using namespace pqa;

TEST_CASE("rng is deterministic per seed and unbiased-ish", "[common]") {
    Rng a(1234), b(1234), c(99);
    for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
    REQUIRE(a.next_u64() != c.next_u64());

    Rng r(7);
    int counts[5] = {0};
    for (int i = 0; i < 10000; ++i) counts[r.below(5)]++;
    for (int k = 0; k < 5; ++k) {
        REQUIRE(counts[k] > 1700);
        REQUIRE(counts[k] < 2300);
    }
    for (int i = 0; i < 1000; ++i) {
        std::int64_t v = r.range(-3, 3);
        REQUIRE(v >= -3);
        REQUIRE(v <= 3);
    }
}

TEST_CASE("hex round trip and error paths", "[common]") {
    std::vector<std::uint8_t> data = {0x00, 0xff, 0x10, 0xab};
    REQUIRE(hex_encode(data) == "00ff10ab");
    REQUIRE(hex_decode("00ff10ab") == data);
    REQUIRE(hex_decode("00 ff\n10\tab") == data);
    REQUIRE_THROWS_AS(hex_decode("0g"), ParseError);
    REQUIRE_THROWS_AS(hex_decode("abc"), ParseError);
}

TEST_CASE("byte writer/reader round trip", "[common]") {
    ByteWriter w;
    w.magic("PQATEST0");
    w.u8(7);
    w.u32le(0xdeadbeef);
    w.u64le(0x0123456789abcdefull);
    w.u32be(0xcafebabe);
    w.u64be(42);
    std::vector<std::uint8_t> payload = {1, 2, 3};
    w.raw(payload);

    ByteReader r(w.bytes());
    r.expect_magic("PQATEST0");
    REQUIRE(r.u8() == 7);
    REQUIRE(r.u32le() == 0xdeadbeef);
    REQUIRE(r.u64le() == 0x0123456789abcdefull);
    REQUIRE(r.u32be() == 0xcafebabe);
    REQUIRE(r.u64be() == 42);
    REQUIRE(r.raw(3) == payload);
    REQUIRE_NOTHROW(r.done());

    ByteReader bad(w.bytes());
    REQUIRE_THROWS_AS(bad.expect_magic("PQAWRONG"), ParseError);
}

TEST_CASE("sha256 matches FIPS 180-4 vectors", "[common]") {
    auto d0 = sha256(std::string(""));
    REQUIRE(hex_encode(std::vector<std::uint8_t>(d0.begin(), d0.end())) ==
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    auto d = sha256(std::string("abc"));
    REQUIRE(hex_encode(std::vector<std::uint8_t>(d.begin(), d.end())) ==
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    auto d2 = sha256(std::string("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"));
    REQUIRE(hex_encode(std::vector<std::uint8_t>(d2.begin(), d2.end())) ==
            "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    // one million 'a' exercises the streaming path
    Sha256 h;
    std::vector<std::uint8_t> chunk(1000, 'a');
    for (int i = 0; i < 1000; ++i) h.update(chunk);
    auto d3 = h.finish();
    REQUIRE(hex_encode(std::vector<std::uint8_t>(d3.begin(), d3.end())) ==
            "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("hmac-sha256 matches RFC 4231 vectors", "[common]") {
    // Test case 1
    std::vector<std::uint8_t> key(20, 0x0b);
    std::string msg = "Hi There";
    auto mac = hmac_sha256(key.data(), key.size(),
                           reinterpret_cast<const std::uint8_t*>(msg.data()), msg.size());
    REQUIRE(hex_encode(std::vector<std::uint8_t>(mac.begin(), mac.end())) ==
            "b0344c61d8db38535ca8afceaf0bf12b881dc200c9833da726e9376c2e32cff7");
    // Test case 2: key "Jefe", data "what do ya want for nothing?"
    std::string key2 = "Jefe", msg2 = "what do ya want for nothing?";
    auto mac2 = hmac_sha256(reinterpret_cast<const std::uint8_t*>(key2.data()), key2.size(),
                            reinterpret_cast<const std::uint8_t*>(msg2.data()), msg2.size());
    REQUIRE(hex_encode(std::vector<std::uint8_t>(mac2.begin(), mac2.end())) ==
            "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843");
    // Test case 3: 20x 0xaa key, 50x 0xdd data
    std::vector<std::uint8_t> key3(20, 0xaa), msg3(50, 0xdd);
    auto mac3 = hmac_sha256(key3, msg3);
    REQUIRE(hex_encode(std::vector<std::uint8_t>(mac3.begin(), mac3.end())) ==
            "773ea91e36800e46854db8ebd09181a72959098b3ef8c122d9635514ced565fe");
}

TEST_CASE("prg_expand is deterministic and length-exact", "[common]") {
    std::vector<std::uint8_t> seed = {1, 2, 3, 4};
    auto a = prg_expand(seed.data(), seed.size(), 100);
    auto b = prg_expand(seed.data(), seed.size(), 100);
    REQUIRE(a == b);
    REQUIRE(a.size() == 100);
    auto c = prg_expand(seed.data(), seed.size(), 32);
    REQUIRE(std::vector<std::uint8_t>(a.begin(), a.begin() + 32) == c);
    seed[0] ^= 1;
    auto d = prg_expand(seed.data(), seed.size(), 100);
    REQUIRE(a != d);
}

TEST_CASE("f2 matrix rank, nullspace, solve, inverse", "[common]") {
    // rows {110, 011} over n=3 -> null space {111}
    F2Mat m(0, 3);
    m.append_row(F2Vec::from_u64(0b011, 3));  // bits: x0=1,x1=1,x2=0 -> row 110 in math order
    m.append_row(F2Vec::from_u64(0b110, 3));
    auto ns = m.nullspace();
    REQUIRE(ns.size() == 1);
    REQUIRE(ns[0].to_u64() == 0b111);

    // empty system: full basis
    F2Mat empty(0, 4);
    REQUIRE(empty.nullspace().size() == 4);

    // full-rank system: empty basis
    F2Mat id = F2Mat::identity(5);
    REQUIRE(id.nullspace().empty());
    REQUIRE(id.rank() == 5);

    Rng rng(3);
    F2Mat inv_m = random_invertible(8, rng);
    F2Mat prod = inv_m.mul(inv_m.inverse());
    REQUIRE(prod == F2Mat::identity(8));

    // solve M x = b against a planted x
    F2Mat a = F2Mat::random(6, 6, rng);
    F2Vec x_true(6);
    for (int i = 0; i < 6; ++i) x_true.set(i, rng.bit());
    F2Vec b = a.mul_right(x_true);
    F2Vec x_got;
    REQUIRE(a.solve(b, x_got));
    REQUIRE(a.mul_right(x_got) == b);
}

TEST_CASE("permutations and their inverses", "[common]") {
    Rng rng(11);
    auto perm = random_permutation(10, rng);
    auto inv = invert_permutation(perm);
    F2Vec v(10);
    v.set(3, true);
    v.set(7, true);
    REQUIRE(apply_permutation(inv, apply_permutation(perm, v)) == v);
    F2Mat pm = permutation_matrix(perm);
    REQUIRE(pm.mul(pm.transposed()) == F2Mat::identity(10));
}

TEST_CASE("number theory helpers", "[common]") {
    REQUIRE(pow_mod(3, 4, 7) == 4);  // 81 mod 7
    REQUIRE(is_prime_u64(431));
    REQUIRE(is_prime_u64(62207));
    REQUIRE(is_prime_u64(12289));
    REQUIRE(is_prime_u64((1ull << 40) - 87));
    REQUIRE_FALSE(is_prime_u64(1));
    REQUIRE_FALSE(is_prime_u64(15));
    REQUIRE(mod_inverse(3, 7) == 5);
    REQUIRE_THROWS_AS(mod_inverse(6, 9), ValueError);
    REQUIRE(is_perfect_power(27));
    REQUIRE(is_perfect_power(1024));
    REQUIRE_FALSE(is_perfect_power(15));
    REQUIRE_FALSE(is_perfect_power(21));

    auto cv = convergents(7, 16, 16);
    REQUIRE(cv.back() == std::make_pair<std::uint64_t, std::uint64_t>(7, 16));
    bool saw_half = false;
    for (auto [p, q] : cv) saw_half |= (p == 1 && q == 2);
    REQUIRE(saw_half);
}
