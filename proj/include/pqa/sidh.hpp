#pragma once

// Toy SIDH over F_{p^2}, p = 2^{e_A} 3^{e_B} - 1: Montgomery curves (with a
// twist coefficient B so every isogeny step stays in closed form), affine
// point arithmetic with y-coordinates, degree-2/3 isogeny steps, walk
// decomposition with pushed points, and the four-message key exchange whose
// shared secret is the final curve's j-invariant.
//
// Pedagogical only: these parameters offer no security, and the SIDH design
// itself is broken as a key exchange; this module exists to make the
// isogeny-walk machinery concrete and testable.

#include <cstdint>
#include <vector>

#include "pqa/errors.hpp"
#include "pqa/fp2.hpp"
#include "pqa/numth.hpp"
#include "pqa/rng.hpp"
#include "pqa/serial.hpp"

namespace pqa::isogeny {

// B y^2 = x^3 + A x^2 + x; nonsingular iff B != 0 and A^2 != 4
struct CurveMontgomery {
    Fp2 a, b;

    bool operator==(const CurveMontgomery& o) const { return a == o.a && b == o.b; }
};

inline void check_nonsingular(const CurveMontgomery& e) {
    if (e.b.is_zero()) throw ValueError("curve: B must be nonzero");
    Fp2 a2 = square(e.a);
    if (a2 == Fp2::from_int(e.a.p, 4)) throw ValueError("curve: singular (A^2 = 4)");
}

struct CurvePoint {
    bool infinity = true;
    Fp2 x, y;

    static CurvePoint identity(std::uint64_t p) {
        CurvePoint pt;
        pt.infinity = true;
        pt.x = Fp2::zero(p);
        pt.y = Fp2::zero(p);
        return pt;
    }

    static CurvePoint affine(const Fp2& x, const Fp2& y) {
        CurvePoint pt;
        pt.infinity = false;
        pt.x = x;
        pt.y = y;
        return pt;
    }

    bool operator==(const CurvePoint& o) const {
        if (infinity || o.infinity) return infinity == o.infinity;
        return x == o.x && y == o.y;
    }
    bool operator!=(const CurvePoint& o) const { return !(*this == o); }
};

inline bool on_curve(const CurveMontgomery& e, const CurvePoint& pt) {
    if (pt.infinity) return true;
    Fp2 lhs = mul(e.b, square(pt.y));
    Fp2 rhs = add(mul(square(pt.x), add(pt.x, e.a)), pt.x);  // x^3 + A x^2 + x
    return lhs == rhs;
}

inline CurvePoint point_neg(const CurvePoint& pt) {
    if (pt.infinity) return pt;
    return CurvePoint::affine(pt.x, neg(pt.y));
}

inline CurvePoint point_add(const CurveMontgomery& e, const CurvePoint& p1,
                            const CurvePoint& p2) {
    if (p1.infinity) return p2;
    if (p2.infinity) return p1;
    const std::uint64_t p = e.a.p;
    if (p1.x == p2.x) {
        if (p1.y != p2.y || p1.y.is_zero()) return CurvePoint::identity(p);  // P + (-P)
        // doubling: lambda = (3x^2 + 2Ax + 1) / (2By)
        Fp2 num = add(add(mul_int(square(p1.x), 3), mul_int(mul(e.a, p1.x), 2)), Fp2::one(p));
        Fp2 den = mul_int(mul(e.b, p1.y), 2);
        Fp2 lam = div(num, den);
        Fp2 x3 = sub(sub(mul(e.b, square(lam)), e.a), add(p1.x, p1.x));
        Fp2 y3 = sub(mul(lam, sub(p1.x, x3)), p1.y);
        return CurvePoint::affine(x3, y3);
    }
    // addition: lambda = (y2 - y1)/(x2 - x1), x3 = B lambda^2 - A - x1 - x2
    Fp2 lam = div(sub(p2.y, p1.y), sub(p2.x, p1.x));
    Fp2 x3 = sub(sub(sub(mul(e.b, square(lam)), e.a), p1.x), p2.x);
    Fp2 y3 = sub(mul(lam, sub(p1.x, x3)), p1.y);
    return CurvePoint::affine(x3, y3);
}

inline CurvePoint point_double(const CurveMontgomery& e, const CurvePoint& pt) {
    return point_add(e, pt, pt);
}

inline CurvePoint scalar_mul(const CurveMontgomery& e, CurvePoint pt, std::uint64_t k) {
    CurvePoint acc = CurvePoint::identity(e.a.p);
    while (k) {
        if (k & 1) acc = point_add(e, acc, pt);
        pt = point_double(e, pt);
        k >>= 1;
    }
    return acc;
}

inline std::uint64_t point_order(const CurveMontgomery& e, const CurvePoint& pt,
                                 std::uint64_t bound) {
    CurvePoint acc = pt;
    for (std::uint64_t k = 1; k <= bound; ++k) {
        if (acc.infinity) return k;
        acc = point_add(e, acc, pt);
    }
    throw ValueError("point_order: order exceeds bound");
}

// j = 256 (A^2 - 3)^3 / (A^2 - 4); independent of the twist coefficient B.
inline Fp2 j_invariant(const CurveMontgomery& e) {
    check_nonsingular(e);
    const std::uint64_t p = e.a.p;
    Fp2 a2 = square(e.a);
    Fp2 num = mul_int(pow(sub(a2, Fp2::from_int(p, 3)), 3), 256);
    return div(num, sub(a2, Fp2::from_int(p, 4)));
}

// One isogeny step: kernel data plus the codomain, able to push points.
// Three shapes (verified symbolically against the curve equation):
//   deg 2, kernel (x2, 0), x2 != 0:
//     A' = 2(1 - 2 x2^2), B' = B x2
//     phi(x, y) = ( x(x x2 - 1)/(x - x2), y x2 (x^2 - 2 x2 x + 1)/(x - x2)^2 )
//   deg 2, kernel (0, 0): with s = sqrt(A^2 - 4) (exists: full 2-torsion is
//   rational):
//     A' = -2A/s, B' = B s
//     phi(x, y) = ( (x^2 + A x + 1)/(s x), y (x^2 - 1)/(s^2 x^2) )
//   deg 3, kernel x3:
//     A' = (A x3 - 6 x3^2 + 6) x3, B' = B
//     phi(x, y) = ( x(x x3 - 1)^2/(x - x3)^2,
//                   y x3 (x x3 - 1)(x^2 x3 - 3 x3^2 x + x + x3)/(x - x3)^3 )
struct IsogenyStep {
    int degree = 0;             // 2 or 3
    bool zero_kernel = false;   // degree-2 step through (0, 0)
    Fp2 kernel_x;               // x2 or x3 (unused when zero_kernel)
    Fp2 s;                      // sqrt(A^2 - 4), zero-kernel path only
    CurveMontgomery from, to;

    CurvePoint push(const CurvePoint& pt) const {
        const std::uint64_t p = from.a.p;
        if (pt.infinity) return CurvePoint::identity(p);
        if (degree == 2 && zero_kernel) {
            if (pt.x.is_zero()) return CurvePoint::identity(p);  // the kernel point
            Fp2 x2 = square(pt.x);
            Fp2 xm = div(add(add(x2, mul(from.a, pt.x)), Fp2::one(p)), mul(s, pt.x));
            Fp2 ym = div(mul(pt.y, sub(x2, Fp2::one(p))), mul(square(s), x2));
            return CurvePoint::affine(xm, ym);
        }
        if (pt.x == kernel_x) return CurvePoint::identity(p);  // kernel maps to identity
        const Fp2 one = Fp2::one(p);
        if (degree == 2) {
            Fp2 d = sub(pt.x, kernel_x);
            Fp2 xm = div(mul(pt.x, sub(mul(pt.x, kernel_x), one)), d);
            Fp2 num = add(sub(square(pt.x), mul_int(mul(kernel_x, pt.x), 2)), one);
            Fp2 ym = div(mul(mul(pt.y, kernel_x), num), square(d));
            return CurvePoint::affine(xm, ym);
        }
        // degree 3
        Fp2 d = sub(pt.x, kernel_x);
        Fp2 xk = mul(pt.x, kernel_x);
        Fp2 xm = div(mul(pt.x, square(sub(xk, one))), square(d));
        Fp2 inner = add(add(mul(square(pt.x), kernel_x),
                            neg(mul_int(mul(pt.x, square(kernel_x)), 3))),
                        add(pt.x, kernel_x));
        Fp2 ym = div(mul(mul(mul(pt.y, kernel_x), sub(xk, one)), inner), mul(square(d), d));
        return CurvePoint::affine(xm, ym);
    }
};

// Degree-2 step from a point of exact order 2.
inline IsogenyStep iso2_step(const CurveMontgomery& e, const CurvePoint& k2) {
    const std::uint64_t p = e.a.p;
    if (k2.infinity || !point_double(e, k2).infinity)
        throw ValueError("iso2_step: kernel point must have exact order 2");
    if (!on_curve(e, k2)) throw ValueError("iso2_step: kernel point not on curve");
    IsogenyStep step;
    step.degree = 2;
    step.from = e;
    if (k2.x.is_zero()) {
        step.zero_kernel = true;
        Fp2 disc = sub(square(e.a), Fp2::from_int(p, 4));
        auto s = sqrt(disc);
        if (!s) throw ValueError("iso2_step: A^2 - 4 is not a square (2-torsion not rational)");
        step.s = *s;
        step.to = {div(mul_int(neg(e.a), 2), step.s), mul(e.b, step.s)};
    } else {
        step.kernel_x = k2.x;
        Fp2 a_new = sub(Fp2::from_int(p, 2), mul_int(square(k2.x), 4));  // 2(1 - 2 x2^2)
        step.to = {a_new, mul(e.b, k2.x)};
    }
    check_nonsingular(step.to);
    return step;
}

// Degree-3 step from a point of exact order 3.
inline IsogenyStep iso3_step(const CurveMontgomery& e, const CurvePoint& k3) {
    const std::uint64_t p = e.a.p;
    if (k3.infinity) throw ValueError("iso3_step: kernel point is the identity");
    CurvePoint three = point_add(e, point_double(e, k3), k3);
    if (!three.infinity) throw ValueError("iso3_step: kernel point must have order 3");
    if (!on_curve(e, k3)) throw ValueError("iso3_step: kernel point not on curve");
    IsogenyStep step;
    step.degree = 3;
    step.from = e;
    step.kernel_x = k3.x;
    // A' = (A x3 - 6 x3^2 + 6) x3
    Fp2 t = add(sub(mul(e.a, k3.x), mul_int(square(k3.x), 6)), Fp2::from_int(p, 6));
    step.to = {mul(t, k3.x), e.b};
    check_nonsingular(step.to);
    return step;
}

struct WalkResult {
    CurveMontgomery curve;
    std::vector<IsogenyStep> steps;

    CurvePoint push(CurvePoint pt) const {
        for (const IsogenyStep& s : steps) pt = s.push(pt);
        return pt;
    }
};

inline std::uint64_t pow_u64(std::uint64_t base, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) r *= base;
    return r;
}

// Decomposes the degree-l^e isogeny with kernel <r0> into e degree-l steps:
// at step i the kernel is [l^{e-i-1}] R_i, and R_{i+1} = phi_i(R_i).
inline WalkResult isogeny_walk(const CurveMontgomery& e0, CurvePoint r0, int l, std::uint32_t e) {
    if (l != 2 && l != 3) throw ValueError("isogeny_walk: l must be 2 or 3");
    WalkResult walk;
    walk.curve = e0;
    CurvePoint r = r0;
    for (std::uint32_t i = 0; i < e; ++i) {
        CurvePoint kernel = scalar_mul(walk.curve, r, pow_u64(l, e - i - 1));
        if (kernel.infinity)
            throw ValueError("isogeny_walk: order bookkeeping failed (kernel vanished early)");
        IsogenyStep step = (l == 2) ? iso2_step(walk.curve, kernel) : iso3_step(walk.curve, kernel);
        r = step.push(r);
        walk.curve = step.to;
        walk.steps.push_back(std::move(step));
    }
    if (!r.infinity) throw ValueError("isogeny_walk: kernel generator not annihilated");
    return walk;
}

// ---- public parameters and the key exchange ----

struct SidhParams {
    std::uint32_t e_a = 4, e_b = 3;
    std::uint64_t p = 431;  // 2^4 * 3^3 - 1
    CurveMontgomery e0;
    CurvePoint p_a, q_a;  // 2^{e_a}-torsion basis
    CurvePoint p_b, q_b;  // 3^{e_b}-torsion basis
};

namespace detail {

inline CurvePoint random_point(const CurveMontgomery& e, Rng& rng) {
    const std::uint64_t p = e.a.p;
    for (;;) {
        Fp2 x(p, rng.below(p), rng.below(p));
        if (x.is_zero()) continue;
        Fp2 rhs = div(add(mul(square(x), add(x, e.a)), x), e.b);
        auto y = sqrt(rhs);
        if (y) return CurvePoint::affine(x, *y);
    }
}

// Random point of exact order l^e, obtained by clearing the cofactor.
inline CurvePoint torsion_point(const CurveMontgomery& e, std::uint64_t cofactor, std::uint64_t l,
                                std::uint64_t full, Rng& rng) {
    for (int tries = 0; tries < 4096; ++tries) {
        CurvePoint pt = scalar_mul(e, random_point(e, rng), cofactor);
        if (pt.infinity) continue;
        CurvePoint probe = scalar_mul(e, pt, full / l);
        if (!probe.infinity) return pt;  // exact order l^e
    }
    throw RetryExhausted("torsion_point: could not find a full-order point");
}

// (P, Q) generate E[l^e] iff [l^{e-1}]P is outside <[l^{e-1}]Q>.
inline bool torsion_basis_independent(const CurveMontgomery& e, const CurvePoint& p_pt,
                                      const CurvePoint& q_pt, std::uint64_t l,
                                      std::uint64_t full) {
    CurvePoint tp = scalar_mul(e, p_pt, full / l);
    CurvePoint tq = scalar_mul(e, q_pt, full / l);
    if (tp.infinity || tq.infinity) return false;
    CurvePoint acc = tq;
    for (std::uint64_t k = 1; k < l; ++k) {
        if (tp == acc) return false;
        acc = point_add(e, acc, tq);
    }
    return true;
}

}  // namespace detail

// Builds the public parameter set on E0: B y^2 = x^3 + 6 x^2 + x, sampling
// torsion bases by cofactor multiplication with order and independence
// checks.
inline SidhParams sidh_setup(Rng& rng, std::uint32_t e_a = 4, std::uint32_t e_b = 3) {
    SidhParams params;
    params.e_a = e_a;
    params.e_b = e_b;
    std::uint64_t two_part = pow_u64(2, e_a), three_part = pow_u64(3, e_b);
    params.p = two_part * three_part - 1;
    if (!is_prime_u64(params.p))
        throw ValueError("sidh_setup: 2^e_a * 3^e_b - 1 is not prime");
    if (params.p % 4 != 3) throw ValueError("sidh_setup: p must be 3 mod 4");
    params.e0 = {Fp2::from_int(params.p, 6), Fp2::one(params.p)};
    check_nonsingular(params.e0);

    // group is Z_{p+1} x Z_{p+1}: clearing the odd part leaves 2-power torsion
    for (int tries = 0; tries < 4096; ++tries) {
        params.p_a = detail::torsion_point(params.e0, three_part, 2, two_part, rng);
        params.q_a = detail::torsion_point(params.e0, three_part, 2, two_part, rng);
        if (detail::torsion_basis_independent(params.e0, params.p_a, params.q_a, 2, two_part))
            break;
        if (tries == 4095) throw RetryExhausted("sidh_setup: no independent 2-torsion basis");
    }
    for (int tries = 0; tries < 4096; ++tries) {
        params.p_b = detail::torsion_point(params.e0, two_part, 3, three_part, rng);
        params.q_b = detail::torsion_point(params.e0, two_part, 3, three_part, rng);
        if (detail::torsion_basis_independent(params.e0, params.p_b, params.q_b, 3, three_part))
            break;
        if (tries == 4095) throw RetryExhausted("sidh_setup: no independent 3-torsion basis");
    }
    return params;
}

struct SidhPublicKey {
    CurveMontgomery curve;        // image curve E_X
    CurvePoint img_p, img_q;      // other side's basis pushed through phi_X
};

struct SidhKeyPair {
    char side = 'A';
    std::uint64_t m = 0, n = 0;   // secret scalars
    SidhPublicKey pub;
};

inline SidhKeyPair sidh_keygen(const SidhParams& params, char side, Rng& rng) {
    if (side != 'A' && side != 'B') throw ValueError("side must be 'A' or 'B'");
    const int l = side == 'A' ? 2 : 3;
    const std::uint32_t e = side == 'A' ? params.e_a : params.e_b;
    const std::uint64_t order = pow_u64(l, e);
    const CurvePoint& p_own = side == 'A' ? params.p_a : params.p_b;
    const CurvePoint& q_own = side == 'A' ? params.q_a : params.q_b;
    const CurvePoint& p_other = side == 'A' ? params.p_b : params.p_a;
    const CurvePoint& q_other = side == 'A' ? params.q_b : params.q_a;

    for (int tries = 0; tries < 4096; ++tries) {
        std::uint64_t m = rng.below(order), n = rng.below(order);
        CurvePoint kernel = point_add(params.e0, scalar_mul(params.e0, p_own, m),
                                      scalar_mul(params.e0, q_own, n));
        if (kernel.infinity) continue;
        if (!scalar_mul(params.e0, kernel, order / l).infinity) {
            WalkResult walk = isogeny_walk(params.e0, kernel, l, e);
            SidhKeyPair kp;
            kp.side = side;
            kp.m = m;
            kp.n = n;
            kp.pub.curve = walk.curve;
            kp.pub.img_p = walk.push(p_other);
            kp.pub.img_q = walk.push(q_other);
            return kp;
        }
    }
    throw RetryExhausted("sidh_keygen: no full-order kernel generator found");
}

// Shared secret: walk from the peer's curve with kernel [m] phi(P) + [n] phi(Q)
// and return the final curve's j-invariant.
inline Fp2 sidh_shared(const SidhParams& params, const SidhKeyPair& mine,
                       const SidhPublicKey& theirs) {
    const int l = mine.side == 'A' ? 2 : 3;
    const std::uint32_t e = mine.side == 'A' ? params.e_a : params.e_b;
    if (theirs.curve.a.p != params.p) throw DimensionError("sidh_shared: parameter mismatch");
    check_nonsingular(theirs.curve);
    if (!on_curve(theirs.curve, theirs.img_p) || !on_curve(theirs.curve, theirs.img_q))
        throw ValueError("sidh_shared: public points not on the stated curve");
    CurvePoint kernel = point_add(theirs.curve, scalar_mul(theirs.curve, theirs.img_p, mine.m),
                                  scalar_mul(theirs.curve, theirs.img_q, mine.n));
    if (kernel.infinity || !scalar_mul(theirs.curve, kernel, pow_u64(l, e) / l).infinity)
        throw ValueError("sidh_shared: degenerate kernel");
    WalkResult walk = isogeny_walk(theirs.curve, kernel, l, e);
    return j_invariant(walk.curve);
}

// ---- serialization: magic "PQASI001", big-endian fixed-width coordinates ----

inline constexpr char kSidhMagic[9] = "PQASI001";

inline std::vector<std::uint8_t> serialize(const SidhPublicKey& pk, const SidhParams& params) {
    ByteWriter w;
    w.magic(kSidhMagic);
    w.u32be(params.e_a);
    w.u32be(params.e_b);
    auto put = [&](const Fp2& v) {
        w.u64be(v.c0);
        w.u64be(v.c1);
    };
    put(pk.curve.a);
    put(pk.curve.b);
    auto put_point = [&](const CurvePoint& pt) {
        w.u8(pt.infinity ? 1 : 0);
        put(pt.x);
        put(pt.y);
    };
    put_point(pk.img_p);
    put_point(pk.img_q);
    return w.take();
}

inline SidhPublicKey deserialize_sidh_public(const std::vector<std::uint8_t>& bytes,
                                             const SidhParams& params) {
    ByteReader r(bytes);
    r.expect_magic(kSidhMagic);
    if (r.u32be() != params.e_a || r.u32be() != params.e_b)
        throw ParseError("sidh: exponent mismatch");
    auto get = [&]() {
        std::uint64_t c0 = r.u64be(), c1 = r.u64be();
        return Fp2(params.p, c0 % params.p, c1 % params.p);
    };
    SidhPublicKey pk;
    pk.curve.a = get();
    pk.curve.b = get();
    auto get_point = [&]() {
        bool inf = r.u8() != 0;
        Fp2 x = get(), y = get();
        return inf ? CurvePoint::identity(params.p) : CurvePoint::affine(x, y);
    };
    pk.img_p = get_point();
    pk.img_q = get_point();
    r.done();
    return pk;
}

}  // namespace pqa::isogeny
