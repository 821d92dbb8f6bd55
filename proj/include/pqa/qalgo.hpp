#pragma once

// The oracle algorithms: Bernstein-Vazirani, Simon, period finding over Z_N,
// and the factoring / discrete-log reductions built on period finding.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "pqa/errors.hpp"
#include "pqa/f2.hpp"
#include "pqa/numth.hpp"
#include "pqa/qsim.hpp"
#include "pqa/qudit.hpp"
#include "pqa/rng.hpp"

namespace pqa::qalgo {

using qsim::ClassicalOracle;
using qsim::StateVector;

// Recovers the hidden u of f(x) = u.x mod 2 with a single oracle-circuit
// invocation. The caller promises f has that form; otherwise the returned
// value is unspecified.
inline std::uint64_t bernstein_vazirani(const ClassicalOracle& f, Rng& rng) {
    if (f.n_out != 1) throw DimensionError("bernstein_vazirani needs a 1-bit oracle");
    const int n = f.n_in;
    StateVector s = qsim::zero_state(n + 1);
    // ancilla |-> = HX|0>
    s = qsim::apply_gate(s, qsim::gates::x(), {n});
    s = qsim::apply_gate(s, qsim::gates::h(), {n});
    std::vector<int> in_reg(n);
    for (int q = 0; q < n; ++q) in_reg[q] = q;
    for (int q = 0; q < n; ++q) s = qsim::apply_gate(s, qsim::gates::h(), {q});
    s = qsim::apply_oracle_xor(s, f, in_reg, {n});
    for (int q = 0; q < n; ++q) s = qsim::apply_gate(s, qsim::gates::h(), {q});
    return qsim::measure_partial(s, in_reg, rng).outcome;
}

// Classical baseline: recovers u with exactly n unit-vector queries.
// Returns {u, query_count}.
inline std::pair<std::uint64_t, int> parity_recover_classical(const ClassicalOracle& f) {
    if (f.n_out != 1) throw DimensionError("parity oracle must output 1 bit");
    const int n = f.n_in;
    std::uint64_t u = 0;
    int queries = 0;
    for (int i = 0; i < n; ++i) {
        std::uint64_t e_i = std::uint64_t{1} << (n - 1 - i);  // query reveals bit i of u
        std::uint64_t bit = f.table[e_i];
        ++queries;
        u = (u << 1) | bit;
    }
    return {u, queries};
}

// One round of Simon's circuit: returns x with s.x = 0 (mod 2) for the
// promised hidden shift s.
inline std::uint64_t simon_sample(const ClassicalOracle& f, Rng& rng) {
    if (f.n_in != f.n_out) throw DimensionError("simon oracle must be n-bit to n-bit");
    const int n = f.n_in;
    StateVector s = qsim::zero_state(2 * n);
    std::vector<int> in_reg(n), out_reg(n);
    for (int q = 0; q < n; ++q) {
        in_reg[q] = q;
        out_reg[q] = n + q;
    }
    for (int q = 0; q < n; ++q) s = qsim::apply_gate(s, qsim::gates::h(), {q});
    s = qsim::apply_oracle_xor(s, f, in_reg, out_reg);
    s = qsim::measure_partial(s, out_reg, rng).post_state;
    for (int q = 0; q < n; ++q) s = qsim::apply_gate(s, qsim::gates::h(), {q});
    return qsim::measure_partial(s, in_reg, rng).outcome;
}

// Collects samples until the equations s.x = 0 pin down a unique nonzero s.
// Throws RetryExhausted if the promise fails (f injective) or the sample
// budget runs out while the system is still rank-deficient.
inline std::uint64_t simon_solve(const ClassicalOracle& f, Rng& rng, int max_runs = 256) {
    const int n = f.n_in;
    F2Mat system(0, static_cast<std::size_t>(n));
    for (int run = 0; run < max_runs; ++run) {
        std::uint64_t x = simon_sample(f, rng);
        system.append_row(F2Vec::from_u64(x, n));
        std::vector<F2Vec> null = system.nullspace();
        if (null.empty())
            throw RetryExhausted("simon_solve: equations have full rank; no nonzero s exists");
        if (null.size() == 1) {
            std::uint64_t s = null[0].to_u64();
            // a violated promise (f injective) can still reach rank n-1;
            // confirm the candidate against the table before returning
            if (f.table[0] == f.table[s]) return s;
        }
    }
    throw RetryExhausted("simon_solve: sample budget exhausted before rank n-1");
}

struct PeriodSample {
    std::uint32_t value = 0;  // a multiple of N/r
    std::uint32_t modulus = 0;
};

// One quantum round of period finding over Z_N: uniform superposition, U_f
// into an output slot, measure it, F_N, measure. f is given as a value table
// of length N.
inline PeriodSample period_sample(const std::vector<std::uint32_t>& f, std::uint32_t N,
                                  Rng& rng) {
    if (f.size() != N || N < 1) throw DimensionError("period table must have length N");
    // compact the range of f
    std::vector<std::uint32_t> remap(f.size());
    {
        std::vector<std::uint32_t> sorted(f.begin(), f.end());
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t i = 0; i < f.size(); ++i)
            remap[i] = static_cast<std::uint32_t>(
                std::lower_bound(sorted.begin(), sorted.end(), f[i]) - sorted.begin());
    }
    std::uint32_t v = *std::max_element(remap.begin(), remap.end()) + 1;
    qsim::QuditState reg({N, v});
    reg.apply_fourier(0);  // F_N|0> is the uniform superposition
    reg.apply_add_oracle(1, [&](const std::vector<std::uint32_t>& vals) { return remap[vals[0]]; });
    reg.measure_slot(1, rng);
    reg.apply_fourier(0);
    return {reg.measure_slot(0, rng).outcome, N};
}

// Period finding under the r | N promise: gcd of measured samples (seeded
// with N itself) converges to N/r; the candidate is accepted once the table
// confirms it is a true period.
inline std::uint32_t find_period(const std::vector<std::uint32_t>& f, std::uint32_t N, Rng& rng,
                                 int max_runs = 64) {
    std::uint32_t g = N;
    for (int run = 0; run < max_runs; ++run) {
        PeriodSample s = period_sample(f, N, rng);
        g = std::gcd(g, s.value);
        std::uint32_t r = N / g;
        bool ok = true;
        for (std::uint32_t x = 0; x < N && ok; ++x) ok = (f[x] == f[(x + r) % N]);
        if (ok) return r;
    }
    throw RetryExhausted("find_period: gcd did not stabilize on a verified period");
}

namespace detail {

// Quantum order finding for x mod n with the 2^t >= n^2 register and
// continued-fraction post-processing. Returns the multiplicative order of x,
// or nullopt when this round's measurement was uninformative.
inline std::optional<std::uint64_t> order_find_round(std::uint64_t x, std::uint64_t n, Rng& rng) {
    int nbits = 0;
    while ((std::uint64_t{1} << nbits) < n) ++nbits;
    int t = 0;
    while ((std::uint64_t{1} << t) < n * n) ++t;
    if (t + nbits > qsim::kMaxQubits)
        throw CapacityError("shor_factor: modulus too large for the dense simulator");

    const std::uint64_t T = std::uint64_t{1} << t;
    std::vector<std::uint64_t> table(T);
    std::uint64_t acc = 1 % n;
    for (std::uint64_t a = 0; a < T; ++a) {
        table[a] = acc;
        acc = mul_mod(acc, x, n);
    }
    ClassicalOracle f = ClassicalOracle::from_table(t, nbits, std::move(table));

    StateVector s = qsim::zero_state(t + nbits);
    std::vector<int> in_reg(t), out_reg(nbits);
    for (int q = 0; q < t; ++q) in_reg[q] = q;
    for (int q = 0; q < nbits; ++q) out_reg[q] = t + q;
    for (int q = 0; q < t; ++q) s = qsim::apply_gate(s, qsim::gates::h(), {q});
    s = qsim::apply_oracle_xor(s, f, in_reg, out_reg);
    s = qsim::measure_partial(s, out_reg, rng).post_state;
    s = qsim::apply_qft(s, in_reg);
    std::uint64_t c = qsim::measure_partial(s, in_reg, rng).outcome;
    if (c == 0) return std::nullopt;

    for (auto [num, den] : convergents(c, T, n)) {
        (void)num;
        if (den == 0) continue;
        for (std::uint64_t rc : {den, 2 * den}) {
            if (rc == 0 || rc >= 2 * n || pow_mod(x, rc, n) != 1) continue;
            // shrink to the exact order: strip primes of rc while x^(rc/q) = 1
            std::uint64_t order = rc, rem = rc;
            for (std::uint64_t q = 2; q * q <= rem; ++q) {
                if (rem % q) continue;
                while (rem % q == 0) rem /= q;
                while (order % q == 0 && pow_mod(x, order / q, n) == 1) order /= q;
            }
            if (rem > 1)
                while (order % rem == 0 && pow_mod(x, order / rem, n) == 1) order /= rem;
            return order;
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Factors an odd composite n = p1*p2 via quantum order finding plus the
// gcd(x^{r/2} +- 1, n) step, retrying with fresh x as needed.
inline std::pair<std::uint64_t, std::uint64_t> shor_factor(std::uint64_t n, Rng& rng,
                                                           int max_attempts = 32) {
    if (n < 9 || n % 2 == 0) throw ValueError("shor_factor: n must be an odd composite");
    if (n > (std::uint64_t{1} << 15)) throw CapacityError("shor_factor: n exceeds 2^15");
    if (is_prime_u64(n)) throw ValueError("shor_factor: n is prime");
    if (is_perfect_power(n)) throw ValueError("shor_factor: n is a prime power");

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::uint64_t x = 2 + rng.below(n - 3);
        std::uint64_t g = std::gcd(x, n);
        if (g > 1) {
            std::uint64_t a = std::min(g, n / g), b = std::max(g, n / g);
            return {a, b};
        }
        std::optional<std::uint64_t> r = detail::order_find_round(x, n, rng);
        if (!r || *r % 2 != 0) continue;  // odd r: repeat with a different x
        std::uint64_t h = pow_mod(x, *r / 2, n);
        if (h == n - 1) continue;
        for (std::uint64_t cand : {std::gcd(h - 1, n), std::gcd(h + 1, n)}) {
            if (cand > 1 && cand < n) {
                std::uint64_t a = std::min(cand, n / cand), b = std::max(cand, n / cand);
                return {a, b};
            }
        }
    }
    throw RetryExhausted("shor_factor: attempt budget exhausted");
}

// Discrete log: finds x with g^x = y (mod p) using two dimension-(p-1) qudit
// registers. The oracle is f(a, b) = y^a * g^b mod p, so an accepted
// measurement pair satisfies r1 = x * r2 (mod p-1) and x = r1 / r2 whenever
// r2 is invertible; candidates are validated classically before returning.
inline std::uint64_t shor_dlog(std::uint64_t p, std::uint64_t g, std::uint64_t y, Rng& rng,
                               int max_attempts = 64) {
    if (!is_prime_u64(p) || p < 3) throw ValueError("shor_dlog: p must be prime");
    if (p > 64) throw CapacityError("shor_dlog: p must be at most 64");
    if (g % p == 0 || y % p == 0) throw ValueError("shor_dlog: g, y must be units mod p");
    const std::uint32_t N = static_cast<std::uint32_t>(p - 1);
    // g must generate the full multiplicative group
    {
        std::uint64_t ord = 1, v = g % p;
        while (v != 1) {
            v = mul_mod(v, g, p);
            ++ord;
        }
        if (ord != N) throw ValueError("shor_dlog: g does not generate Z_p^*");
    }

    // f(a, b) = y^a g^b takes values in [1, p-1]; store value-1 in a slot of
    // dimension p-1.
    std::vector<std::vector<std::uint32_t>> table(N, std::vector<std::uint32_t>(N));
    for (std::uint32_t a = 0; a < N; ++a)
        for (std::uint32_t b = 0; b < N; ++b)
            table[a][b] =
                static_cast<std::uint32_t>(mul_mod(pow_mod(y, a, p), pow_mod(g, b, p), p) - 1);

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        qsim::QuditState reg({N, N, N});
        reg.apply_fourier(0);
        reg.apply_fourier(1);
        reg.apply_add_oracle(
            2, [&](const std::vector<std::uint32_t>& v) { return table[v[0]][v[1]]; });
        reg.measure_slot(2, rng);
        reg.apply_fourier(0);
        reg.apply_fourier(1);
        std::uint32_t r1 = reg.measure_slot(0, rng).outcome;
        std::uint32_t r2 = reg.measure_slot(1, rng).outcome;
        if (std::gcd<std::uint64_t>(r2, N) != 1) continue;
        std::uint64_t x = mul_mod(r1, static_cast<std::uint64_t>(mod_inverse(
                                          static_cast<std::int64_t>(r2), static_cast<std::int64_t>(N))),
                                  N);
        if (pow_mod(g, x, p) == y % p) return x;
    }
    throw RetryExhausted("shor_dlog: attempt budget exhausted");
}

}  // namespace pqa::qalgo
