#pragma once

// Dense state-vector simulator for n-qubit registers. Qubit 0 is the most
// significant bit of the basis-state index, matching left-to-right ket
// notation: |q0 q1 ... q_{n-1}>.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <vector>

#include "pqa/errors.hpp"
#include "pqa/rng.hpp"

namespace pqa::qsim {

using Amp = std::complex<double>;

inline constexpr int kMaxQubits = 26;  // ~1 GiB of complex doubles
inline constexpr double kTol = 1e-9;

struct StateVector {
    int n_qubits = 0;
    std::vector<Amp> amps;

    std::size_t dim() const { return amps.size(); }

    double norm_sq() const {
        double s = 0.0;
        for (const Amp& a : amps) s += std::norm(a);
        return s;
    }

    // Bit of qubit q inside basis index i (qubit 0 = MSB).
    bool bit(std::size_t index, int q) const { return (index >> (n_qubits - 1 - q)) & 1; }
};

inline StateVector zero_state(int n) {
    if (n < 1 || n > kMaxQubits)
        throw CapacityError("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
    StateVector s;
    s.n_qubits = n;
    s.amps.assign(std::size_t{1} << n, Amp{0.0, 0.0});
    s.amps[0] = Amp{1.0, 0.0};
    return s;
}

inline StateVector basis_state(int n, std::uint64_t index) {
    StateVector s = zero_state(n);
    if (index >= s.dim()) throw ValueError("basis index out of range");
    s.amps[0] = Amp{0.0, 0.0};
    s.amps[index] = Amp{1.0, 0.0};
    return s;
}

// Dense complex square matrix; unitary when used as a gate.
struct GateMatrix {
    std::size_t dim = 0;
    std::vector<Amp> entries;  // row-major

    Amp at(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }
    Amp& at(std::size_t r, std::size_t c) { return entries[r * dim + c]; }

    GateMatrix() = default;
    explicit GateMatrix(std::size_t d) : dim(d), entries(d * d, Amp{0.0, 0.0}) {}

    GateMatrix dagger() const {
        GateMatrix g(dim);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) g.at(c, r) = std::conj(at(r, c));
        return g;
    }

    bool is_unitary(double tol = kTol) const {
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                Amp dot{0.0, 0.0};
                for (std::size_t k = 0; k < dim; ++k) dot += at(r, k) * std::conj(at(c, k));
                Amp expect = (r == c) ? Amp{1.0, 0.0} : Amp{0.0, 0.0};
                if (std::abs(dot - expect) > tol) return false;
            }
        }
        return true;
    }
};

namespace gates {

inline GateMatrix identity(std::size_t d) {
    GateMatrix g(d);
    for (std::size_t i = 0; i < d; ++i) g.at(i, i) = 1.0;
    return g;
}

inline GateMatrix x() {
    GateMatrix g(2);
    g.at(0, 1) = 1.0;
    g.at(1, 0) = 1.0;
    return g;
}

inline GateMatrix z() {
    GateMatrix g(2);
    g.at(0, 0) = 1.0;
    g.at(1, 1) = -1.0;
    return g;
}

inline GateMatrix h() {
    const double s = 1.0 / std::numbers::sqrt2;
    GateMatrix g(2);
    g.at(0, 0) = s;
    g.at(0, 1) = s;
    g.at(1, 0) = s;
    g.at(1, 1) = -s;
    return g;
}

// Basis order |control target>: flips target when control is 1.
inline GateMatrix cnot() {
    GateMatrix g(4);
    g.at(0, 0) = 1.0;
    g.at(1, 1) = 1.0;
    g.at(2, 3) = 1.0;
    g.at(3, 2) = 1.0;
    return g;
}

inline GateMatrix phase(double theta) {
    GateMatrix g(2);
    g.at(0, 0) = 1.0;
    g.at(1, 1) = std::polar(1.0, theta);
    return g;
}

// F_N with omega = e^{2*pi*i/N}; unitary DFT, any dimension N >= 1.
inline GateMatrix fourier(std::size_t n) {
    GateMatrix g(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const double w = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            g.at(r, c) = std::polar(scale, w * static_cast<double>((r * c) % n));
    return g;
}

}  // namespace gates

namespace detail {

inline void check_targets(const StateVector& s, const std::vector<int>& targets) {
    std::uint64_t seen = 0;
    for (int t : targets) {
        if (t < 0 || t >= s.n_qubits) throw DimensionError("target qubit out of range");
        std::uint64_t m = std::uint64_t{1} << t;
        if (seen & m) throw DimensionError("duplicate target qubit");
        seen |= m;
    }
}

inline std::uint64_t qubit_mask(const StateVector& s, int q) {
    return std::uint64_t{1} << (s.n_qubits - 1 - q);
}

}  // namespace detail

// Applies a 2^k-dimensional gate to the ordered target qubits; targets[0]
// is the most significant bit of the gate's local basis index.
inline StateVector apply_gate(const StateVector& s, const GateMatrix& g,
                              const std::vector<int>& targets) {
    detail::check_targets(s, targets);
    const std::size_t k = targets.size();
    if (k == 0 || k > 20 || g.dim != (std::size_t{1} << k))
        throw DimensionError("gate dimension does not match target count");

    std::vector<std::uint64_t> bitmask(k);
    std::uint64_t all_mask = 0;
    for (std::size_t j = 0; j < k; ++j) {
        bitmask[j] = detail::qubit_mask(s, targets[j]);
        all_mask |= bitmask[j];
    }
    // offset of each local basis pattern within a group
    const std::size_t gdim = g.dim;
    std::vector<std::uint64_t> offset(gdim, 0);
    for (std::size_t m = 0; m < gdim; ++m)
        for (std::size_t j = 0; j < k; ++j)
            if ((m >> (k - 1 - j)) & 1) offset[m] |= bitmask[j];

    StateVector out = s;
    std::vector<Amp> in(gdim), res(gdim);
    for (std::uint64_t base = 0; base < s.dim(); ++base) {
        if (base & all_mask) continue;
        for (std::size_t m = 0; m < gdim; ++m) in[m] = s.amps[base | offset[m]];
        for (std::size_t r = 0; r < gdim; ++r) {
            Amp acc{0.0, 0.0};
            for (std::size_t c = 0; c < gdim; ++c) acc += g.entries[r * gdim + c] * in[c];
            res[r] = acc;
        }
        for (std::size_t m = 0; m < gdim; ++m) out.amps[base | offset[m]] = res[m];
    }
    return out;
}

// H on every qubit (H^{(x)n}), done as n in-place butterflies.
inline StateVector hadamard_all(const StateVector& s) {
    StateVector out = s;
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (int q = 0; q < s.n_qubits; ++q) {
        std::uint64_t mask = detail::qubit_mask(s, q);
        for (std::uint64_t i = 0; i < out.dim(); ++i) {
            if (i & mask) continue;
            Amp a = out.amps[i], b = out.amps[i | mask];
            out.amps[i] = (a + b) * inv_sqrt2;
            out.amps[i | mask] = (a - b) * inv_sqrt2;
        }
    }
    return out;
}

// Total classical function {0,1}^n_in -> {0,1}^n_out given by its truth table.
// The invocation counter is shared across copies so tests can assert how many
// times the oracle circuit ran.
struct ClassicalOracle {
    int n_in = 0;
    int n_out = 0;
    std::vector<std::uint64_t> table;
    std::shared_ptr<std::uint64_t> invocations = std::make_shared<std::uint64_t>(0);

    static ClassicalOracle from_table(int n_in, int n_out, std::vector<std::uint64_t> table) {
        if (n_in < 1 || n_in > kMaxQubits || n_out < 1 || n_out > kMaxQubits)
            throw CapacityError("oracle register width out of range");
        if (table.size() != (std::size_t{1} << n_in))
            throw DimensionError("oracle table must cover every input");
        const std::uint64_t out_lim = std::uint64_t{1} << n_out;
        for (std::uint64_t v : table)
            if (v >= out_lim) throw ValueError("oracle table value exceeds output width");
        ClassicalOracle o;
        o.n_in = n_in;
        o.n_out = n_out;
        o.table = std::move(table);
        return o;
    }

    static ClassicalOracle from_function(int n_in, int n_out,
                                         const std::function<std::uint64_t(std::uint64_t)>& f) {
        std::vector<std::uint64_t> t(std::size_t{1} << n_in);
        for (std::uint64_t x = 0; x < t.size(); ++x) t[x] = f(x);
        return from_table(n_in, n_out, std::move(t));
    }

    std::uint64_t call_count() const { return *invocations; }
};

// U_f |x>|b> = |x>|b xor f(x)>, a permutation of basis states.
inline StateVector apply_oracle_xor(const StateVector& s, const ClassicalOracle& f,
                                    const std::vector<int>& in_regs,
                                    const std::vector<int>& out_regs) {
    if (static_cast<int>(in_regs.size()) != f.n_in ||
        static_cast<int>(out_regs.size()) != f.n_out)
        throw DimensionError("oracle register width mismatch");
    std::vector<int> all = in_regs;
    all.insert(all.end(), out_regs.begin(), out_regs.end());
    detail::check_targets(s, all);  // also rejects in/out overlap

    std::vector<std::uint64_t> in_mask(in_regs.size()), out_mask(out_regs.size());
    for (std::size_t j = 0; j < in_regs.size(); ++j) in_mask[j] = detail::qubit_mask(s, in_regs[j]);
    for (std::size_t j = 0; j < out_regs.size(); ++j)
        out_mask[j] = detail::qubit_mask(s, out_regs[j]);

    StateVector out = s;
    for (std::uint64_t i = 0; i < s.dim(); ++i) {
        std::uint64_t x = 0;
        for (std::size_t j = 0; j < in_mask.size(); ++j)
            x = (x << 1) | ((i & in_mask[j]) ? 1 : 0);
        std::uint64_t fx = f.table[x];
        std::uint64_t j_index = i;
        for (std::size_t j = 0; j < out_mask.size(); ++j) {
            bool flip = (fx >> (out_mask.size() - 1 - j)) & 1;
            if (flip) j_index ^= out_mask[j];
        }
        out.amps[j_index] = s.amps[i];
    }
    ++(*f.invocations);
    return out;
}

// QFT on the given register via the standard O(k^2) butterfly circuit
// (H + controlled phases, then register reversal). reg[0] is the most
// significant bit of the register value.
inline StateVector apply_qft(const StateVector& s, const std::vector<int>& reg) {
    detail::check_targets(s, reg);
    if (reg.empty()) throw DimensionError("empty QFT register");
    const int k = static_cast<int>(reg.size());
    StateVector out = s;
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (int i = 0; i < k; ++i) {
        // H on reg[i]
        std::uint64_t hm = detail::qubit_mask(out, reg[i]);
        for (std::uint64_t idx = 0; idx < out.dim(); ++idx) {
            if (idx & hm) continue;
            Amp a = out.amps[idx], b = out.amps[idx | hm];
            out.amps[idx] = (a + b) * inv_sqrt2;
            out.amps[idx | hm] = (a - b) * inv_sqrt2;
        }
        // controlled phase rotations from lower-order qubits
        for (int j = i + 1; j < k; ++j) {
            double theta = 2.0 * std::numbers::pi / std::pow(2.0, j - i + 1);
            Amp w = std::polar(1.0, theta);
            std::uint64_t cm = detail::qubit_mask(out, reg[j]);
            std::uint64_t tm = detail::qubit_mask(out, reg[i]);
            for (std::uint64_t idx = 0; idx < out.dim(); ++idx)
                if ((idx & cm) && (idx & tm)) out.amps[idx] *= w;
        }
    }
    // reverse register order
    for (int i = 0; i < k / 2; ++i) {
        std::uint64_t m1 = detail::qubit_mask(out, reg[i]);
        std::uint64_t m2 = detail::qubit_mask(out, reg[k - 1 - i]);
        for (std::uint64_t idx = 0; idx < out.dim(); ++idx) {
            bool b1 = idx & m1, b2 = idx & m2;
            if (b1 && !b2) std::swap(out.amps[idx], out.amps[(idx ^ m1) | m2]);
        }
    }
    return out;
}

struct MeasurementRecord {
    std::uint64_t outcome = 0;  // measured bits, reg[0] as the most significant
    int width = 0;
    double probability = 0.0;
    StateVector post_state;
};

// Measures the listed qubits; outcome sampled from the marginal distribution,
// post_state renormalized on the consistent subspace.
inline MeasurementRecord measure_partial(const StateVector& s, const std::vector<int>& reg,
                                         Rng& rng) {
    detail::check_targets(s, reg);
    if (reg.empty()) throw DimensionError("empty measurement register");
    const int w = static_cast<int>(reg.size());
    std::vector<std::uint64_t> mask(reg.size());
    for (std::size_t j = 0; j < reg.size(); ++j) mask[j] = detail::qubit_mask(s, reg[j]);

    const std::size_t n_out = std::size_t{1} << w;
    std::vector<double> prob(n_out, 0.0);
    for (std::uint64_t i = 0; i < s.dim(); ++i) {
        double p = std::norm(s.amps[i]);
        if (p == 0.0) continue;
        std::uint64_t o = 0;
        for (std::size_t j = 0; j < mask.size(); ++j) o = (o << 1) | ((i & mask[j]) ? 1 : 0);
        prob[o] += p;
    }

    double r = rng.real01();
    std::uint64_t outcome = 0;
    double acc = 0.0, chosen_p = 0.0;
    bool picked = false;
    for (std::size_t o = 0; o < n_out; ++o) {
        acc += prob[o];
        if (!picked && r < acc && prob[o] > 0.0) {
            outcome = o;
            chosen_p = prob[o];
            picked = true;
        }
    }
    if (!picked) {  // floating-point edge: take the last outcome with support
        for (std::size_t o = n_out; o-- > 0;) {
            if (prob[o] > 0.0) {
                outcome = o;
                chosen_p = prob[o];
                break;
            }
        }
    }

    MeasurementRecord rec;
    rec.outcome = outcome;
    rec.width = w;
    rec.probability = chosen_p;
    rec.post_state = s;
    const double scale = 1.0 / std::sqrt(chosen_p);
    for (std::uint64_t i = 0; i < s.dim(); ++i) {
        std::uint64_t o = 0;
        for (std::size_t j = 0; j < mask.size(); ++j) o = (o << 1) | ((i & mask[j]) ? 1 : 0);
        rec.post_state.amps[i] = (o == outcome) ? s.amps[i] * scale : Amp{0.0, 0.0};
    }
    return rec;
}

inline MeasurementRecord measure_all(const StateVector& s, Rng& rng) {
    std::vector<int> reg(s.n_qubits);
    for (int q = 0; q < s.n_qubits; ++q) reg[q] = q;
    return measure_partial(s, reg, rng);
}

}  // namespace pqa::qsim
