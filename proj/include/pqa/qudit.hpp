#pragma once

// Mixed-radix register: a list of slots with arbitrary dimensions and a dense
// amplitude vector over their product. Fourier transforms are applied densely
// per slot, which covers the non-power-of-two moduli needed by period finding
// over Z_N and discrete log over Z_{p-1}.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "pqa/errors.hpp"
#include "pqa/qsim.hpp"
#include "pqa/rng.hpp"

namespace pqa::qsim {

class QuditState {
public:
    explicit QuditState(std::vector<std::uint32_t> dims) : dims_(std::move(dims)) {
        if (dims_.empty()) throw DimensionError("qudit register needs at least one slot");
        std::uint64_t total = 1;
        for (std::uint32_t d : dims_) {
            if (d < 1) throw DimensionError("slot dimension must be positive");
            total *= d;
            if (total > (std::uint64_t{1} << kMaxQubits))
                throw CapacityError("qudit register exceeds simulator capacity");
        }
        strides_.resize(dims_.size());
        std::uint64_t s = 1;
        for (std::size_t i = dims_.size(); i-- > 0;) {
            strides_[i] = s;
            s *= dims_[i];
        }
        amps_.assign(total, Amp{0.0, 0.0});
        amps_[0] = Amp{1.0, 0.0};
    }

    std::size_t n_slots() const { return dims_.size(); }
    std::uint32_t dim(std::size_t slot) const { return dims_[slot]; }
    std::uint64_t total_dim() const { return amps_.size(); }
    const std::vector<Amp>& amps() const { return amps_; }
    std::vector<Amp>& amps() { return amps_; }

    std::uint32_t slot_value(std::uint64_t index, std::size_t slot) const {
        return static_cast<std::uint32_t>((index / strides_[slot]) % dims_[slot]);
    }

    double norm_sq() const {
        double s = 0.0;
        for (const Amp& a : amps_) s += std::norm(a);
        return s;
    }

    // F_d on one slot (dense, O(total * d)).
    void apply_fourier(std::size_t slot) {
        const std::uint32_t d = dims_[slot];
        const GateMatrix f = gates::fourier(d);
        const std::uint64_t stride = strides_[slot];
        std::vector<Amp> in(d), res(d);
        // iterate over all configurations of the other slots
        for (std::uint64_t base = 0; base < amps_.size(); ++base) {
            if (slot_value(base, slot) != 0) continue;
            for (std::uint32_t v = 0; v < d; ++v) in[v] = amps_[base + v * stride];
            for (std::uint32_t r = 0; r < d; ++r) {
                Amp acc{0.0, 0.0};
                for (std::uint32_t c = 0; c < d; ++c) acc += f.at(r, c) * in[c];
                res[r] = acc;
            }
            for (std::uint32_t v = 0; v < d; ++v) amps_[base + v * stride] = res[v];
        }
    }

    // |..., b, ...> -> |..., b + f(values) mod d, ...> where f sees the values
    // of every slot except the output slot (in slot order).
    void apply_add_oracle(std::size_t out_slot,
                          const std::function<std::uint32_t(const std::vector<std::uint32_t>&)>& f) {
        const std::uint32_t d = dims_[out_slot];
        const std::uint64_t stride = strides_[out_slot];
        std::vector<Amp> next(amps_.size(), Amp{0.0, 0.0});
        std::vector<std::uint32_t> values(dims_.size() - 1);
        for (std::uint64_t i = 0; i < amps_.size(); ++i) {
            if (amps_[i] == Amp{0.0, 0.0}) continue;
            std::size_t vi = 0;
            for (std::size_t s = 0; s < dims_.size(); ++s)
                if (s != out_slot) values[vi++] = slot_value(i, s);
            std::uint32_t add = f(values) % d;
            std::uint32_t b = slot_value(i, out_slot);
            std::uint32_t nb = (b + add) % d;
            std::uint64_t j = (i - std::uint64_t{b} * stride) + std::uint64_t{nb} * stride;
            next[j] += amps_[i];
        }
        amps_ = std::move(next);
    }

    struct SlotMeasurement {
        std::uint32_t outcome = 0;
        double probability = 0.0;
    };

    // Measures one slot, collapsing in place.
    SlotMeasurement measure_slot(std::size_t slot, Rng& rng) {
        const std::uint32_t d = dims_[slot];
        std::vector<double> prob(d, 0.0);
        for (std::uint64_t i = 0; i < amps_.size(); ++i)
            prob[slot_value(i, slot)] += std::norm(amps_[i]);
        double r = rng.real01(), acc = 0.0;
        std::uint32_t outcome = 0;
        double chosen = 0.0;
        bool picked = false;
        for (std::uint32_t o = 0; o < d; ++o) {
            acc += prob[o];
            if (!picked && r < acc && prob[o] > 0.0) {
                outcome = o;
                chosen = prob[o];
                picked = true;
            }
        }
        if (!picked) {
            for (std::uint32_t o = d; o-- > 0;)
                if (prob[o] > 0.0) {
                    outcome = o;
                    chosen = prob[o];
                    break;
                }
        }
        const double scale = 1.0 / std::sqrt(chosen);
        for (std::uint64_t i = 0; i < amps_.size(); ++i)
            amps_[i] = (slot_value(i, slot) == outcome) ? amps_[i] * scale : Amp{0.0, 0.0};
        return {outcome, chosen};
    }

private:
    std::vector<std::uint32_t> dims_;
    std::vector<std::uint64_t> strides_;
    std::vector<Amp> amps_;
};

}  // namespace pqa::qsim
