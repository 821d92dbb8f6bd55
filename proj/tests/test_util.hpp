#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "pqa/qsim.hpp"
#include "pqa/rng.hpp"

namespace testutil {

inline pqa::qsim::StateVector random_state(int n, pqa::Rng& rng) {
    pqa::qsim::StateVector s = pqa::qsim::zero_state(n);
    for (auto& a : s.amps)
        a = pqa::qsim::Amp{2.0 * rng.real01() - 1.0, 2.0 * rng.real01() - 1.0};
    double norm = std::sqrt(s.norm_sq());
    for (auto& a : s.amps) a /= norm;
    return s;
}

inline double state_linf(const pqa::qsim::StateVector& a, const pqa::qsim::StateVector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.amps.size(); ++i) d = std::max(d, std::abs(a.amps[i] - b.amps[i]));
    return d;
}

// Random unitary by Gram-Schmidt on a random complex matrix.
inline pqa::qsim::GateMatrix random_unitary(std::size_t dim, pqa::Rng& rng) {
    using pqa::qsim::Amp;
    pqa::qsim::GateMatrix g(dim);
    for (auto& e : g.entries) e = Amp{2.0 * rng.real01() - 1.0, 2.0 * rng.real01() - 1.0};
    // orthonormalize rows
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t p = 0; p < r; ++p) {
            Amp dot{0.0, 0.0};
            for (std::size_t c = 0; c < dim; ++c) dot += g.at(r, c) * std::conj(g.at(p, c));
            for (std::size_t c = 0; c < dim; ++c) g.at(r, c) -= dot * g.at(p, c);
        }
        double norm = 0.0;
        for (std::size_t c = 0; c < dim; ++c) norm += std::norm(g.at(r, c));
        norm = std::sqrt(norm);
        for (std::size_t c = 0; c < dim; ++c) g.at(r, c) /= norm;
    }
    return g;
}

}  // namespace testutil
