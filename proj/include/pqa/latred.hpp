#pragma once

// Exact integer-lattice toolkit: rational Gram-Schmidt, LLL reduction, a
// brute-force shortest-vector oracle, and the subset-sum attack that builds
// the (n+1)-row knapsack basis and scans the reduced rows for a {0,1}
// solution. All arithmetic is exact (GMP integers/rationals); no floating
// point appears anywhere in the reduction.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pqa/errors.hpp"

namespace pqa::latred {

using Int = mpz_class;
using Rat = mpq_class;

inline constexpr std::size_t kMaxDim = 40;

struct IntLatticeBasis {
    std::vector<std::vector<Int>> rows;  // linearly independent row vectors

    std::size_t dim() const { return rows.size(); }
    std::size_t ambient() const { return rows.empty() ? 0 : rows[0].size(); }
};

inline Int norm_sq(const std::vector<Int>& v) {
    Int s = 0;
    for (const Int& x : v) s += x * x;
    return s;
}

inline Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct GramSchmidt {
    std::vector<std::vector<Rat>> mu;       // mu[i][j] for j < i
    std::vector<Rat> b_star_norm_sq;        // ||b*_i||^2, all positive iff independent
};

// Exact rational Gram-Schmidt over the row vectors.
inline GramSchmidt gram_schmidt(const IntLatticeBasis& basis) {
    const std::size_t d = basis.dim(), n = basis.ambient();
    GramSchmidt gs;
    gs.mu.assign(d, std::vector<Rat>(d, Rat(0)));
    gs.b_star_norm_sq.assign(d, Rat(0));
    std::vector<std::vector<Rat>> b_star(d, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t c = 0; c < n; ++c) b_star[i][c] = Rat(basis.rows[i][c]);
        for (std::size_t j = 0; j < i; ++j) {
            Rat proj(0);
            for (std::size_t c = 0; c < n; ++c) proj += Rat(basis.rows[i][c]) * b_star[j][c];
            if (gs.b_star_norm_sq[j] == 0) continue;
            Rat m = proj / gs.b_star_norm_sq[j];
            gs.mu[i][j] = m;
            for (std::size_t c = 0; c < n; ++c) b_star[i][c] -= m * b_star[j][c];
        }
        Rat nsq(0);
        for (std::size_t c = 0; c < n; ++c) nsq += b_star[i][c] * b_star[i][c];
        gs.b_star_norm_sq[i] = nsq;
    }
    return gs;
}

inline void check_independent(const IntLatticeBasis& basis) {
    if (basis.dim() == 0) throw ValueError("empty basis");
    if (basis.dim() > kMaxDim) throw CapacityError("basis dimension exceeds 40");
    for (const auto& row : basis.rows)
        if (row.size() != basis.ambient()) throw DimensionError("ragged basis rows");
    GramSchmidt gs = gram_schmidt(basis);
    for (const Rat& nsq : gs.b_star_norm_sq)
        if (nsq == 0) throw ValueError("basis rows are linearly dependent");
}

inline Int round_nearest(const Rat& x) {
    // round half away from zero: floor((2 num + den) / (2 den)) works for both signs
    Int num = x.get_num(), den = x.get_den();
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), Int(2 * num + den).get_mpz_t(), Int(2 * den).get_mpz_t());
    return q;
}

// LLL with exact rational arithmetic. delta in (1/4, 1), default 99/100.
inline IntLatticeBasis lll_reduce(const IntLatticeBasis& input, const Rat& delta = Rat(99, 100)) {
    if (delta <= Rat(1, 4) || delta >= 1) throw ValueError("delta must be in (1/4, 1)");
    check_independent(input);
    IntLatticeBasis b = input;
    const std::size_t d = b.dim(), n = b.ambient();
    GramSchmidt gs = gram_schmidt(b);

    auto size_reduce_row = [&](std::size_t k, std::size_t j) {
        Int q = round_nearest(gs.mu[k][j]);
        if (q == 0) return;
        for (std::size_t c = 0; c < n; ++c) b.rows[k][c] -= q * b.rows[j][c];
        for (std::size_t l = 0; l < j; ++l) gs.mu[k][l] -= Rat(q) * gs.mu[j][l];
        gs.mu[k][j] -= Rat(q);
    };

    std::size_t k = 1;
    while (k < d) {
        for (std::size_t j = k; j-- > 0;) size_reduce_row(k, j);
        Rat lhs = gs.b_star_norm_sq[k];
        Rat rhs = (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.b_star_norm_sq[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(b.rows[k], b.rows[k - 1]);
            gs = gram_schmidt(b);  // exact recompute; desk-scale dimensions
            k = (k > 1) ? k - 1 : 1;
        }
    }
    return b;
}

// Lovasz condition + size reduction verdicts for a (claimed) reduced basis.
inline bool is_lll_reduced(const IntLatticeBasis& b, const Rat& delta = Rat(99, 100)) {
    GramSchmidt gs = gram_schmidt(b);
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            Rat m = gs.mu[i][j];
            if (m > Rat(1, 2) || m < Rat(-1, 2)) return false;
        }
    for (std::size_t k = 1; k < b.dim(); ++k) {
        Rat lhs = gs.b_star_norm_sq[k];
        Rat rhs = (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.b_star_norm_sq[k - 1];
        if (lhs < rhs) return false;
    }
    return true;
}

// Rational coordinates of v in the given basis (x with x B = v), if any.
inline std::optional<std::vector<Rat>> solve_coordinates(const IntLatticeBasis& basis,
                                                         const std::vector<Int>& v) {
    const std::size_t d = basis.dim(), n = basis.ambient();
    if (v.size() != n) throw DimensionError("vector/basis ambient mismatch");
    // solve B^t x^t = v^t by rational elimination on the n x d system
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(d + 1, Rat(0)));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < d; ++c) a[r][c] = Rat(basis.rows[c][r]);
        a[r][d] = Rat(v[r]);
    }
    std::size_t row = 0;
    std::vector<std::size_t> pivot_of_col(d, SIZE_MAX);
    for (std::size_t col = 0; col < d && row < n; ++col) {
        std::size_t sel = row;
        while (sel < n && a[sel][col] == 0) ++sel;
        if (sel == n) continue;
        std::swap(a[row], a[sel]);
        Rat p = a[row][col];
        for (std::size_t c = col; c <= d; ++c) a[row][c] /= p;
        for (std::size_t r2 = 0; r2 < n; ++r2) {
            if (r2 == row || a[r2][col] == 0) continue;
            Rat f = a[r2][col];
            for (std::size_t c = col; c <= d; ++c) a[r2][c] -= f * a[row][c];
        }
        pivot_of_col[col] = row;
        ++row;
    }
    for (std::size_t r2 = row; r2 < n; ++r2)
        if (a[r2][d] != 0) return std::nullopt;  // inconsistent: v not in the span
    std::vector<Rat> x(d, Rat(0));
    for (std::size_t col = 0; col < d; ++col)
        if (pivot_of_col[col] != SIZE_MAX) x[col] = a[pivot_of_col[col]][d];
    return x;
}

// Exact lattice membership via rational solve + integrality check.
inline bool is_member(const IntLatticeBasis& basis, const std::vector<Int>& v) {
    auto x = solve_coordinates(basis, v);
    if (!x) return false;
    for (const Rat& c : *x)
        if (c.get_den() != 1) return false;
    return true;
}

// Determinant of the Gram matrix B B^t (squared lattice volume), exact.
inline Int gram_determinant(const IntLatticeBasis& basis) {
    const std::size_t d = basis.dim();
    std::vector<std::vector<Int>> g(d, std::vector<Int>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) g[i][j] = dot(basis.rows[i], basis.rows[j]);
    // fraction-free Bareiss elimination
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < d; ++k) {
        if (g[k][k] == 0) {
            std::size_t sel = k + 1;
            while (sel < d && g[sel][k] == 0) ++sel;
            if (sel == d) return 0;
            std::swap(g[k], g[sel]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < d; ++i)
            for (std::size_t j = k + 1; j < d; ++j) {
                g[i][j] = (g[i][j] * g[k][k] - g[i][k] * g[k][j]) / prev;
            }
        prev = g[k][k];
    }
    return sign > 0 ? g[d - 1][d - 1] : -g[d - 1][d - 1];
}

struct ShortVector {
    std::vector<Int> vec;
    Int norm_squared;
};

namespace detail {

// Depth-first enumeration with incremental partial sums; T is int64 when the
// entries are small enough to rule out overflow, mpz otherwise.
template <typename T>
void svp_enumerate(const std::vector<std::vector<T>>& rows, int bound, std::vector<T>& partial,
                   std::size_t level, bool all_zero, std::vector<T>& best_vec, T& best_nsq,
                   bool& have_best) {
    const std::size_t d = rows.size(), n = partial.size();
    if (level == d) {
        if (all_zero) return;
        T nsq = T(0);
        for (std::size_t k = 0; k < n; ++k) nsq += partial[k] * partial[k];
        if (nsq == T(0)) return;
        if (!have_best || nsq < best_nsq) {
            best_nsq = nsq;
            best_vec = partial;
            have_best = true;
        }
        return;
    }
    int lo = all_zero ? 0 : -bound;  // canonical half-space
    for (int c = lo; c <= bound; ++c) {
        if (c != 0)
            for (std::size_t k = 0; k < n; ++k) partial[k] += T(c) * rows[level][k];
        svp_enumerate(rows, bound, partial, level + 1, all_zero && c == 0, best_vec, best_nsq,
                      have_best);
        if (c != 0)
            for (std::size_t k = 0; k < n; ++k) partial[k] -= T(c) * rows[level][k];
    }
}

}  // namespace detail

// Exhaustive minimum over nonzero coefficient vectors in [-bound, bound]^d
// (documented enumeration box; the first nonzero coefficient is taken
// positive by symmetry). Guards: d <= 8, bound <= 6.
inline ShortVector shortest_vector_bruteforce(const IntLatticeBasis& basis, int coeff_bound) {
    check_independent(basis);
    if (basis.dim() > 8 || coeff_bound < 1 || coeff_bound > 6)
        throw CapacityError("bruteforce box limited to d <= 8, bound <= 6");
    const std::size_t d = basis.dim(), n = basis.ambient();

    // int64 fast path when (d * bound * max|entry|)^2 * n cannot overflow
    Int max_abs = 0;
    for (const auto& row : basis.rows)
        for (const Int& e : row)
            if (abs(e) > max_abs) max_abs = abs(e);
    Int worst = Int(static_cast<long>(d)) * coeff_bound * max_abs;
    ShortVector best;
    if (worst * worst * Int(static_cast<long>(n)) < (Int(1) << 62)) {
        std::vector<std::vector<long>> rows(d, std::vector<long>(n));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < n; ++k) rows[i][k] = basis.rows[i][k].get_si();
        std::vector<long> partial(n, 0), best_vec;
        long best_nsq = 0;
        bool have = false;
        detail::svp_enumerate<long>(rows, coeff_bound, partial, 0, true, best_vec, best_nsq,
                                         have);
        best.norm_squared = Int(best_nsq);
        best.vec.assign(best_vec.begin(), best_vec.end());
    } else {
        std::vector<Int> partial(n, 0), best_vec;
        Int best_nsq = 0;
        bool have = false;
        detail::svp_enumerate<Int>(basis.rows, coeff_bound, partial, 0, true, best_vec, best_nsq,
                                   have);
        best.norm_squared = best_nsq;
        best.vec = best_vec;
    }
    return best;
}

// ---- subset sum ----

struct SubsetSumInstance {
    std::vector<Int> weights;  // positive
    Int target;                // positive

    void validate() const {
        if (weights.empty() || weights.size() > 24)
            throw CapacityError("subset-sum limited to 1 <= n <= 24");
        for (const Int& a : weights)
            if (a <= 0) throw ValueError("weights must be positive");
        if (target <= 0) throw ValueError("target must be positive");
    }
};

// One line "a1 a2 ... an : M".
inline SubsetSumInstance parse_subset_sum(const std::string& line) {
    SubsetSumInstance inst;
    std::istringstream in(line);
    std::string tok;
    bool after_colon = false;
    while (in >> tok) {
        if (tok == ":") {
            after_colon = true;
            continue;
        }
        Int v;
        if (mpz_set_str(v.get_mpz_t(), tok.c_str(), 10) != 0)
            throw ParseError("subset-sum: bad integer token '" + tok + "'");
        if (after_colon)
            inst.target = v;
        else
            inst.weights.push_back(v);
    }
    if (!after_colon) throw ParseError("subset-sum: missing ': M' part");
    inst.validate();
    return inst;
}

inline std::string format_subset_sum(const SubsetSumInstance& inst) {
    std::ostringstream out;
    for (const Int& a : inst.weights) out << a << ' ';
    out << ": " << inst.target;
    return out.str();
}

// Builds the knapsack basis rows (1,0,...,0,-a_1) ... (0,...,1,-a_n),
// (0,...,0,M), LLL-reduces, and scans reduced rows and +-1 combinations of
// up to two rows for a vector of shape (x_1..x_n, 0), x in {0,1}^n.
// Returns the solution bits or nullopt.
inline std::optional<std::vector<int>> solve_subset_sum(const SubsetSumInstance& inst) {
    inst.validate();
    const std::size_t n = inst.weights.size();
    IntLatticeBasis basis;
    basis.rows.assign(n + 1, std::vector<Int>(n + 1, 0));
    for (std::size_t i = 0; i < n; ++i) {
        basis.rows[i][i] = 1;
        basis.rows[i][n] = -inst.weights[i];
    }
    basis.rows[n][n] = inst.target;

    IntLatticeBasis red = lll_reduce(basis);

    auto try_vec = [&](const std::vector<Int>& v) -> std::optional<std::vector<int>> {
        if (v[n] != 0) return std::nullopt;
        for (int sign : {1, -1}) {
            bool ok = true;
            std::vector<int> bits(n, 0);
            for (std::size_t i = 0; i < n && ok; ++i) {
                Int e = sign * v[i];
                if (e == 0)
                    bits[i] = 0;
                else if (e == 1)
                    bits[i] = 1;
                else
                    ok = false;
            }
            if (!ok) continue;
            Int sum = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (bits[i]) sum += inst.weights[i];
            if (sum == inst.target) return bits;
        }
        return std::nullopt;
    };

    for (const auto& row : red.rows)
        if (auto hit = try_vec(row)) return hit;
    std::vector<Int> combo(n + 1);
    for (std::size_t i = 0; i < red.rows.size(); ++i) {
        for (std::size_t j = i + 1; j < red.rows.size(); ++j) {
            for (int si : {1, -1}) {
                for (int sj : {1, -1}) {
                    for (std::size_t c = 0; c <= n; ++c)
                        combo[c] = si * red.rows[i][c] + sj * red.rows[j][c];
                    if (auto hit = try_vec(combo)) return hit;
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace pqa::latred
