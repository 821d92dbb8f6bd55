#pragma once

// Dense linear algebra over F2 with word-packed rows. Shared by the Simon
// post-processing (nullspace of sampled equations) and the code-based
// cryptosystems (generator/parity-check matrices, scrambler inverses).

#include <cstdint>
#include <vector>

#include "pqa/errors.hpp"
#include "pqa/rng.hpp"

namespace pqa {

class F2Vec {
public:
    F2Vec() = default;
    explicit F2Vec(std::size_t nbits) : n_(nbits), w_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    void set(std::size_t i, bool v) {
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v)
            w_[i >> 6] |= mask;
        else
            w_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    void xor_in(const F2Vec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    }

    std::size_t weight() const {
        std::size_t c = 0;
        for (std::uint64_t w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool is_zero() const {
        for (std::uint64_t w : w_)
            if (w) return false;
        return true;
    }

    // Parity of the AND of two vectors (inner product over F2).
    bool dot(const F2Vec& o) const {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
        return __builtin_parityll(acc);
    }

    bool operator==(const F2Vec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const F2Vec& o) const { return !(*this == o); }

    // Bits packed little-endian within each 64-bit word.
    const std::vector<std::uint64_t>& words() const { return w_; }

    static F2Vec from_u64(std::uint64_t bits, std::size_t nbits) {
        F2Vec v(nbits);
        for (std::size_t i = 0; i < nbits && i < 64; ++i) v.set(i, (bits >> i) & 1);
        return v;
    }

    std::uint64_t to_u64() const {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < n_ && i < 64; ++i)
            if (get(i)) out |= std::uint64_t{1} << i;
        return out;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

class F2Mat {
public:
    F2Mat() = default;
    F2Mat(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, F2Vec(cols)) {}

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    F2Vec& row(std::size_t i) { return rows_[i]; }
    const F2Vec& row(std::size_t i) const { return rows_[i]; }

    bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v) { rows_[r].set(c, v); }

    void append_row(const F2Vec& v) {
        if (rows_.empty() && cols_ == 0) cols_ = v.size();
        if (v.size() != cols_) throw DimensionError("F2Mat: row width mismatch");
        rows_.push_back(v);
    }

    static F2Mat identity(std::size_t n) {
        F2Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    static F2Mat random(std::size_t r, std::size_t c, Rng& rng) {
        F2Mat m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng.bit());
        return m;
    }

    F2Mat transposed() const {
        F2Mat t(cols_, rows());
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (get(i, j)) t.set(j, i, true);
        return t;
    }

    // Row vector times matrix: result_j = sum_i v_i * M_ij.
    F2Vec mul_left(const F2Vec& v) const {
        if (v.size() != rows()) throw DimensionError("F2Mat: mul_left size mismatch");
        F2Vec out(cols_);
        for (std::size_t i = 0; i < rows(); ++i)
            if (v.get(i)) out.xor_in(rows_[i]);
        return out;
    }

    // Matrix times column vector: result_i = <row_i, v>.
    F2Vec mul_right(const F2Vec& v) const {
        if (v.size() != cols_) throw DimensionError("F2Mat: mul_right size mismatch");
        F2Vec out(rows());
        for (std::size_t i = 0; i < rows(); ++i) out.set(i, rows_[i].dot(v));
        return out;
    }

    F2Mat mul(const F2Mat& o) const {
        if (cols_ != o.rows()) throw DimensionError("F2Mat: mul shape mismatch");
        F2Mat out(rows(), o.cols());
        for (std::size_t i = 0; i < rows(); ++i) out.rows_[i] = o.mul_left(rows_[i]);
        return out;
    }

    // In-place reduced row echelon form; returns pivot column of each pivot row.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows(); ++c) {
            std::size_t sel = r;
            while (sel < rows() && !rows_[sel].get(c)) ++sel;
            if (sel == rows()) continue;
            std::swap(rows_[r], rows_[sel]);
            for (std::size_t i = 0; i < rows(); ++i)
                if (i != r && rows_[i].get(c)) rows_[i].xor_in(rows_[r]);
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        F2Mat copy = *this;
        return copy.rref().size();
    }

    // Basis of { v : M v^t = 0 }. An empty matrix yields the standard basis.
    std::vector<F2Vec> nullspace() const {
        F2Mat m = *this;
        std::vector<std::size_t> pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (std::size_t c : pivots) is_pivot[c] = true;
        std::vector<F2Vec> basis;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            F2Vec v(cols_);
            v.set(free, true);
            for (std::size_t pr = 0; pr < pivots.size(); ++pr)
                if (m.rows_[pr].get(free)) v.set(pivots[pr], true);
            basis.push_back(v);
        }
        return basis;
    }

    // Solves M x^t = b^t for one solution (free variables zero).
    // Returns false if the system is inconsistent.
    bool solve(const F2Vec& b, F2Vec& x_out) const {
        if (b.size() != rows()) throw DimensionError("F2Mat: solve rhs size mismatch");
        F2Mat aug(rows(), cols_ + 1);
        for (std::size_t i = 0; i < rows(); ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.set(i, j, get(i, j));
            aug.set(i, cols_, b.get(i));
        }
        std::vector<std::size_t> pivots = aug.rref();
        for (std::size_t c : pivots)
            if (c == cols_) return false;  // pivot in augmented column
        F2Vec x(cols_);
        for (std::size_t pr = 0; pr < pivots.size(); ++pr) x.set(pivots[pr], aug.get(pr, cols_));
        x_out = x;
        return true;
    }

    // Inverse of a square invertible matrix; throws ValueError if singular.
    F2Mat inverse() const {
        if (rows() != cols_) throw DimensionError("F2Mat: inverse of non-square");
        std::size_t n = rows();
        F2Mat aug(n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug.set(i, j, get(i, j));
            aug.set(i, n + i, true);
        }
        std::vector<std::size_t> pivots = aug.rref();
        if (pivots.size() != n || pivots[n - 1] != n - 1)
            throw ValueError("F2Mat: matrix is singular");
        F2Mat inv(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) inv.set(i, j, aug.get(i, n + j));
        return inv;
    }

    bool operator==(const F2Mat& o) const { return cols_ == o.cols_ && rows_ == o.rows_; }

private:
    std::size_t cols_ = 0;
    std::vector<F2Vec> rows_;
};

// Random invertible square matrix by rejection (a random F2 matrix is
// invertible with probability ~0.29, so a few draws suffice).
inline F2Mat random_invertible(std::size_t n, Rng& rng) {
    for (;;) {
        F2Mat m = F2Mat::random(n, n, rng);
        if (m.rank() == n) return m;
    }
}

// Permutation as image list: perm[i] = column where input position i lands.
inline std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        std::size_t j = rng.below(i);
        std::swap(p[i - 1], p[j]);
    }
    return p;
}

inline F2Mat permutation_matrix(const std::vector<std::size_t>& perm) {
    F2Mat m(perm.size(), perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) m.set(i, perm[i], true);
    return m;
}

inline F2Vec apply_permutation(const std::vector<std::size_t>& perm, const F2Vec& v) {
    F2Vec out(v.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (v.get(i)) out.set(perm[i], true);
    return out;
}

inline std::vector<std::size_t> invert_permutation(const std::vector<std::size_t>& perm) {
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
    return inv;
}

}  // namespace pqa
