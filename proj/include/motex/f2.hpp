#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace motex {

/* Bit-packed vectors and matrices over the two-element field.
 * Row reduction always pivots on the lowest-index nonzero column, so every
 * derived basis is deterministic under a fixed column order. */

class F2Vec {
public:
    F2Vec() = default;
    explicit F2Vec(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int size() const { return n_; }
    bool get(int i) const { return (w_[size_t(i) >> 6] >> (i & 63)) & 1u; }
    void set(int i, bool v = true) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v) w_[size_t(i) >> 6] |= m; else w_[size_t(i) >> 6] &= ~m;
    }
    void flip(int i) { w_[size_t(i) >> 6] ^= std::uint64_t(1) << (i & 63); }

    F2Vec& operator^=(const F2Vec& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    friend F2Vec operator^(F2Vec a, const F2Vec& b) { a ^= b; return a; }

    bool is_zero() const {
        for (auto x : w_) if (x) return false;
        return true;
    }
    /* index of the lowest set bit, or -1 */
    int leading() const;
    bool operator==(const F2Vec&) const = default;

    std::vector<int> support() const;
    std::string str() const;

private:
    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(int rows, int cols) : rows_(rows), cols_(cols), row_(rows, F2Vec(cols)) {}

    static F2Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool get(int r, int c) const { return row_[r].get(c); }
    void set(int r, int c, bool v = true) { row_[r].set(c, v); }
    const F2Vec& row(int r) const { return row_[r]; }
    F2Vec& row(int r) { return row_[r]; }

    /* y = M x, with x indexed by columns */
    F2Vec apply(const F2Vec& x) const;
    friend F2Matrix operator*(const F2Matrix& a, const F2Matrix& b);
    F2Matrix transposed() const;
    bool is_zero() const;

    int rank() const;
    /* basis of { x : M x = 0 }, reduced and deterministically ordered */
    std::vector<F2Vec> kernel_basis() const;
    /* one solution of M x = b (free variables zero), or empty if none */
    bool solve(const F2Vec& b, F2Vec& out) const;

    bool operator==(const F2Matrix&) const = default;
    std::string str() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<F2Vec> row_;
};

/* Incrementally maintained row space in reduced echelon form.  Used for
 * kernel coverage, quotient bases and membership tests. */
class F2Span {
public:
    F2Span() = default;
    explicit F2Span(int n) : n_(n) {}

    int dim() const { return int(rows_.size()); }
    int ambient() const { return n_; }

    /* reduce v against the span; returns the residue */
    F2Vec reduce(F2Vec v) const;
    bool contains(const F2Vec& v) const { return reduce(v).is_zero(); }
    /* add v; returns true if the dimension grew */
    bool add(F2Vec v);
    const std::vector<F2Vec>& rows() const { return rows_; }

    /* coordinates of v in terms of the vectors previously add()ed (only
     * meaningful while all add() calls returned true) */
    bool express(const F2Vec& v, F2Vec& coords) const;

private:
    int n_ = 0;
    size_t n_inserted_ = 0;
    std::vector<F2Vec> rows_; /* echelon basis */
    std::vector<int> pivots_;
    std::vector<std::vector<int>> combos_; /* row i as a set of inserted indices */
};

struct RankKernel {
    int rank = 0;
    std::vector<F2Vec> kernel;
};

RankKernel rank_kernel(const F2Matrix& m);

} // namespace motex
