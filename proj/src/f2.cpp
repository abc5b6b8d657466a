#include "motex/f2.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace motex {

namespace {

/* symmetric difference of sorted index sets */
std::vector<int> sym_diff(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) out.push_back(a[i++]);
        else if (b[j] < a[i]) out.push_back(b[j++]);
        else { ++i; ++j; }
    }
    out.insert(out.end(), a.begin() + long(i), a.end());
    out.insert(out.end(), b.begin() + long(j), b.end());
    return out;
}

} // namespace

int F2Vec::leading() const {
    for (size_t k = 0; k < w_.size(); ++k)
        if (w_[k]) return int(k * 64) + std::countr_zero(w_[k]);
    return -1;
}

std::vector<int> F2Vec::support() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
        if (get(i)) out.push_back(i);
    return out;
}

std::string F2Vec::str() const {
    std::string s(size_t(n_), '0');
    for (int i = 0; i < n_; ++i)
        if (get(i)) s[size_t(i)] = '1';
    return s;
}

F2Matrix F2Matrix::identity(int n) {
    F2Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i);
    return m;
}

F2Vec F2Matrix::apply(const F2Vec& x) const {
    F2Vec y(rows_);
    for (int r = 0; r < rows_; ++r) {
        bool bit = false;
        for (int c : row_[r].support())
            bit ^= x.get(c);
        y.set(r, bit);
    }
    return y;
}

F2Matrix operator*(const F2Matrix& a, const F2Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("F2Matrix: size mismatch");
    F2Matrix out(a.rows(), b.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int k : a.row(r).support())
            out.row(r) ^= b.row(k);
    return out;
}

F2Matrix F2Matrix::transposed() const {
    F2Matrix out(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c : row_[r].support())
            out.set(c, r);
    return out;
}

bool F2Matrix::is_zero() const {
    for (const auto& r : row_)
        if (!r.is_zero()) return false;
    return true;
}

int F2Matrix::rank() const {
    F2Span sp(cols_);
    for (const auto& r : row_) sp.add(r);
    return sp.dim();
}

std::vector<F2Vec> F2Matrix::kernel_basis() const {
    /* Work on the transpose: each unknown (matrix column) is a tableau row.
     * Reduced echelon form makes the free-column kernel vectors canonical. */
    std::vector<F2Vec> ech;
    std::vector<int> ech_pivot;
    std::vector<std::vector<int>> ech_combo; /* over unknown indices */

    F2Matrix tr = transposed();
    std::vector<bool> is_free(std::size_t(cols_), false);
    std::vector<std::vector<int>> free_combo;
    free_combo.resize(std::size_t(cols_));
    for (int c = 0; c < cols_; ++c) {
        F2Vec v = tr.row(c);
        std::vector<int> combo{c};
        for (;;) {
            int lead = v.leading();
            if (lead < 0) break;
            bool hit = false;
            for (size_t k = 0; k < ech.size(); ++k) {
                if (ech_pivot[k] == lead) {
                    v ^= ech[k];
                    combo = sym_diff(combo, ech_combo[k]);
                    hit = true;
                    break;
                }
            }
            if (!hit) {
                ech.push_back(v);
                ech_pivot.push_back(lead);
                ech_combo.push_back(std::move(combo));
                break;
            }
        }
        if (v.is_zero()) {
            is_free[size_t(c)] = true;
            free_combo[size_t(c)] = std::move(combo);
        }
    }

    std::vector<F2Vec> kernel;
    for (int c = 0; c < cols_; ++c) {
        if (!is_free[size_t(c)]) continue;
        F2Vec v(cols_);
        for (int i : free_combo[size_t(c)]) v.flip(i);
        kernel.push_back(std::move(v));
    }
    return kernel;
}

bool F2Matrix::solve(const F2Vec& b, F2Vec& out) const {
    std::vector<F2Vec> ech;
    std::vector<int> ech_pivot;
    std::vector<std::vector<int>> ech_combo;

    F2Matrix tr = transposed();
    for (int c = 0; c < cols_; ++c) {
        F2Vec v = tr.row(c);
        std::vector<int> combo{c};
        for (;;) {
            int lead = v.leading();
            if (lead < 0) break;
            bool hit = false;
            for (size_t k = 0; k < ech.size(); ++k) {
                if (ech_pivot[k] == lead) {
                    v ^= ech[k];
                    combo = sym_diff(combo, ech_combo[k]);
                    hit = true;
                    break;
                }
            }
            if (!hit) {
                ech.push_back(v);
                ech_pivot.push_back(lead);
                ech_combo.push_back(std::move(combo));
                break;
            }
        }
    }
    F2Vec rhs = b;
    std::vector<int> combo;
    for (;;) {
        int lead = rhs.leading();
        if (lead < 0) break;
        bool hit = false;
        for (size_t k = 0; k < ech.size(); ++k) {
            if (ech_pivot[k] == lead) {
                rhs ^= ech[k];
                combo = sym_diff(combo, ech_combo[k]);
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    F2Vec x(cols_);
    for (int i : combo) x.flip(i);
    out = std::move(x);
    return true;
}

std::string F2Matrix::str() const {
    std::ostringstream os;
    for (int r = 0; r < rows_; ++r) os << row_[r].str() << '\n';
    return os.str();
}

F2Vec F2Span::reduce(F2Vec v) const {
    for (;;) {
        int lead = v.leading();
        if (lead < 0) return v;
        bool hit = false;
        for (size_t k = 0; k < rows_.size(); ++k) {
            if (pivots_[k] == lead) {
                v ^= rows_[k];
                hit = true;
                break;
            }
        }
        if (!hit) return v;
    }
}

bool F2Span::add(F2Vec v) {
    std::vector<int> combo{int(n_inserted_)};
    F2Vec residue = v;
    for (;;) {
        int lead = residue.leading();
        if (lead < 0) break;
        bool hit = false;
        for (size_t k = 0; k < rows_.size(); ++k) {
            if (pivots_[k] == lead) {
                residue ^= rows_[k];
                combo = sym_diff(combo, combos_[k]);
                hit = true;
                break;
            }
        }
        if (!hit) break;
    }
    ++n_inserted_;
    if (residue.is_zero()) return false;
    rows_.push_back(std::move(residue));
    pivots_.push_back(rows_.back().leading());
    combos_.push_back(std::move(combo));
    return true;
}

bool F2Span::express(const F2Vec& v, F2Vec& coords) const {
    F2Vec residue = v;
    std::vector<int> combo;
    for (;;) {
        int lead = residue.leading();
        if (lead < 0) break;
        bool hit = false;
        for (size_t k = 0; k < rows_.size(); ++k) {
            if (pivots_[k] == lead) {
                residue ^= rows_[k];
                combo = sym_diff(combo, combos_[k]);
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    F2Vec c{int(n_inserted_)};
    for (int i : combo) c.flip(i);
    coords = std::move(c);
    return true;
}

RankKernel rank_kernel(const F2Matrix& m) {
    RankKernel out;
    out.kernel = m.kernel_basis();
    out.rank = m.cols() - int(out.kernel.size());
    return out;
}

} // namespace motex
