#pragma once

#include <stdexcept>
#include <vector>

namespace pseries {

template <class T>
struct Mat {
    size_t rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(size_t r, size_t c, const T& fill) : rows(r), cols(c), a(r * c, fill) {}
    T& at(size_t i, size_t j) { return a[i * cols + j]; }
    const T& at(size_t i, size_t j) const { return a[i * cols + j]; }
};

// Fraction-free Gauss-Jordan (Montante/Bareiss) over an integral domain.
// Ops must provide: bool is_zero(T), T mul(T,T), T sub(T,T),
// T div_exact(T,T), plus members `zero` and `one`.
//
// Returns a basis of the right null space of M; empty means the null space is
// trivial. Entries of the basis vectors are ring elements (a common nonzero
// scalar factor per vector is allowed).
template <class T, class Ops>
std::vector<std::vector<T>> solve_homogeneous(Mat<T> m, const Ops& ops) {
    size_t rows = m.rows, cols = m.cols;
    std::vector<long long> pivot_col_of_row;
    std::vector<bool> col_is_pivot(cols, false);
    T prev = ops.one;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && ops.is_zero(m.at(sel, c))) ++sel;
        if (sel == rows) continue;
        if (sel != r)
            for (size_t j = 0; j < cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        const T piv = m.at(r, c);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const T fac = m.at(i, c);
            for (size_t j = 0; j < cols; ++j) {
                T t = ops.sub(ops.mul(piv, m.at(i, j)), ops.mul(fac, m.at(r, j)));
                m.at(i, j) = ops.div_exact(t, prev);
            }
        }
        prev = piv;
        pivot_col_of_row.push_back((long long)c);
        col_is_pivot[c] = true;
        ++r;
    }
    // After Montante, every pivot row i has m[i][pivot] == prev up to the
    // final scaling; read the relations straight off the echelon form.
    std::vector<std::vector<T>> basis;
    for (size_t f = 0; f < cols; ++f) {
        if (col_is_pivot[f]) continue;
        std::vector<T> v(cols, ops.zero);
        v[f] = prev;
        for (size_t i = 0; i < pivot_col_of_row.size(); ++i) {
            // row i: prev * x_{pc} + sum_free m[i][j] x_j = 0
            T coeff = m.at(i, f);
            v[pivot_col_of_row[i]] = ops.sub(ops.zero, coeff);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T, class Ops>
size_t matrix_rank(const Mat<T>& m, const Ops& ops) {
    auto basis = solve_homogeneous(m, ops);
    return m.cols - basis.size();
}

} // namespace pseries
