/**
 * @file bareiss.hpp
 * @brief Fraction-free (Bareiss) elimination over an integral domain.
 *
 * Every division performed is exact, so the routines work unchanged for Z
 * and for Q[t]. The element type supplies `T(0)`, `T(1)`, `==`, `-`, `*`
 * and an exact division functor.
 */
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace detm {

template <class T>
using DenseMatrix = std::vector<std::vector<T>>;

struct EchelonResult {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;  // pivot column of row 0, 1, ...
};

/// In-place fraction-free row echelon form. After the call, row i < rank has
/// its first non-zero entry in pivot_columns[i] and rows >= rank are zero.
template <class T, class ExactDiv>
EchelonResult fraction_free_echelon(DenseMatrix<T>& a, ExactDiv exact_div) {
    EchelonResult res;
    const std::size_t rows = a.size();
    if (rows == 0) return res;
    const std::size_t cols = a.front().size();
    const T zero(0);
    T prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == zero) ++p;
        if (p == rows) continue;
        if (p != r) std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = exact_div(a[i][j] * a[r][c] - a[i][c] * a[r][j], prev);
            a[i][c] = zero;
        }
        prev = a[r][c];
        res.pivot_columns.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

/// Determinant of a square matrix by Bareiss elimination with row pivoting.
template <class T, class ExactDiv>
T fraction_free_determinant(DenseMatrix<T> a, ExactDiv exact_div) {
    const std::size_t n = a.size();
    if (n == 0) return T(1);
    const T zero(0);
    T prev(1);
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == zero) ++p;
        if (p == n) return zero;
        if (p != k) {
            std::swap(a[p], a[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
        prev = a[k][k];
    }
    return negate ? zero - a[n - 1][n - 1] : a[n - 1][n - 1];
}

}  // namespace detm
