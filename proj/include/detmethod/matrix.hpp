/**
 * @file matrix.hpp
 * @brief Monomial evaluation matrices, exact rank, minors and kernel vectors.
 */
#pragma once

#include "detmethod/bareiss.hpp"
#include "detmethod/expsets.hpp"
#include "detmethod/gcd.hpp"
#include "detmethod/point.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace detm {

/// The J x E matrix (x_j^e) with rows indexed by points and columns by exponents.
class MonomialMatrix {
public:
    MonomialMatrix(std::vector<Point> rows, std::vector<ExponentVector> cols)
        : rows_(std::move(rows)), cols_(std::move(cols)) {
        if (rows_.empty()) throw std::invalid_argument("MonomialMatrix: no points");
        if (cols_.empty()) throw std::invalid_argument("MonomialMatrix: no columns");
        entries_.assign(rows_.size(), std::vector<Integer>(cols_.size()));
        for (std::size_t j = 0; j < rows_.size(); ++j)
            for (std::size_t c = 0; c < cols_.size(); ++c) entries_[j][c] = monomial_value(cols_[c], rows_[j]);
    }

    std::size_t row_count() const { return rows_.size(); }
    std::size_t col_count() const { return cols_.size(); }
    const std::vector<Point>& points() const { return rows_; }
    const std::vector<ExponentVector>& columns() const { return cols_; }
    const Integer& entry(std::size_t j, std::size_t c) const { return entries_[j][c]; }
    const DenseMatrix<Integer>& entries() const { return entries_; }

private:
    std::vector<Point> rows_;
    std::vector<ExponentVector> cols_;
    DenseMatrix<Integer> entries_;
};

inline MonomialMatrix build_matrix(const std::vector<Point>& points, const ExponentSet& E) {
    return MonomialMatrix(points, E.members);
}

namespace detail {
inline Integer exact_integer_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
}  // namespace detail

inline std::size_t rank_over_rationals(const DenseMatrix<Integer>& a) {
    DenseMatrix<Integer> work = a;
    return fraction_free_echelon(work, detail::exact_integer_div).rank;
}

inline std::size_t rank_over_rationals(const MonomialMatrix& m) { return rank_over_rationals(m.entries()); }

inline Integer determinant(const DenseMatrix<Integer>& a) {
    for (const auto& row : a)
        if (row.size() != a.size()) throw std::invalid_argument("determinant: matrix is not square");
    return fraction_free_determinant(a, detail::exact_integer_div);
}

/// Determinant of the square submatrix on the given rows and all columns.
inline Integer minor_determinant(const DenseMatrix<Integer>& a, const std::vector<std::size_t>& rows) {
    const std::size_t cols = a.empty() ? 0 : a.front().size();
    if (rows.size() != cols)
        throw std::invalid_argument("minor_determinant: selected " + std::to_string(rows.size()) + " rows for " +
                                    std::to_string(cols) + " columns");
    DenseMatrix<Integer> sub;
    sub.reserve(rows.size());
    for (auto r : rows) {
        if (r >= a.size()) throw std::invalid_argument("minor_determinant: row index out of range");
        sub.push_back(a[r]);
    }
    return fraction_free_determinant(std::move(sub), detail::exact_integer_div);
}

inline Integer minor_determinant(const MonomialMatrix& m, const std::vector<std::size_t>& rows) {
    return minor_determinant(m.entries(), rows);
}

/// Primitive integer vector v != 0 with a v = 0, or nullopt when a has full column rank.
inline std::optional<std::vector<Integer>> integer_kernel_vector(const DenseMatrix<Integer>& a) {
    const std::size_t cols = a.empty() ? 0 : a.front().size();
    DenseMatrix<Integer> work = a;
    EchelonResult ech = fraction_free_echelon(work, detail::exact_integer_div);
    if (ech.rank == cols) return std::nullopt;

    std::size_t free_col = 0;
    for (std::size_t i = 0; i < ech.pivot_columns.size() && ech.pivot_columns[i] == free_col; ++i) ++free_col;

    std::vector<Rational> x(cols, Rational(0));
    x[free_col] = 1;
    // rows whose pivot lies before free_col form an invertible triangular system
    std::size_t used = 0;
    while (used < ech.pivot_columns.size() && ech.pivot_columns[used] < free_col) ++used;
    for (std::size_t i = used; i-- > 0;) {
        const std::size_t pc = ech.pivot_columns[i];
        Rational s = 0;
        for (std::size_t j = pc + 1; j <= free_col; ++j)
            if (x[j] != 0) s += Rational(work[i][j]) * x[j];
        x[pc] = -s / Rational(work[i][pc]);
    }

    Integer den = 1;
    for (const auto& v : x) den = lcm(den, Integer(v.get_den()));
    std::vector<Integer> out(cols);
    Integer g = 0;
    for (std::size_t j = 0; j < cols; ++j) {
        out[j] = Integer(x[j] * Rational(den));
        g = gcd(g, out[j]);
    }
    for (auto& v : out) v /= g;
    for (const auto& row : a) {
        Integer s = 0;
        for (std::size_t j = 0; j < cols; ++j) s += row[j] * out[j];
        if (s != 0) throw std::logic_error("integer_kernel_vector: back-substitution failed");
    }
    return out;
}

struct AuxiliaryPolynomial {
    IntegerPolynomial poly{3};
    std::vector<Point> vanishes_on;
    bool coprime_to_f = false;
    bool support_in_E = false;
    int degree = 0;
    Real degree_bound = 0;  // Y / log B', the bound the construction guarantees
};

/// Kernel polynomial sum a_e x^e of the matrix, verified to vanish on every row
/// and checked for coprimality with f.
inline AuxiliaryPolynomial null_space_polynomial(const MonomialMatrix& m, const IntegerPolynomial& f) {
    auto v = integer_kernel_vector(m.entries());
    if (!v) throw std::domain_error("null_space_polynomial: no null vector (matrix has full column rank)");
    AuxiliaryPolynomial aux;
    aux.poly = IntegerPolynomial(3);
    for (std::size_t c = 0; c < m.col_count(); ++c)
        if ((*v)[c] != 0) aux.poly.add_term(m.columns()[c], (*v)[c]);
    aux.poly = detail::normalize_sign(aux.poly);
    for (const auto& x : m.points())
        if (evaluate(aux.poly, x) != 0)
            throw std::logic_error("null_space_polynomial: kernel polynomial does not vanish at " + to_string(x));
    aux.vanishes_on = m.points();
    aux.coprime_to_f = is_coprime(aux.poly, f);
    aux.support_in_E = true;
    aux.degree = aux.poly.degree();
    return aux;
}

}  // namespace detm
