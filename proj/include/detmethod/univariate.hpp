/**
 * @file univariate.hpp
 * @brief Dense polynomials in Q[t] and Wronskian determinants.
 */
#pragma once

#include "detmethod/bareiss.hpp"
#include "detmethod/numeric.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace detm {

class RationalPolynomial {
public:
    RationalPolynomial() = default;
    RationalPolynomial(int c) : RationalPolynomial(Rational(c)) {}
    RationalPolynomial(const Rational& c) {
        if (c != 0) c_.push_back(c);
    }
    explicit RationalPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static RationalPolynomial from_integers(std::initializer_list<long> low_to_high) {
        std::vector<Rational> v;
        for (long x : low_to_high) v.emplace_back(x);
        return RationalPolynomial(std::move(v));
    }
    static RationalPolynomial t() { return from_integers({0, 1}); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
    const std::vector<Rational>& coefficients() const { return c_; }

    RationalPolynomial derivative() const {
        std::vector<Rational> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
        return RationalPolynomial(std::move(d));
    }

    Rational evaluate(const Rational& x) const {
        Rational v = 0;
        for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
        return v;
    }

    friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coefficient(i) + b.coefficient(i);
        return RationalPolynomial(std::move(r));
    }
    friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coefficient(i) - b.coefficient(i);
        return RationalPolynomial(std::move(r));
    }
    friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return RationalPolynomial(std::move(r));
    }
    bool operator==(const RationalPolynomial& o) const { return c_ == o.c_; }

    RationalPolynomial pow(unsigned k) const {
        RationalPolynomial r(1), b = *this;
        while (k) {
            if (k & 1u) r = r * b;
            k >>= 1;
            if (k) b = b * b;
        }
        return r;
    }

    /// Quotient and remainder of Euclidean division.
    static std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                                    const RationalPolynomial& b) {
        if (b.is_zero()) throw std::domain_error("RationalPolynomial: division by zero");
        std::vector<Rational> rem = a.c_;
        const int db = b.degree();
        std::vector<Rational> quot(a.degree() >= db ? a.degree() - db + 1 : 0);
        for (int i = a.degree(); i >= db; --i) {
            Rational f = rem[i] / b.leading();
            if (f == 0) continue;
            quot[i - db] = f;
            for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c_[j];
        }
        return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c_[i].get_str() + ")";
            if (i > 0) s += "*t" + (i > 1 ? "^" + std::to_string(i) : std::string());
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// True iff d divides n in Q[t] (the zero polynomial divides only itself).
inline bool polynomial_divides(const RationalPolynomial& d, const RationalPolynomial& n) {
    if (d.is_zero()) return n.is_zero();
    return RationalPolynomial::divmod(n, d).second.is_zero();
}

/// Determinant of the r x r matrix whose row i holds the i-th derivatives.
inline RationalPolynomial wronskian(std::span<const RationalPolynomial> polys) {
    const std::size_t r = polys.size();
    if (r == 0) throw std::invalid_argument("wronskian: empty family");
    DenseMatrix<RationalPolynomial> m(r);
    m[0].assign(polys.begin(), polys.end());
    for (std::size_t i = 1; i < r; ++i) {
        m[i].reserve(r);
        for (const auto& p : m[i - 1]) m[i].push_back(p.derivative());
    }
    auto exact = [](const RationalPolynomial& a, const RationalPolynomial& b) {
        auto [q, rem] = RationalPolynomial::divmod(a, b);
        if (!rem.is_zero()) throw std::logic_error("wronskian: inexact Bareiss division");
        return q;
    };
    return fraction_free_determinant(std::move(m), exact);
}

inline RationalPolynomial wronskian(const std::vector<RationalPolynomial>& polys) {
    return wronskian(std::span<const RationalPolynomial>(polys));
}

}  // namespace detm
