/**
 * @file polynomial.hpp
 * @brief Sparse multivariate polynomials over Z.
 *
 * Terms are kept in a map keyed by exponent vector; zero coefficients are
 * never stored, so the zero polynomial is the empty map. Variables are
 * indexed from 0 (x_1 is variable 0).
 */
#pragma once

#include "detmethod/exponent.hpp"
#include "detmethod/numeric.hpp"

#include <algorithm>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace detm {

class IntegerPolynomial {
public:
    using TermMap = std::map<ExponentVector, Integer>;

    explicit IntegerPolynomial(std::size_t nvars = 3) : nvars_(nvars) {}

    IntegerPolynomial(std::size_t nvars, std::initializer_list<std::pair<ExponentVector, long>> terms) : nvars_(nvars) {
        for (const auto& [e, c] : terms) add_term(e, Integer(c));
    }

    static IntegerPolynomial constant(std::size_t nvars, const Integer& c) {
        IntegerPolynomial p(nvars);
        p.add_term(ExponentVector(nvars), c);
        return p;
    }

    static IntegerPolynomial variable(std::size_t nvars, std::size_t i) {
        IntegerPolynomial p(nvars);
        p.add_term(ExponentVector(nvars).with(i, 1), Integer(1));
        return p;
    }

    static IntegerPolynomial monomial(const ExponentVector& e, const Integer& c = 1) {
        IntegerPolynomial p(e.size());
        p.add_term(e, c);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
    }

    Integer constant_term() const { return coefficient(ExponentVector(nvars_)); }

    Integer coefficient(const ExponentVector& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    /// Total degree; -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e.total_degree());
        return d;
    }

    /// Degree in variable i; -1 for the zero polynomial.
    int degree_in(std::size_t i) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
        return d;
    }

    bool depends_on(std::size_t i) const { return degree_in(i) > 0; }

    void add_term(const ExponentVector& e, const Integer& c) {
        if (e.size() != nvars_) throw std::invalid_argument("IntegerPolynomial: exponent arity mismatch");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    IntegerPolynomial& operator+=(const IntegerPolynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    IntegerPolynomial& operator-=(const IntegerPolynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    IntegerPolynomial& operator*=(const Integer& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend IntegerPolynomial operator+(IntegerPolynomial a, const IntegerPolynomial& b) { return a += b; }
    friend IntegerPolynomial operator-(IntegerPolynomial a, const IntegerPolynomial& b) { return a -= b; }
    friend IntegerPolynomial operator-(IntegerPolynomial a) { return a *= Integer(-1); }
    friend IntegerPolynomial operator*(IntegerPolynomial a, const Integer& s) { return a *= s; }
    friend IntegerPolynomial operator*(const Integer& s, IntegerPolynomial a) { return a *= s; }

    friend IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b) {
        a.check(b);
        IntegerPolynomial r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    IntegerPolynomial& operator*=(const IntegerPolynomial& o) { return *this = *this * o; }

    IntegerPolynomial pow(unsigned k) const {
        IntegerPolynomial result = constant(nvars_, 1), base = *this;
        while (k) {
            if (k & 1u) result *= base;
            k >>= 1;
            if (k) base *= base;
        }
        return result;
    }

    bool operator==(const IntegerPolynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    template <class Coord>
    Integer evaluate(std::span<const Coord> x) const {
        if (x.size() != nvars_) throw std::invalid_argument("evaluate: point arity does not match nvars");
        Integer total = 0, term;
        for (const auto& [e, c] : terms_) {
            term = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i] > 0) term *= ipow(Integer(x[i]), static_cast<unsigned long>(e[i]));
            total += term;
        }
        return total;
    }

    Integer evaluate(const std::vector<std::int64_t>& x) const { return evaluate(std::span<const std::int64_t>(x)); }
    Integer evaluate(const std::vector<Integer>& x) const { return evaluate(std::span<const Integer>(x)); }

    /// Content: gcd of the coefficients (0 for the zero polynomial).
    Integer content() const {
        Integer g = 0;
        for (const auto& [e, c] : terms_) g = detm::gcd(g, c);
        return g;
    }

    /// Leading term for the lexicographic order.
    const std::pair<const ExponentVector, Integer>& lex_leading() const {
        if (terms_.empty()) throw std::domain_error("lex_leading of the zero polynomial");
        return *terms_.rbegin();
    }

    /// Reinterpret in a ring with a different number of variables; variable i
    /// is sent to variable map[i].
    IntegerPolynomial remap(std::size_t new_nvars, const std::vector<std::size_t>& map) const {
        if (map.size() != nvars_) throw std::invalid_argument("remap: map arity mismatch");
        IntegerPolynomial r(new_nvars);
        for (const auto& [e, c] : terms_) {
            std::vector<int> ne(new_nvars, 0);
            for (std::size_t i = 0; i < nvars_; ++i) ne.at(map[i]) += e[i];
            r.add_term(ExponentVector(std::move(ne)), c);
        }
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            Integer a = abs(c);
            if (first) {
                if (c < 0) s += "-";
            } else {
                s += c < 0 ? " - " : " + ";
            }
            first = false;
            bool unit = (a == 1) && !e.is_zero();
            if (!unit) s += a.get_str();
            bool need_star = !unit;
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                if (need_star) s += "*";
                s += "x" + std::to_string(i + 1);
                if (e[i] > 1) s += "^" + std::to_string(e[i]);
                need_star = true;
            }
        }
        return s;
    }

private:
    void check(const IntegerPolynomial& o) const {
        if (o.nvars_ != nvars_) throw std::invalid_argument("IntegerPolynomial: ring arity mismatch");
    }

    std::size_t nvars_;
    TermMap terms_;
};

inline IntegerPolynomial partial_derivative(const IntegerPolynomial& p, std::size_t i) {
    if (i >= p.nvars()) throw std::invalid_argument("partial_derivative: variable index out of range");
    IntegerPolynomial r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        if (e[i] == 0) continue;
        r.add_term(e.with(i, e[i] - 1), c * e[i]);
    }
    return r;
}

/// Sum of the terms of maximal total degree.
inline IntegerPolynomial top_degree_part(const IntegerPolynomial& g) {
    if (g.is_zero()) throw std::domain_error("top_degree_part: zero polynomial");
    const int d = g.degree();
    IntegerPolynomial r(g.nvars());
    for (const auto& [e, c] : g.terms())
        if (e.total_degree() == d) r.add_term(e, c);
    return r;
}

/// The maximum exponent of f for the given order.
inline ExponentVector max_exponent(const IntegerPolynomial& f, const OrderSpec& ord) {
    if (f.is_zero()) throw std::domain_error("max_exponent: zero polynomial");
    const ExponentVector* best = nullptr;
    for (const auto& [e, c] : f.terms())
        if (!best || ord.less(*best, e)) best = &e;
    return *best;
}

/// x_1^{e_1}...x_n^{e_n} at an integer point.
template <class Coord>
Integer monomial_value(const ExponentVector& e, std::span<const Coord> x) {
    Integer v = 1;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0) v *= ipow(Integer(x[i]), static_cast<unsigned long>(e[i]));
    return v;
}

}  // namespace detm
