/**
 * @file gcd.hpp
 * @brief Exact division and recursive subresultant GCD in Z[x_1..x_n].
 *
 * The GCD views a polynomial as univariate in a main variable with
 * coefficients in Z[other variables], splits off the content and runs the
 * subresultant pseudo-remainder sequence on the primitive parts. Contents are
 * handled by recursion on the remaining variables.
 */
#pragma once

#include "detmethod/polynomial.hpp"

#include <optional>
#include <vector>

namespace detm {

/// a / b when b divides a in Z[x]; nullopt otherwise.
inline std::optional<IntegerPolynomial> divide_exact(const IntegerPolynomial& a, const IntegerPolynomial& b) {
    if (b.is_zero()) throw std::domain_error("divide_exact: division by zero polynomial");
    IntegerPolynomial q(a.nvars()), r = a;
    const auto& [lb_e, lb_c] = b.lex_leading();
    while (!r.is_zero()) {
        const auto [lr_e, lr_c] = r.lex_leading();
        auto shift = checked_sub(lr_e, lb_e);
        if (!shift || !divides(lb_c, lr_c)) return std::nullopt;
        Integer c = lr_c / lb_c;
        auto t = IntegerPolynomial::monomial(*shift, c);
        q += t;
        r -= t * b;
    }
    return q;
}

namespace detail {

using Univariate = std::vector<IntegerPolynomial>;  // coefficient of v^i at index i

inline Univariate to_univariate(const IntegerPolynomial& p, std::size_t v) {
    Univariate u(static_cast<std::size_t>(std::max(p.degree_in(v), 0)) + 1, IntegerPolynomial(p.nvars()));
    for (const auto& [e, c] : p.terms()) u[e[v]].add_term(e.with(v, 0), c);
    return u;
}

inline IntegerPolynomial from_univariate(const Univariate& u, std::size_t v, std::size_t nvars) {
    IntegerPolynomial p(nvars);
    for (std::size_t i = 0; i < u.size(); ++i)
        for (const auto& [e, c] : u[i].terms()) p.add_term(e.with(v, static_cast<int>(i)), c);
    return p;
}

inline void trim(Univariate& u) {
    while (u.size() > 1 && u.back().is_zero()) u.pop_back();
}

inline int udeg(const Univariate& u) {
    for (std::size_t i = u.size(); i-- > 0;)
        if (!u[i].is_zero()) return static_cast<int>(i);
    return -1;
}

inline bool uzero(const Univariate& u) { return udeg(u) < 0; }

/// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.
inline Univariate prem(Univariate a, const Univariate& b) {
    const int db = udeg(b);
    int da = udeg(a);
    const IntegerPolynomial& lb = b[db];
    int e = da - db + 1;
    while (da >= db && da >= 0) {
        IntegerPolynomial lr = a[da];
        for (auto& c : a) c *= lb;
        for (int i = 0; i <= db; ++i) a[da - db + i] -= lr * b[i];
        --e;
        da = udeg(a);
    }
    if (e > 0) {
        IntegerPolynomial f = lb.pow(static_cast<unsigned>(e));
        for (auto& c : a) c *= f;
    }
    trim(a);
    return a;
}

inline IntegerPolynomial exact_or_throw(const IntegerPolynomial& a, const IntegerPolynomial& b) {
    auto q = divide_exact(a, b);
    if (!q) throw std::logic_error("subresultant sequence: inexact division");
    return *q;
}

}  // namespace detail

IntegerPolynomial gcd(const IntegerPolynomial& a, const IntegerPolynomial& b);

/// gcd of the coefficients of p viewed as a polynomial in variable v.
inline IntegerPolynomial content_in(const IntegerPolynomial& p, std::size_t v) {
    IntegerPolynomial g(p.nvars());
    for (const auto& c : detail::to_univariate(p, v)) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : gcd(g, c);
        if (g.is_constant() && abs(g.constant_term()) == 1) break;
    }
    return g;
}

namespace detail {

/// Makes the lexicographic leading coefficient positive.
inline IntegerPolynomial normalize_sign(IntegerPolynomial p) {
    if (!p.is_zero() && p.lex_leading().second < 0) p *= Integer(-1);
    return p;
}

/// Last non-zero element of the subresultant PRS of two polynomials that are
/// primitive in v and both of positive degree in v.
inline Univariate subresultant_gcd(Univariate a, Univariate b, std::size_t nvars) {
    if (udeg(a) < udeg(b)) std::swap(a, b);
    IntegerPolynomial g = IntegerPolynomial::constant(nvars, 1);
    IntegerPolynomial h = IntegerPolynomial::constant(nvars, 1);
    for (;;) {
        const int delta = udeg(a) - udeg(b);
        Univariate r = prem(a, b);
        if (uzero(r)) return b;
        if (udeg(r) == 0) return Univariate{IntegerPolynomial::constant(nvars, 1)};
        IntegerPolynomial divisor = g * h.pow(static_cast<unsigned>(delta));
        for (auto& c : r) c = exact_or_throw(c, divisor);
        a = std::move(b);
        b = std::move(r);
        g = a[udeg(a)];
        if (delta > 0) h = exact_or_throw(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
}

}  // namespace detail

/// Greatest common divisor in Z[x], normalised to a positive lexicographic
/// leading coefficient. gcd(0, 0) = 0.
inline IntegerPolynomial gcd(const IntegerPolynomial& a, const IntegerPolynomial& b) {
    if (a.nvars() != b.nvars()) throw std::invalid_argument("gcd: ring arity mismatch");
    const std::size_t n = a.nvars();
    if (a.is_zero()) return detail::normalize_sign(b);
    if (b.is_zero()) return detail::normalize_sign(a);
    if (a.is_constant() || b.is_constant()) return IntegerPolynomial::constant(n, detm::gcd(a.content(), b.content()));

    // Main variable: present in both with the smallest degree, else any present one.
    std::optional<std::size_t> main;
    int best = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (a.depends_on(v) && b.depends_on(v)) {
            int d = std::max(a.degree_in(v), b.degree_in(v));
            if (!main || d < best) {
                main = v;
                best = d;
            }
        }
    }
    if (!main) {
        for (std::size_t v = 0; v < n; ++v) {
            if (a.depends_on(v)) return gcd(content_in(a, v), b);
            if (b.depends_on(v)) return gcd(a, content_in(b, v));
        }
    }
    const std::size_t v = *main;
    IntegerPolynomial ca = content_in(a, v), cb = content_in(b, v);
    IntegerPolynomial pa = detail::exact_or_throw(a, ca), pb = detail::exact_or_throw(b, cb);
    IntegerPolynomial c = gcd(ca, cb);
    auto last = detail::subresultant_gcd(detail::to_univariate(pa, v), detail::to_univariate(pb, v), n);
    IntegerPolynomial gv = detail::from_univariate(last, v, n);
    if (!gv.is_constant()) gv = detail::exact_or_throw(gv, content_in(gv, v));
    else gv = IntegerPolynomial::constant(n, 1);
    return detail::normalize_sign(c * gv);
}

/// True iff gcd(f, h) over Q is a non-zero constant.
inline bool is_coprime(const IntegerPolynomial& f, const IntegerPolynomial& h) {
    if (f.is_zero() || h.is_zero()) throw std::invalid_argument("is_coprime: zero polynomial");
    return gcd(f, h).is_constant();
}

}  // namespace detm
