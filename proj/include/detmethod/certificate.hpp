/**
 * @file certificate.hpp
 * @brief Congruence column reduction and checkable divisibility certificates.
 *
 * For a prime power q and an exponent t = (0, t2, t3) whose coefficient c_t in
 * g is a unit mod q, the column of e in E^1(Y) is replaced by the values of
 * x^(e - mu t) g_q(x)^mu with g_q = z g - q s x^t, and q^mu is factored out.
 * The replacement is a column operation M -> M T with T supported on E^1(Y);
 * the certificate records det T and verifies Delta * det T = q^lambda * Delta'
 * on every sampled minor.
 */
#pragma once

#include "detmethod/errors.hpp"
#include "detmethod/matrix.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace detm {

struct MinorCheck {
    std::vector<std::size_t> rows;
    Integer determinant;
    Integer reduced_determinant;
    ExtNat valuation;            // v_p(Delta)
    bool identity_holds = false; // Delta * det T == q^lambda * Delta'
    bool divisible = false;      // Delta == 0 or v_p(Delta) >= j * lambda
};

struct DivisibilityCertificate {
    Integer prime;
    unsigned prime_exponent = 1;  // q = prime^prime_exponent
    Integer q;
    std::uint64_t lambda = 0;
    Integer modulus;              // q^lambda
    ExponentVector t{0, 0, 0};
    Integer c_t, z, s;
    IntegerPolynomial g_q{3};
    std::vector<std::uint64_t> mu;  // per column of the matrix, 0 outside E^1
    Integer transform_det;
    DenseMatrix<Integer> reduced;
    std::vector<MinorCheck> checked_minors;

    /// z c_t - q s = 1, det T is a unit mod q, and every checked minor passes.
    bool valid() const {
        if (z * c_t - q * s != 1) return false;
        if (gcd(transform_det, q) != 1) return false;
        return std::all_of(checked_minors.begin(), checked_minors.end(),
                           [](const MinorCheck& c) { return c.identity_holds && c.divisible; });
    }
};

/// Row subsets to certify: the leading E rows followed by distinct random subsets.
inline std::vector<std::vector<std::size_t>> sample_minors(std::size_t J, std::size_t E, std::size_t random_count,
                                                           std::uint64_t seed) {
    std::vector<std::vector<std::size_t>> out;
    if (J < E || E == 0) return out;
    std::vector<std::size_t> all(J);
    std::iota(all.begin(), all.end(), std::size_t{0});
    out.emplace_back(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(E));
    std::set<std::vector<std::size_t>> seen(out.begin(), out.end());
    std::mt19937_64 rng(seed);
    const Integer total = binomial(J, E);
    const std::size_t want = std::min<std::size_t>(random_count + 1, fits_int64(total) ? to_int64(total) : SIZE_MAX);
    for (std::size_t attempts = 0; out.size() < want && attempts < 64 * (random_count + 1); ++attempts) {
        std::vector<std::size_t> pick;
        std::sample(all.begin(), all.end(), std::back_inserter(pick), static_cast<std::ptrdiff_t>(E), rng);
        if (seen.insert(pick).second) out.push_back(std::move(pick));
    }
    return out;
}

struct ReductionOptions {
    std::size_t random_minors = 32;
    std::uint64_t seed = 1;
    bool check_minors = true;
};

/// Congruence reduction of M for a prime power q.
inline DivisibilityCertificate congruence_reduce(const MonomialMatrix& M, const IntegerPolynomial& g, const Integer& q,
                                                 const ExponentVector& t, const ExponentSet& E,
                                                 const Integer& S_height, const ReductionOptions& opt = {}) {
    require_side_polynomial(g);
    auto pp = as_prime_power(q);
    if (!pp) throw std::invalid_argument("congruence_reduce: q = " + to_string(q) + " is not a prime power");
    if (t.size() != 3 || t[0] != 0) throw std::invalid_argument("congruence_reduce: t must have t_1 = 0");
    if (M.columns() != E.members) throw std::invalid_argument("congruence_reduce: matrix columns differ from E(Y)");

    DivisibilityCertificate cert;
    cert.prime = pp->prime;
    cert.prime_exponent = pp->exponent;
    cert.q = q;
    cert.t = t;
    cert.c_t = g.coefficient(t);
    if (cert.c_t == 0) throw HypothesisViolation("congruence_reduce: x^t does not occur in g for t = " + t.to_string());
    auto inv = inverse_mod(cert.c_t, q);
    if (!inv) throw HypothesisViolation("congruence_reduce: gcd(c_t, q) > 1 for c_t = " + to_string(cert.c_t));
    cert.z = *inv;
    cert.s = (cert.z * cert.c_t - 1) / q;
    cert.g_q = g * cert.z - IntegerPolynomial::monomial(t, q * cert.s);

    for (const auto& x : M.points())
        if (!divides(q, evaluate(g, x)))
            throw std::invalid_argument("congruence_reduce: point " + to_string(x) + " violates g = 0 mod " +
                                        to_string(q));

    const std::size_t ncols = M.col_count(), nrows = M.row_count();
    std::map<ExponentVector, std::size_t> col_index;
    for (std::size_t c = 0; c < ncols; ++c) col_index.emplace(M.columns()[c], c);

    // Column polynomials P_e and the transform T (column c holds the coefficients of P_e).
    cert.mu.assign(ncols, 0);
    std::vector<IntegerPolynomial> gq_pow{IntegerPolynomial::constant(3, 1)};
    DenseMatrix<Integer> T(ncols, std::vector<Integer>(ncols, Integer(0)));
    std::vector<IntegerPolynomial> col_poly(ncols, IntegerPolynomial(3));
    for (std::size_t c = 0; c < ncols; ++c) {
        const ExponentVector& e = M.columns()[c];
        std::uint64_t mu = 0;
        if (E.contains_restricted(e)) {
            ExtNat m = mu_single(e, t, E, S_height);
            if (m.is_infinite()) throw std::logic_error("congruence_reduce: unbounded mu");
            mu = m.value();
        }
        cert.mu[c] = mu;
        cert.lambda += mu;
        while (gq_pow.size() <= mu) gq_pow.push_back(gq_pow.back() * cert.g_q);
        auto base = checked_sub(e, t, static_cast<int>(mu));
        if (!base) throw std::logic_error("congruence_reduce: e - mu t has a negative entry");
        IntegerPolynomial P = IntegerPolynomial::monomial(*base, Integer(1)) * gq_pow[mu];
        if (P.coefficient(e) != 1)
            throw std::logic_error("congruence_reduce: column polynomial for " + e.to_string() +
                                   " does not contain x^e with coefficient 1");
        for (const auto& [k, a] : P.terms()) {
            auto it = col_index.find(k);
            if (it == col_index.end() || !E.contains_restricted(k))
                throw std::logic_error("congruence_reduce: monomial " + k.to_string() + " escapes E^1(Y)");
            T[it->second][c] = a;
        }
        col_poly[c] = std::move(P);
    }
    cert.transform_det = determinant(T);
    cert.modulus = ipow(q, cert.lambda);

    cert.reduced.assign(nrows, std::vector<Integer>(ncols));
    std::vector<Integer> q_pow(1, Integer(1));
    for (std::size_t c = 0; c < ncols; ++c) {
        while (q_pow.size() <= cert.mu[c]) q_pow.push_back(q_pow.back() * q);
        const Integer& d = q_pow[cert.mu[c]];
        for (std::size_t j = 0; j < nrows; ++j) {
            Integer v = evaluate(col_poly[c], M.points()[j]);
            if (!divides(d, v))
                throw std::logic_error("congruence_reduce: column " + M.columns()[c].to_string() +
                                       " is not divisible by q^mu at " + to_string(M.points()[j]));
            cert.reduced[j][c] = detail::exact_integer_div(v, d);
        }
    }

    if (opt.check_minors) {
        const Integer needed = Integer(cert.lambda) * cert.prime_exponent;
        for (auto& rows : sample_minors(nrows, ncols, opt.random_minors, opt.seed)) {
            MinorCheck mc;
            mc.determinant = minor_determinant(M.entries(), rows);
            mc.reduced_determinant = minor_determinant(cert.reduced, rows);
            mc.valuation = p_adic_valuation(mc.determinant, cert.prime);
            mc.identity_holds = mc.determinant * cert.transform_det == cert.modulus * mc.reduced_determinant;
            mc.divisible = mc.determinant == 0 || Integer(mc.valuation.value()) >= needed;
            mc.rows = std::move(rows);
            cert.checked_minors.push_back(std::move(mc));
        }
    }
    return cert;
}

/// Exponent t for the prime power p^j: (0,0,0) when p does not divide g(0,0),
/// else (0,l,0) or (0,0,l) with l = deg g, whichever has coefficient prime to p.
inline ExponentVector select_t(const IntegerPolynomial& g, const Integer& p) {
    if (!divides(p, g.constant_term())) return ExponentVector{0, 0, 0};
    const int l = g.degree();
    for (const ExponentVector& t : {ExponentVector{0, l, 0}, ExponentVector{0, 0, l}}) {
        const Integer c = g.coefficient(t);
        if (c != 0 && !divides(p, c)) return t;
    }
    throw HypothesisViolation("no admissible t for p = " + to_string(p) +
                              ": p divides g(0,0), g_0(1,0) and g_0(0,1)");
}

/// Certificates for each prime power p^j exactly dividing q.
inline std::vector<DivisibilityCertificate> certify(const MonomialMatrix& M, const IntegerPolynomial& g,
                                                    const Integer& q, const ExponentSet& E, const Integer& S_height,
                                                    const ReductionOptions& opt = {}) {
    if (q < 1) throw std::invalid_argument("certify: q must be positive");
    std::vector<DivisibilityCertificate> out;
    for (const auto& pp : factor(q)) {
        ExponentVector t = select_t(g, pp.prime);
        out.push_back(congruence_reduce(M, g, pp.value(), t, E, S_height, opt));
    }
    return out;
}

}  // namespace detm
