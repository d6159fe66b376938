/**
 * @file applications.hpp
 * @brief Diagonal quadrics, sums of unlike powers and their auxiliary bounds.
 */
#pragma once

#include "detmethod/pipeline.hpp"
#include "detmethod/univariate.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace detm {

// ---------------------------------------------------------------- quadrics

struct QuadricInstance {
    Integer a1, a2, a3, n;
    std::int64_t B = 1;

    void validate() const {
        if (a1 == 0 || a2 == 0 || a3 == 0) throw HypothesisViolation("quadric: a1 a2 a3 must be non-zero");
        if (B < 1) throw std::invalid_argument("quadric: B must be positive");
        if (gcd(gcd(a1, a2), gcd(a3, n)) != 1) throw HypothesisViolation("quadric: gcd(a1, a2, a3, n) != 1");
        if (is_perfect_square(Integer(-a1 * a2 * a3 * n)))
            throw HypothesisViolation("quadric: -a1 a2 a3 n is a square (rational lines possible)");
    }
    Integer height() const { return std::max({abs(a1), abs(a2), abs(a3)}); }
};

inline IntegerPolynomial diagonal_quadric(const Integer& a1, const Integer& a2, const Integer& a3, const Integer& n) {
    IntegerPolynomial f(3);
    f.add_term(ExponentVector{2, 0, 0}, a1);
    f.add_term(ExponentVector{0, 2, 0}, a2);
    f.add_term(ExponentVector{0, 0, 2}, a3);
    f.add_term(ExponentVector{0, 0, 0}, -n);
    return f;
}

/// N_1(B) by solving for x1 over every (x2, x3).
inline Integer count_quadric_brute(const QuadricInstance& inst) {
    inst.validate();
    Integer count = 0;
    const Integer B2 = Integer(inst.B) * inst.B;
    for (std::int64_t x2 = -inst.B; x2 <= inst.B; ++x2)
        for (std::int64_t x3 = -inst.B; x3 <= inst.B; ++x3) {
            Integer rest = inst.n - inst.a2 * x2 * x2 - inst.a3 * x3 * x3;
            if (!divides(inst.a1, rest)) continue;
            Integer s = rest / inst.a1;
            if (s < 0 || s > B2 || !is_perfect_square(s)) continue;
            count += s == 0 ? 1 : 2;
        }
    return count;
}

/// C(n+3, 3) - C(n+1, 3), the size of E(n log B) for equal boxes and m = (2,0,0).
inline Integer q_of_n(unsigned long n) { return binomial(n + 3, 3) - binomial(n + 1, 3); }

/// K' = q^(-1/6) B^(2/3).
inline Real k_prime(const Integer& q, const Integer& B) {
    using boost::multiprecision::exp;
    return exp(-log_of(q) / 6 + 2 * log_of(B) / 3);
}

struct QuadricPipelineResult {
    Integer count;
    Integer brute_count;
    std::array<int, 3> permutation{0, 1, 2};  // original index placed at x1, x2, x3
    Integer q;
    IntegerPolynomial f{3}, g{3};
    Real K_prime = 0;
    Real log_K_prime_eps = 0;
    Integer Q_n = 0;
    bool Q_matches = false;
    BadPrimeReport bad_primes;
    CoverReport cover;
};

/// Quadric run of the auxiliary-polynomial pipeline with q = |a|, m = (2,0,0)
/// and the threshold K'_eps = q^(-1/6) B^(2/3 + eps).
inline QuadricPipelineResult count_quadric_pipeline(const QuadricInstance& inst, const Real& epsilon,
                                                    const ResidueData& residues = {}, PipelineOptions opt = {},
                                                    const EnumerateOptions& eopt = {}) {
    inst.validate();
    if (inst.B < 2) throw HypothesisViolation("quadric pipeline: B must be at least 2");
    QuadricPipelineResult res;
    std::array<Integer, 3> a{inst.a1, inst.a2, inst.a3};
    int top = 0;
    for (int i = 1; i < 3; ++i)
        if (abs(a[i]) > abs(a[top])) top = i;
    res.permutation = {top, top == 0 ? 1 : 0, top == 2 ? 1 : 2};
    const Integer& A1 = a[res.permutation[0]];
    const Integer& A2 = a[res.permutation[1]];
    const Integer& A3 = a[res.permutation[2]];
    res.q = abs(A1);
    res.f = diagonal_quadric(A1, A2, A3, inst.n);
    res.g = IntegerPolynomial(3);
    res.g.add_term(ExponentVector{0, 2, 0}, A2);
    res.g.add_term(ExponentVector{0, 0, 2}, A3);
    res.g.add_term(ExponentVector{0, 0, 0}, -inst.n);
    res.bad_primes = bad_prime_product_quadric(A1, A2, A3, inst.n);

    const BoxBounds box = BoxBounds::equal(inst.B);
    res.K_prime = k_prime(res.q, inst.B);
    res.log_K_prime_eps = -log_of(res.q) / 6 + 2 * log_of(Integer(inst.B)) / 3 + epsilon * box.log_bmax();
    opt.order = OrderSpec::lex();
    opt.log_threshold = res.log_K_prime_eps;
    opt.threshold_name = "K'_eps";
    opt.bad_primes = res.bad_primes.product;

    SideCondition side = res.q > 1 ? SideCondition::congruence(res.g, res.q) : SideCondition::none();
    PointSet pts = enumerate_points(res.f, side, box, false, eopt);
    res.count = pts.size();
    res.brute_count = count_quadric_brute(inst);
    res.cover = aux_pipeline(res.f, res.g, res.q, box, residues, epsilon, pts, opt);
    if (res.cover.Y.n) {
        res.Q_n = q_of_n(*res.cover.Y.n);
        res.Q_matches = res.Q_n == res.cover.E;
    }
    return res;
}

// ------------------------------------------------------------ unlike powers

struct UnlikePowersInstance {
    int k = 13, l = 3, m = 2;
    Integer N = 1;
    std::int64_t B = 1;

    void validate_brute() const {
        if (k < 2 || l < 2 || m < 2) throw std::invalid_argument("unlike powers: exponents must be at least 2");
        if (B < 0) throw std::invalid_argument("unlike powers: B must be non-negative");
    }
    void validate_strict() const {
        validate_brute();
        if (k % 2 == 0 || k < 13) throw HypothesisViolation("unlike powers: k must be odd and at least 13");
        if (!(k > l && l > m && m >= 2)) throw HypothesisViolation("unlike powers: need k > l > m >= 2");
        if (N == 0) throw HypothesisViolation("unlike powers: N must be non-zero");
    }
};

namespace detail {

using Wide = __int128;

inline std::vector<Wide> power_table(std::int64_t B, int e) {
    if (static_cast<double>(e) * std::log2(static_cast<double>(std::max<std::int64_t>(B, 2))) > 120)
        throw std::invalid_argument("unlike powers: B^" + std::to_string(e) + " exceeds the supported range");
    std::vector<Wide> t;
    for (std::int64_t x = -B; x <= B; ++x) {
        Wide v = 1;
        for (int i = 0; i < e; ++i) v *= x;
        t.push_back(v);
    }
    return t;
}

inline Wide to_wide(const Integer& n) {
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > 120) throw std::invalid_argument("unlike powers: N out of range");
    Integer hi = n >> 62, lo = n - (hi << 62);
    return (static_cast<Wide>(hi.get_si()) << 62) + static_cast<Wide>(lo.get_si());
}

}  // namespace detail

enum class UnlikeMode { brute, meet_in_middle, sliced_pipeline };

struct SliceSummary {
    std::int64_t u = 0;
    Integer q;
    std::size_t points = 0;
    std::optional<Real> log_K;  // per-slice K diagnostic
};

struct UnlikeCount {
    Integer count;
    UnlikeMode mode = UnlikeMode::brute;
    std::vector<SliceSummary> slices;
};

inline IntegerPolynomial unlike_polynomial(const UnlikePowersInstance& inst) {
    IntegerPolynomial f(4);
    f.add_term(ExponentVector{inst.k, 0, 0, 0}, 1);
    f.add_term(ExponentVector{0, inst.l, 0, 0}, 1);
    f.add_term(ExponentVector{0, 0, inst.m, 0}, 1);
    f.add_term(ExponentVector{0, 0, 0, inst.k}, 1);
    f.add_term(ExponentVector{0, 0, 0, 0}, -inst.N);
    return f;
}

/// h(x1, x4) = (x1^k + x4^k) / (x1 + x4) for odd k, as a polynomial in 4 variables.
inline IntegerPolynomial odd_power_cofactor(int k) {
    if (k % 2 == 0) throw std::invalid_argument("odd_power_cofactor: k must be odd");
    IntegerPolynomial h(4);
    for (int i = 0; i < k; ++i) h.add_term(ExponentVector{k - 1 - i, 0, 0, i}, i % 2 ? -1 : 1);
    return h;
}

/// g = x2^l + x3^m - N in the given number of variables (3 or 4).
inline IntegerPolynomial unlike_side(const UnlikePowersInstance& inst, std::size_t nvars) {
    IntegerPolynomial g(nvars);
    std::vector<int> e(nvars, 0);
    e[1] = inst.l;
    g.add_term(ExponentVector(e), 1);
    e[1] = 0;
    e[2] = inst.m;
    g.add_term(ExponentVector(e), 1);
    g.add_term(ExponentVector(nvars), -inst.N);
    return g;
}

struct ThreefoldSlice {
    Integer alpha, beta, gamma;
    IntegerPolynomial h{4}, g{4};
    Integer u;
    int k_prime = 0;                // deg_{x4} h
    IntegerPolynomial h_u{3};
    IntegerPolynomial surface{3};   // u h_u + beta^k' g
};

/// h_u = beta^k' h(x1, x2, x3, (u - alpha x1 - gamma)/beta) and X_u = u h_u + beta^k' g.
inline ThreefoldSlice build_slice(const Integer& alpha, const Integer& beta, const Integer& gamma,
                                  const IntegerPolynomial& h, const IntegerPolynomial& g, const Integer& u) {
    if (beta == 0) throw std::invalid_argument("build_slice: beta must be non-zero");
    if (h.nvars() != 4 || g.nvars() != 4) throw std::invalid_argument("build_slice: h and g must have 4 variables");
    if (g.depends_on(0) || g.depends_on(3)) throw std::invalid_argument("build_slice: g must depend on x2, x3 only");
    ThreefoldSlice s{alpha, beta, gamma, h, g, u};
    s.k_prime = std::max(h.degree_in(3), 0);
    IntegerPolynomial lin = IntegerPolynomial::constant(3, u - gamma) -
                            IntegerPolynomial::monomial(ExponentVector{1, 0, 0}, alpha);
    std::vector<IntegerPolynomial> lin_pow{IntegerPolynomial::constant(3, 1)};
    for (int i = 1; i <= s.k_prime; ++i) lin_pow.push_back(lin_pow.back() * lin);
    for (const auto& [e, c] : h.terms()) {
        Integer scale = c * ipow(beta, static_cast<unsigned long>(s.k_prime - e[3]));
        s.h_u += IntegerPolynomial::monomial(ExponentVector{e[0], e[1], e[2]}, scale) * lin_pow[e[3]];
    }
    IntegerPolynomial g3 = g.remap(3, {0, 1, 2, 0});
    s.surface = s.h_u * u + g3 * ipow(beta, static_cast<unsigned long>(s.k_prime));
    return s;
}

inline Integer count_unlike_brute(const UnlikePowersInstance& inst) {
    inst.validate_brute();
    auto pk = detail::power_table(inst.B, inst.k), pl = detail::power_table(inst.B, inst.l),
         pm = detail::power_table(inst.B, inst.m);
    const detail::Wide N = detail::to_wide(inst.N);
    std::int64_t count = 0;
    for (auto a : pk)
        for (auto b : pl)
            for (auto c : pm)
                for (auto d : pk)
                    if (a + b + c + d == N) ++count;
    return count;
}

inline Integer count_unlike_meet(const UnlikePowersInstance& inst) {
    inst.validate_brute();
    auto pk = detail::power_table(inst.B, inst.k), pl = detail::power_table(inst.B, inst.l),
         pm = detail::power_table(inst.B, inst.m);
    const detail::Wide N = detail::to_wide(inst.N);
    std::vector<detail::Wide> left;
    left.reserve(pk.size() * pk.size());
    for (auto a : pk)
        for (auto d : pk) left.push_back(a + d);
    std::sort(left.begin(), left.end());
    std::int64_t count = 0;
    for (auto b : pl)
        for (auto c : pm) {
            auto [lo, hi] = std::equal_range(left.begin(), left.end(), N - b - c);
            count += hi - lo;
        }
    return count;
}

/// Sums over the slices x1 + x4 = u, |u| <= 3B, each counted on its surface X_u
/// with the congruence g = 0 mod |u|.
inline UnlikeCount count_unlike_sliced(const UnlikePowersInstance& inst, const EnumerateOptions& eopt = {},
                                       const Real& epsilon = Real(0.5)) {
    inst.validate_strict();
    UnlikeCount out;
    out.mode = UnlikeMode::sliced_pipeline;
    const std::int64_t B = inst.B, L = 1;
    const IntegerPolynomial h = odd_power_cofactor(inst.k);
    const IntegerPolynomial g4 = unlike_side(inst, 4);
    const IntegerPolynomial g3 = unlike_side(inst, 3);
    const BoxBounds box = BoxBounds::equal(std::max<std::int64_t>(B, 1));
    Integer total = 0;
    for (std::int64_t u = -3 * L * B; u <= 3 * L * B; ++u) {
        SliceSummary sl;
        sl.u = u;
        sl.q = abs(Integer(u));
        if (u == 0) {
            std::size_t pairs = 0;
            for (std::int64_t x2 = -B; x2 <= B; ++x2)
                for (std::int64_t x3 = -B; x3 <= B; ++x3)
                    if (evaluate(g3, Point{0, x2, x3}) == 0) ++pairs;
            sl.points = pairs * static_cast<std::size_t>(2 * B + 1);
        } else {
            ThreefoldSlice s = build_slice(1, 1, 0, h, g4, u);
            SideCondition side = sl.q > 1 ? SideCondition::congruence(g3, sl.q) : SideCondition::none();
            PointSet ps = enumerate_points(s.surface, side, box, false, eopt);
            for (const auto& x : ps.points) {
                const std::int64_t x4 = u - x[0];
                if (x4 >= -B && x4 <= B) ++sl.points;
            }
            if (B >= 2) {
                MethodParams p = compute_params(s.surface, g3, sl.q, box, OrderSpec::lex(), epsilon);
                sl.log_K = p.log_K;
            }
        }
        total += static_cast<unsigned long>(sl.points);
        out.slices.push_back(sl);
    }
    out.count = total;
    return out;
}

inline UnlikeCount count_unlike(const UnlikePowersInstance& inst, UnlikeMode mode, const EnumerateOptions& eopt = {}) {
    switch (mode) {
        case UnlikeMode::brute: return {count_unlike_brute(inst), mode, {}};
        case UnlikeMode::meet_in_middle: return {count_unlike_meet(inst), mode, {}};
        case UnlikeMode::sliced_pipeline: return count_unlike_sliced(inst, eopt);
    }
    throw std::invalid_argument("count_unlike: unknown mode");
}

// ------------------------------------------------------- gcd power sums

struct GcdPowerSum {
    Real sum;          // sum_{u <= X} (u / gcd(u, n))^alpha, grouped by d = gcd(u, n)
    Real sum_direct;   // the same sum accumulated over u = 1..X
    Real majorant;     // sum_{d | n} sum_{u <= X/d} u^alpha
    Real divisor_term; // sum_{d | n} (X/d)^(alpha + 1)
};

inline std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> d, hi;
    for (std::int64_t i = 1; i * i <= n; ++i)
        if (n % i == 0) {
            d.push_back(i);
            if (i != n / i) hi.push_back(n / i);
        }
    d.insert(d.end(), hi.rbegin(), hi.rend());
    return d;
}

inline GcdPowerSum gcd_power_sum(const Real& alpha, std::int64_t X, std::int64_t n) {
    using boost::multiprecision::pow;
    if (!(alpha > -1 && alpha < 0)) throw std::invalid_argument("gcd_power_sum: alpha must lie in (-1, 0)");
    if (X < 1 || n < 1) throw std::invalid_argument("gcd_power_sum: X and n must be positive");
    std::vector<Real> p(static_cast<std::size_t>(X) + 1);
    for (std::int64_t u = 1; u <= X; ++u) p[u] = pow(Real(u), alpha);
    GcdPowerSum r{0, 0, 0, 0};
    for (std::int64_t d : divisors(n)) {
        const std::int64_t nd = n / d;
        for (std::int64_t v = 1; v <= X / d; ++v) {
            r.majorant += p[v];
            if (std::gcd(v, nd) == 1) r.sum += p[v];
        }
        r.divisor_term += pow(Real(X) / d, alpha + 1);
    }
    for (std::int64_t u = 1; u <= X; ++u) r.sum_direct += p[u / std::gcd(u, n)];
    return r;
}

// -------------------------------------------------- Wronskian degree bound

struct WronskianBoundReport {
    bool applicable = false;
    std::string reason;
    RationalPolynomial W;
    long lhs = 0;  // max d_i l_i
    long rhs = 0;  // (r-1)(d_1 + ... + d_r) - r(r-1)/2
    bool pass = false;
};

inline WronskianBoundReport wronskian_bound_check(const std::vector<RationalPolynomial>& gammas,
                                                  const std::vector<unsigned>& exps) {
    if (gammas.empty() || gammas.size() != exps.size())
        throw std::invalid_argument("wronskian_bound_check: need matching non-empty families");
    WronskianBoundReport rep;
    const long r = static_cast<long>(gammas.size());
    std::vector<RationalPolynomial> powers;
    RationalPolynomial sum;
    long dsum = 0;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        if (gammas[i].is_zero() || exps[i] == 0) throw std::invalid_argument("wronskian_bound_check: zero input");
        powers.push_back(gammas[i].pow(exps[i]));
        sum = sum + powers.back();
        const long d = gammas[i].degree();
        dsum += d;
        rep.lhs = std::max(rep.lhs, d * static_cast<long>(exps[i]));
    }
    rep.rhs = (r - 1) * dsum - r * (r - 1) / 2;
    if (!sum.is_constant() || sum.is_zero()) {
        rep.reason = "sum of powers is not a non-zero constant";
        return rep;
    }
    rep.W = wronskian(powers);
    if (rep.W.is_zero()) {
        rep.reason = "powers are linearly dependent";
        return rep;
    }
    rep.applicable = true;
    rep.pass = rep.lhs <= rep.rhs;
    return rep;
}

// ---------------------------------------------------- excluded subvarieties

struct PolynomialSystem {
    std::string name;
    std::vector<IntegerPolynomial> equations;  // subvariety equation, then the hypersurface
    Integer points;                            // integer points in the box
};

struct PartitionReport {
    std::vector<PolynomialSystem> systems;
    Integer union_count;   // points on at least one system
    Integer none_count;    // points on none of them
    Integer total;         // N_2(B)
    bool consistent = false;
};

namespace detail {

/// Per-point membership mask of the four systems, from a = x1^k + x4^k, b2 = x2^l, b3 = x3^m.
inline unsigned subvariety_mask(Wide a, Wide b2, Wide b3) {
    unsigned mask = 0;
    if (a == 0) mask |= 1u;
    if (b2 + b3 == 0) mask |= 2u;
    if (a + b2 == 0) mask |= 4u;
    if (a + b3 == 0) mask |= 8u;
    return mask;
}

}  // namespace detail

inline std::vector<PolynomialSystem> excluded_subvariety_systems(const UnlikePowersInstance& inst) {
    const IntegerPolynomial F = unlike_polynomial(inst);
    auto mono = [](std::initializer_list<int> e) { return IntegerPolynomial::monomial(ExponentVector(std::vector<int>(e))); };
    const IntegerPolynomial X1 = mono({inst.k, 0, 0, 0}), X4 = mono({0, 0, 0, inst.k});
    const IntegerPolynomial X2 = mono({0, inst.l, 0, 0}), X3 = mono({0, 0, inst.m, 0});
    return {
        {"x1^k + x4^k", {X1 + X4, F}, 0},
        {"x2^l + x3^m", {X2 + X3, F}, 0},
        {"x1^k + x2^l + x4^k", {X1 + X2 + X4, F}, 0},
        {"x1^k + x3^m + x4^k", {X1 + X3 + X4, F}, 0},
    };
}

/// The four systems with exact box counts, and the partition of N_2(B) into
/// points on their union (by inclusion-exclusion) and points on none of them.
inline PartitionReport excluded_subvarieties(const UnlikePowersInstance& inst) {
    inst.validate_strict();
    PartitionReport rep;
    rep.systems = excluded_subvariety_systems(inst);
    auto pk = detail::power_table(inst.B, inst.k), pl = detail::power_table(inst.B, inst.l),
         pm = detail::power_table(inst.B, inst.m);
    const detail::Wide N = detail::to_wide(inst.N);

    std::map<detail::Wide, std::int64_t> hist;  // a -> #(x1, x4)
    for (auto a : pk)
        for (auto d : pk) ++hist[a + d];

    // intersection counts for every non-empty subset of the four conditions
    std::array<Integer, 16> inter{};
    for (const auto& [a, mult] : hist)
        for (auto b2 : pl)
            for (auto b3 : pm) {
                if (a + b2 + b3 != N) continue;
                const unsigned mask = detail::subvariety_mask(a, b2, b3);
                for (unsigned s = 1; s < 16; ++s)
                    if ((mask & s) == s) inter[s] += mult;
            }
    for (unsigned i = 0; i < 4; ++i) rep.systems[i].points = inter[1u << i];
    rep.union_count = 0;
    for (unsigned s = 1; s < 16; ++s) {
        if (std::popcount(s) % 2) rep.union_count += inter[s];
        else rep.union_count -= inter[s];
    }
    std::int64_t none = 0;
    for (auto a1 : pk)
        for (auto b2 : pl)
            for (auto b3 : pm)
                for (auto a4 : pk)
                    if (a1 + b2 + b3 + a4 == N && detail::subvariety_mask(a1 + a4, b2, b3) == 0) ++none;
    rep.none_count = none;
    rep.total = count_unlike_brute(inst);
    rep.consistent = rep.union_count + rep.none_count == rep.total;
    return rep;
}

// ---------------------------------------------------- predicted exponents

struct PredictedExponents {
    std::vector<Real> B_exponents;
    std::vector<Real> a_exponents;  // powers of |a| multiplying each term (quadrics)
    std::optional<Real> comparison; // 4/3 + 1/sqrt(k) for unlike powers
};

inline PredictedExponents predicted_exponents(const QuadricInstance&) {
    return {{Real(4) / 3, Real(7) / 6, Real(1) / 2}, {Real(-1) / 3, Real(-1) / 6, Real(0)}, std::nullopt};
}

inline PredictedExponents predicted_exponents(const UnlikePowersInstance& inst) {
    using boost::multiprecision::sqrt;
    const Real c = (1 - Real(1) / (2 * inst.l)) / sqrt(Real(inst.k - 1));
    return {{Real(4) / 3 + c, 1 + 2 * c}, {}, Real(4) / 3 + 1 / sqrt(Real(inst.k))};
}

}  // namespace detm
