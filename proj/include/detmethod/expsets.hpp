/**
 * @file expsets.hpp
 * @brief Exponent sets E(Y), E^1(Y), method parameters and lambda sums.
 *
 * A log-height cutoff Y is carried as the integer H = floor(e^Y), so that
 * membership log B^e <= Y becomes the exact test B^e <= H. For Y = n log B
 * the cutoff is exactly H = B^n. The floors in the lambda sums are computed
 * by the same integer comparisons.
 */
#pragma once

#include "detmethod/errors.hpp"
#include "detmethod/exponent.hpp"
#include "detmethod/polynomial.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace detm {

/// Coordinate height bounds |x_i| <= B_i. The method itself needs B_i >= 2
/// (see require_method_range); enumeration accepts any B_i >= 1.
class BoxBounds {
public:
    BoxBounds(std::int64_t b1, std::int64_t b2, std::int64_t b3) : b_{b1, b2, b3} {
        for (auto b : b_)
            if (b < 1) throw std::invalid_argument("BoxBounds: bounds must be positive");
    }
    static BoxBounds equal(std::int64_t b) { return BoxBounds(b, b, b); }

    std::int64_t operator[](std::size_t i) const { return b_.at(i); }
    const std::array<std::int64_t, 3>& bounds() const { return b_; }
    std::int64_t bmin() const { return *std::min_element(b_.begin(), b_.end()); }
    std::int64_t bmax() const { return *std::max_element(b_.begin(), b_.end()); }
    bool is_equal() const { return b_[0] == b_[1] && b_[1] == b_[2]; }

    Real log(std::size_t i) const { return log_of(Integer(b_.at(i))); }
    Real log_bmax() const { return log_of(Integer(bmax())); }
    Real log_bmin() const { return log_of(Integer(bmin())); }

    /// B^e = prod B_i^{e_i}.
    Integer height(const ExponentVector& e) const {
        if (e.size() != 3) throw std::invalid_argument("BoxBounds::height: expected a 3-variable exponent");
        Integer h = 1;
        for (std::size_t i = 0; i < 3; ++i)
            if (e[i] > 0) h *= ipow(Integer(b_[i]), static_cast<unsigned long>(e[i]));
        return h;
    }

    Real log_height(const ExponentVector& e) const {
        Real s = 0;
        for (std::size_t i = 0; i < 3; ++i) s += Real(e[i]) * log(i);
        return s;
    }

    void require_method_range() const {
        for (auto b : b_)
            if (b < 2) throw std::invalid_argument("BoxBounds: the determinant method needs every B_i >= 2");
    }

    OrderSpec height_order() const { return OrderSpec::weighted({Integer(b_[0]), Integer(b_[1]), Integer(b_[2])}); }

    bool operator==(const BoxBounds&) const = default;

private:
    std::array<std::int64_t, 3> b_;
};

/// A log-height value log H for an integer H >= 1.
class LogHeight {
public:
    explicit LogHeight(Integer height) : h_(std::move(height)) {
        if (h_ < 1) throw std::invalid_argument("LogHeight: height must be >= 1");
    }
    /// Y = n log base, exactly.
    static LogHeight power(std::int64_t base, unsigned n) { return LogHeight(ipow(Integer(base), n)); }
    /// The cutoff induced by a real Y >= 0: H = floor(e^Y).
    static LogHeight from_log(const Real& y) {
        if (y < 0) throw std::invalid_argument("LogHeight: Y must be non-negative");
        Integer h = floor_to_integer(boost::multiprecision::exp(y));
        return LogHeight(h < 1 ? Integer(1) : h);
    }

    const Integer& height() const { return h_; }
    Real value() const { return log_of(h_); }
    /// log(num/den) <= log H, exactly.
    bool admits(const Integer& num, const Integer& den = 1) const { return num <= den * h_; }

    bool operator==(const LogHeight&) const = default;

private:
    Integer h_;
};

struct ExponentSet {
    LogHeight Y{Integer(1)};
    ExponentVector m;
    BoxBounds box = BoxBounds::equal(2);
    std::vector<ExponentVector> members;             // E(Y), sorted by the order used to build it
    std::vector<ExponentVector> restricted_members;  // E^1(Y) = {e in E(Y) : e_1 < m_1}, same order

    std::size_t size() const { return members.size(); }
    bool contains(const ExponentVector& e) const { return index.count(e) > 0; }
    bool contains_restricted(const ExponentVector& e) const { return contains(e) && e[0] < m[0]; }

    std::set<ExponentVector> index;
};

inline ExponentSet build_exponent_set(const LogHeight& Y, const ExponentVector& m, const BoxBounds& box,
                                      const OrderSpec& ord = OrderSpec::lex()) {
    if (m.size() != 3) throw std::invalid_argument("build_exponent_set: m must have three components");
    if (m.is_zero()) throw HypothesisViolation("build_exponent_set: m = 0 is excluded");
    ExponentSet s;
    s.Y = Y;
    s.m = m;
    s.box = box;
    box.require_method_range();
    const Integer& H = Y.height();
    const Integer b1 = box[0], b2 = box[1], b3 = box[2];
    int e1 = 0;
    for (Integer h1 = 1; h1 <= H; h1 *= b1, ++e1) {
        int e2 = 0;
        for (Integer h2 = h1; h2 <= H; h2 *= b2, ++e2) {
            int e3 = 0;
            for (Integer h3 = h2; h3 <= H; h3 *= b3, ++e3)
                if (e1 < m[0] || e2 < m[1] || e3 < m[2]) s.members.push_back(ExponentVector{e1, e2, e3});
        }
    }
    std::sort(s.members.begin(), s.members.end(), [&](const auto& a, const auto& b) { return ord.less(a, b); });
    for (const auto& e : s.members)
        if (e[0] < m[0]) s.restricted_members.push_back(e);
    s.index.insert(s.members.begin(), s.members.end());
    return s;
}

struct SetStatistics {
    std::size_t count = 0;            // #E(Y)
    Real sum_log = 0;                 // sum over E(Y) of log B^e
    Integer sum_e2 = 0;               // sum over E^1(Y) of e_2
    Integer sum_e3 = 0;               // sum over E^1(Y) of e_3
    std::size_t restricted_count = 0; // #E^1(Y)
};

inline SetStatistics set_statistics(const ExponentSet& E) {
    SetStatistics st;
    st.count = E.members.size();
    st.restricted_count = E.restricted_members.size();
    std::array<Integer, 3> sums{0, 0, 0};
    for (const auto& e : E.members)
        for (std::size_t i = 0; i < 3; ++i) sums[i] += e[i];
    for (std::size_t i = 0; i < 3; ++i) st.sum_log += to_real(sums[i]) * E.box.log(i);
    for (const auto& e : E.restricted_members) {
        st.sum_e2 += e[1];
        st.sum_e3 += e[2];
    }
    return st;
}

/// Main terms of #E(Y) and of sum log B^e: (log T_m / prod log B_i) Y^2/2 and Y^3/3.
struct MainTerms {
    Real count;
    Real sum_log;
};

inline MainTerms main_terms(const ExponentSet& E) {
    Real log_t = E.box.log_height(E.m);
    Real prod = E.box.log(0) * E.box.log(1) * E.box.log(2);
    Real y = E.Y.value();
    return {log_t / prod * y * y / 2, log_t / prod * y * y * y / 3};
}

struct MethodParams {
    ExponentVector m;
    Integer T_m;           // B^m
    Real log_T_m;
    Integer S_height;      // max B^e over exponents e of g, so S = log S_height
    Real S;
    Integer q;
    Real epsilon;
    Real K;
    Real log_K;
    Real K_eps;
    Real log_K_eps;
    Real R;
};

/// Checks that g is a non-constant polynomial in x_2, x_3 only.
inline void require_side_polynomial(const IntegerPolynomial& g) {
    if (g.nvars() != 3) throw std::invalid_argument("side polynomial must live in Z[x1,x2,x3]");
    if (g.is_constant()) throw HypothesisViolation("side polynomial g must be non-constant");
    if (g.depends_on(0)) throw HypothesisViolation("side polynomial g must not depend on x1");
}

inline MethodParams compute_params(const IntegerPolynomial& f, const IntegerPolynomial& g, const Integer& q,
                                   const BoxBounds& box, const OrderSpec& ord, const Real& epsilon) {
    using boost::multiprecision::exp;
    using boost::multiprecision::sqrt;
    box.require_method_range();
    require_side_polynomial(g);
    if (q < 1) throw std::invalid_argument("compute_params: q must be a positive integer");
    if (epsilon <= 0) throw std::invalid_argument("compute_params: epsilon must be positive");
    MethodParams p;
    p.m = max_exponent(f, ord);
    if (p.m.is_zero()) throw HypothesisViolation("the maximal exponent m of f is 0");
    p.T_m = box.height(p.m);
    p.log_T_m = box.log_height(p.m);
    p.S_height = 1;
    const ExponentVector* s_exp = nullptr;
    for (const auto& [e, c] : g.terms()) {
        Integer h = box.height(e);
        if (h > p.S_height) {
            p.S_height = h;
            s_exp = &e;
        }
    }
    p.S = s_exp ? box.log_height(*s_exp) : Real(0);
    p.q = q;
    p.epsilon = epsilon;
    const Real l1 = box.log(0), l2 = box.log(1), l3 = box.log(2);
    const Real base = sqrt(l1 * l2 * l3 / p.log_T_m);
    const Real log_q = log_of(q);
    p.R = Real(p.m[0]) * l1 * sqrt(l1) * sqrt(l2) * sqrt(l3) / (2 * p.S * p.log_T_m * sqrt(p.log_T_m));
    p.log_K = base * (1 - Real(p.m[0]) * l1 / (2 * p.S * p.log_T_m) * log_q);
    p.K = exp(p.log_K);
    p.log_K_eps = p.log_K + epsilon * box.log_bmax();
    p.K_eps = exp(p.log_K_eps);
    return p;
}

/// Largest lambda >= 0 with e - lambda*t in E^1(Y); +infinity for t = 0.
inline ExtNat lambda_single(const ExponentVector& e, const ExponentVector& t, const ExponentSet& E) {
    if (!E.contains_restricted(e)) throw std::invalid_argument("lambda_single: e is not in E^1(Y)");
    if (t.size() != 3 || t[0] != 0) throw std::invalid_argument("lambda_single: t must have t_1 = 0");
    if (t.is_zero()) return ExtNat::infinity();
    std::uint64_t lam = 0;
    while (auto next = checked_sub(e, t, static_cast<int>(lam + 1))) {
        if (!E.contains_restricted(*next)) break;
        ++lam;
    }
    return ExtNat(lam);
}

/// floor((Y - log B^e) / (S - log B^t)), infinite when S = log B^t.
inline ExtNat height_floor(const ExponentVector& e, const ExponentVector& t, const ExponentSet& E,
                           const Integer& S_height, const ExtNat& cap = ExtNat::infinity()) {
    const Integer bt = E.box.height(t);
    if (S_height < bt) throw std::invalid_argument("height_floor: S < log B^t");
    if (S_height == bt) return ExtNat::infinity();
    const Integer be = E.box.height(e);
    if (!E.Y.admits(be)) return ExtNat(0);
    // largest k with B^e * G^k <= H * (B^t)^k
    std::uint64_t k = 0;
    Integer lhs = be * S_height, rhs_scale = bt;
    while (ExtNat(k) < cap && E.Y.admits(lhs, rhs_scale)) {
        ++k;
        lhs *= S_height;
        rhs_scale *= bt;
    }
    return ExtNat(k);
}

/// mu_{e,t} = min(lambda_{e,t}, floor((Y - log B^e)/(S - log B^t))).
inline ExtNat mu_single(const ExponentVector& e, const ExponentVector& t, const ExponentSet& E,
                        const Integer& S_height) {
    ExtNat lam = lambda_single(e, t, E);
    return min(lam, height_floor(e, t, E, S_height, lam));
}

/// Sum over E^1(Y) of mu_{e,t}.
inline std::uint64_t lambda_total(const ExponentSet& E, const ExponentVector& t, const Integer& S_height) {
    if (t.size() != 3 || t[0] != 0) throw std::invalid_argument("lambda_total: t must have t_1 = 0");
    if (S_height < E.box.height(t)) throw std::invalid_argument("lambda_total: S < log B^t");
    std::uint64_t total = 0;
    for (const auto& e : E.restricted_members) {
        ExtNat mu = mu_single(e, t, E, S_height);
        if (mu.is_infinite()) throw std::logic_error("lambda_total: unbounded mu (t = 0 and S = 0)");
        total += mu.value();
    }
    return total;
}

/// Candidate cutoff offered to a choose_Y constraint.
struct YCandidate {
    LogHeight Y;
    std::optional<unsigned> n;  // set in equal-box mode, Y = n log B
};

using YConstraint = std::function<bool(const YCandidate&)>;

struct YSearch {
    enum class Mode { equal_box, grid_scan };
    Mode mode = Mode::equal_box;
    BoxBounds box = BoxBounds::equal(2);
    Real c_epsilon = 10;        // floor Y >= c_epsilon * log B
    Real Z = 0;                 // grid-scan lower end (raised to the floor if smaller)
    unsigned grid_points = 64;
    unsigned n_cap = 256;       // equal-box hard cap on n
    unsigned max_doublings = 12;
};

struct YChoice {
    LogHeight Y{Integer(1)};
    std::optional<unsigned> n;
    Real window_start = 0;      // grid-scan: the Z of the window that succeeded
    unsigned constraint_evaluations = 0;
};

/// Default floor constant: max(10, ceil(4/epsilon)).
inline Real default_c_epsilon(const Real& epsilon) {
    Real c = boost::multiprecision::ceil(Real(4) / epsilon);
    return c < 10 ? Real(10) : c;
}

inline YChoice choose_Y(const YSearch& search, const YConstraint& constraint) {
    YChoice out;
    if (search.mode == YSearch::Mode::equal_box) {
        if (!search.box.is_equal()) throw std::invalid_argument("choose_Y: equal-box mode needs B_1 = B_2 = B_3");
        const std::int64_t b = search.box[0];
        Real c = boost::multiprecision::ceil(search.c_epsilon);
        unsigned lo = c < 1 ? 1u : static_cast<unsigned>(c);
        auto test = [&](unsigned n) {
            ++out.constraint_evaluations;
            return constraint(YCandidate{LogHeight::power(b, n), n});
        };
        if (lo > search.n_cap) throw std::domain_error("choose_Y: floor exceeds the cap on n");
        unsigned hi = lo;
        if (!test(lo)) {
            unsigned step = 1;
            unsigned prev = lo;
            for (;;) {
                if (prev >= search.n_cap)
                    throw std::domain_error("choose_Y: constraint unsatisfied for every n <= " +
                                            std::to_string(search.n_cap));
                hi = std::min<unsigned>(prev + step, search.n_cap);
                if (test(hi)) break;
                prev = hi;
                step *= 2;
            }
            lo = prev + 1;
            while (lo < hi) {
                unsigned mid = lo + (hi - lo) / 2;
                if (test(mid)) hi = mid;
                else lo = mid + 1;
            }
        }
        out.n = hi;
        out.Y = LogHeight::power(b, hi);
        return out;
    }
    Real z = search.Z;
    const Real floor_y = search.c_epsilon * search.box.log_bmax();
    if (z < floor_y) z = floor_y;
    if (z <= 0) throw std::invalid_argument("choose_Y: grid-scan needs a positive Z");
    const unsigned pts = std::max(2u, search.grid_points);
    for (unsigned round = 0; round <= search.max_doublings; ++round, z *= 2) {
        for (unsigned i = 0; i < pts; ++i) {
            Real y = z + z * Real(i) / Real(pts - 1);
            YCandidate cand{LogHeight::from_log(y), std::nullopt};
            ++out.constraint_evaluations;
            if (constraint(cand)) {
                out.Y = cand.Y;
                out.window_start = z;
                return out;
            }
        }
    }
    throw std::domain_error("choose_Y: constraint unsatisfied on every grid window up to the doubling cap");
}

}  // namespace detm
