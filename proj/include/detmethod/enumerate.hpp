/**
 * @file enumerate.hpp
 * @brief Exact enumeration of box points on f = 0 with g = 0 mod q.
 *
 * For every admissible pair (x2, x3) the fiber polynomial f(., x2, x3) is
 * searched for integer roots in [-B1, B1]. The search splits the range into
 * runs on which the fiber is monotone, using the critical points of its
 * derivatives recursively, and bisects each run. Arithmetic is done in
 * __int128 when a global bound shows it cannot overflow and in GMP otherwise.
 */
#pragma once

#include "detmethod/errors.hpp"
#include "detmethod/expsets.hpp"
#include "detmethod/gcd.hpp"
#include "detmethod/point.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace detm {

/// Congruence g(x2, x3) = 0 mod q. With no g, q must be 1.
struct SideCondition {
    std::optional<IntegerPolynomial> g;
    Integer q = 1;

    static SideCondition none() { return {}; }
    static SideCondition congruence(IntegerPolynomial g, Integer q) {
        require_side_polynomial(g);
        if (q < 1) throw std::invalid_argument("SideCondition: q must be positive");
        return {std::move(g), std::move(q)};
    }
};

struct PointSet {
    std::vector<Point> points;
    BoxBounds box = BoxBounds::equal(1);
    bool nonsingular_only = false;

    std::size_t size() const { return points.size(); }
};

struct EnumerateOptions {
    Integer sieve_cap = 100000000;  // residue table when q^2 <= cap
    unsigned threads = 1;
};

namespace detail {

/// Dense univariate polynomial over Coord, coefficients low to high.
template <class Coord>
struct Fiber {
    std::vector<Coord> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    Coord at(std::int64_t x) const {
        Coord v = 0;
        const Coord cx = x;
        for (std::size_t i = c.size(); i-- > 0;) v = v * cx + c[i];
        return v;
    }
    Fiber derivative() const {
        Fiber d;
        for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * Coord(static_cast<long>(i)));
        return d;
    }
};

template <class Coord>
int sign_of(const Coord& v) {
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

/// Sorted integers in [lo, hi] splitting it into runs on which p is monotone
/// over the reals, or runs of at most two integers.
template <class Coord>
std::vector<std::int64_t> monotone_breaks(const Fiber<Coord>& p, std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out{lo, hi};
    if (p.degree() <= 1 || hi - lo <= 1) return out;
    Fiber<Coord> d = p.derivative();
    auto runs = monotone_breaks(d, lo, hi);
    for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
        std::int64_t a = runs[i], b = runs[i + 1];
        if (b - a <= 1) {
            out.push_back(a);
            out.push_back(b);
            continue;
        }
        const int sa = sign_of(d.at(a)), sb = sign_of(d.at(b));
        if (sa == 0) out.push_back(a);
        if (sb == 0) out.push_back(b);
        if (sa == 0 || sb == 0 || sa == sb) continue;
        // d is monotone on [a, b] and changes sign: largest k with sign(d(k)) = sa
        std::int64_t l = a, r = b;
        while (r - l > 1) {
            std::int64_t mid = l + (r - l) / 2;
            int sm = sign_of(d.at(mid));
            if (sm == 0) {
                out.push_back(mid);
                l = r = mid;
                break;
            }
            (sm == sa ? l : r) = mid;
        }
        if (l != r) {
            out.push_back(l);
            out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Integer roots of a non-zero p in [lo, hi], ascending.
template <class Coord>
std::vector<std::int64_t> integer_roots(const Fiber<Coord>& p, std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> roots;
    if (p.degree() < 1 || lo > hi) return roots;
    if (p.degree() == 1) {
        // c1 x + c0 = 0
        const Coord& c0 = p.c[0];
        const Coord& c1 = p.c[1];
        if (c0 % c1 != 0) return roots;
        Coord x = -(c0 / c1);
        if (x >= Coord(lo) && x <= Coord(hi)) {
            if constexpr (std::is_same_v<Coord, Integer>) roots.push_back(x.get_si());
            else roots.push_back(static_cast<std::int64_t>(x));
        }
        return roots;
    }
    if (hi - lo < 16) {
        for (std::int64_t x = lo; x <= hi; ++x)
            if (p.at(x) == 0) roots.push_back(x);
        return roots;
    }
    auto br = monotone_breaks(p, lo, hi);
    std::int64_t last_added = lo - 1;
    auto add = [&](std::int64_t x) {
        if (x != last_added) {
            roots.push_back(x);
            last_added = x;
        }
    };
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        const std::int64_t a = br[i], b = br[i + 1];
        const int sa = sign_of(p.at(a)), sb = sign_of(p.at(b));
        if (sa == 0) add(a);
        if (b - a <= 1 || sa == 0 || sb == 0 || sa == sb) {
            if (sb == 0 && i + 2 == br.size()) add(b);
            continue;
        }
        std::int64_t l = a, r = b;
        while (r - l > 1) {
            std::int64_t mid = l + (r - l) / 2;
            int sm = sign_of(p.at(mid));
            if (sm == 0) {
                add(mid);
                break;
            }
            (sm == sa ? l : r) = mid;
        }
    }
    return roots;
}

/// Fiber coefficients of f in x1 as polynomials in (x2, x3).
struct FiberCoefficients {
    std::vector<std::vector<std::pair<std::array<int, 2>, Integer>>> terms;  // per power of x1

    explicit FiberCoefficients(const IntegerPolynomial& f) {
        terms.resize(static_cast<std::size_t>(std::max(f.degree_in(0), 0)) + 1);
        for (const auto& [e, c] : f.terms()) terms[e[0]].push_back({{e[1], e[2]}, c});
    }

    template <class Coord>
    Fiber<Coord> at(std::int64_t x2, std::int64_t x3) const {
        Fiber<Coord> fib;
        fib.c.resize(terms.size());
        for (std::size_t i = 0; i < terms.size(); ++i) {
            Coord v = 0;
            for (const auto& [ab, c] : terms[i]) {
                Coord m = 1;
                for (int k = 0; k < ab[0]; ++k) m *= Coord(x2);
                for (int k = 0; k < ab[1]; ++k) m *= Coord(x3);
                if constexpr (std::is_same_v<Coord, Integer>) v += c * m;
                else v += static_cast<Coord>(c.get_si()) * m;
            }
            fib.c[i] = v;
        }
        while (!fib.c.empty() && fib.c.back() == 0) fib.c.pop_back();
        return fib;
    }

    /// True when every intermediate value over the box stays below 2^120.
    bool fits_int128(const BoxBounds& box) const {
        const Integer limit = Integer(1) << 120;
        Integer max_coeff = 0;
        for (const auto& row : terms) {
            Integer s = 0;
            for (const auto& [ab, c] : row) {
                if (!fits_int64(c)) return false;
                s += abs(c) * ipow(box[1], ab[0]) * ipow(box[2], ab[1]);
            }
            max_coeff = std::max(max_coeff, s);
        }
        const Integer b1 = box[0];
        Integer bound = max_coeff * Integer(static_cast<long>(terms.size() + 1)) *
                        ipow(b1, static_cast<unsigned long>(terms.size()));
        return bound < limit;
    }
};

/// Admissible residue pairs (x2 mod q, x3 mod q), or empty when not tabulated.
inline std::vector<char> residue_table(const IntegerPolynomial& g, const Integer& q) {
    const std::int64_t qq = to_int64(q);
    std::vector<char> ok(static_cast<std::size_t>(qq * qq), 0);
    for (std::int64_t a = 0; a < qq; ++a)
        for (std::int64_t b = 0; b < qq; ++b) {
            Point x{0, a, b};
            ok[static_cast<std::size_t>(a * qq + b)] = divides(q, evaluate(g, x));
        }
    return ok;
}

}  // namespace detail

/// S_q(f, g; B): all x with |x_i| <= B_i, f(x) = 0 and g(x) = 0 mod q, sorted.
inline PointSet enumerate_points(const IntegerPolynomial& f, const SideCondition& side, const BoxBounds& box,
                                 bool nonsingular_only, const EnumerateOptions& opt = {}) {
    if (f.nvars() != 3) throw std::invalid_argument("enumerate_points: f must have 3 variables");
    if (f.is_zero()) throw std::invalid_argument("enumerate_points: f is the zero polynomial");
    if (!side.g && side.q != 1) throw std::invalid_argument("enumerate_points: modulus without a side polynomial");
    const std::int64_t B1 = box[0], B2 = box[1], B3 = box[2];
    const detail::FiberCoefficients fc(f);
    const bool fast = fc.fits_int128(box);

    std::vector<char> table;
    std::int64_t qq = 0;
    const bool use_table = side.g && side.q > 1 && side.q * side.q <= opt.sieve_cap;
    if (use_table) {
        qq = to_int64(side.q);
        table = detail::residue_table(*side.g, side.q);
    }
    auto admissible = [&](std::int64_t x2, std::int64_t x3) {
        if (!side.g || side.q == 1) return true;
        if (use_table) {
            auto a = ((x2 % qq) + qq) % qq, b = ((x3 % qq) + qq) % qq;
            return table[static_cast<std::size_t>(a * qq + b)] != 0;
        }
        return divides(side.q, evaluate(*side.g, Point{0, x2, x3}));
    };

    std::vector<IntegerPolynomial> grad;
    if (nonsingular_only)
        for (std::size_t i = 0; i < 3; ++i) grad.push_back(partial_derivative(f, i));
    auto keep = [&](const Point& x) {
        if (!nonsingular_only) return true;
        for (const auto& d : grad)
            if (evaluate(d, x) != 0) return true;
        return false;
    };

    auto stripe = [&](std::int64_t x2_lo, std::int64_t x2_hi, std::vector<Point>& out) {
        for (std::int64_t x2 = x2_lo; x2 <= x2_hi; ++x2)
            for (std::int64_t x3 = -B3; x3 <= B3; ++x3) {
                if (!admissible(x2, x3)) continue;
                std::vector<std::int64_t> roots;
                bool degenerate = false;
                if (fast) {
                    auto fib = fc.at<__int128>(x2, x3);
                    if (fib.c.empty()) degenerate = true;
                    else roots = detail::integer_roots(fib, -B1, B1);
                } else {
                    auto fib = fc.at<Integer>(x2, x3);
                    if (fib.c.empty()) degenerate = true;
                    else roots = detail::integer_roots(fib, -B1, B1);
                }
                if (degenerate)
                    for (std::int64_t x1 = -B1; x1 <= B1; ++x1) roots.push_back(x1);
                for (auto x1 : roots) {
                    Point x{x1, x2, x3};
                    if (keep(x)) out.push_back(x);
                }
            }
    };

    PointSet ps;
    ps.box = box;
    ps.nonsingular_only = nonsingular_only;
    const std::int64_t width = 2 * B2 + 1;
    const unsigned nthreads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(width)));
    if (nthreads == 1) {
        stripe(-B2, B2, ps.points);
    } else {
        std::vector<std::vector<Point>> parts(nthreads);
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < nthreads; ++k) {
            std::int64_t lo = -B2 + width * k / nthreads, hi = -B2 + width * (k + 1) / nthreads - 1;
            pool.emplace_back([&, lo, hi, k] { stripe(lo, hi, parts[k]); });
        }
        for (auto& th : pool) th.join();
        for (auto& p : parts) ps.points.insert(ps.points.end(), p.begin(), p.end());
    }
    std::sort(ps.points.begin(), ps.points.end());
    return ps;
}

/// Auxiliary primes r_1 < ... < r_u; r = 1 when empty.
struct ResidueData {
    std::vector<Integer> primes;

    Integer r() const {
        Integer p = 1;
        for (const auto& x : primes) p *= x;
        return p;
    }
    void validate(const Integer& q) const {
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (!is_prime(primes[i])) throw std::invalid_argument("ResidueData: " + to_string(primes[i]) + " is not prime");
            if (i > 0 && primes[i] <= primes[i - 1])
                throw std::invalid_argument("ResidueData: primes must be strictly increasing");
            if (gcd(primes[i], q) != 1)
                throw HypothesisViolation("ResidueData: r = " + to_string(primes[i]) + " is not coprime to q");
        }
    }
};

/// Key of a class S_{r,t}: the reductions t_i = x mod r_i.
using ResidueKey = std::vector<Point>;

/// Partition of P by reductions modulo each r_i, dropping points whose reduction
/// is singular on X mod r_i for some i.
inline std::map<ResidueKey, PointSet> residue_split(const PointSet& P, const IntegerPolynomial& f,
                                                    const ResidueData& residues) {
    std::map<ResidueKey, PointSet> out;
    std::vector<IntegerPolynomial> grad;
    for (std::size_t i = 0; i < 3; ++i) grad.push_back(partial_derivative(f, i));
    std::vector<std::int64_t> rs;
    for (const auto& r : residues.primes) rs.push_back(to_int64(r));
    for (const auto& x : P.points) {
        ResidueKey key;
        bool ok = true;
        for (std::size_t i = 0; i < rs.size() && ok; ++i) {
            const Integer r = rs[i];
            bool nonsing = false;
            for (const auto& d : grad)
                if (!divides(r, evaluate(d, x))) nonsing = true;
            if (!nonsing) ok = false;
            Point t;
            for (int k = 0; k < 3; ++k) t[k] = ((x[k] % rs[i]) + rs[i]) % rs[i];
            key.push_back(t);
        }
        if (!ok) continue;
        auto [it, inserted] = out.try_emplace(key);
        if (inserted) {
            it->second.box = P.box;
            it->second.nonsingular_only = P.nonsingular_only;
        }
        it->second.points.push_back(x);
    }
    return out;
}

/// Number of points of f = 0 over F_p.
inline std::int64_t count_points_mod_p(const IntegerPolynomial& f, std::int64_t p) {
    std::vector<std::pair<ExponentVector, std::int64_t>> red;
    for (const auto& [e, c] : f.terms()) {
        std::int64_t v = to_int64(mod_floor(c, p));
        if (v) red.push_back({e, v});
    }
    std::vector<std::vector<std::int64_t>> pw(static_cast<std::size_t>(p));
    const int d = std::max(f.degree(), 0);
    for (std::int64_t x = 0; x < p; ++x) {
        pw[x].assign(d + 1, 1);
        for (int k = 1; k <= d; ++k) pw[x][k] = pw[x][k - 1] * x % p;
    }
    std::int64_t count = 0;
    for (std::int64_t a = 0; a < p; ++a)
        for (std::int64_t b = 0; b < p; ++b)
            for (std::int64_t c = 0; c < p; ++c) {
                std::int64_t v = 0;
                for (const auto& [e, k] : red) v = (v + k * pw[a][e[0]] % p * pw[b][e[1]] % p * pw[c][e[2]]) % p;
                if (v == 0) ++count;
            }
    return count;
}

struct BadPrimeReport {
    Integer product = 1;
    std::string source;
    std::vector<std::int64_t> flagged;  // heuristic mode only
};

inline BadPrimeReport bad_prime_product_user(const Integer& value) {
    if (value < 1) throw std::invalid_argument("bad_prime_product: user-supplied value must be positive");
    return {value, "user-supplied", {}};
}

/// pi_S = |2 a1 a2 a3 n| for the diagonal quadric a1 x1^2 + a2 x2^2 + a3 x3^2 = n.
inline BadPrimeReport bad_prime_product_quadric(const Integer& a1, const Integer& a2, const Integer& a3,
                                                const Integer& n) {
    Integer v = abs(2 * a1 * a2 * a3 * n);
    if (v == 0) throw std::invalid_argument("bad_prime_product: quadric data has a zero coefficient");
    return {v, "quadric-formula", {}};
}

/// Flags p <= max_prime when |#X(F_p) - p^2| > c p^(3/2). Heuristic.
inline BadPrimeReport bad_prime_product_heuristic(const IntegerPolynomial& f, std::int64_t max_prime, double c) {
    BadPrimeReport rep;
    rep.source = "point-count-heuristic";
    for (std::int64_t p = 2; p <= max_prime; ++p) {
        if (!is_prime(Integer(p))) continue;
        const double dev = std::abs(static_cast<double>(count_points_mod_p(f, p)) - static_cast<double>(p * p));
        if (dev > c * std::pow(static_cast<double>(p), 1.5)) {
            rep.flagged.push_back(p);
            rep.product *= p;
        }
    }
    return rep;
}

}  // namespace detm
