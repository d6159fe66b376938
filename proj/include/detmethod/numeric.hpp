/**
 * @file numeric.hpp
 * @brief Exact integers, extended naturals and the high-precision real type.
 *
 * All exact quantities (coefficients, determinants, valuations) are GMP
 * integers. Scalar parameters that are genuinely real (logarithms, K, R)
 * use IEEE binary128, which carries a 113-bit mantissa.
 */
#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/float128.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace detm {

using Integer = mpz_class;
using Rational = mpq_class;
using Real = boost::multiprecision::float128;

inline Integer ipow(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Integer ipow(long base, unsigned long exp) { return ipow(Integer(base), exp); }

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// Floor division (rounds toward negative infinity).
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Least non-negative residue.
inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool divides(const Integer& d, const Integer& n) {
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline bool is_prime(const Integer& p) {
    if (p < 2) return false;
    return mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

/// Negative numbers are never squares.
inline bool is_perfect_square(const Integer& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Integer isqrt(const Integer& n) {
    if (n < 0) throw std::invalid_argument("isqrt of a negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Inverse of a modulo m, if it exists.
inline std::optional<Integer> inverse_mod(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
    return mod_floor(r, m);
}

inline std::string to_string(const Integer& n) { return n.get_str(); }

inline bool fits_int64(const Integer& n) { return mpz_fits_slong_p(n.get_mpz_t()) != 0; }

inline std::int64_t to_int64(const Integer& n) {
    if (!fits_int64(n)) throw std::overflow_error("integer does not fit in 64 bits: " + n.get_str());
    return n.get_si();
}

/// Natural number or +infinity. Used for valuations of zero and for
/// lambda_{e,t} when t = 0.
class ExtNat {
public:
    constexpr ExtNat() = default;
    constexpr explicit ExtNat(std::uint64_t v) : value_(v) {}
    static constexpr ExtNat infinity() {
        ExtNat r;
        r.infinite_ = true;
        return r;
    }

    constexpr bool is_infinite() const { return infinite_; }
    std::uint64_t value() const {
        if (infinite_) throw std::logic_error("value() of an infinite ExtNat");
        return value_;
    }

    constexpr std::strong_ordering operator<=>(const ExtNat& o) const {
        if (infinite_ || o.infinite_) {
            if (infinite_ && o.infinite_) return std::strong_ordering::equal;
            return infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        return value_ <=> o.value_;
    }
    constexpr bool operator==(const ExtNat& o) const = default;

    std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
    std::uint64_t value_ = 0;
    bool infinite_ = false;
};

inline ExtNat min(const ExtNat& a, const ExtNat& b) { return a < b ? a : b; }

/// Exponent of the prime p in n; +infinity for n = 0.
inline ExtNat p_adic_valuation(const Integer& n, const Integer& p) {
    if (!is_prime(p)) throw std::invalid_argument("p_adic_valuation: " + p.get_str() + " is not prime");
    if (n == 0) return ExtNat::infinity();
    Integer rest;
    auto v = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    return ExtNat(static_cast<std::uint64_t>(v));
}

struct PrimePower {
    Integer prime;
    unsigned exponent = 0;

    Integer value() const { return ipow(prime, exponent); }
};

/// Factorisation by trial division. Moduli in this library are small enough
/// (at most a few times 10^12) for this to be instantaneous.
inline std::vector<PrimePower> factor(Integer n) {
    if (n <= 0) throw std::invalid_argument("factor: argument must be positive");
    std::vector<PrimePower> out;
    auto take = [&](const Integer& p) {
        unsigned e = 0;
        while (divides(p, n)) {
            n /= p;
            ++e;
        }
        if (e > 0) out.push_back({p, e});
    };
    take(2);
    for (Integer p = 3; p * p <= n; p += 2) take(p);
    if (n > 1) out.push_back({n, 1});
    return out;
}

inline std::optional<PrimePower> as_prime_power(const Integer& q) {
    if (q < 2) return std::nullopt;
    auto f = factor(q);
    if (f.size() != 1) return std::nullopt;
    return f.front();
}

/// Natural logarithm of a positive integer, accurate to binary128 precision.
inline Real log_of(const Integer& n) {
    if (n <= 0) throw std::domain_error("log_of: argument must be positive");
    const auto bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    if (bits <= 64) {
        return boost::multiprecision::log(Real(static_cast<unsigned long long>(mpz_get_ui(n.get_mpz_t()))));
    }
    const std::size_t shift = bits > 112 ? bits - 112 : 0;
    Integer top = n >> shift;
    Integer hi = top >> 64;
    Integer lo = top - (hi << 64);
    Real mant = Real(static_cast<unsigned long long>(mpz_get_ui(hi.get_mpz_t()))) * boost::multiprecision::ldexp(Real(1), 64) +
                Real(static_cast<unsigned long long>(mpz_get_ui(lo.get_mpz_t())));
    return boost::multiprecision::log(mant) + Real(shift) * boost::multiprecision::log(Real(2));
}

inline Real to_real(const Integer& n) {
    if (n == 0) return Real(0);
    if (n < 0) return -to_real(-n);
    return boost::multiprecision::exp(log_of(n));
}

/// Largest integer not exceeding x (x finite, modest magnitude).
inline Integer floor_to_integer(const Real& x) {
    Real f = boost::multiprecision::floor(x);
    std::string s = f.str(0, std::ios_base::fixed);
    auto dot = s.find('.');
    if (dot != std::string::npos) s.resize(dot);
    return Integer(s);
}

/// Decimal rendering with a fixed number of significant digits, stable across runs.
inline std::string format_real(const Real& x, int digits = 30) {
    return x.str(digits, std::ios_base::scientific);
}

}  // namespace detm
