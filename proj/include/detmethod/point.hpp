#pragma once

#include "detmethod/polynomial.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace detm {

/// An integer point of A^3.
using Point = std::array<std::int64_t, 3>;

inline Integer evaluate(const IntegerPolynomial& p, const Point& x) {
    return p.evaluate(std::span<const std::int64_t>(x.data(), x.size()));
}

inline Integer monomial_value(const ExponentVector& e, const Point& x) {
    return monomial_value(e, std::span<const std::int64_t>(x.data(), x.size()));
}

inline std::string to_string(const Point& x) {
    return "(" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," + std::to_string(x[2]) + ")";
}

/// True iff some partial derivative of f is non-zero at x.
inline bool is_nonsingular_point(const IntegerPolynomial& f, const Point& x) {
    for (std::size_t i = 0; i < f.nvars(); ++i)
        if (evaluate(partial_derivative(f, i), x) != 0) return true;
    return false;
}

}  // namespace detm
