/**
 * @file fit.hpp
 * @brief Least-squares exponent fit of counts against the box size.
 */
#pragma once

#include "detmethod/numeric.hpp"

#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace detm {

struct FitResult {
    Real slope = 0;
    Real intercept = 0;
    std::vector<Real> residuals;
    bool shifted = false;  // log(count + 1) was used because some count is 0
};

/// Slope of log(count) against log(B). When a count is 0 every count is
/// shifted by one before taking logarithms.
inline FitResult fit_exponent(const std::vector<std::pair<Integer, Integer>>& data) {
    using boost::multiprecision::log;
    std::set<Integer> distinct;
    bool has_zero = false;
    for (const auto& [B, c] : data) {
        if (B < 1) throw std::invalid_argument("fit_exponent: B must be positive");
        if (c < 0) throw std::invalid_argument("fit_exponent: counts must be non-negative");
        distinct.insert(B);
        has_zero = has_zero || c == 0;
    }
    if (distinct.size() < 3) throw std::invalid_argument("fit_exponent: need at least 3 distinct B values");
    FitResult r;
    r.shifted = has_zero;
    std::vector<Real> xs, ys;
    for (const auto& [B, c] : data) {
        xs.push_back(log_of(B));
        ys.push_back(log_of(has_zero ? Integer(c + 1) : c));
    }
    const Real n = static_cast<long>(xs.size());
    Real mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    Real sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    for (std::size_t i = 0; i < xs.size(); ++i) r.residuals.push_back(ys[i] - (r.intercept + r.slope * xs[i]));
    return r;
}

}  // namespace detm
