/**
 * @file exponent.hpp
 * @brief Exponent vectors and linear total orders on them.
 */
#pragma once

#include "detmethod/numeric.hpp"

#include <compare>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace detm {

/// Exponent of a monomial x_1^{e_1} ... x_n^{e_n}. Components are
/// non-negative; the natural <=> is lexicographic with x_1 most significant.
class ExponentVector {
public:
    ExponentVector() = default;
    explicit ExponentVector(std::size_t n) : e_(n, 0) {}
    ExponentVector(std::initializer_list<int> il) : e_(il) { validate(); }
    explicit ExponentVector(std::vector<int> e) : e_(std::move(e)) { validate(); }

    std::size_t size() const { return e_.size(); }
    int operator[](std::size_t i) const { return e_[i]; }
    const std::vector<int>& components() const { return e_; }

    int total_degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }
    bool is_zero() const {
        for (int v : e_)
            if (v != 0) return false;
        return true;
    }

    ExponentVector with(std::size_t i, int v) const {
        ExponentVector r = *this;
        r.e_.at(i) = v;
        r.validate();
        return r;
    }

    friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
        check_arity(a, b);
        ExponentVector r = a;
        for (std::size_t i = 0; i < a.size(); ++i) r.e_[i] += b.e_[i];
        return r;
    }

    /// a - k*b when every component stays non-negative.
    friend std::optional<ExponentVector> checked_sub(const ExponentVector& a, const ExponentVector& b, int k = 1) {
        check_arity(a, b);
        ExponentVector r = a;
        for (std::size_t i = 0; i < a.size(); ++i) {
            r.e_[i] -= k * b.e_[i];
            if (r.e_[i] < 0) return std::nullopt;
        }
        return r;
    }

    ExponentVector scaled(int k) const {
        if (k < 0) throw std::invalid_argument("ExponentVector::scaled: negative factor");
        ExponentVector r = *this;
        for (int& v : r.e_) v *= k;
        return r;
    }

    /// Componentwise a <= b.
    bool divides(const ExponentVector& b) const {
        check_arity(*this, b);
        for (std::size_t i = 0; i < size(); ++i)
            if (e_[i] > b.e_[i]) return false;
        return true;
    }

    auto operator<=>(const ExponentVector&) const = default;
    bool operator==(const ExponentVector&) const = default;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(e_[i]);
        }
        return s + ")";
    }

private:
    void validate() const {
        for (int v : e_)
            if (v < 0) throw std::invalid_argument("ExponentVector: negative component");
    }
    static void check_arity(const ExponentVector& a, const ExponentVector& b) {
        if (a.size() != b.size()) throw std::invalid_argument("ExponentVector: arity mismatch");
    }

    std::vector<int> e_;
};

/// A linear total order on exponent vectors.
///
/// Weighted mode compares B^a against B^b for integer bases B_i (that is,
/// sum a_i log B_i against sum b_i log B_i) exactly, and breaks ties
/// lexicographically.
class OrderSpec {
public:
    enum class Kind { lexicographic, weighted };

    static OrderSpec lex() { return OrderSpec{}; }

    static OrderSpec weighted(std::vector<Integer> bases) {
        for (const auto& b : bases)
            if (b < 2) throw std::invalid_argument("OrderSpec::weighted: bases must be >= 2");
        OrderSpec o;
        o.kind_ = Kind::weighted;
        o.bases_ = std::move(bases);
        return o;
    }

    Kind kind() const { return kind_; }
    const std::vector<Integer>& bases() const { return bases_; }

    std::vector<Real> weights() const {
        std::vector<Real> w;
        for (const auto& b : bases_) w.push_back(log_of(b));
        return w;
    }

    std::strong_ordering compare(const ExponentVector& a, const ExponentVector& b) const {
        if (a.size() != b.size()) throw std::invalid_argument("OrderSpec::compare: arity mismatch");
        if (kind_ == Kind::weighted) {
            if (bases_.size() != a.size()) throw std::invalid_argument("OrderSpec::compare: weight arity mismatch");
            Integer lhs = 1, rhs = 1;
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i] > b[i]) lhs *= ipow(bases_[i], static_cast<unsigned long>(a[i] - b[i]));
                if (b[i] > a[i]) rhs *= ipow(bases_[i], static_cast<unsigned long>(b[i] - a[i]));
            }
            if (lhs != rhs) return lhs < rhs ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return a <=> b;
    }

    bool less(const ExponentVector& a, const ExponentVector& b) const { return compare(a, b) < 0; }

    std::string name() const { return kind_ == Kind::lexicographic ? "lexicographic" : "weighted-then-lex"; }

private:
    Kind kind_ = Kind::lexicographic;
    std::vector<Integer> bases_;
};

inline std::strong_ordering compare(const ExponentVector& a, const ExponentVector& b, const OrderSpec& ord) {
    return ord.compare(a, b);
}

}  // namespace detm
