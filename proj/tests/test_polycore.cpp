#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace detm;

namespace {

IntegerPolynomial poly(std::initializer_list<std::pair<std::vector<int>, long>> terms, std::size_t nvars = 3) {
    IntegerPolynomial p(nvars);
    for (const auto& [e, c] : terms) p.add_term(ExponentVector(e), Integer(c));
    return p;
}

IntegerPolynomial random_poly(std::mt19937_64& rng, int max_deg, int max_terms, long coeff) {
    std::uniform_int_distribution<int> deg(0, max_deg), nterms(1, max_terms);
    std::uniform_int_distribution<long> c(-coeff, coeff);
    IntegerPolynomial p(3);
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        int a = deg(rng), b = deg(rng), d = deg(rng);
        p.add_term(ExponentVector{a, b, d}, Integer(c(rng)));
    }
    return p;
}

RationalPolynomial random_upoly(std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(1, max_deg);
    std::uniform_int_distribution<long> c(-4, 4);
    std::vector<Rational> cs(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : cs) x = c(rng);
    if (cs.back() == 0) cs.back() = 1;
    return RationalPolynomial(cs);
}

}  // namespace

TEST(Evaluate, KnownValues) {
    auto sphere = poly({{{2, 0, 0}, 1}, {{0, 2, 0}, 1}, {{0, 0, 2}, 1}, {{0, 0, 0}, -5}});
    EXPECT_EQ(evaluate(sphere, Point{0, 1, 2}), 0);
    EXPECT_EQ(evaluate(IntegerPolynomial::constant(3, 7), Point{3, -9, 11}), 7);
    auto q = poly({{{2, 0, 0}, 5}, {{0, 2, 0}, 1}, {{0, 0, 2}, 1}, {{0, 0, 0}, -6}});
    EXPECT_EQ(evaluate(q, Point{1, 1, 0}), 0);
}

TEST(Evaluate, LargeValuesAreExact) {
    auto p = poly({{{7, 0, 0}, 1}, {{0, 5, 2}, -3}});
    const std::int64_t x = 3000000000LL;
    EXPECT_EQ(evaluate(p, Point{x, x, 2}), oracle::eval(p, Point{x, x, 2}));
}

TEST(PartialDerivative, Examples) {
    EXPECT_EQ(partial_derivative(poly({{{2, 0, 0}, 1}, {{0, 2, 0}, 1}}), 0), poly({{{1, 0, 0}, 2}}));
    EXPECT_TRUE(partial_derivative(IntegerPolynomial::constant(3, 9), 2).is_zero());
    EXPECT_EQ(partial_derivative(poly({{{3, 1, 0}, 1}}), 1), poly({{{3, 0, 0}, 1}}));
}

TEST(PartialDerivative, LeibnizRule) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        auto p = random_poly(rng, 4, 5, 9), q = random_poly(rng, 4, 5, 9);
        for (std::size_t i = 0; i < 3; ++i)
            EXPECT_EQ(partial_derivative(p * q, i), partial_derivative(p, i) * q + p * partial_derivative(q, i));
    }
}

TEST(TopDegreePart, Examples) {
    EXPECT_EQ(top_degree_part(poly({{{0, 2, 0}, 1}, {{0, 0, 2}, 1}, {{0, 0, 0}, -6}})),
              poly({{{0, 2, 0}, 1}, {{0, 0, 2}, 1}}));
    EXPECT_EQ(top_degree_part(poly({{{0, 5, 0}, 1}, {{0, 0, 3}, 1}, {{0, 0, 0}, -4}})), poly({{{0, 5, 0}, 1}}));
    auto h = poly({{{0, 2, 1}, 3}, {{0, 0, 3}, -1}});
    EXPECT_EQ(top_degree_part(h), h);
}

TEST(MaxExponent, Lex) {
    EXPECT_EQ(max_exponent(poly({{{2, 0, 0}, 5}, {{0, 2, 0}, 1}, {{0, 0, 2}, 1}, {{0, 0, 0}, -6}}), OrderSpec::lex()),
              (ExponentVector{2, 0, 0}));
    EXPECT_EQ(max_exponent(poly({{{0, 3, 0}, 1}, {{1, 1, 0}, 1}}), OrderSpec::lex()), (ExponentVector{1, 1, 0}));
    EXPECT_EQ(max_exponent(poly({{{2, 0, 0}, -7}, {{0, 2, 0}, 3}, {{0, 0, 2}, 2}, {{0, 0, 0}, 1}}), OrderSpec::lex()),
              (ExponentVector{2, 0, 0}));
}

TEST(Order, Examples) {
    EXPECT_TRUE(compare(ExponentVector{1, 0, 0}, ExponentVector{0, 3, 0}, OrderSpec::lex()) > 0);
    const auto w = OrderSpec::weighted({10, 10, 10});
    for (const auto& ord : {OrderSpec::lex(), w, OrderSpec::weighted({2, 3, 5})})
        EXPECT_TRUE(compare(ExponentVector{0, 0, 0}, ExponentVector{0, 0, 1}, ord) < 0);
    EXPECT_TRUE(compare(ExponentVector{1, 1, 0}, ExponentVector{0, 0, 2}, w) > 0);
}

TEST(Order, LinearityAndTotality) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(0, 9);
    auto rnd = [&] { return ExponentVector{d(rng), d(rng), d(rng)}; };
    for (const auto& ord : {OrderSpec::lex(), OrderSpec::weighted({10, 10, 10}), OrderSpec::weighted({2, 3, 7}),
                            OrderSpec::weighted({16, 4, 2})}) {
        for (int trial = 0; trial < 10000; ++trial) {
            auto a = rnd(), b = rnd(), c = rnd(), e = rnd();
            const auto ab = compare(a, b, ord);
            EXPECT_EQ(ab == 0, a == b);
            EXPECT_EQ(compare(b, a, ord), 0 <=> ab);
            if (ab < 0 && compare(c, e, ord) < 0) EXPECT_TRUE(compare(a + c, b + e, ord) < 0);
            if (ab < 0) EXPECT_TRUE(compare(a + c, b + c, ord) < 0);
        }
    }
}

TEST(Coprime, Examples) {
    auto x1 = IntegerPolynomial::variable(3, 0), x2 = IntegerPolynomial::variable(3, 1);
    EXPECT_TRUE(is_coprime(x1 * x1 + x2 * x2, x1 + x2));
    EXPECT_FALSE(is_coprime(x1 * x2, x1));
    auto f = poly({{{2, 0, 0}, 5}, {{0, 2, 0}, 1}, {{0, 0, 2}, 1}, {{0, 0, 0}, -6}});
    EXPECT_FALSE(is_coprime(f, f));
    EXPECT_EQ(gcd(x1 * x1 - x2 * x2, x1 * x1 + Integer(2) * (x1 * x2) + x2 * x2), x1 + x2);
}

TEST(Coprime, AgreesWithResultantOracle) {
    std::mt19937_64 rng(7);
    std::bernoulli_distribution share(0.4);
    int coprime = 0, not_coprime = 0;
    for (int trial = 0; trial < 150; ++trial) {
        // monic in x1, so common factors have positive x1-degree
        auto monic = [&](int d) {
            IntegerPolynomial p = random_poly(rng, 2, 3, 3);
            IntegerPolynomial trimmed(3);
            for (const auto& [e, c] : p.terms())
                if (e[0] < d) trimmed.add_term(e, c);
            trimmed.add_term(ExponentVector{d, 0, 0}, 1);
            return trimmed;
        };
        IntegerPolynomial f = monic(1 + static_cast<int>(rng() % 2)), h = monic(1 + static_cast<int>(rng() % 2));
        if (share(rng)) {
            IntegerPolynomial c = monic(1);
            f = f * c;
            h = h * c;
        }
        const bool expect = oracle::coprime_by_resultant(f, h);
        EXPECT_EQ(is_coprime(f, h), expect) << f.to_string() << " | " << h.to_string();
        (expect ? coprime : not_coprime)++;
    }
    EXPECT_GT(coprime, 20);
    EXPECT_GT(not_coprime, 20);
}

TEST(Wronskian, Examples) {
    const auto t = RationalPolynomial::t();
    EXPECT_EQ(wronskian({RationalPolynomial(1), t}), RationalPolynomial(1));
    EXPECT_EQ(wronskian({t, t * t}), t * t);
    const auto t1 = t + RationalPolynomial(1);
    // t^2 (t+1) (-t-3)
    EXPECT_EQ(wronskian({t.pow(3), t1.pow(2)}), t * t * t1 * (RationalPolynomial(-3) - t));
}

TEST(Wronskian, DivisibleByPowerProduct) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = 2 + trial % 2;
        std::vector<RationalPolynomial> gam, pw;
        RationalPolynomial prod(1);
        for (std::size_t i = 0; i < r; ++i) {
            gam.push_back(random_upoly(rng, 3));
            const unsigned l = static_cast<unsigned>(r - 1 + rng() % 3);
            pw.push_back(gam.back().pow(l));
            prod = prod * gam.back().pow(l - static_cast<unsigned>(r - 1));
        }
        EXPECT_TRUE(polynomial_divides(prod, wronskian(pw)));
    }
}
