#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace detm;
using boost::multiprecision::abs;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

namespace {

UnlikePowersInstance unlike(int k, int l, int m, long N, std::int64_t B) {
    UnlikePowersInstance u;
    u.k = k;
    u.l = l;
    u.m = m;
    u.N = N;
    u.B = B;
    return u;
}

IntegerPolynomial poly4(std::initializer_list<std::pair<std::vector<int>, long>> terms) {
    IntegerPolynomial p(4);
    for (const auto& [e, c] : terms) p.add_term(ExponentVector(e), Integer(c));
    return p;
}

}  // namespace

TEST(Quadric, BruteCounts) {
    EXPECT_EQ(count_quadric_brute({1, 1, 1, 5, 10}), 24);
    EXPECT_EQ(count_quadric_brute({5, 1, 1, 6, 2}), 8);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        long a1 = 1 + rng() % 6, a2 = 1 + rng() % 4, a3 = -static_cast<long>(1 + rng() % 4), n = 1 + rng() % 30;
        QuadricInstance q{a1, a2, a3, n, static_cast<std::int64_t>(2 + rng() % 12)};
        try {
            q.validate();
        } catch (const HypothesisViolation&) {
            continue;
        }
        EXPECT_EQ(count_quadric_brute(q), oracle::quadric_count(a1, a2, a3, n, q.B));
    }
}

TEST(Quadric, Validation) {
    EXPECT_THROW(count_quadric_brute({0, 1, 1, 5, 3}), HypothesisViolation);
    EXPECT_THROW(count_quadric_brute({2, 2, 2, 4, 3}), HypothesisViolation);
    EXPECT_THROW(count_quadric_brute({1, 1, -1, 1, 3}), HypothesisViolation);  // -a1a2a3n = 1
}

TEST(Quadric, FormulaValues) {
    EXPECT_EQ(q_of_n(0), 1);
    EXPECT_EQ(q_of_n(2), 9);
    EXPECT_EQ(q_of_n(3), 16);
    EXPECT_LE(abs(k_prime(64, 4096) - 128), Real(128) * Real(1e-12));
}

TEST(Quadric, PipelineMatchesBrute) {
    QuadricInstance inst{5, 1, 1, 6, 40};
    auto r = count_quadric_pipeline(inst, 0.5);
    EXPECT_EQ(r.count, r.brute_count);
    EXPECT_EQ(r.count, 8);
    EXPECT_TRUE(r.Q_matches);
    EXPECT_EQ(r.cover.escapes, 0u);
    EXPECT_TRUE(r.cover.polynomials_sound());
    EXPECT_EQ(r.cover.hypothesis, "constant-term");

    QuadricInstance indefinite{1, 3, -7, 2, 20};
    ResidueData res;
    res.primes = {Integer(5)};
    auto s = count_quadric_pipeline(indefinite, 0.25, res);
    EXPECT_EQ(s.count, oracle::quadric_count(1, 3, -7, 2, 20));
    EXPECT_EQ(s.q, 7);
    EXPECT_EQ(s.cover.escapes, 0u);
    for (const auto& x : enumerate_points(s.f, SideCondition::none(), BoxBounds::equal(20), false).points)
        EXPECT_EQ(oracle::eval(s.f, x), 0);
}

TEST(Slice, Examples) {
    auto h = poly4({{{2, 0, 0, 0}, 1}, {{1, 0, 0, 1}, -1}, {{0, 0, 0, 2}, 1}});
    auto g = poly4({{{0, 3, 0, 0}, 1}, {{0, 0, 2, 0}, 1}, {{0, 0, 0, 0}, -2}});
    auto s = build_slice(1, 1, 0, h, g, 1);
    IntegerPolynomial want(3);
    want.add_term(ExponentVector{2, 0, 0}, 3);
    want.add_term(ExponentVector{1, 0, 0}, -3);
    want.add_term(ExponentVector{0, 0, 0}, 1);
    EXPECT_EQ(s.h_u, want);
    auto lin = build_slice(0, 2, 0, poly4({{{0, 0, 0, 1}, 1}}), g, 4);
    EXPECT_EQ(lin.h_u, IntegerPolynomial::constant(3, 4));
    EXPECT_THROW(build_slice(1, 0, 0, h, g, 1), std::invalid_argument);
}

TEST(Slice, ThreefoldPointsLieOnSlices) {
    const auto inst = unlike(5, 3, 2, 4, 3);
    const auto h = odd_power_cofactor(5);
    const auto g = unlike_side(inst, 4);
    const auto F = unlike_polynomial(inst);
    int checked = 0;
    for (std::int64_t a = -3; a <= 3; ++a)
        for (std::int64_t b = -3; b <= 3; ++b)
            for (std::int64_t c = -3; c <= 3; ++c)
                for (std::int64_t d = -3; d <= 3; ++d) {
                    std::vector<Integer> x{a, b, c, d};
                    if (oracle::eval(F, x) != 0) continue;
                    auto s = build_slice(1, 1, 0, h, g, a + d);
                    EXPECT_EQ(oracle::eval(s.surface, Point{a, b, c}), 0);
                    ++checked;
                }
    EXPECT_GT(checked, 0);
}

TEST(Unlike, Examples) {
    EXPECT_EQ(count_unlike_brute(unlike(5, 3, 2, 4, 1)), 2);
    EXPECT_EQ(count_unlike_meet(unlike(5, 3, 2, 4, 1)), 2);
    const auto none = unlike(13, 3, 2, 1000000, 2);
    EXPECT_EQ(count_unlike(none, UnlikeMode::brute).count, 0);
    EXPECT_EQ(count_unlike(none, UnlikeMode::meet_in_middle).count, 0);
    EXPECT_EQ(count_unlike(none, UnlikeMode::sliced_pipeline).count, 0);
}

TEST(Unlike, MeetAgreesWithBruteAndOracle) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 8), l = 2 + static_cast<int>(rng() % 6), m = 2 + static_cast<int>(rng() % 5);
        const std::int64_t B = 1 + static_cast<std::int64_t>(rng() % (trial < 6 ? 20 : 8));
        std::uniform_int_distribution<std::int64_t> coord(-B, B);
        const long N = static_cast<long>(oracle::ipow128(coord(rng), k) + oracle::ipow128(coord(rng), l) +
                                         oracle::ipow128(coord(rng), m) + oracle::ipow128(coord(rng), k));
        const auto u = unlike(k, l, m, N, B);
        const Integer want = oracle::unlike_count(k, l, m, N, B);
        EXPECT_EQ(count_unlike_brute(u), want);
        EXPECT_EQ(count_unlike_meet(u), want);
    }
}

TEST(Unlike, SlicedAgreesWithBrute) {
    for (auto [N, B] : std::vector<std::pair<long, std::int64_t>>{{2, 3}, {1, 2}, {-3, 3}, {9, 2}}) {
        const auto u = unlike(13, 3, 2, N, B);
        EXPECT_EQ(count_unlike_sliced(u).count, count_unlike_brute(u)) << N << " " << B;
    }
}

TEST(GcdPowerSum, Examples) {
    auto r = gcd_power_sum(Real(-0.5), 4, 2);
    const Real want = 2 + 1 / sqrt(Real(3)) + 1 / sqrt(Real(2));
    EXPECT_LT(abs(r.sum - want), Real(1e-25));
    auto plain = gcd_power_sum(Real(-0.3), 50, 1);
    Real s = 0;
    for (int u = 1; u <= 50; ++u) s += pow(Real(u), Real(-0.3));
    EXPECT_LT(abs(plain.sum - s), Real(1e-25));
    EXPECT_THROW(gcd_power_sum(Real(0.5), 4, 2), std::invalid_argument);
}

TEST(GcdPowerSum, SumBelowMajorant) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        const Real alpha = -Real(1 + rng() % 999) / 1000;
        const std::int64_t X = 1 + static_cast<std::int64_t>(rng() % 2000), n = 1 + static_cast<std::int64_t>(rng() % 1000);
        auto r = gcd_power_sum(alpha, X, n);
        EXPECT_LE(r.sum, r.majorant);
        EXPECT_LT(abs(r.sum - r.sum_direct), Real(1e-25) * r.sum);
    }
}

TEST(WronskianBound, Examples) {
    const auto t = RationalPolynomial::t();
    auto rep = wronskian_bound_check({t, RationalPolynomial(1) - t * t}, {2, 1});
    EXPECT_TRUE(rep.applicable);
    EXPECT_EQ(rep.lhs, 2);
    EXPECT_EQ(rep.rhs, 2);
    EXPECT_TRUE(rep.pass);
    auto single = wronskian_bound_check({RationalPolynomial(3)}, {2});
    EXPECT_TRUE(single.applicable);
    EXPECT_EQ(single.lhs, 0);
    EXPECT_EQ(single.rhs, 0);
    EXPECT_FALSE(wronskian_bound_check({t, t, RationalPolynomial(1) - t - t}, {1, 1, 1}).applicable);
}

TEST(Subvarieties, Structure) {
    const auto u = unlike(13, 3, 2, 2, 2);
    auto systems = excluded_subvariety_systems(u);
    EXPECT_EQ(systems.size(), 4u);
    auto rep = excluded_subvarieties(u);
    EXPECT_EQ(rep.systems[0].points, 10);
    EXPECT_TRUE(rep.consistent);
    EXPECT_EQ(rep.total, oracle::unlike_count(13, 3, 2, 2, 2));
    // x1^13 + x4^13 = 0 forces x4 = -x1 over the integers
    for (std::int64_t a = -2; a <= 2; ++a)
        for (std::int64_t d = -2; d <= 2; ++d)
            if (oracle::ipow128(a, 13) + oracle::ipow128(d, 13) == 0) EXPECT_EQ(d, -a);
}

TEST(PredictedExponents, Values) {
    auto q = predicted_exponents(QuadricInstance{1, 1, 1, 5, 10});
    ASSERT_EQ(q.B_exponents.size(), 3u);
    EXPECT_EQ(q.B_exponents[0], Real(4) / 3);
    EXPECT_EQ(q.B_exponents[1], Real(7) / 6);
    EXPECT_EQ(q.B_exponents[2], Real(1) / 2);
    EXPECT_EQ(q.a_exponents[0], Real(-1) / 3);
    EXPECT_EQ(q.a_exponents[1], Real(-1) / 6);
    EXPECT_EQ(q.a_exponents[2], 0);
    auto u = predicted_exponents(unlike(13, 3, 2, 1, 10));
    EXPECT_LT(abs(u.B_exponents[0] - (Real(4) / 3 + Real(5) / 6 / sqrt(Real(12)))), Real(1e-30));
    EXPECT_LT(abs(u.B_exponents[0] - Real(1.57393)), Real(1e-4));
    ASSERT_TRUE(u.comparison);
    EXPECT_LT(abs(*u.comparison - (Real(4) / 3 + 1 / sqrt(Real(13)))), Real(1e-30));
}

TEST(Fit, PowerLawAndConstant) {
    auto sq = fit_exponent({{10, 100}, {100, 10000}, {1000, 1000000}});
    EXPECT_LT(abs(sq.slope - 2), Real(1e-9));
    auto flat = fit_exponent({{10, 7}, {100, 7}, {1000, 7}});
    EXPECT_LT(abs(flat.slope), Real(1e-20));
    auto zeros = fit_exponent({{10, 0}, {100, 0}, {1000, 0}});
    EXPECT_TRUE(zeros.shifted);
    EXPECT_LT(abs(zeros.slope), Real(1e-20));
    EXPECT_THROW(fit_exponent({{10, 1}, {100, 2}}), std::invalid_argument);
    EXPECT_THROW(fit_exponent({{10, 1}, {10, 2}, {100, 3}}), std::invalid_argument);
    EXPECT_THROW(fit_exponent({{10, 1}, {20, -2}, {100, 3}}), std::invalid_argument);
}

TEST(Fit, SphereSlope) {
    std::vector<std::pair<Integer, Integer>> data;
    for (long B : {10L, 30L, 100L, 300L}) data.emplace_back(B, count_quadric_brute({1, 1, 1, 5, B}));
    EXPECT_LE(fit_exponent(data).slope, Real(1.2));
}
