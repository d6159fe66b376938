#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace detm;

namespace {

IntegerPolynomial side(long a2, long a3, long n) {
    IntegerPolynomial g(3);
    g.add_term(ExponentVector{0, 2, 0}, a2);
    g.add_term(ExponentVector{0, 0, 2}, a3);
    g.add_term(ExponentVector{0, 0, 0}, -n);
    return g;
}

DenseMatrix<Integer> ints(std::initializer_list<std::initializer_list<long>> rows) {
    DenseMatrix<Integer> a;
    for (const auto& r : rows) {
        a.emplace_back();
        for (long v : r) a.back().push_back(Integer(v));
    }
    return a;
}

ExponentSet columns(std::initializer_list<ExponentVector> cols) {
    ExponentSet E;
    E.members.assign(cols);
    E.index.insert(E.members.begin(), E.members.end());
    return E;
}

// 5x1^2 + x2^2 + x3^2 = 6, x2^2 + x3^2 = 6 mod 5, box 2
struct EightPoints {
    IntegerPolynomial f = diagonal_quadric(5, 1, 1, 6);
    IntegerPolynomial g = side(1, 1, 6);
    BoxBounds box = BoxBounds::equal(2);
    std::vector<Point> pts = enumerate_points(f, SideCondition::congruence(g, 5), box, false).points;
    ExponentSet E = build_exponent_set(LogHeight::power(2, 3), ExponentVector{2, 0, 0}, box, box.height_order());
};

}  // namespace

TEST(Matrix, RowsAndForcedStructure) {
    auto E = columns({ExponentVector{0, 0, 0}, ExponentVector{1, 0, 0}, ExponentVector{0, 1, 1}});
    auto M = build_matrix({Point{1, 2, 3}, Point{0, 0, 0}, Point{0, 5, -2}}, E);
    EXPECT_EQ(M.entries()[0], (std::vector<Integer>{1, 1, 6}));
    EXPECT_EQ(M.entries()[1], (std::vector<Integer>{1, 0, 0}));
    EXPECT_EQ(M.entry(2, 1), 0);
    EXPECT_THROW(build_matrix({}, E), std::invalid_argument);
}

TEST(Matrix, Rank) {
    EXPECT_EQ(rank_over_rationals(ints({{1, 1}, {1, 1}})), 1u);
    EXPECT_EQ(rank_over_rationals(ints({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), 3u);
    EightPoints s;
    ASSERT_EQ(s.pts.size(), 8u);
    ASSERT_EQ(s.E.size(), 16u);
    EXPECT_LE(rank_over_rationals(build_matrix(s.pts, s.E)), 8u);
}

TEST(Matrix, Determinant) {
    EXPECT_EQ(determinant(ints({{2, 3}, {5, 7}})), -1);
    EXPECT_EQ(determinant(ints({{1, 2, 3}, {4, 5, 6}, {1, 2, 3}})), 0);
    EXPECT_EQ(determinant(ints({{1, 1, 1}, {1, 2, 4}, {1, 3, 9}})), 2);
    EXPECT_THROW(determinant(ints({{1, 2}})), std::invalid_argument);
}

TEST(Matrix, BareissAgreesWithCofactorExpansion) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> v(-50, 50);
    std::bernoulli_distribution sparse(0.3);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + trial % 5;
        DenseMatrix<Integer> a(n, std::vector<Integer>(n));
        for (auto& row : a)
            for (auto& x : row) x = sparse(rng) ? 0 : v(rng);
        if (trial % 7 == 0 && n > 1) a[n - 1] = a[0];
        EXPECT_EQ(determinant(a), oracle::cofactor_det(a));
    }
}

TEST(Valuation, Examples) {
    EXPECT_EQ(p_adic_valuation(48, 2), ExtNat(4));
    EXPECT_TRUE(p_adic_valuation(0, 7).is_infinite());
    EXPECT_EQ(p_adic_valuation(Integer(625 * 7), 5), ExtNat(4));
}

TEST(Kernel, TwoByTwo) {
    auto E = columns({ExponentVector{0, 0, 0}, ExponentVector{1, 0, 0}});
    auto M = build_matrix({Point{1, 0, 0}, Point{1, 5, 5}}, E);
    auto x1 = IntegerPolynomial::variable(3, 0);
    auto aux = null_space_polynomial(M, diagonal_quadric(1, 1, 1, 1));
    auto one_minus = IntegerPolynomial::constant(3, 1) - x1;
    EXPECT_TRUE(aux.poly == one_minus || aux.poly == -one_minus);
}

TEST(Kernel, EightPointQuadric) {
    EightPoints s;
    auto aux = null_space_polynomial(build_matrix(s.pts, s.E), s.f);
    EXPECT_FALSE(aux.poly.is_zero());
    for (const auto& x : s.pts) EXPECT_EQ(oracle::eval(aux.poly, x), 0);
    EXPECT_TRUE(aux.coprime_to_f);
    EXPECT_TRUE(oracle::coprime_by_resultant(s.f, aux.poly));
    for (const auto& [e, c] : aux.poly.terms()) EXPECT_TRUE(s.E.contains(e));
}

TEST(Certificate, LambdaFourInstance) {
    EightPoints s;
    auto M = build_matrix(s.pts, s.E);
    auto cert = congruence_reduce(M, s.g, 5, ExponentVector{0, 0, 0}, s.E, Integer(4));
    EXPECT_EQ(cert.lambda, 4u);
    EXPECT_EQ(cert.modulus, 625);
    EXPECT_TRUE(cert.valid());
    EXPECT_TRUE(cert.checked_minors.empty());
}

TEST(Certificate, LambdaZeroIsTrivial) {
    EightPoints s;
    auto E = build_exponent_set(LogHeight::power(2, 1), ExponentVector{2, 0, 0}, s.box, s.box.height_order());
    std::vector<Point> pts(s.pts.begin(), s.pts.begin() + 4);
    auto cert = congruence_reduce(build_matrix(pts, E), s.g, 5, ExponentVector{0, 0, 0}, E, Integer(4));
    EXPECT_EQ(cert.lambda, 0u);
    EXPECT_EQ(cert.modulus, 1);
    EXPECT_TRUE(cert.valid());
    ASSERT_FALSE(cert.checked_minors.empty());
    EXPECT_EQ(cert.checked_minors[0].determinant, cert.checked_minors[0].reduced_determinant * cert.transform_det);
}

TEST(Certificate, SyntheticMinorDivisibility) {
    // points with x2^2 + x3^2 = 6 mod 5; columns 1 and x2^0: mu(0,0,0) = 1 at Y = 2 log 2
    auto g = side(1, 1, 6);
    BoxBounds box = BoxBounds::equal(2);
    auto E = build_exponent_set(LogHeight::power(2, 2), ExponentVector{2, 0, 0}, box, box.height_order());
    std::vector<Point> pts;
    for (std::int64_t a = -2; a <= 2 && pts.size() < E.size(); ++a)
        for (std::int64_t b = -2; b <= 2 && pts.size() < E.size(); ++b)
            for (std::int64_t c = -2; c <= 2 && pts.size() < E.size(); ++c)
                if (oracle::mod(oracle::eval(g, Point{a, b, c}), 5) == 0) pts.push_back({a, b, c});
    ASSERT_EQ(pts.size(), E.size());
    auto M = build_matrix(pts, E);
    auto cert = congruence_reduce(M, g, 5, ExponentVector{0, 0, 0}, E, Integer(4), {8, 3, true});
    EXPECT_EQ(cert.lambda, lambda_total(E, ExponentVector{0, 0, 0}, Integer(4)));
    for (const auto& mc : cert.checked_minors) {
        const Integer oracle_det = oracle::cofactor_det([&] {
            DenseMatrix<Integer> sub;
            for (auto r : mc.rows) sub.push_back(M.entries()[r]);
            return sub;
        }());
        EXPECT_EQ(mc.determinant, oracle_det);
        EXPECT_TRUE(oracle_det == 0 || p_adic_valuation(oracle_det, 5).value() >= cert.lambda);
    }
    EXPECT_TRUE(cert.valid());
}

TEST(Certificate, RejectsBadInput) {
    EightPoints s;
    auto M = build_matrix(s.pts, s.E);
    EXPECT_THROW(congruence_reduce(M, s.g, 6, ExponentVector{0, 0, 0}, s.E, Integer(4)), std::invalid_argument);
    EXPECT_THROW(congruence_reduce(M, s.g, 5, ExponentVector{0, 1, 0}, s.E, Integer(4)), HypothesisViolation);
    auto bad = build_matrix({Point{1, 1, 1}}, s.E);
    EXPECT_THROW(congruence_reduce(bad, s.g, 5, ExponentVector{0, 0, 0}, s.E, Integer(4)), std::invalid_argument);
}

TEST(Certificate, TopDegreeChoice) {
    auto g = side(1, 3, 10);
    EXPECT_EQ(select_t(g, 5), (ExponentVector{0, 2, 0}));
    EXPECT_EQ(select_t(g, 3), (ExponentVector{0, 0, 0}));
    EXPECT_EQ(select_t(side(5, 1, 10), 5), (ExponentVector{0, 0, 2}));
    EXPECT_THROW(select_t(side(5, 5, 10), 5), HypothesisViolation);
}

TEST(Pipeline, SingleClassCoversEverything) {
    EightPoints s;
    PointSet P{s.pts, s.box, false};
    auto rep = aux_pipeline(s.f, s.g, 1, s.box, {}, 0.5, P);
    EXPECT_EQ(rep.r, 1);
    EXPECT_EQ(rep.classes.size(), 1u);
    EXPECT_FALSE(rep.falsified());
    EXPECT_EQ(rep.escapes, 0u);
    EXPECT_TRUE(rep.polynomials_sound());
    ASSERT_TRUE(rep.classes[0].aux_index);
    for (const auto& x : s.pts) EXPECT_EQ(oracle::eval(rep.polynomials[*rep.classes[0].aux_index].poly, x), 0);
}

TEST(Pipeline, SmallThresholdBranch) {
    // large q pushes K_eps below 1
    const long q = 1000003;
    auto f = diagonal_quadric(q, 1, -1, 7);
    auto g = side(1, -1, 7);
    BoxBounds box = BoxBounds::equal(4);
    PointSet P = enumerate_points(f, SideCondition::congruence(g, q), box, false);
    ResidueData res;
    res.primes = {Integer(11)};
    auto rep = aux_pipeline(f, g, q, box, res, 0.05, P);
    EXPECT_TRUE(rep.small_threshold);
    EXPECT_EQ(rep.r, 1);
    EXPECT_LE(rep.classes.size(), 1u);
    EXPECT_EQ(rep.escapes, 0u);
}

TEST(Pipeline, ResidueClassesAndCoverage) {
    auto f = diagonal_quadric(7, 1, -1, 3);
    auto g = side(1, -1, 3);
    BoxBounds box = BoxBounds::equal(12);
    PointSet P = enumerate_points(f, SideCondition::congruence(g, 7), box, false);
    ResidueData res;
    res.primes = {Integer(5)};
    PipelineOptions opt;
    opt.log_threshold = Real(1);
    auto rep = aux_pipeline(f, g, 7, box, res, 0.5, P, opt);
    EXPECT_EQ(rep.r, 5);
    EXPECT_EQ(rep.escapes, 0u);
    EXPECT_EQ(rep.off_surface, 0u);
    EXPECT_TRUE(rep.polynomials_sound());
    auto split = residue_split(P, f, res);
    for (const auto& c : rep.classes) {
        if (!c.aux_index) continue;
        for (const auto& x : split.at(c.key).points)
            EXPECT_EQ(oracle::eval(rep.polynomials[*c.aux_index].poly, x), 0);
    }
}

TEST(Pipeline, HypothesisViolations) {
    auto f = diagonal_quadric(5, 1, 1, 10);
    EXPECT_THROW(aux_pipeline(f, side(1, 1, 10), 5, BoxBounds(2, 3, 3), {}, 0.5, PointSet{}), HypothesisViolation);
    EXPECT_THROW(aux_pipeline(f, side(5, 5, 10), 5, BoxBounds::equal(3), {}, 0.5, PointSet{}), HypothesisViolation);
    EXPECT_EQ(check_side_hypothesis(side(1, 1, 10), 5, BoxBounds::equal(3)), "top-degree");
    EXPECT_EQ(check_side_hypothesis(side(1, 1, 6), 5, BoxBounds(2, 3, 3)), "constant-term");
}
