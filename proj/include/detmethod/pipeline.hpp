/**
 * @file pipeline.hpp
 * @brief Auxiliary polynomials covering the points of each residue class.
 */
#pragma once

#include "detmethod/certificate.hpp"
#include "detmethod/enumerate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace detm {

struct PipelineOptions {
    OrderSpec order = OrderSpec::lex();   // order used to pick m
    std::optional<Real> c_epsilon;        // default_c_epsilon(epsilon) when unset
    unsigned n_cap = 256;
    unsigned grid_points = 64;
    std::size_t random_minors = 32;
    std::uint64_t seed = 1;
    bool certify_classes = true;          // certificates for classes with J >= E
    std::optional<Real> log_threshold;    // replaces log K_eps (quadric K')
    std::string threshold_name = "K_eps";
    std::optional<Integer> bad_primes;    // pi_X; residue primes must not divide it
};

struct ClassReport {
    ResidueKey key;
    std::size_t J = 0;
    std::size_t E = 0;
    std::size_t rank = 0;
    bool full_rank = false;                  // some E x E minor is non-zero
    std::optional<std::size_t> aux_index;    // into CoverReport::polynomials
    std::vector<DivisibilityCertificate> certificates;
    std::optional<Integer> nonzero_minor;    // full-rank witness
    std::vector<std::size_t> nonzero_minor_rows;
};

struct CoverReport {
    std::string hypothesis;                  // "constant-term" or "top-degree"
    bool small_threshold = false;            // K_eps <= 1 branch
    MethodParams params;
    Real log_threshold = 0;
    Real c_epsilon = 0;
    Integer r = 1;
    ResidueData residues;
    YChoice Y;
    std::size_t E = 0;
    std::size_t E1 = 0;
    SetStatistics stats;
    MainTerms main;
    Real lambda_main_term = 0;               // 2 sqrt(2) R E^(3/2) / 3
    std::vector<ClassReport> classes;
    std::vector<AuxiliaryPolynomial> polynomials;
    std::optional<std::size_t> derivative_index;
    std::vector<Point> Z;
    std::size_t input_points = 0;
    std::size_t escapes = 0;
    std::size_t off_surface = 0;

    bool falsified() const {
        for (const auto& c : classes)
            if (c.full_rank) return true;
        return false;
    }
    bool certificates_valid() const {
        for (const auto& c : classes)
            for (const auto& cert : c.certificates)
                if (!cert.valid()) return false;
        return true;
    }
    bool polynomials_sound() const {
        for (std::size_t i = 0; i < polynomials.size(); ++i) {
            if (derivative_index && *derivative_index == i) continue;
            const auto& p = polynomials[i];
            if (p.poly.is_zero() || !p.coprime_to_f || !p.support_in_E) return false;
        }
        return true;
    }
};

/// Which hypothesis on (q, g) applies; throws when neither does.
inline std::string check_side_hypothesis(const IntegerPolynomial& g, const Integer& q, const BoxBounds& box) {
    if (gcd(q, g.constant_term()) == 1) return "constant-term";
    if (box.is_equal()) {
        const IntegerPolynomial g0 = top_degree_part(g);
        const int l = g0.degree();
        Integer d = gcd(q, g.constant_term());
        d = gcd(d, g0.coefficient(ExponentVector{0, l, 0}));
        d = gcd(d, g0.coefficient(ExponentVector{0, 0, l}));
        if (d == 1) return "top-degree";
        throw HypothesisViolation("gcd(q, g(0,0), g0(1,0), g0(0,1)) = " + to_string(d) + " > 1");
    }
    throw HypothesisViolation("gcd(q, g(0,0)) = " + to_string(gcd(q, g.constant_term())) +
                              " > 1 and the box is not equal");
}

inline AuxiliaryPolynomial derivative_cover(const IntegerPolynomial& f) {
    for (std::size_t i = 0; i < 3; ++i) {
        IntegerPolynomial d = partial_derivative(f, i);
        if (!d.is_zero()) {
            AuxiliaryPolynomial a;
            a.poly = d;
            a.degree = d.degree();
            a.coprime_to_f = d.is_constant() || is_coprime(d, f);
            a.support_in_E = false;
            return a;
        }
    }
    throw HypothesisViolation("f is constant");
}

/// Runs the determinant method on every class of the given points and
/// returns the auxiliary polynomials, the leftover set Z and certificates.
inline CoverReport aux_pipeline(const IntegerPolynomial& f, const IntegerPolynomial& g, const Integer& q,
                                const BoxBounds& box, const ResidueData& residues, const Real& epsilon,
                                const PointSet& points, const PipelineOptions& opt = {}) {
    using boost::multiprecision::log;
    using boost::multiprecision::pow;
    using boost::multiprecision::sqrt;
    if (f.nvars() != 3) throw std::invalid_argument("aux_pipeline: f must have 3 variables");
    CoverReport rep;
    rep.hypothesis = check_side_hypothesis(g, q, box);
    residues.validate(q);
    if (opt.bad_primes)
        for (const auto& r : residues.primes)
            if (divides(r, *opt.bad_primes))
                throw HypothesisViolation("residue prime " + to_string(r) + " divides the bad-prime product");
    rep.params = compute_params(f, g, q, box, opt.order, epsilon);
    rep.log_threshold = opt.log_threshold ? *opt.log_threshold : rep.params.log_K_eps;
    rep.c_epsilon = opt.c_epsilon ? *opt.c_epsilon : default_c_epsilon(epsilon);
    rep.small_threshold = rep.log_threshold <= 0;
    rep.input_points = points.size();

    std::map<ResidueKey, PointSet> classes;
    if (rep.small_threshold) {
        classes.emplace(ResidueKey{}, points);
    } else {
        rep.residues = residues;
        rep.r = residues.r();
        classes = residue_split(points, f, residues);
    }
    const Real log_r = log_of(rep.r);

    YSearch search;
    search.box = box;
    search.c_epsilon = rep.c_epsilon;
    search.n_cap = opt.n_cap;
    search.grid_points = opt.grid_points;
    search.mode = box.is_equal() ? YSearch::Mode::equal_box : YSearch::Mode::grid_scan;
    search.Z = rep.params.log_T_m;
    const ExponentVector m = rep.params.m;
    const OrderSpec col_order = box.height_order();
    YConstraint constraint;
    if (rep.small_threshold) {
        constraint = [](const YCandidate&) { return true; };
    } else {
        constraint = [&](const YCandidate& c) {
            auto Es = build_exponent_set(c.Y, m, box, col_order);
            return log(Real(Es.size())) / 2 + log_r > rep.log_threshold;
        };
    }
    rep.Y = choose_Y(search, constraint);
    const ExponentSet Eset = build_exponent_set(rep.Y.Y, m, box, col_order);
    rep.E = Eset.size();
    rep.E1 = Eset.restricted_members.size();
    rep.stats = set_statistics(Eset);
    rep.main = main_terms(Eset);
    rep.lambda_main_term = 2 * sqrt(Real(2)) * rep.params.R * pow(Real(rep.E), Real(1.5)) / 3;

    std::set<Point> covered_by_class;
    for (auto& [key, cls] : classes) {
        ClassReport cr;
        cr.key = key;
        cr.J = cls.size();
        cr.E = rep.E;
        if (cls.points.empty()) continue;
        const MonomialMatrix M = build_matrix(cls.points, Eset);
        cr.rank = rank_over_rationals(M);
        if (opt.certify_classes && cr.J >= cr.E && q > 1) {
            ReductionOptions ro;
            ro.random_minors = opt.random_minors;
            ro.seed = opt.seed;
            cr.certificates = certify(M, g, q, Eset, rep.params.S_height, ro);
        }
        if (cr.rank < cr.E) {
            AuxiliaryPolynomial aux = null_space_polynomial(M, f);
            aux.support_in_E = true;
            for (const auto& [e, c] : aux.poly.terms())
                if (!Eset.contains(e)) aux.support_in_E = false;
            aux.degree_bound = rep.Y.Y.value() / box.log_bmin();
            cr.aux_index = rep.polynomials.size();
            rep.polynomials.push_back(std::move(aux));
            for (const auto& x : cls.points) covered_by_class.insert(x);
        } else {
            cr.full_rank = true;
            // a non-singular E x E submatrix: the pivot rows of the transpose
            DenseMatrix<Integer> tr(cr.E, std::vector<Integer>(cr.J));
            for (std::size_t j = 0; j < cr.J; ++j)
                for (std::size_t c = 0; c < cr.E; ++c) tr[c][j] = M.entry(j, c);
            auto ech = fraction_free_echelon(tr, detail::exact_integer_div);
            cr.nonzero_minor_rows = ech.pivot_columns;
            cr.nonzero_minor = minor_determinant(M, cr.nonzero_minor_rows);
            for (const auto& x : cls.points) rep.Z.push_back(x);
        }
        rep.classes.push_back(std::move(cr));
    }

    rep.derivative_index = rep.polynomials.size();
    rep.polynomials.push_back(derivative_cover(f));
    const IntegerPolynomial& deriv = rep.polynomials.back().poly;

    std::set<Point> inZ(rep.Z.begin(), rep.Z.end());
    for (const auto& x : points.points) {
        if (evaluate(f, x) != 0) ++rep.off_surface;
        if (covered_by_class.count(x) || inZ.count(x) || evaluate(deriv, x) == 0) continue;
        // singular reduction modulo some r_i: not in any class
        rep.Z.push_back(x);
        inZ.insert(x);
    }
    std::sort(rep.Z.begin(), rep.Z.end());
    for (const auto& x : points.points) {
        bool ok = inZ.count(x) > 0;
        for (std::size_t i = 0; !ok && i < rep.polynomials.size(); ++i) ok = evaluate(rep.polynomials[i].poly, x) == 0;
        if (!ok) ++rep.escapes;
    }
    return rep;
}

}  // namespace detm
