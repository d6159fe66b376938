/**
 * @file report.hpp
 * @brief JSON run configurations and deterministic reports.
 *
 * Requires nlohmann/json (single header "json.hpp" on the include path).
 * Every number in a report is an object {"value", "provenance"} with
 * provenance one of "exact", "float" or "main-term-diagnostic". Integers are
 * written as decimal strings.
 */
#pragma once

#include "detmethod/detmethod.hpp"

#include "json.hpp"

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace detm {

using json = nlohmann::ordered_json;

/// Malformed or incomplete configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr const char* kCommands[] = {"enumerate", "certify", "aux", "quadric", "unlike", "fit"};

struct RunConfig {
    std::string command;
    json instance = json::object();
    std::uint64_t seed = 1;
    unsigned threads = 1;
    Real epsilon = Real(1) / 2;
    std::optional<Real> c_epsilon;
    std::size_t minor_samples = 32;
    Integer sieve_cap = 100000000;
    unsigned n_cap = 256;
    bool record_timings = false;
};

namespace report {

inline json exact(const Integer& v) { return {{"value", v.get_str()}, {"provenance", "exact"}}; }
inline json exact(long long v) { return exact(Integer(static_cast<long>(v))); }
inline json exact_bool(bool v) { return {{"value", v}, {"provenance", "exact"}}; }
inline json flt(const Real& v) { return {{"value", format_real(v, 20)}, {"provenance", "float"}}; }
inline json main_term(const Real& v) { return {{"value", format_real(v, 20)}, {"provenance", "main-term-diagnostic"}}; }
inline json ext(const ExtNat& v) {
    return {{"value", v.is_infinite() ? std::string("inf") : std::to_string(v.value())}, {"provenance", "exact"}};
}

inline json exponent(const ExponentVector& e) { return json(e.components()); }

inline json point(const Point& x) { return json::array({x[0], x[1], x[2]}); }

inline json points(const std::vector<Point>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(point(x));
    return {{"value", a}, {"provenance", "exact"}};
}

inline json polynomial(const IntegerPolynomial& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back(json::array({exponent(e), c.get_str()}));
    return {{"text", p.to_string()}, {"terms", terms}, {"degree", exact(p.degree())}};
}

// ------------------------------------------------------------- parsing

inline const json& field(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError("missing field '" + ctx + key + "'");
    return j.at(key);
}

inline Integer parse_integer(const json& v, const std::string& name) {
    try {
        if (v.is_number_integer()) return Integer(v.get<long>());
        if (v.is_string()) return Integer(v.get<std::string>());
    } catch (const std::exception&) {
    }
    throw ConfigError("field '" + name + "' must be an integer or a decimal string");
}

inline std::int64_t parse_int64(const json& v, const std::string& name) {
    Integer x = parse_integer(v, name);
    if (!fits_int64(x)) throw ConfigError("field '" + name + "' is out of range");
    return to_int64(x);
}

inline Real parse_real(const json& v, const std::string& name) {
    if (v.is_number()) return Real(v.get<double>());
    if (v.is_string()) {
        try {
            return Real(v.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw ConfigError("field '" + name + "' must be a number");
}

/// Polynomial as a list of [exponent-vector, coefficient] pairs.
inline IntegerPolynomial parse_polynomial(const json& v, std::size_t nvars, const std::string& name) {
    if (!v.is_array()) throw ConfigError("field '" + name + "' must be a list of [exponents, coefficient] pairs");
    IntegerPolynomial p(nvars);
    for (const auto& term : v) {
        if (!term.is_array() || term.size() != 2 || !term[0].is_array() || term[0].size() != nvars)
            throw ConfigError("field '" + name + "': each term must be [[e1,..,e" + std::to_string(nvars) +
                              "], coefficient]");
        std::vector<int> e;
        for (const auto& x : term[0]) {
            if (!x.is_number_integer() || x.get<long>() < 0)
                throw ConfigError("field '" + name + "': exponents must be non-negative integers");
            e.push_back(x.get<int>());
        }
        p.add_term(ExponentVector(e), parse_integer(term[1], name));
    }
    return p;
}

inline BoxBounds parse_box(const json& inst, const std::string& ctx) {
    if (inst.contains("box")) {
        const json& b = inst.at("box");
        if (!b.is_array() || b.size() != 3) throw ConfigError("field '" + ctx + "box' must be [B1, B2, B3]");
        try {
            return BoxBounds(parse_int64(b[0], ctx + "box"), parse_int64(b[1], ctx + "box"),
                             parse_int64(b[2], ctx + "box"));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("field '" + ctx + "box': " + e.what());
        }
    }
    std::int64_t B = parse_int64(field(inst, "B", ctx), ctx + "B");
    if (B < 1) throw ConfigError("field '" + ctx + "B' must be positive");
    return BoxBounds::equal(B);
}

inline ResidueData parse_residues(const json& inst, const std::string& ctx) {
    ResidueData r;
    if (!inst.contains("residues")) return r;
    const json& v = inst.at("residues");
    if (!v.is_array()) throw ConfigError("field '" + ctx + "residues' must be a list of primes");
    for (const auto& p : v) r.primes.push_back(parse_integer(p, ctx + "residues"));
    return r;
}

inline RunConfig parse_config(const json& doc, const std::string& command_hint = {}) {
    if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
    RunConfig cfg;
    if (doc.contains("command")) cfg.command = doc.at("command").get<std::string>();
    if (!command_hint.empty()) {
        if (!cfg.command.empty() && cfg.command != command_hint)
            throw ConfigError("field 'command' is '" + cfg.command + "' but the subcommand is '" + command_hint + "'");
        cfg.command = command_hint;
    }
    if (cfg.command.empty()) throw ConfigError("missing field 'command'");
    if (std::find(std::begin(kCommands), std::end(kCommands), cfg.command) == std::end(kCommands))
        throw ConfigError("field 'command': unknown command '" + cfg.command + "'");
    cfg.instance = field(doc, "instance", "");
    if (!cfg.instance.is_object()) throw ConfigError("field 'instance' must be an object");
    if (doc.contains("seed")) cfg.seed = static_cast<std::uint64_t>(parse_int64(doc.at("seed"), "seed"));
    if (doc.contains("threads")) {
        auto t = parse_int64(doc.at("threads"), "threads");
        if (t < 1 || t > 256) throw ConfigError("field 'threads' must lie in [1, 256]");
        cfg.threads = static_cast<unsigned>(t);
    }
    if (doc.contains("epsilon")) {
        cfg.epsilon = parse_real(doc.at("epsilon"), "epsilon");
        if (!(cfg.epsilon > 0 && cfg.epsilon <= 10)) throw ConfigError("field 'epsilon' must lie in (0, 10]");
    }
    if (doc.contains("c_epsilon") && !doc.at("c_epsilon").is_null()) {
        cfg.c_epsilon = parse_real(doc.at("c_epsilon"), "c_epsilon");
        if (!(*cfg.c_epsilon >= 1)) throw ConfigError("field 'c_epsilon' must be at least 1");
    }
    if (doc.contains("minor_samples")) {
        auto m = parse_int64(doc.at("minor_samples"), "minor_samples");
        if (m < 0 || m > 100000) throw ConfigError("field 'minor_samples' must lie in [0, 100000]");
        cfg.minor_samples = static_cast<std::size_t>(m);
    }
    if (doc.contains("sieve_cap")) {
        cfg.sieve_cap = parse_integer(doc.at("sieve_cap"), "sieve_cap");
        if (cfg.sieve_cap < 0) throw ConfigError("field 'sieve_cap' must be non-negative");
    }
    if (doc.contains("n_cap")) {
        auto n = parse_int64(doc.at("n_cap"), "n_cap");
        if (n < 1 || n > 4096) throw ConfigError("field 'n_cap' must lie in [1, 4096]");
        cfg.n_cap = static_cast<unsigned>(n);
    }
    if (doc.contains("record_timings")) cfg.record_timings = doc.at("record_timings").get<bool>();
    return cfg;
}

// ------------------------------------------------------------- sections

inline json params_json(const MethodParams& p) {
    return {{"m", exponent(p.m)},     {"T_m", exact(p.T_m)},         {"log_T_m", flt(p.log_T_m)},
            {"S_height", exact(p.S_height)}, {"S", flt(p.S)},          {"q", exact(p.q)},
            {"epsilon", flt(p.epsilon)}, {"K", flt(p.K)},              {"log_K", flt(p.log_K)},
            {"K_eps", flt(p.K_eps)},   {"log_K_eps", flt(p.log_K_eps)}, {"R", flt(p.R)}};
}

inline json certificate_json(const DivisibilityCertificate& c) {
    json minors = json::array();
    for (const auto& m : c.checked_minors)
        minors.push_back({{"rows", m.rows},
                          {"determinant", exact(m.determinant)},
                          {"reduced_determinant", exact(m.reduced_determinant)},
                          {"valuation", ext(m.valuation)},
                          {"identity_holds", m.identity_holds},
                          {"divisible", m.divisible}});
    return {{"prime", exact(c.prime)},
            {"prime_exponent", exact(static_cast<long long>(c.prime_exponent))},
            {"q", exact(c.q)},
            {"lambda", exact(static_cast<long long>(c.lambda))},
            {"modulus", exact(c.modulus)},
            {"t", exponent(c.t)},
            {"c_t", exact(c.c_t)},
            {"z", exact(c.z)},
            {"s", exact(c.s)},
            {"g_q", polynomial(c.g_q)},
            {"transform_det", exact(c.transform_det)},
            {"checked_minors", minors},
            {"valid", c.valid()}};
}

inline json ychoice_json(const YChoice& y) {
    json j = {{"height", exact(y.Y.height())}, {"log", flt(y.Y.value())}};
    if (y.n) j["n"] = exact(static_cast<long long>(*y.n));
    else j["window_start"] = flt(y.window_start);
    j["constraint_evaluations"] = exact(static_cast<long long>(y.constraint_evaluations));
    return j;
}

struct Sections {
    json result = json::object();
    json certificates = json::array();
    json diagnostics = json::object();
    json provenance = json::object();
};

inline void cover_sections(const CoverReport& rep, Sections& s) {
    json polys = json::array();
    for (std::size_t i = 0; i < rep.polynomials.size(); ++i) {
        const auto& p = rep.polynomials[i];
        json pj = polynomial(p.poly);
        pj["role"] = rep.derivative_index && *rep.derivative_index == i ? "partial-derivative" : "auxiliary";
        pj["coprime_to_f"] = p.coprime_to_f;
        pj["support_in_E"] = p.support_in_E;
        pj["vanishing_points"] = exact(static_cast<long long>(p.vanishes_on.size()));
        if (!(rep.derivative_index && *rep.derivative_index == i)) pj["degree_bound"] = flt(p.degree_bound);
        polys.push_back(pj);
    }
    json classes = json::array();
    for (const auto& c : rep.classes) {
        json key = json::array();
        for (const auto& t : c.key) key.push_back(point(t));
        json cj = {{"key", key},
                   {"J", exact(static_cast<long long>(c.J))},
                   {"E", exact(static_cast<long long>(c.E))},
                   {"rank", exact(static_cast<long long>(c.rank))},
                   {"case", c.full_rank ? "full-rank" : "rank-deficient"}};
        if (c.aux_index) cj["polynomial"] = exact(static_cast<long long>(*c.aux_index));
        if (c.nonzero_minor) {
            cj["nonzero_minor"] = exact(*c.nonzero_minor);
            cj["nonzero_minor_rows"] = c.nonzero_minor_rows;
            json vals = json::object();
            for (const auto& pp : factor(rep.params.q))
                vals[pp.prime.get_str()] = ext(p_adic_valuation(*c.nonzero_minor, pp.prime));
            for (const auto& r : rep.residues.primes) vals[r.get_str()] = ext(p_adic_valuation(*c.nonzero_minor, r));
            cj["nonzero_minor_valuations"] = vals;
        }
        classes.push_back(cj);
        for (const auto& cert : c.certificates) {
            json cc = certificate_json(cert);
            cc["class"] = key;
            s.certificates.push_back(cc);
        }
    }
    s.result["polynomial_count"] = exact(static_cast<long long>(rep.polynomials.size()));
    s.result["polynomials"] = polys;
    s.result["Z"] = points(rep.Z);
    s.result["classes"] = classes;
    s.result["input_points"] = exact(static_cast<long long>(rep.input_points));
    s.result["escapes"] = exact(static_cast<long long>(rep.escapes));
    s.result["off_surface"] = exact(static_cast<long long>(rep.off_surface));
    s.result["falsified"] = rep.falsified();
    s.result["certificates_valid"] = rep.certificates_valid();
    s.result["polynomials_sound"] = rep.polynomials_sound();

    s.diagnostics["params"] = params_json(rep.params);
    s.diagnostics["log_threshold"] = flt(rep.log_threshold);
    s.diagnostics["E"] = exact(static_cast<long long>(rep.E));
    s.diagnostics["E1"] = exact(static_cast<long long>(rep.E1));
    s.diagnostics["E_main_term"] = main_term(rep.main.count);
    s.diagnostics["sum_log"] = flt(rep.stats.sum_log);
    s.diagnostics["sum_log_main_term"] = main_term(rep.main.sum_log);
    s.diagnostics["lambda_main_term"] = main_term(rep.lambda_main_term);
    s.diagnostics["r"] = exact(rep.r);

    s.provenance["hypothesis"] = rep.hypothesis;
    s.provenance["branch"] = rep.small_threshold ? "threshold-at-most-one" : "residue-classes";
    s.provenance["Y"] = ychoice_json(rep.Y);
    s.provenance["c_epsilon"] = flt(rep.c_epsilon);
    json ts = json::array();
    for (const auto& c : rep.classes)
        for (const auto& cert : c.certificates)
            ts.push_back({{"prime", cert.prime.get_str()}, {"t", exponent(cert.t)}});
    s.provenance["t_choices"] = ts;
    json rp = json::array();
    for (const auto& r : rep.residues.primes) rp.push_back(r.get_str());
    s.provenance["residue_primes"] = rp;
}

inline EnumerateOptions enumerate_options(const RunConfig& cfg) {
    EnumerateOptions o;
    o.sieve_cap = cfg.sieve_cap;
    o.threads = cfg.threads;
    return o;
}

inline PipelineOptions pipeline_options(const RunConfig& cfg) {
    PipelineOptions o;
    o.c_epsilon = cfg.c_epsilon;
    o.n_cap = cfg.n_cap;
    o.random_minors = cfg.minor_samples;
    o.seed = cfg.seed;
    return o;
}

struct SurfaceInput {
    IntegerPolynomial f{3};
    std::optional<IntegerPolynomial> g;
    Integer q = 1;
    BoxBounds box = BoxBounds::equal(1);
};

inline SurfaceInput parse_surface(const json& inst, bool need_g) {
    SurfaceInput s;
    s.f = parse_polynomial(field(inst, "f", "instance."), 3, "instance.f");
    if (s.f.is_zero()) throw ConfigError("field 'instance.f' is the zero polynomial");
    if (inst.contains("g")) s.g = parse_polynomial(inst.at("g"), 3, "instance.g");
    else if (need_g) throw ConfigError("missing field 'instance.g'");
    if (inst.contains("q")) s.q = parse_integer(inst.at("q"), "instance.q");
    if (s.q < 1) throw ConfigError("field 'instance.q' must be positive");
    if (!s.g && s.q != 1) throw ConfigError("field 'instance.q' given without 'instance.g'");
    s.box = parse_box(inst, "instance.");
    return s;
}

inline SideCondition side_of(const SurfaceInput& s) {
    return s.g ? SideCondition::congruence(*s.g, s.q) : SideCondition::none();
}

// ------------------------------------------------------------- commands

inline void run_enumerate(const RunConfig& cfg, Sections& s) {
    const json& inst = cfg.instance;
    SurfaceInput in = parse_surface(inst, false);
    const bool nonsingular = inst.value("nonsingular_only", false);
    PointSet ps = enumerate_points(in.f, side_of(in), in.box, nonsingular, enumerate_options(cfg));
    s.result["count"] = exact(static_cast<long long>(ps.size()));
    if (inst.value("list_points", true)) s.result["points"] = points(ps.points);
    ResidueData res = parse_residues(inst, "instance.");
    if (!res.primes.empty()) {
        res.validate(in.q);
        json cls = json::array();
        std::size_t kept = 0;
        for (const auto& [key, set] : residue_split(ps, in.f, res)) {
            json k = json::array();
            for (const auto& t : key) k.push_back(point(t));
            cls.push_back({{"key", k}, {"size", exact(static_cast<long long>(set.size()))}});
            kept += set.size();
        }
        s.result["classes"] = cls;
        s.result["points_with_nonsingular_reductions"] = exact(static_cast<long long>(kept));
    }
    s.provenance["sieve"] = in.g && in.q > 1 && in.q * in.q <= cfg.sieve_cap ? "residue-table" : "direct";
}

inline LogHeight parse_Y(const json& inst, const BoxBounds& box) {
    const json& y = field(inst, "Y", "instance.");
    if (y.contains("n")) {
        if (!box.is_equal()) throw ConfigError("field 'instance.Y.n' needs an equal box; use 'height' instead");
        auto n = parse_int64(y.at("n"), "instance.Y.n");
        if (n < 0) throw ConfigError("field 'instance.Y.n' must be non-negative");
        return LogHeight::power(box[0], static_cast<unsigned>(n));
    }
    if (y.contains("height")) return LogHeight(parse_integer(y.at("height"), "instance.Y.height"));
    if (y.contains("log")) return LogHeight::from_log(parse_real(y.at("log"), "instance.Y.log"));
    throw ConfigError("field 'instance.Y' needs one of 'n', 'height' or 'log'");
}

inline void run_certify(const RunConfig& cfg, Sections& s) {
    const json& inst = cfg.instance;
    SurfaceInput in = parse_surface(inst, true);
    MethodParams p = compute_params(in.f, *in.g, in.q, in.box, OrderSpec::lex(), cfg.epsilon);
    LogHeight Y = parse_Y(inst, in.box);
    ExponentSet E = build_exponent_set(Y, p.m, in.box, in.box.height_order());
    std::vector<Point> pts;
    if (inst.contains("points")) {
        for (const auto& x : inst.at("points")) {
            if (!x.is_array() || x.size() != 3) throw ConfigError("field 'instance.points' must hold [x1,x2,x3] triples");
            pts.push_back({parse_int64(x[0], "instance.points"), parse_int64(x[1], "instance.points"),
                           parse_int64(x[2], "instance.points")});
        }
    } else {
        pts = enumerate_points(in.f, side_of(in), in.box, false, enumerate_options(cfg)).points;
    }
    s.result["J"] = exact(static_cast<long long>(pts.size()));
    s.result["E"] = exact(static_cast<long long>(E.size()));
    s.diagnostics["params"] = params_json(p);
    s.provenance["Y"] = {{"height", exact(Y.height())}, {"log", flt(Y.value())}};
    if (pts.empty()) {
        s.result["status"] = "no points";
        return;
    }
    MonomialMatrix M = build_matrix(pts, E);
    s.result["rank"] = exact(static_cast<long long>(rank_over_rationals(M)));
    ReductionOptions ro;
    ro.random_minors = cfg.minor_samples;
    ro.seed = cfg.seed;
    bool all_valid = true;
    json ts = json::array();
    for (const auto& c : certify(M, *in.g, in.q, E, p.S_height, ro)) {
        all_valid = all_valid && c.valid();
        s.certificates.push_back(certificate_json(c));
        ts.push_back({{"prime", c.prime.get_str()}, {"t", exponent(c.t)}});
    }
    s.result["status"] = pts.size() >= E.size() ? "minors-checked" : "J < E: no E x E minors";
    s.result["certificates_valid"] = all_valid;
    s.provenance["t_choices"] = ts;
}

inline void run_aux(const RunConfig& cfg, Sections& s) {
    const json& inst = cfg.instance;
    SurfaceInput in = parse_surface(inst, true);
    ResidueData res = parse_residues(inst, "instance.");
    PipelineOptions opt = pipeline_options(cfg);
    if (inst.contains("bad_primes"))
        opt.bad_primes = bad_prime_product_user(parse_integer(inst.at("bad_primes"), "instance.bad_primes")).product;
    PointSet ps = enumerate_points(in.f, side_of(in), in.box, inst.value("nonsingular_only", false),
                                   enumerate_options(cfg));
    CoverReport rep = aux_pipeline(in.f, *in.g, in.q, in.box, res, cfg.epsilon, ps, opt);
    cover_sections(rep, s);
    s.provenance["bad_primes"] = opt.bad_primes ? json(opt.bad_primes->get_str()) : json(nullptr);
}

inline QuadricInstance parse_quadric(const json& inst) {
    const json& a = field(inst, "a", "instance.");
    if (!a.is_array() || a.size() != 3) throw ConfigError("field 'instance.a' must be [a1, a2, a3]");
    QuadricInstance q{parse_integer(a[0], "instance.a"), parse_integer(a[1], "instance.a"),
                      parse_integer(a[2], "instance.a"), parse_integer(field(inst, "n", "instance."), "instance.n"),
                      parse_int64(field(inst, "B", "instance."), "instance.B")};
    return q;
}

inline json exponents_json(const PredictedExponents& p) {
    json b = json::array(), a = json::array();
    for (const auto& x : p.B_exponents) b.push_back(flt(x));
    for (const auto& x : p.a_exponents) a.push_back(flt(x));
    json j = {{"B_exponents", b}, {"a_exponents", a}};
    if (p.comparison) j["comparison"] = flt(*p.comparison);
    return j;
}

inline void run_quadric(const RunConfig& cfg, Sections& s) {
    const json& inst = cfg.instance;
    QuadricInstance q = parse_quadric(inst);
    const std::string mode = inst.value("mode", std::string("brute"));
    s.provenance["mode"] = mode;
    s.diagnostics["predicted_exponents"] = exponents_json(predicted_exponents(q));
    if (mode == "brute") {
        s.result["count"] = exact(count_quadric_brute(q));
        return;
    }
    if (mode != "pipeline") throw ConfigError("field 'instance.mode' must be 'brute' or 'pipeline'");
    ResidueData res = parse_residues(inst, "instance.");
    QuadricPipelineResult r = count_quadric_pipeline(q, cfg.epsilon, res, pipeline_options(cfg), enumerate_options(cfg));
    cover_sections(r.cover, s);
    s.result["count"] = exact(r.count);
    s.result["brute_count"] = exact(r.brute_count);
    s.result["counts_agree"] = r.count == r.brute_count;
    s.diagnostics["K_prime"] = flt(r.K_prime);
    s.diagnostics["log_K_prime_eps"] = flt(r.log_K_prime_eps);
    s.diagnostics["Q_n"] = exact(r.Q_n);
    s.diagnostics["Q_matches_E"] = r.Q_matches;
    s.provenance["q"] = r.q.get_str();
    s.provenance["permutation"] = r.permutation;
    s.provenance["bad_primes"] = {{"product", r.bad_primes.product.get_str()}, {"source", r.bad_primes.source}};
}

inline UnlikePowersInstance parse_unlike(const json& inst) {
    UnlikePowersInstance u;
    u.k = static_cast<int>(parse_int64(field(inst, "k", "instance."), "instance.k"));
    u.l = static_cast<int>(parse_int64(field(inst, "l", "instance."), "instance.l"));
    u.m = static_cast<int>(parse_int64(field(inst, "m", "instance."), "instance.m"));
    u.N = parse_integer(field(inst, "N", "instance."), "instance.N");
    u.B = parse_int64(field(inst, "B", "instance."), "instance.B");
    return u;
}

inline void run_unlike(const RunConfig& cfg, Sections& s) {
    const json& inst = cfg.instance;
    UnlikePowersInstance u = parse_unlike(inst);
    const std::string mode = inst.value("mode", std::string("brute"));
    s.provenance["mode"] = mode;
    UnlikeMode um;
    if (mode == "brute") um = UnlikeMode::brute;
    else if (mode == "meet-in-middle") um = UnlikeMode::meet_in_middle;
    else if (mode == "sliced-pipeline") um = UnlikeMode::sliced_pipeline;
    else throw ConfigError("field 'instance.mode' must be 'brute', 'meet-in-middle' or 'sliced-pipeline'");
    UnlikeCount c = count_unlike(u, um, enumerate_options(cfg));
    s.result["count"] = exact(c.count);
    if (!c.slices.empty()) {
        json sl = json::array();
        for (const auto& x : c.slices) {
            json j = {{"u", exact(static_cast<long long>(x.u))},
                      {"q", exact(x.q)},
                      {"points", exact(static_cast<long long>(x.points))}};
            if (x.log_K) j["log_K"] = flt(*x.log_K);
            sl.push_back(j);
        }
        s.diagnostics["slices"] = sl;
        s.provenance["assumed_hypotheses"] = json::array({"every slice surface is geometrically irreducible"});
    }
    if (u.k >= 13 && u.k % 2 == 1 && u.k > u.l && u.l > u.m && u.N != 0)
        s.diagnostics["predicted_exponents"] = exponents_json(predicted_exponents(u));
    if (inst.value("partition", false)) {
        PartitionReport pr = excluded_subvarieties(u);
        json sys = json::array();
        for (const auto& x : pr.systems) sys.push_back({{"name", x.name}, {"points", exact(x.points)}});
        s.result["partition"] = {{"systems", sys},
                                 {"union", exact(pr.union_count)},
                                 {"none", exact(pr.none_count)},
                                 {"total", exact(pr.total)},
                                 {"consistent", pr.consistent}};
    }
}

inline void run_fit(const RunConfig& cfg, Sections& s) {
    const json& inst = cfg.instance;
    std::vector<std::pair<Integer, Integer>> data;
    if (inst.contains("counts")) {
        for (const auto& row : inst.at("counts")) {
            if (!row.is_array() || row.size() != 2) throw ConfigError("field 'instance.counts' must hold [B, count] pairs");
            data.emplace_back(parse_integer(row[0], "instance.counts"), parse_integer(row[1], "instance.counts"));
        }
    } else if (inst.contains("quadric")) {
        const json& qj = inst.at("quadric");
        const json& bs = field(qj, "B_values", "instance.quadric.");
        json copy = qj;
        for (const auto& b : bs) {
            copy["B"] = b;
            QuadricInstance q = parse_quadric(copy);
            data.emplace_back(Integer(static_cast<long>(q.B)), count_quadric_brute(q));
        }
        copy["B"] = bs.empty() ? json(1) : bs.front();
        s.diagnostics["predicted_exponents"] = exponents_json(predicted_exponents(parse_quadric(copy)));
    } else {
        throw ConfigError("missing field 'instance.counts' (or 'instance.quadric')");
    }
    FitResult f;
    try {
        f = fit_exponent(data);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("fit: ") + e.what());
    }
    json pts = json::array(), res = json::array();
    for (const auto& [B, c] : data) pts.push_back({exact(B), exact(c)});
    for (const auto& r : f.residuals) res.push_back(flt(r));
    s.result["data"] = pts;
    s.result["slope"] = flt(f.slope);
    s.result["intercept"] = flt(f.intercept);
    s.result["residuals"] = res;
    s.provenance["log_of_count_plus_one"] = f.shifted;
}

}  // namespace report

/// Executes a configuration and returns the report document.
inline json run(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    report::Sections s;
    if (cfg.command == "enumerate") report::run_enumerate(cfg, s);
    else if (cfg.command == "certify") report::run_certify(cfg, s);
    else if (cfg.command == "aux") report::run_aux(cfg, s);
    else if (cfg.command == "quadric") report::run_quadric(cfg, s);
    else if (cfg.command == "unlike") report::run_unlike(cfg, s);
    else if (cfg.command == "fit") report::run_fit(cfg, s);
    else throw ConfigError("field 'command': unknown command '" + cfg.command + "'");
    const auto stop = std::chrono::steady_clock::now();

    json prov = {{"command", cfg.command},
                 {"seed", std::to_string(cfg.seed)},
                 {"defaults",
                  {{"epsilon", report::flt(cfg.epsilon)},
                   {"c_epsilon", cfg.c_epsilon ? report::flt(*cfg.c_epsilon)
                                               : report::flt(default_c_epsilon(cfg.epsilon))},
                   {"minor_samples", report::exact(static_cast<long long>(cfg.minor_samples))},
                   {"sieve_cap", report::exact(cfg.sieve_cap)},
                   {"n_cap", report::exact(static_cast<long long>(cfg.n_cap))}}}};
    for (auto& [k, v] : s.provenance.items()) prov[k] = v;
    json timings = json::object();
    if (cfg.record_timings)
        timings["wall_ms"] = report::flt(Real(std::chrono::duration<double, std::milli>(stop - start).count()));
    return {{"instance", cfg.instance},
            {"result", s.result},
            {"certificates", s.certificates},
            {"diagnostics", s.diagnostics},
            {"timings", timings},
            {"provenance", prov}};
}

}  // namespace detm
