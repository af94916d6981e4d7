#include "remezgen/json_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "remezgen/errors.hpp"

namespace remez {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw SpecParseError(where + ": " + what);
}

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(where, "expected an object");
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) fail(where, "unknown field '" + key + "'");
    }
}

double need_num(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) fail(where, std::string(key) + " must be a number");
    return j.at(key).get<double>();
}

double opt_num(const json& j, const std::string& where, const char* key, double dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number()) fail(where, std::string(key) + " must be a number");
    return j.at(key).get<double>();
}

int need_int(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer())
        fail(where, std::string(key) + " must be an integer");
    return j.at(key).get<int>();
}

int opt_int(const json& j, const std::string& where, const char* key, int dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number_integer()) fail(where, std::string(key) + " must be an integer");
    return j.at(key).get<int>();
}

std::string opt_str(const json& j, const std::string& where, const char* key,
                    const std::string& dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_string()) fail(where, std::string(key) + " must be a string");
    return j.at(key).get<std::string>();
}

std::vector<double> need_vec(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) fail(where, std::string(key) + " must be an array");
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) fail(where, std::string(key) + " entries must be numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

bool parse_form(const json& j, const std::string& where) {
    const std::string form = opt_str(j, where, "form", "cos");
    if (form == "cos") return true;
    if (form == "sin") return false;
    fail(where, "form must be 'cos' or 'sin'");
}

// ---- system ---------------------------------------------------------------

Domain parse_domain(const json& j) {
    const std::string where = "system.domain";
    check_keys(j, where, {"kind", "a", "b"});
    const std::string kind = opt_str(j, where, "kind", "interval");
    if (kind == "interval") return Domain::interval(need_num(j, where, "a"), need_num(j, where, "b"));
    if (kind == "half_line") {
        if (j.contains("b")) fail(where, "half_line takes no endpoint b");
        return Domain::half_line(need_num(j, where, "a"));
    }
    fail(where, "kind must be 'interval' or 'half_line'");
}

json domain_json(const Domain& d) {
    json j;
    if (d.is_half_line()) {
        j["kind"] = "half_line";
        j["a"] = d.a;
    } else {
        j["kind"] = "interval";
        j["a"] = d.a;
        j["b"] = d.b;
    }
    return j;
}

BasisPtr parse_basis_entry(const json& j, int index, json& canon) {
    const std::string where = "system.basis[" + std::to_string(index) + "]";
    const std::string family = opt_str(j, where, "family", "");
    if (family == "power") {
        check_keys(j, where, {"family", "exponent"});
        const int e = need_int(j, where, "exponent");
        canon = {{"family", "power"}, {"exponent", e}};
        return std::make_shared<PowerBasis>(e);
    }
    if (family == "exp_trig") {
        check_keys(j, where, {"family", "rate", "power", "freq", "form"});
        const double rate = need_num(j, where, "rate");
        const int power = opt_int(j, where, "power", 0);
        const double freq = opt_num(j, where, "freq", 0.0);
        const bool is_cos = parse_form(j, where);
        canon = {{"family", "exp_trig"}, {"rate", rate},         {"power", power},
                 {"freq", freq},         {"form", is_cos ? "cos" : "sin"}};
        return std::make_shared<ExpTrigBasis>(rate, power, freq, is_cos);
    }
    if (family == "gaussian") {
        check_keys(j, where, {"family", "center", "width"});
        const double c = need_num(j, where, "center"), w = need_num(j, where, "width");
        canon = {{"family", "gaussian"}, {"center", c}, {"width", w}};
        return std::make_shared<GaussianBasis>(c, w);
    }
    if (family == "cauchy") {
        check_keys(j, where, {"family", "center", "width"});
        const double c = need_num(j, where, "center"), w = need_num(j, where, "width");
        canon = {{"family", "cauchy"}, {"center", c}, {"width", w}};
        return std::make_shared<CauchyBasis>(c, w);
    }
    if (family == "spline") {
        check_keys(j, where, {"family", "knots", "values"});
        auto knots = need_vec(j, where, "knots");
        auto values = need_vec(j, where, "values");
        canon = {{"family", "spline"}, {"knots", knots}, {"values", values}};
        return std::make_shared<SplineBasis>(std::move(knots), std::move(values));
    }
    if (family == "chirp") {
        check_keys(j, where, {"family", "scale"});
        const double s = need_num(j, where, "scale");
        canon = {{"family", "chirp"}, {"scale", s}};
        return std::make_shared<ChirpBasis>(s);
    }
    fail(where, "unknown basis family '" + family + "'");
}

SystemPtr parse_system(const json& j, json& canon) {
    check_keys(j, "system", {"domain", "basis"});
    if (!j.contains("domain") || !j.contains("basis")) fail("system", "needs domain and basis");
    Domain domain = parse_domain(j.at("domain"));
    if (!j.at("basis").is_array() || j.at("basis").empty())
        fail("system.basis", "must be a non-empty array");
    std::vector<BasisPtr> basis;
    json cb = json::array();
    int i = 0;
    for (const auto& entry : j.at("basis")) {
        json ce;
        basis.push_back(parse_basis_entry(entry, i++, ce));
        cb.push_back(std::move(ce));
    }
    canon = {{"domain", domain_json(domain)}, {"basis", std::move(cb)}};
    return std::make_shared<FunctionSystem>(std::move(basis), domain);
}

// ---- target ---------------------------------------------------------------

TargetFn parse_term(const json& j, int index, const SystemPtr& system, json& canon) {
    const std::string where = "target.terms[" + std::to_string(index) + "]";
    const std::string kind = opt_str(j, where, "kind", "");
    if (kind == "polynomial") {
        check_keys(j, where, {"kind", "coeffs"});
        auto c = need_vec(j, where, "coeffs");
        canon = {{"kind", "polynomial"}, {"coeffs", c}};
        return [c](double t) {
            double v = 0.0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
            return v;
        };
    }
    if (kind == "combo") {
        check_keys(j, where, {"kind", "coeffs"});
        auto c = need_vec(j, where, "coeffs");
        if (static_cast<int>(c.size()) != system->n())
            fail(where, "combo needs exactly n coefficients");
        canon = {{"kind", "combo"}, {"coeffs", c}};
        return [c, system](double t) {
            double v = 0.0;
            for (int k = 0; k < system->n(); ++k) v += c[k] * system->eval(k, t);
            return v;
        };
    }
    if (kind == "exp_trig") {
        check_keys(j, where, {"kind", "amplitude", "rate", "power", "freq", "form"});
        const double a = opt_num(j, where, "amplitude", 1.0);
        const double rate = need_num(j, where, "rate");
        const int power = opt_int(j, where, "power", 0);
        const double freq = opt_num(j, where, "freq", 0.0);
        const bool is_cos = parse_form(j, where);
        canon = {{"kind", "exp_trig"}, {"amplitude", a}, {"rate", rate},
                 {"power", power},     {"freq", freq},   {"form", is_cos ? "cos" : "sin"}};
        auto basis = std::make_shared<ExpTrigBasis>(rate, power, freq, is_cos);
        return [a, basis](double t) { return a * basis->eval(t); };
    }
    if (kind == "gaussian" || kind == "cauchy") {
        check_keys(j, where, {"kind", "amplitude", "center", "width"});
        const double a = opt_num(j, where, "amplitude", 1.0);
        const double c = need_num(j, where, "center"), w = need_num(j, where, "width");
        canon = {{"kind", kind}, {"amplitude", a}, {"center", c}, {"width", w}};
        BasisPtr basis;
        if (kind == "gaussian")
            basis = std::make_shared<GaussianBasis>(c, w);
        else
            basis = std::make_shared<CauchyBasis>(c, w);
        return [a, basis](double t) { return a * basis->eval(t); };
    }
    if (kind == "abs") {
        check_keys(j, where, {"kind", "amplitude", "center"});
        const double a = opt_num(j, where, "amplitude", 1.0);
        const double c = opt_num(j, where, "center", 0.0);
        canon = {{"kind", "abs"}, {"amplitude", a}, {"center", c}};
        return [a, c](double t) { return a * std::abs(t - c); };
    }
    if (kind == "exp_abs") {
        check_keys(j, where, {"kind", "amplitude", "center", "rate"});
        const double a = opt_num(j, where, "amplitude", 1.0);
        const double c = opt_num(j, where, "center", 0.0);
        const double r = need_num(j, where, "rate");
        canon = {{"kind", "exp_abs"}, {"amplitude", a}, {"center", c}, {"rate", r}};
        return [a, c, r](double t) { return a * std::exp(r * std::abs(t - c)); };
    }
    if (kind == "trig_phase") {
        check_keys(j, where, {"kind", "amplitude", "form", "phase_coeffs"});
        const double a = opt_num(j, where, "amplitude", 1.0);
        const bool is_cos = parse_form(j, where);
        auto c = need_vec(j, where, "phase_coeffs");
        canon = {{"kind", "trig_phase"},
                 {"amplitude", a},
                 {"form", is_cos ? "cos" : "sin"},
                 {"phase_coeffs", c}};
        return [a, is_cos, c](double t) {
            double phase = 0.0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) phase = phase * t + *it;
            return a * (is_cos ? std::cos(phase) : std::sin(phase));
        };
    }
    if (kind == "trig_mod_phase") {
        // amplitude * cos/sin(scale * t^power * cos(freq t))
        check_keys(j, where, {"kind", "amplitude", "form", "scale", "power", "freq"});
        const double a = opt_num(j, where, "amplitude", 1.0);
        const bool is_cos = parse_form(j, where);
        const double s = need_num(j, where, "scale");
        const int p = opt_int(j, where, "power", 1);
        const double w = need_num(j, where, "freq");
        canon = {{"kind", "trig_mod_phase"}, {"amplitude", a}, {"form", is_cos ? "cos" : "sin"},
                 {"scale", s},               {"power", p},     {"freq", w}};
        return [a, is_cos, s, p, w](double t) {
            const double phase = s * std::pow(t, p) * std::cos(w * t);
            return a * (is_cos ? std::cos(phase) : std::sin(phase));
        };
    }
    if (kind == "chirp") {
        check_keys(j, where, {"kind", "amplitude", "scale"});
        const double a = opt_num(j, where, "amplitude", 1.0);
        const double s = need_num(j, where, "scale");
        canon = {{"kind", "chirp"}, {"amplitude", a}, {"scale", s}};
        auto basis = std::make_shared<ChirpBasis>(s);
        return [a, basis](double t) { return a * basis->eval(t); };
    }
    if (kind == "samples") {
        check_keys(j, where, {"kind", "knots", "values"});
        auto knots = need_vec(j, where, "knots");
        auto values = need_vec(j, where, "values");
        canon = {{"kind", "samples"}, {"knots", knots}, {"values", values}};
        auto spline = std::make_shared<CubicSpline>(std::move(knots), std::move(values));
        return [spline](double t) { return spline->eval(t); };
    }
    fail(where, "unknown target term kind '" + kind + "'");
}

TargetFn parse_target(const json& j, const SystemPtr& system, json& canon) {
    check_keys(j, "target", {"terms"});
    if (!j.contains("terms") || !j.at("terms").is_array() || j.at("terms").empty())
        fail("target", "needs a non-empty terms array");
    std::vector<TargetFn> terms;
    json ct = json::array();
    int i = 0;
    for (const auto& entry : j.at("terms")) {
        json ce;
        terms.push_back(parse_term(entry, i++, system, ce));
        ct.push_back(std::move(ce));
    }
    canon = {{"terms", std::move(ct)}};
    return [terms](double t) {
        double v = 0.0;
        for (const auto& g : terms) v += g(t);
        return v;
    };
}

// ---- constraints ----------------------------------------------------------

std::shared_ptr<ConstraintSet> parse_constraints(const json& j, const SystemPtr& system,
                                                 json& canon) {
    if (!j.is_array() || j.empty()) fail("constraints", "must be a non-empty array");
    std::vector<LinearFunctional> ells;
    std::vector<double> targets;
    canon = json::array();
    int i = 0;
    for (const auto& entry : j) {
        const std::string where = "constraints[" + std::to_string(i++) + "]";
        const std::string kind = opt_str(entry, where, "kind", "");
        if (kind == "point") {
            check_keys(entry, where, {"kind", "t", "value"});
            const double t = need_num(entry, where, "t");
            ells.push_back(point_eval_functional(*system, t));
            targets.push_back(need_num(entry, where, "value"));
            canon.push_back({{"kind", "point"}, {"t", t}, {"value", targets.back()}});
        } else if (kind == "derivative") {
            check_keys(entry, where, {"kind", "t", "order", "value"});
            const double t = need_num(entry, where, "t");
            const int order = opt_int(entry, where, "order", 1);
            ells.push_back(derivative_functional(*system, t, order));
            targets.push_back(need_num(entry, where, "value"));
            canon.push_back(
                {{"kind", "derivative"}, {"t", t}, {"order", order}, {"value", targets.back()}});
        } else if (kind == "coeff_sum") {
            check_keys(entry, where, {"kind", "combo", "value"});
            Eigen::VectorXd combo = Eigen::VectorXd::Ones(system->n());
            std::vector<double> cv(system->n(), 1.0);
            if (entry.contains("combo")) {
                cv = need_vec(entry, where, "combo");
                if (static_cast<int>(cv.size()) != system->n())
                    fail(where, "combo needs exactly n entries");
                for (int k = 0; k < system->n(); ++k) combo(k) = cv[k];
            }
            ells.push_back(coeff_combination_functional(*system, combo));
            targets.push_back(need_num(entry, where, "value"));
            canon.push_back({{"kind", "coeff_sum"}, {"combo", cv}, {"value", targets.back()}});
        } else if (kind == "integral") {
            check_keys(entry, where, {"kind", "value"});
            ells.push_back(integral_functional(*system));
            targets.push_back(need_num(entry, where, "value"));
            canon.push_back({{"kind", "integral"}, {"value", targets.back()}});
        } else {
            fail(where, "unknown constraint kind '" + kind + "'");
        }
    }
    return std::make_shared<ConstraintSet>(system, std::move(ells), std::move(targets));
}

// ---- options --------------------------------------------------------------

SolverOptions parse_options(const json& j, json& canon) {
    const std::string where = "options";
    check_keys(j, where,
               {"epsilon", "max_iters", "nu", "delta", "init_points", "grid_points",
                "refine_iters", "cert_tol", "seed", "cheap_search", "stall_window", "stall_ratio",
                "cond_limit", "tail_tol", "keep_trace"});
    SolverOptions opts;
    opts.epsilon = opt_num(j, where, "epsilon", opts.epsilon);
    opts.max_iters = opt_int(j, where, "max_iters", opts.max_iters);
    opts.nu = opt_num(j, where, "nu", opts.nu);
    opts.delta = opt_num(j, where, "delta", opts.delta);
    if (j.contains("init_points")) opts.init_points = need_vec(j, where, "init_points");
    opts.grid.total_points = opt_int(j, where, "grid_points", opts.grid.total_points);
    opts.grid.refine_iters = opt_int(j, where, "refine_iters", opts.grid.refine_iters);
    opts.cert_tol = opt_num(j, where, "cert_tol", opts.cert_tol);
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_integer()) fail(where, "seed must be an integer");
        opts.seed = j.at("seed").get<unsigned>();
    }
    if (j.contains("cheap_search")) {
        if (!j.at("cheap_search").is_boolean()) fail(where, "cheap_search must be a boolean");
        opts.cheap_search = j.at("cheap_search").get<bool>();
    }
    opts.stall_window = opt_int(j, where, "stall_window", opts.stall_window);
    opts.stall_ratio = opt_num(j, where, "stall_ratio", opts.stall_ratio);
    opts.cond_limit = opt_num(j, where, "cond_limit", opts.cond_limit);
    opts.tail_tol = opt_num(j, where, "tail_tol", opts.tail_tol);
    if (j.contains("keep_trace")) {
        if (!j.at("keep_trace").is_boolean()) fail(where, "keep_trace must be a boolean");
        opts.keep_trace = j.at("keep_trace").get<bool>();
    }

    canon = {{"epsilon", opts.epsilon},
             {"max_iters", opts.max_iters},
             {"nu", opts.nu},
             {"delta", opts.delta},
             {"grid_points", opts.grid.total_points},
             {"refine_iters", opts.grid.refine_iters},
             {"cert_tol", opts.cert_tol},
             {"seed", opts.seed},
             {"cheap_search", opts.cheap_search},
             {"stall_window", opts.stall_window},
             {"stall_ratio", opts.stall_ratio},
             {"cond_limit", opts.cond_limit},
             {"tail_tol", opts.tail_tol},
             {"keep_trace", opts.keep_trace}};
    if (!opts.init_points.empty()) canon["init_points"] = opts.init_points;
    return opts;
}

}  // namespace

ProblemSpec parse_problem(const json& j) {
    check_keys(j, "spec", {"system", "target", "constraints", "options"});
    if (!j.contains("system") || !j.contains("target"))
        fail("spec", "needs 'system' and 'target'");

    ProblemSpec spec;
    json cs, ct, cc, co;
    try {
        spec.system = parse_system(j.at("system"), cs);
        spec.target = parse_target(j.at("target"), spec.system, ct);
        if (j.contains("constraints"))
            spec.constraints = parse_constraints(j.at("constraints"), spec.system, cc);
        spec.options = parse_options(j.contains("options") ? j.at("options") : json::object(), co);
    } catch (const SpecParseError&) {
        throw;
    } catch (const DegeneracyError&) {
        throw;
    } catch (const std::exception& e) {
        throw SpecParseError(e.what());
    }

    spec.normalized = {{"system", std::move(cs)}, {"target", std::move(ct)},
                       {"options", std::move(co)}};
    if (spec.constraints) spec.normalized["constraints"] = std::move(cc);
    return spec;
}

ProblemSpec load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecParseError("cannot open spec file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SpecParseError(std::string("invalid JSON: ") + e.what());
    }
    return parse_problem(j);
}

const char* mode_name(StepMode mode) {
    return mode == StepMode::Plain ? "plain" : "regularized";
}

nlohmann::json result_to_json(const ApproxResult& res) {
    json j;
    j["coeffs"] = std::vector<double>(res.poly.coeffs.begin(), res.poly.coeffs.end());
    j["b"] = res.lower;
    j["B"] = res.upper;
    j["distance"] = res.upper;
    j["iterations"] = res.iterations;
    j["converged"] = res.converged;
    j["search_lo"] = res.search_lo;
    j["search_hi"] = res.search_hi;
    j["tail_sup"] = res.tail_sup;

    json alt = json::array();
    for (int i = 0; i < res.alternance.size(); ++i)
        alt.push_back({{"t", res.alternance.points[i]},
                       {"sign", res.alternance.signs[i]},
                       {"weight", res.alpha.weights(i)}});
    j["alternance"] = std::move(alt);

    json modes = json::array();
    for (const auto& row : res.trace) modes.push_back(mode_name(row.mode));
    j["mode_history"] = std::move(modes);

    j["certificate"] = {{"equal_modulus", res.certificate.equal_modulus},
                        {"weights_valid", res.certificate.weights_valid},
                        {"null_combination", res.certificate.null_combination},
                        {"modulus_min", res.certificate.modulus_min},
                        {"null_residual", res.certificate.null_residual}};
    return j;
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "k,b,B,r,alpha0,mode\n";
    for (const auto& row : trace)
        out << row.k << ',' << row.b << ',' << row.B << ',' << row.r << ',' << row.alpha0 << ','
            << mode_name(row.mode) << '\n';
    return out.str();
}

std::string samples_csv(const Poly& p, const TargetFn& f, double lo, double hi, int count) {
    if (count < 2) throw std::invalid_argument("need at least 2 sample points");
    std::ostringstream out;
    out << std::setprecision(17);
    out << "t,f,p,err\n";
    for (int i = 0; i < count; ++i) {
        const double t = lo + (hi - lo) * i / (count - 1.0);
        const double fv = f(t), pv = p.eval(t);
        out << t << ',' << fv << ',' << pv << ',' << fv - pv << '\n';
    }
    return out.str();
}

}  // namespace remez
