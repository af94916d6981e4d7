#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "remezgen/applications.hpp"
#include "remezgen/errors.hpp"
#include "remezgen/json_io.hpp"
#include "remezgen/oracle_lp.hpp"
#include "remezgen/random_systems.hpp"
#include "remezgen/solver.hpp"

namespace {

using nlohmann::json;

constexpr int kExitParse = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitDegeneracy = 3;

void apply_seed_env(remez::SolverOptions& opts) {
    if (const char* env = std::getenv("REMEZGEN_SEED")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end == env || *end != '\0') throw remez::SpecParseError("REMEZGEN_SEED must be an unsigned integer");
        opts.seed = static_cast<unsigned>(v);
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

void emit_json(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << '\n';
    else
        write_text(out_path, j.dump(2) + "\n");
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw remez::SpecParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw remez::SpecParseError(std::string("invalid JSON: ") + e.what());
    }
    return j;
}

remez::SpectrumSpec parse_spectrum(const json& j) {
    if (!j.is_object() || !j.contains("eigenvalues") || !j.at("eigenvalues").is_array())
        throw remez::SpecParseError("spectrum needs an 'eigenvalues' array");
    remez::SpectrumSpec spec;
    for (const auto& e : j.at("eigenvalues")) {
        remez::SpectrumSpec::Eigenvalue ev;
        ev.re = e.at("re").get<double>();
        ev.im = e.value("im", 0.0);
        ev.jordan = e.value("jordan", 1);
        spec.eigenvalues.push_back(ev);
    }
    return spec;
}

struct ApproxFlags {
    std::string spec_path;
    std::string out_path;
    std::string trace_path;
    std::string samples_path = "samples.csv";
    int samples = 0;
    double epsilon = -1.0;
    int max_iters = -1;
};

int run_approx(const ApproxFlags& flags, bool constrained) {
    remez::ProblemSpec spec = remez::load_problem(flags.spec_path);
    if (constrained && !spec.constraints)
        throw remez::SpecParseError("approx-constrained needs a 'constraints' section");
    if (!constrained && spec.constraints)
        throw remez::SpecParseError("spec has constraints; use approx-constrained");

    if (flags.epsilon > 0) spec.options.epsilon = flags.epsilon;
    if (flags.max_iters > 0) spec.options.max_iters = flags.max_iters;
    apply_seed_env(spec.options);

    remez::ApproxResult res =
        constrained ? remez::solve_constrained(spec.system, spec.target, *spec.constraints,
                                               spec.options)
                    : remez::solve(spec.system, spec.target, spec.options);

    emit_json(remez::result_to_json(res), flags.out_path);
    if (!flags.trace_path.empty()) write_text(flags.trace_path, remez::trace_csv(res.trace));
    if (flags.samples > 0)
        write_text(flags.samples_path, remez::samples_csv(res.poly, spec.target, res.search_lo,
                                                          res.search_hi, flags.samples));
    return res.converged ? 0 : kExitNoConvergence;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"best uniform approximation over general function systems"};
    app.require_subcommand(1);

    ApproxFlags af;
    auto add_approx_flags = [&af](CLI::App* cmd) {
        cmd->add_option("spec", af.spec_path, "problem spec (JSON)")->required();
        cmd->add_option("-o,--out", af.out_path, "result JSON path (default: stdout)");
        cmd->add_option("--trace", af.trace_path, "write per-iteration CSV trace");
        cmd->add_option("--samples", af.samples, "write N (t, f, p, f-p) sample rows");
        cmd->add_option("--samples-out", af.samples_path, "sample CSV path");
        cmd->add_option("--epsilon", af.epsilon, "override termination tolerance");
        cmd->add_option("--max-iters", af.max_iters, "override iteration cap");
    };
    CLI::App* approx = app.add_subcommand("approx", "unconstrained best approximation");
    add_approx_flags(approx);
    CLI::App* approx_c =
        app.add_subcommand("approx-constrained", "best approximation under linear constraints");
    add_approx_flags(approx_c);

    CLI::App* mb = app.add_subcommand("mb", "Markov-Bernstein type constants");
    std::vector<int> mb_powers;
    std::string mb_spectrum_path, mb_out;
    int mb_order = 1;
    mb->add_option("--powers", mb_powers, "lacunary power set on [-1,1]")->delimiter(',');
    mb->add_option("--spectrum", mb_spectrum_path, "spectrum JSON for the exponential case");
    mb->add_option("--order", mb_order, "derivative order j");
    mb->add_option("-o,--out", mb_out, "output path (default: stdout)");

    CLI::App* dwell = app.add_subcommand("dwell", "minimal dwell time for a switching family");
    std::string dwell_path, dwell_out;
    double dwell_margin = 0.0, dwell_tol = 1e-4;
    dwell->add_option("spectra", dwell_path, "JSON with a 'spectra' array")->required();
    dwell->add_option("--margin", dwell_margin, "additive margin m in M = m + T");
    dwell->add_option("--tol", dwell_tol, "bisection tolerance");
    dwell->add_option("-o,--out", dwell_out, "output path (default: stdout)");

    CLI::App* oracle = app.add_subcommand("oracle", "grid LP lower-bound oracle");
    std::string oracle_spec, oracle_out;
    int oracle_grid = 2001;
    oracle->add_option("spec", oracle_spec, "problem spec (JSON)")->required();
    oracle->add_option("--grid-points", oracle_grid, "uniform grid size");
    oracle->add_option("-o,--out", oracle_out, "output path (default: stdout)");

    CLI::App* stats = app.add_subcommand("stats", "degeneracy statistics over random splines");
    remez::StatsConfig cfg;
    std::string stats_problem = "constrained-zero";
    stats->add_option("--m", cfg.m, "knots per spline");
    stats->add_option("--n", cfg.n, "system size");
    stats->add_option("--trials", cfg.trials, "number of random systems");
    stats->add_option("--seed", cfg.seed, "master seed");
    stats->add_option("--problem", stats_problem, "constrained-zero | abs | random");

    CLI11_PARSE(app, argc, argv);

    try {
        if (approx->parsed()) return run_approx(af, false);
        if (approx_c->parsed()) return run_approx(af, true);

        if (mb->parsed()) {
            remez::SolverOptions opts;
            apply_seed_env(opts);
            remez::MarkovBernsteinResult res;
            std::string label;
            if (!mb_powers.empty()) {
                res = remez::markov_bernstein_lacunary(mb_powers, mb_order, opts);
                std::ostringstream lbl;
                for (size_t i = 0; i < mb_powers.size(); ++i)
                    lbl << (i ? " " : "") << mb_powers[i];
                label = lbl.str();
            } else if (!mb_spectrum_path.empty()) {
                res = remez::markov_bernstein_exponential(parse_spectrum(load_json(mb_spectrum_path)),
                                                          mb_order, opts);
                label = "spectrum";
            } else {
                throw remez::SpecParseError("mb needs --powers or --spectrum");
            }
            std::ostringstream out;
            out << std::setprecision(17);
            out << "system,order,constant\n\"" << label << "\"," << mb_order << ','
                << res.constant << '\n';
            if (mb_out.empty())
                std::cout << out.str();
            else
                write_text(mb_out, out.str());
            return 0;
        }

        if (dwell->parsed()) {
            json j = load_json(dwell_path);
            if (!j.contains("spectra") || !j.at("spectra").is_array())
                throw remez::SpecParseError("dwell input needs a 'spectra' array");
            std::vector<remez::SpectrumSpec> spectra;
            for (const auto& s : j.at("spectra")) spectra.push_back(parse_spectrum(s));
            remez::SolverOptions opts;
            apply_seed_env(opts);
            remez::DwellTimeResult res =
                remez::min_stability_interval(spectra, dwell_margin, dwell_tol, opts);
            json out = {{"M", res.M}, {"T", res.T}, {"values", res.final_values}};
            emit_json(out, dwell_out);
            return 0;
        }

        if (oracle->parsed()) {
            remez::ProblemSpec spec = remez::load_problem(oracle_spec);
            double hi = spec.system->domain().b;
            if (spec.system->domain().is_half_line())
                hi = remez::truncate_halfline(*spec.system, spec.target, spec.options.tail_tol);
            auto grid = remez::uniform_grid(spec.system->domain().a, hi, oracle_grid);
            remez::GridLPResult res = remez::grid_chebyshev(spec.system, spec.target, grid,
                                                            spec.constraints.get());
            json out = {{"value", res.value},
                        {"coeffs", std::vector<double>(res.coeffs.begin(), res.coeffs.end())}};
            emit_json(out, oracle_out);
            return 0;
        }

        if (stats->parsed()) {
            if (stats_problem == "constrained-zero")
                cfg.problem = remez::StatsConfig::Problem::ConstrainedZero;
            else if (stats_problem == "abs")
                cfg.problem = remez::StatsConfig::Problem::AbsTarget;
            else if (stats_problem == "random")
                cfg.problem = remez::StatsConfig::Problem::RandomTarget;
            else
                throw remez::SpecParseError("unknown stats problem: " + stats_problem);
            if (const char* env = std::getenv("REMEZGEN_SEED"))
                cfg.seed = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
            remez::StatsRow row = remez::degeneracy_stats(cfg);
            std::cout << remez::stats_csv_header() << '\n'
                      << remez::stats_csv_row(row, remez::problem_label(cfg.problem)) << '\n';
            return 0;
        }
    } catch (const remez::SpecParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const remez::DegeneracyError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegeneracy;
    } catch (const remez::InitializationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegeneracy;
    } catch (const remez::NonDecayingSystemError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegeneracy;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    }
    return 0;
}
