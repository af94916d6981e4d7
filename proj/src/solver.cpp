#include "remezgen/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "remezgen/errors.hpp"
#include "remezgen/regularization.hpp"

namespace remez {

namespace {

// oriented-geometry coordinates of u(t): projected onto L-perp when constrained
Eigen::VectorXd geometry_vector(const SystemPtr& system, const ConstraintSet* cs, double t) {
    Eigen::VectorXd u = system->moment_vector(t);
    return cs ? cs->project(u) : u;
}

void sort_nodes(NodeSet& nodes, Barycentric& alpha) {
    const int m = nodes.size();
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return nodes.points[i] < nodes.points[j]; });

    NodeSet sorted = nodes;
    Eigen::VectorXd w(m);
    for (int i = 0; i < m; ++i) {
        sorted.points[i] = nodes.points[order[i]];
        sorted.signs[i] = nodes.signs[order[i]];
        sorted.oriented.col(i) = nodes.oriented.col(order[i]);
        w(i) = alpha.weights(order[i]);
    }
    nodes = std::move(sorted);
    alpha.weights = w;
}

// search for the worst error of the current iterate and fold it into B
void refresh_search(SolverState& state, const TargetFn& f, const SolverOptions& opts) {
    MaxAbsError me;
    if (opts.cheap_search && std::isfinite(state.B)) {
        const double accept = state.b + 0.9 * (state.B - state.b);
        me = global_max_abs_error_cheap(state.poly, f, state.lo, state.hi, opts.grid, accept);
    } else {
        me = global_max_abs_error(state.poly, f, state.lo, state.hi, opts.grid);
    }
    state.r = me.value;
    state.t0 = me.t0;
    state.sign0 = me.sign;
    if (me.value < state.B) {
        state.B = me.value;
        state.best_poly = state.poly;
    }
}

}  // namespace

SolverState initialize(const SystemPtr& system, const TargetFn& f, const SolverOptions& opts,
                       double lo, double hi, const ConstraintSet* constraints) {
    const int n = system->n();
    const int r = constraints ? constraints->r() : 0;
    const int m = n - r + 1;
    const int dim = n - r;

    SolverState state;
    state.lo = lo;
    state.hi = hi;

    std::vector<double> pts;
    Eigen::MatrixXd V(dim, m);
    SignedNullResult sn;
    const bool user_points = !opts.init_points.empty();
    std::mt19937 rng(opts.seed);
    // on half-lines spread the start points only over the region where the
    // basis still has noticeable mass; far nodes make the start degenerate
    double span_hi = hi;
    if (system->domain().is_half_line())
        span_hi = std::min(hi, truncate_halfline(*system, f, 1e-3));

    const int max_attempts = user_points ? 1 : 50;
    bool ok = false;
    LevelSolution ls;
    for (int attempt = 0; attempt < max_attempts && !ok; ++attempt) {
        if (user_points) {
            if (static_cast<int>(opts.init_points.size()) != m)
                throw InitializationError("initial point set must have n-r+1 points");
            pts = opts.init_points;
        } else {
            // shrink the span every few failed attempts: a span reaching far
            // into the decayed region conditions the level system badly
            const double span = (span_hi - lo) / (1.0 + attempt / 5);
            const double h = span / (m - 1);
            std::uniform_real_distribution<double> jitter(-h / 4.0, h / 4.0);
            pts.resize(m);
            for (int i = 0; i < m; ++i) {
                double t = lo + i * h + (attempt == 0 ? 0.0 : jitter(rng));
                pts[i] = std::clamp(t, lo, hi);
            }
        }
        std::sort(pts.begin(), pts.end());
        bool distinct = true;
        for (int i = 0; i + 1 < m; ++i) distinct = distinct && pts[i] < pts[i + 1];
        if (!distinct) {
            if (user_points) throw InitializationError("initial points must be pairwise distinct");
            continue;
        }
        for (int i = 0; i < m; ++i) V.col(i) = geometry_vector(system, constraints, pts[i]);
        try {
            sn = signed_null(V, /*strict=*/true);
            state.nodes.points = pts;
            state.nodes.signs = sn.signs;
            state.nodes.oriented.resize(dim, m);
            for (int i = 0; i < m; ++i) state.nodes.oriented.col(i) = sn.signs[i] * V.col(i);
            state.alpha.weights = sn.weights;
            ls = solve_level_system(state.nodes, f, system, constraints, opts.cond_limit);
            ok = true;
        } catch (const DegeneracyError& e) {
            if (user_points) throw InitializationError(e.what());
        }
    }
    if (!ok)
        throw InitializationError("could not find a nondegenerate initial node set in 50 attempts");

    state.poly = ls.poly;
    state.d = ls.level;
    state.b = ls.level;
    state.B = std::numeric_limits<double>::infinity();
    refresh_search(state, f, opts);
    return state;
}

bool iterate_once(SolverState& state, const SystemPtr& system, const TargetFn& f,
                  const SolverOptions& opts, const ConstraintSet* constraints) {
    if (state.B - state.b < opts.epsilon) return false;
    const double gap_before = state.B - state.b;

    const double t0 = state.t0;
    const int sign0 = state.sign0;
    const Eigen::VectorXd a0 = sign0 * geometry_vector(system, constraints, t0);

    // tentative plain exchange to learn the leaving index s
    std::optional<ExchangeResult> tentative;
    try {
        tentative = exchange_vertex(state.nodes, state.alpha, a0, t0, sign0);
    } catch (const DegeneracyError&) {
    }

    std::vector<VanishingPoly> qs;
    bool have_qs = true;
    try {
        qs = all_vanishing_polynomials(state.nodes, system, constraints);
    } catch (const DegeneracyError&) {
        have_qs = false;
    }

    double min_q = 1.0;
    if (have_qs) {
        min_q = std::numeric_limits<double>::infinity();
        for (const auto& q : qs) {
            if (tentative && q.i1 != tentative->replaced && q.i2 != tentative->replaced) continue;
            min_q = std::min(min_q, std::abs(q.eval(t0)));
        }
    }

    StepMode mode = StepMode::Plain;
    if (!tentative || (tentative && tentative->tie_degenerate)) mode = StepMode::Regularized;
    if (have_qs && min_q < opts.delta) mode = StepMode::Regularized;
    if (state.stall_count >= opts.stall_window) mode = StepMode::Regularized;
    if (!have_qs) mode = StepMode::Plain;  // no q machinery available; stay plain

    ExchangeResult ex;
    if (mode == StepMode::Regularized) {
        const double threshold = (1.0 - opts.nu) * state.r + opts.nu * state.d;
        auto g = [&qs](double t) { return g_objective(t, qs); };
        SuperlevelMin sm = superlevel_min_g(state.poly, f, state.lo, state.hi, threshold, g,
                                            opts.grid, t0);
        const double err = state.poly.eval(sm.t) - f(sm.t);
        const int sig = err >= 0.0 ? 1 : -1;
        const Eigen::VectorXd av = sig * geometry_vector(system, constraints, sm.t);
        ex = exchange_vertex(state.nodes, state.alpha, av, sm.t, sig);
    } else {
        if (!tentative) throw DegeneracyError("vertex exchange failed and no regularization path");
        ex = *tentative;
    }

    state.nodes = ex.nodes;
    state.alpha = ex.alpha;
    const double alpha0 = ex.alpha0;
    const int exchanged = ex.replaced;
    sort_nodes(state.nodes, state.alpha);

    LevelSolution ls = solve_level_system(state.nodes, f, system, constraints, opts.cond_limit);
    state.poly = ls.poly;
    state.d = ls.level;
    state.b = std::max(state.b, ls.level);
    refresh_search(state, f, opts);
    ++state.k;

    const double gap_after = state.B - state.b;
    if (gap_before - gap_after < opts.stall_ratio * gap_before)
        ++state.stall_count;
    else
        state.stall_count = 0;

    if (opts.keep_trace) {
        TraceRow row;
        row.k = state.k;
        row.b = state.b;
        row.B = state.B;
        row.r = state.r;
        row.alpha0 = alpha0;
        row.exchanged = exchanged;
        row.mode = mode;
        row.min_q = min_q;
        state.trace.push_back(row);
    }
    return true;
}

namespace {

// geometric sweep beyond the truncation point; both p and f decay there
double tail_sweep(const Poly& p, const TargetFn& f, double a, double T) {
    double sup = 0.0;
    double t = T;
    const double limit = a + 20.0 * (T - a) + 100.0;
    while (t < limit) {
        t = a + 1.01 * (t - a) + 1e-3;
        sup = std::max(sup, std::abs(p.eval(t) - f(t)));
    }
    return sup;
}

ApproxResult solve_impl(const SystemPtr& system, const TargetFn& f, const SolverOptions& opts,
                        const ConstraintSet* constraints) {
    double lo = system->domain().a;
    double hi;
    const bool half = system->domain().is_half_line();
    if (half)
        hi = truncate_halfline(*system, f, opts.tail_tol);
    else
        hi = system->domain().b;

    SolverState state = initialize(system, f, opts, lo, hi, constraints);
    while (state.k < opts.max_iters && iterate_once(state, system, f, opts, constraints)) {
    }

    ApproxResult res;
    res.poly = state.best_poly;
    res.lower = state.b;
    res.upper = state.B;
    res.alternance = state.nodes;
    res.alpha = state.alpha;
    res.iterations = state.k;
    res.converged = state.B - state.b < opts.epsilon;
    res.trace = std::move(state.trace);
    res.search_lo = lo;
    res.search_hi = hi;
    res.certificate = verify_certificate(state.nodes, state.alpha, state.poly, f, state.d,
                                         opts.cert_tol);

    if (half) {
        res.tail_sup = tail_sweep(res.poly, f, lo, hi);
        if (res.tail_sup > res.upper + 1e-9)
            throw NonDecayingSystemError(
                "error beyond the half-line truncation point exceeds the computed bound");
    }
    return res;
}

}  // namespace

ApproxResult solve(const SystemPtr& system, const TargetFn& f, const SolverOptions& opts) {
    return solve_impl(system, f, opts, nullptr);
}

ApproxResult solve_constrained(const SystemPtr& system, const TargetFn& f,
                               const ConstraintSet& constraints, const SolverOptions& opts) {
    return solve_impl(system, f, opts, &constraints);
}

}  // namespace remez
