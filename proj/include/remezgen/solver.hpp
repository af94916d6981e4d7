#pragma once

#include <optional>
#include <vector>

#include "remezgen/constraints.hpp"
#include "remezgen/extremum_search.hpp"
#include "remezgen/simplex_engine.hpp"

namespace remez {

enum class StepMode { Plain, Regularized };

struct SolverOptions {
    double epsilon = 1e-6;       // terminate when B - b < epsilon
    int max_iters = 500;
    double nu = 0.5;             // regularization mix in [0, 1)
    double delta = 0.05;         // degeneracy threshold on |q(t0)|
    std::vector<double> init_points;  // empty: equispaced with jitter retries
    SearchGrid grid;
    double cert_tol = 1e-8;
    unsigned seed = 12345;
    bool cheap_search = false;   // accept the first clearly-larger error point
    int stall_window = 3;        // consecutive slow iterations before forcing
    double stall_ratio = 0.01;   // "slow" = gap reduced by less than this share
    double cond_limit = 1e12;
    double tail_tol = 1e-12;     // half-line truncation level
    bool keep_trace = true;
};

struct TraceRow {
    int k = 0;
    double b = 0.0;
    double B = 0.0;
    double r = 0.0;
    double alpha0 = 0.0;
    int exchanged = -1;
    StepMode mode = StepMode::Plain;
    double min_q = 1.0;  // min_j |q_{s,j}(t0)| of the delta-check, 1 if skipped
};

struct ApproxResult {
    Poly poly;               // the iterate attaining B
    double lower = 0.0;      // b
    double upper = 0.0;      // B
    NodeSet alternance;      // final node set (ascending)
    Barycentric alpha;
    int iterations = 0;
    bool converged = false;
    std::vector<TraceRow> trace;
    CertificateReport certificate;
    double search_lo = 0.0;
    double search_hi = 0.0;  // truncation point on half-lines
    double tail_sup = 0.0;   // sup |p-f| beyond search_hi (half-lines only)
};

struct SolverState {
    int k = 0;
    Poly poly;
    NodeSet nodes;
    Barycentric alpha;
    double b = 0.0;  // running lower bound
    double B = 0.0;  // running upper bound (nonincreasing)
    double r = 0.0;  // last sup-norm error
    Poly best_poly;  // iterate attaining B
    std::vector<TraceRow> trace;
    double lo = 0.0;
    double hi = 0.0;
    int stall_count = 0;
    double d = 0.0;      // last level value
    double t0 = 0.0;     // pending worst-error point for the next exchange
    int sign0 = 1;
};

SolverState initialize(const SystemPtr& system, const TargetFn& f, const SolverOptions& opts,
                       double lo, double hi, const ConstraintSet* constraints = nullptr);

// One exchange step; returns false at a fixed point (t0 already a node).
bool iterate_once(SolverState& state, const SystemPtr& system, const TargetFn& f,
                  const SolverOptions& opts, const ConstraintSet* constraints = nullptr);

ApproxResult solve(const SystemPtr& system, const TargetFn& f, const SolverOptions& opts = {});

ApproxResult solve_constrained(const SystemPtr& system, const TargetFn& f,
                               const ConstraintSet& constraints, const SolverOptions& opts = {});

}  // namespace remez
