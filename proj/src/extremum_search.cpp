#include "remezgen/extremum_search.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace remez {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

// golden-section maximization of h on [a, b]; returns the best sampled point
template <typename H>
std::pair<double, double> golden_max(H&& h, double a, double b, int iters, double tol) {
    double best_t = a, best_v = h(a);
    const double vb = h(b);
    if (vb > best_v) {
        best_t = b;
        best_v = vb;
    }
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double hc = h(c), hd = h(d);
    for (int it = 0; it < iters && (b - a) > tol; ++it) {
        if (hc >= hd) {
            b = d;
            d = c;
            hd = hc;
            c = b - kInvPhi * (b - a);
            hc = h(c);
        } else {
            a = c;
            c = d;
            hc = hd;
            d = a + kInvPhi * (b - a);
            hd = h(d);
        }
        if (hc > best_v) {
            best_v = hc;
            best_t = c;
        }
        if (hd > best_v) {
            best_v = hd;
            best_t = d;
        }
    }
    return {best_t, best_v};
}

}  // namespace

MaxAbsError global_max_abs_error(const Poly& p, const TargetFn& f, double lo, double hi,
                                 const SearchGrid& grid) {
    const int N = std::max(grid.total_points, 2 * (p.system->n() + 1));
    auto err = [&](double t) { return std::abs(p.eval(t) - f(t)); };

    const double h = (hi - lo) / (N - 1);
    std::vector<double> v(N);
    for (int i = 0; i < N; ++i) v[i] = err(lo + i * h);

    // refine every grid-local maximum: a narrow true peak (e.g. at a kink of
    // f) need not live in the cell of the best grid sample
    double t0 = lo;
    double r = -1.0;
    for (int i = 0; i < N; ++i) {
        const bool local_max = (i == 0 || v[i] >= v[i - 1]) && (i == N - 1 || v[i] >= v[i + 1]);
        if (!local_max) continue;
        const double a = lo + std::max(0, i - 1) * h;
        const double b = lo + std::min(N - 1, i + 1) * h;
        auto [tc, rc] = golden_max(err, a, b, grid.refine_iters, grid.bracket_tol * (hi - lo));
        if (v[i] > rc) {
            rc = v[i];
            tc = lo + i * h;
        }
        if (rc > r) {
            r = rc;
            t0 = tc;
        }
    }

    MaxAbsError out;
    out.t0 = t0;
    out.value = r;
    out.sign = (p.eval(t0) - f(t0)) >= 0.0 ? 1 : -1;
    return out;
}

MaxAbsError global_max_abs_error_cheap(const Poly& p, const TargetFn& f, double lo, double hi,
                                       const SearchGrid& grid, double accept_level) {
    const int N = std::max(grid.total_points, 2 * (p.system->n() + 1));
    const double h = (hi - lo) / (N - 1);
    for (int i = 0; i < N; ++i) {
        const double t = lo + i * h;
        const double e = p.eval(t) - f(t);
        if (std::abs(e) > accept_level) {
            MaxAbsError out;
            out.t0 = t;
            out.value = std::abs(e);
            out.sign = e >= 0.0 ? 1 : -1;
            return out;
        }
    }
    return global_max_abs_error(p, f, lo, hi, grid);
}

SuperlevelMin superlevel_min_g(const Poly& p, const TargetFn& f, double lo, double hi,
                               double threshold, const std::function<double(double)>& g,
                               const SearchGrid& grid, double t_fallback) {
    const int N = std::max(grid.total_points, 2 * (p.system->n() + 1));
    const double h = (hi - lo) / (N - 1);
    const double slack = threshold - 1e-9 * (1.0 + std::abs(threshold));
    auto feasible = [&](double t) { return std::abs(p.eval(t) - f(t)) >= slack; };

    int best = -1;
    double best_g = std::numeric_limits<double>::infinity();
    for (int i = 0; i < N; ++i) {
        const double t = lo + i * h;
        if (!feasible(t)) continue;
        const double gv = g(t);
        if (gv < best_g) {
            best_g = gv;
            best = i;
        }
    }

    SuperlevelMin out;
    if (best < 0 || !std::isfinite(best_g)) {
        out.t = t_fallback;
        out.g_value = g(t_fallback);
        out.fallback = true;
        return out;
    }

    // refine, rejecting infeasible samples via a saturating objective
    auto score = [&](double t) {
        if (!feasible(t)) return -std::numeric_limits<double>::infinity();
        const double gv = g(t);
        return std::isfinite(gv) ? -gv : -std::numeric_limits<double>::infinity();
    };
    const double a = lo + std::max(0, best - 1) * h;
    const double b = lo + std::min(N - 1, best + 1) * h;
    auto [t_ref, neg_g] = golden_max(score, a, b, grid.refine_iters, grid.bracket_tol * (hi - lo));

    out.t = lo + best * h;
    out.g_value = best_g;
    if (-neg_g < best_g && feasible(t_ref)) {
        out.t = t_ref;
        out.g_value = -neg_g;
    }
    return out;
}

}  // namespace remez
