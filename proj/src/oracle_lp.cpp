#include "remezgen/oracle_lp.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace remez {

namespace {

// Small dense LU with partial pivoting; solves A x = b and A^T x = b.
class DenseLU {
  public:
    explicit DenseLU(std::vector<std::vector<double>> A) : lu_(std::move(A)) {
        const int n = static_cast<int>(lu_.size());
        perm_.resize(n);
        for (int i = 0; i < n; ++i) perm_[i] = i;
        for (int col = 0; col < n; ++col) {
            int piv = col;
            for (int i = col + 1; i < n; ++i)
                if (std::abs(lu_[i][col]) > std::abs(lu_[piv][col])) piv = i;
            std::swap(lu_[col], lu_[piv]);
            std::swap(perm_[col], perm_[piv]);
            if (std::abs(lu_[col][col]) < 1e-300)
                throw std::runtime_error("singular basis matrix in grid LP");
            for (int i = col + 1; i < n; ++i) {
                lu_[i][col] /= lu_[col][col];
                const double f = lu_[i][col];
                for (int j = col + 1; j < n; ++j) lu_[i][j] -= f * lu_[col][j];
            }
        }
    }

    std::vector<double> solve(const std::vector<double>& b) const {
        const int n = static_cast<int>(lu_.size());
        std::vector<double> x(n);
        for (int i = 0; i < n; ++i) {
            double s = b[perm_[i]];
            for (int j = 0; j < i; ++j) s -= lu_[i][j] * x[j];
            x[i] = s;
        }
        for (int i = n - 1; i >= 0; --i) {
            for (int j = i + 1; j < n; ++j) x[i] -= lu_[i][j] * x[j];
            x[i] /= lu_[i][i];
        }
        return x;
    }

    // A^T y = c via U^T w = c, L^T v = w, y = P^T v
    std::vector<double> solve_transposed(const std::vector<double>& c) const {
        const int n = static_cast<int>(lu_.size());
        std::vector<double> w(n), y(n);
        for (int i = 0; i < n; ++i) {
            double s = c[i];
            for (int j = 0; j < i; ++j) s -= lu_[j][i] * w[j];
            w[i] = s / lu_[i][i];
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = w[i];
            for (int j = i + 1; j < n; ++j) s -= lu_[j][i] * y[perm_[j]];
            y[perm_[i]] = s;
        }
        return y;
    }

  private:
    std::vector<std::vector<double>> lu_;
    std::vector<int> perm_;
};

// Revised simplex for min c.z s.t. G z = g, z >= 0, deliberately independent
// of the linear algebra used by the main solver.  The basis matrix is
// refactorized and every reduced cost is priced against the original data on
// each iteration, so no roundoff accumulates across pivots; Bland's rule
// prevents cycling.  Row count is tiny (n+1), column count is the grid size.
class RevisedSimplex {
  public:
    RevisedSimplex(const std::vector<std::vector<double>>& G, const std::vector<double>& c,
                   const std::vector<double>& g)
        : m_(static_cast<int>(G.size())), nv_(static_cast<int>(c.size())), G_(G), cost_(c),
          rhs_(g) {
        for (int i = 0; i < m_; ++i)
            if (rhs_[i] < 0.0) {
                for (auto& v : G_[i]) v = -v;
                rhs_[i] = -rhs_[i];
            }
        basis_.resize(m_);
        in_basis_.assign(nv_ + m_, false);
        for (int i = 0; i < m_; ++i) {
            basis_[i] = nv_ + i;  // artificial start
            in_basis_[nv_ + i] = true;
        }
    }

    bool solve() {
        // phase 1: minimize the artificial mass
        std::vector<double> phase1(nv_ + m_, 0.0);
        for (int i = 0; i < m_; ++i) phase1[nv_ + i] = 1.0;
        run(phase1, /*allow_artificials=*/true);
        if (objective(phase1) > 1e-8 * (1.0 + rhs_scale())) return false;
        drive_out_artificials();
        // phase 2 over the original columns
        std::vector<double> full(nv_ + m_, 0.0);
        for (int j = 0; j < nv_; ++j) full[j] = cost_[j];
        run(full, /*allow_artificials=*/false);
        return true;
    }

    double value() const {
        std::vector<double> full(nv_ + m_, 0.0);
        for (int j = 0; j < nv_; ++j) full[j] = cost_[j];
        return objective(full);
    }

    const std::vector<int>& basis() const { return basis_; }

  private:
    double column(int i, int j) const {
        return j < nv_ ? G_[i][j] : (i == j - nv_ ? 1.0 : 0.0);
    }

    std::vector<double> column_vec(int j) const {
        std::vector<double> a(m_);
        for (int i = 0; i < m_; ++i) a[i] = column(i, j);
        return a;
    }

    double rhs_scale() const {
        double s = 0.0;
        for (double v : rhs_) s = std::max(s, std::abs(v));
        return s;
    }

    DenseLU factorize() const {
        std::vector<std::vector<double>> B(m_, std::vector<double>(m_));
        for (int i = 0; i < m_; ++i)
            for (int k = 0; k < m_; ++k) B[i][k] = column(i, basis_[k]);
        return DenseLU(B);
    }

    double objective(const std::vector<double>& c) const {
        DenseLU lu = factorize();
        std::vector<double> x = lu.solve(rhs_);
        double v = 0.0;
        for (int i = 0; i < m_; ++i) v += c[basis_[i]] * x[i];
        return v;
    }

    void run(const std::vector<double>& c, bool allow_artificials) {
        double cscale = 1.0;
        for (double v : c) cscale = std::max(cscale, std::abs(v));
        const double rc_tol = 1e-9 * cscale;
        const int limit = allow_artificials ? nv_ + m_ : nv_;
        const int max_pivots = 1000 * (nv_ + m_);

        for (int it = 0; it < max_pivots; ++it) {
            DenseLU lu = factorize();
            std::vector<double> x = lu.solve(rhs_);
            std::vector<double> cb(m_);
            for (int i = 0; i < m_; ++i) cb[i] = c[basis_[i]];
            std::vector<double> pi = lu.solve_transposed(cb);

            // Bland: first non-basic column with negative reduced cost
            int enter = -1;
            for (int j = 0; j < limit && enter < 0; ++j) {
                if (in_basis_[j]) continue;
                double rc = c[j];
                for (int i = 0; i < m_; ++i) rc -= pi[i] * column(i, j);
                if (rc < -rc_tol) enter = j;
            }
            if (enter < 0) return;

            std::vector<double> u = lu.solve(column_vec(enter));
            int leave = -1;
            double best_ratio = 0.0;
            for (int i = 0; i < m_; ++i) {
                if (u[i] <= 1e-11) continue;
                const double ratio = std::max(x[i], 0.0) / u[i];
                if (leave < 0 || ratio < best_ratio - 1e-14 ||
                    (std::abs(ratio - best_ratio) <= 1e-14 && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) throw std::runtime_error("grid LP is unbounded");
            in_basis_[basis_[leave]] = false;
            in_basis_[enter] = true;
            basis_[leave] = enter;
        }
        throw std::runtime_error("grid LP exceeded the pivot budget");
    }

    // replace any artificial still basic (at zero level) by an original column
    void drive_out_artificials() {
        for (int row = 0; row < m_; ++row) {
            if (basis_[row] < nv_) continue;
            DenseLU lu = factorize();
            int enter = -1;
            for (int j = 0; j < nv_ && enter < 0; ++j) {
                if (in_basis_[j]) continue;
                std::vector<double> u = lu.solve(column_vec(j));
                if (std::abs(u[row]) > 1e-9) enter = j;
            }
            if (enter < 0)
                throw std::runtime_error("grid LP constraint rows are linearly dependent");
            in_basis_[basis_[row]] = false;
            in_basis_[enter] = true;
            basis_[row] = enter;
        }
    }

    int m_, nv_;
    std::vector<std::vector<double>> G_;
    std::vector<double> cost_;
    std::vector<double> rhs_;
    std::vector<int> basis_;
    std::vector<bool> in_basis_;
};

// plain Gaussian elimination with partial pivoting (keeps the oracle free of
// the main solver's factorizations)
std::vector<double> gauss_solve(std::vector<std::vector<double>> A, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::abs(A[i][col]) > std::abs(A[piv][col])) piv = i;
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        if (std::abs(A[col][col]) < 1e-300)
            throw std::runtime_error("singular system in LP primal recovery");
        for (int i = col + 1; i < n; ++i) {
            const double f = A[i][col] / A[col][col];
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) A[i][j] -= f * A[col][j];
            b[i] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return x;
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, int count) {
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1.0);
    return g;
}

GridLPResult grid_chebyshev(const SystemPtr& system, const TargetFn& f,
                            const std::vector<double>& grid, const ConstraintSet* constraints) {
    const int n = system->n();
    const int M = static_cast<int>(grid.size());
    const int r = constraints ? constraints->r() : 0;
    if (M < n + 1) throw std::invalid_argument("grid must have at least n+1 points");

    // Dual of (min d : -d <= p(t_j)-f_j <= d, l_k(p)=b_k):
    //   min sum_j f_j (y+_j - y-_j) + sum_k b_k w_k
    //   s.t. sum_j phi(t_j)(y+_j - y-_j) + sum_k l_k w_k = 0,
    //        sum_j (y+_j + y-_j) = 1,   y >= 0, w free (split).
    // Its optimal value is -d*; the simplex multipliers are (p, -d).
    const int nv = 2 * M + 2 * r;
    std::vector<std::vector<double>> G(n + 1, std::vector<double>(nv, 0.0));
    std::vector<double> c(nv, 0.0), rhs(n + 1, 0.0);
    rhs[n] = 1.0;
    for (int j = 0; j < M; ++j) {
        const Eigen::VectorXd u = system->moment_vector(grid[j]);
        const double fj = f(grid[j]);
        for (int k = 0; k < n; ++k) {
            G[k][2 * j] = u(k);
            G[k][2 * j + 1] = -u(k);
        }
        G[n][2 * j] = 1.0;
        G[n][2 * j + 1] = 1.0;
        c[2 * j] = fj;
        c[2 * j + 1] = -fj;
    }
    for (int k = 0; k < r; ++k) {
        const Eigen::VectorXd& ell = constraints->functionals()[k].realized;
        const double bk = constraints->targets()[k];
        for (int i = 0; i < n; ++i) {
            G[i][2 * M + 2 * k] = ell(i);
            G[i][2 * M + 2 * k + 1] = -ell(i);
        }
        c[2 * M + 2 * k] = bk;
        c[2 * M + 2 * k + 1] = -bk;
    }

    RevisedSimplex tab(G, c, rhs);
    if (!tab.solve())
        throw std::runtime_error("grid LP infeasible: dependent basis or inconsistent constraints");

    // recover (p, -d) from B^T pi = c_B over the optimal basis
    const auto& basis = tab.basis();
    std::vector<std::vector<double>> Bt(n + 1, std::vector<double>(n + 1, 0.0));
    std::vector<double> cb(n + 1, 0.0);
    for (int i = 0; i < n + 1; ++i) {
        const int col = basis[i];
        for (int k = 0; k < n + 1; ++k)
            Bt[i][k] = col < nv ? G[k][col] : (k == col - nv ? 1.0 : 0.0);
        cb[i] = col < nv ? c[col] : 0.0;
    }
    std::vector<double> pi = gauss_solve(Bt, cb);

    GridLPResult out;
    out.coeffs.resize(n);
    for (int k = 0; k < n; ++k) out.coeffs(k) = pi[k];
    out.value = -tab.value();
    if (out.value < 0.0 && out.value > -1e-9) out.value = 0.0;
    return out;
}

}  // namespace remez
