#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "cheblab/common.hpp"

namespace cheblab {

// Dense two-phase primal simplex for  min c'x  s.t.  Ax = b, x >= 0.
// Built for problems with few equality rows and many columns (the dual form
// of minimax LPs), so the basis stays tiny and is refactorized every pivot.
// Dantzig pricing with a Bland fallback once the objective stalls.

struct SimplexResult {
    enum class Status { optimal, infeasible, unbounded, stalled };
    Status status = Status::stalled;
    Eigen::VectorXd x;            // primal solution (structural columns)
    Eigen::VectorXd multipliers;  // row multipliers pi at the optimal basis
    double objective = 0.0;
    int iterations = 0;
};

// warm_basis, when given, carries the basis in and out across calls: entries
// >= 0 name structural columns, entry -(r+1) names the artificial of row r.
// A warm basis stays feasible when the caller has only appended columns, so
// re-solves skip phase 1.
inline SimplexResult simplex_solve(const Eigen::MatrixXd& A_in,
                                   const Eigen::VectorXd& b_in,
                                   const Eigen::VectorXd& c_in,
                                   std::vector<long>* warm_basis = nullptr) {
    const Eigen::Index m = A_in.rows();
    const Eigen::Index n = A_in.cols();
    if (b_in.size() != m || c_in.size() != n)
        fail("chebyshev", "simplex", "inconsistent LP dimensions");

    Eigen::MatrixXd T(m, n + m);  // structural columns then artificials
    Eigen::VectorXd b = b_in;
    T.leftCols(n) = A_in;
    T.rightCols(m).setIdentity();
    for (Eigen::Index i = 0; i < m; ++i)
        if (b(i) < 0.0) {
            b(i) = -b(i);
            T.row(i).head(n) = -A_in.row(i);
        }

    // anti-degeneracy: a tiny deterministic random perturbation of b makes
    // every vertex generic, so the objective strictly decreases and the
    // degenerate treadmill (all-zero right-hand-side rows) cannot occur. The
    // multipliers are b-independent and the basic solution is recomputed
    // against the exact b at the end.
    Eigen::VectorXd b_exact = b;
    {
        std::mt19937_64 rng(0x7a3c9d1fULL);
        std::uniform_real_distribution<double> un(1.0, 2.0);
        const double bscale = std::max(1.0, b.cwiseAbs().maxCoeff());
        for (Eigen::Index i = 0; i < m; ++i) b(i) += 1e-12 * bscale * un(rng);
    }

    std::vector<Eigen::Index> basis(m);
    for (Eigen::Index i = 0; i < m; ++i) basis[i] = n + i;

    SimplexResult res;
    Eigen::VectorXd xB = b;
    Eigen::VectorXd pi = Eigen::VectorXd::Zero(m);
    const double price_tol = 1e-9;
    const double ratio_tol = 1e-11;
    const int max_iter = 50000;

    int start_phase = 1;
    if (warm_basis && static_cast<Eigen::Index>(warm_basis->size()) == m) {
        bool ok = true;
        std::vector<Eigen::Index> cand(m);
        for (Eigen::Index i = 0; i < m && ok; ++i) {
            long v = (*warm_basis)[i];
            if (v >= 0 && v < n) cand[i] = v;
            else if (v < 0 && -v - 1 < m) cand[i] = n + (-v - 1);
            else ok = false;
        }
        if (ok) {
            Eigen::MatrixXd B(m, m);
            for (Eigen::Index i = 0; i < m; ++i) B.col(i) = T.col(cand[i]);
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
            Eigen::VectorXd x = lu.solve(b);
            double resid = (B * x - b).cwiseAbs().maxCoeff();
            if (x.minCoeff() >= -1e-9 && resid <= 1e-9 * (1.0 + b.cwiseAbs().maxCoeff())) {
                basis = cand;
                start_phase = 2;
            }
        }
    }

    for (int phase = start_phase; phase <= 2; ++phase) {
        Eigen::VectorXd cost = Eigen::VectorXd::Zero(n + m);
        if (phase == 1)
            cost.tail(m).setOnes();
        else
            cost.head(n) = c_in;

        int stall = 0;
        double last_obj = std::numeric_limits<double>::infinity();
        while (true) {
            if (++res.iterations > max_iter) { res.status = SimplexResult::Status::stalled; return res; }
            Eigen::MatrixXd B(m, m);
            for (Eigen::Index i = 0; i < m; ++i) B.col(i) = T.col(basis[i]);
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
            xB = lu.solve(b);
            Eigen::VectorXd cB(m);
            for (Eigen::Index i = 0; i < m; ++i) cB(i) = cost(basis[i]);
            pi = Eigen::PartialPivLU<Eigen::MatrixXd>(B.transpose()).solve(cB);

            double obj = cB.dot(xB);
            if (obj < last_obj - 1e-13 * (1.0 + std::abs(last_obj))) stall = 0; else ++stall;
            last_obj = obj;
            const bool bland = stall > 200;

            // pricing: artificials never re-enter once they leave the basis
            const Eigen::Index ncols = n;
            Eigen::VectorXd d = cost.head(ncols) - T.leftCols(ncols).transpose() * pi;
            Eigen::Index enter = -1;
            double best = -price_tol;
            for (Eigen::Index j = 0; j < ncols; ++j) {
                bool in_basis = false;
                for (Eigen::Index i = 0; i < m; ++i)
                    if (basis[i] == j) { in_basis = true; break; }
                if (in_basis) continue;
                if (d(j) < best) {
                    if (bland) { enter = j; break; }
                    best = d(j);
                    enter = j;
                }
                if (bland && d(j) < -price_tol) { enter = j; break; }
            }
            if (enter < 0) break;  // phase optimal

            Eigen::VectorXd dir = lu.solve(T.col(enter));
            Eigen::Index leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < m; ++i) {
                double di = dir(i);
                // a basic artificial surviving phase 1 sits at zero and must
                // stay there: any movement pivots it out at ratio zero
                if (phase == 2 && basis[i] >= n && std::abs(di) > ratio_tol)
                    di = std::abs(di);
                if (di > ratio_tol) {
                    double r = std::max(xB(i), 0.0) / di;
                    if (r < best_ratio - 1e-12 ||
                        (r < best_ratio + 1e-12 && leave >= 0 && basis[i] < basis[leave])) {
                        best_ratio = r;
                        leave = i;
                    }
                }
            }
            if (leave < 0) {
                res.status = SimplexResult::Status::unbounded;
                return res;
            }
            basis[leave] = enter;
        }

        if (phase == 1) {
            if (last_obj > 1e-7) {
                res.status = SimplexResult::Status::infeasible;
                return res;
            }
            // artificials still basic sit at ~0 and are barred from re-entering
        }
    }

    res.status = SimplexResult::Status::optimal;
    {
        Eigen::MatrixXd B(m, m);
        for (Eigen::Index i = 0; i < m; ++i) B.col(i) = T.col(basis[i]);
        xB = Eigen::PartialPivLU<Eigen::MatrixXd>(B).solve(b_exact);
    }
    res.x = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < m; ++i)
        if (basis[i] < n) res.x(basis[i]) = xB(i);
    res.multipliers = pi;
    res.objective = c_in.dot(res.x);
    if (warm_basis) {
        warm_basis->resize(m);
        for (Eigen::Index i = 0; i < m; ++i)
            (*warm_basis)[i] = basis[i] < n ? static_cast<long>(basis[i])
                                            : -static_cast<long>(basis[i] - n) - 1;
    }
    return res;
}

} // namespace cheblab
