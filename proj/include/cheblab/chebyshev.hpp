#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <unordered_set>
#include <vector>

#include "cheblab/arnoldi.hpp"
#include "cheblab/common.hpp"
#include "cheblab/geometry.hpp"
#include "cheblab/simplex.hpp"

namespace cheblab {

// ---------------------------------------------------------------------------
// conditioned basis: phi_k(z) = T_k((z - center)/scale)
// ---------------------------------------------------------------------------

struct ConditionedBasis {
    cplx center{0.0, 0.0};
    double scale = 1.0;

    // leading coefficient of phi_k as a polynomial in z
    double leading_coefficient(int k) const {
        if (k == 0) return 1.0;
        return std::pow(2.0, k - 1) / std::pow(scale, k);
    }
};

// center = midpoint of the bounding box (real by symmetry), scale = half of
// its larger side — a proxy for the half-diameter that is exact for a single
// interval and for a circle
inline ConditionedBasis conditioned_basis_for(const CompactSystem& sys) {
    double xlo = sys.hull_left(), xhi = sys.hull_right();
    double height = 0.0;
    for (std::size_t c = 0; c < sys.size(); ++c) {
        const Component& comp = sys[c];
        if (comp.kind == Component::Kind::symmetric_closed_curve)
            height = std::max(height, 2.0 * comp.semi_y);
    }
    ConditionedBasis cb;
    cb.center = cplx(0.5 * (xlo + xhi), 0.0);
    cb.scale = 0.5 * std::max(xhi - xlo, height);
    if (!(cb.scale > 0.0))
        fail("chebyshev", "conditioned_basis", "system has zero diameter");
    return cb;
}

inline Eigen::MatrixXd chebyshev_rows(const Eigen::VectorXd& u, int n) {
    Eigen::MatrixXd V(u.size(), n + 1);
    V.col(0).setOnes();
    if (n >= 1) V.col(1) = u;
    for (int k = 2; k <= n; ++k)
        V.col(k) = 2.0 * u.cwiseProduct(V.col(k - 1)) - V.col(k - 2);
    return V;
}

struct MinimaxDiagnostics {
    int iterations = 0;            // Remez exchanges or Lawson sweeps
    int lp_rounds = 0;             // cutting-plane rounds (LP path only)
    double levelling_gap = 0.0;    // relative equioscillation/duality gap
    double direction_bound = 1.0;  // sec(pi/m) polygon factor (LP path only)
    bool under_resolved = false;   // boundary grid too coarse for this degree
    double reconstruction_error = 0.0;  // coefficient round-trip, relative
};

struct MinimaxResult {
    int degree = 0;
    double cheb_number = 0.0;  // M_n = sup_E |T_n|
    double log_cheb = 0.0;     // log M_n (canonical; cheb_number = exp of it)
    ConditionedBasis basis;
    std::vector<double> coefficients;  // T_n(z) = sum_k coefficients[k] phi_k(z)
    std::vector<cplx> extreme_points;
    MinimaxDiagnostics diagnostics;
};

// evaluate the stored polynomial at an arbitrary point
inline cplx minimax_eval(const MinimaxResult& r, cplx z) {
    const cplx u = (z - r.basis.center) / r.basis.scale;
    cplx tkm(1.0, 0.0), tk = u, acc(r.coefficients[0], 0.0);
    if (r.degree >= 1) acc += r.coefficients[1] * u;
    for (int k = 2; k <= r.degree; ++k) {
        cplx tn = 2.0 * u * tk - tkm;
        acc += r.coefficients[k] * tn;
        tkm = tk;
        tk = tn;
    }
    return acc;
}

// Widom ratio W_n = M_n / C(E)^n, evaluated in log space
inline double widom_ratio(const MinimaxResult& r, double capacity) {
    if (!(capacity > 0.0))
        fail("chebyshev", "widom_ratio", "capacity must be positive");
    return std::exp(r.log_cheb - r.degree * std::log(capacity));
}

namespace detail {

// interpolation coefficients on the Chebyshev extrema grid u_i = cos(i pi/n)
// (DCT-I); returns d with q(u) = sum_k d_k T_k(u)
inline Eigen::VectorXcd dct_interpolate(const Eigen::VectorXcd& v) {
    const int n = static_cast<int>(v.size()) - 1;
    Eigen::VectorXcd d(n + 1);
    if (n == 0) {
        d(0) = v(0);
        return d;
    }
    for (int k = 0; k <= n; ++k) {
        cplx s = 0.5 * (v(0) + ((k % 2) ? -v(n) : v(n)));
        for (int i = 1; i < n; ++i)
            s += v(i) * std::cos(std::numbers::pi * k * i / n);
        d(k) = s * (2.0 / n);
    }
    d(0) *= 0.5;
    d(n) *= 0.5;
    return d;
}

struct LawsonOut {
    Eigen::VectorXd y;
    double node_max = 0.0;
    int iterations = 0;
};

// Lawson iteratively reweighted least squares on the orthonormal node basis:
// minimize the weighted L2 norm of b_n + sum y_k b_k, then w <- w*|residual|.
// Keeps the best sup-norm iterate seen.
inline LawsonOut lawson_solve(const Eigen::MatrixXcd& B, int n, int iters,
                              const Eigen::VectorXd* w_start = nullptr) {
    const Eigen::Index J = B.rows();
    Eigen::VectorXd w =
        w_start ? *w_start : Eigen::VectorXd::Constant(J, 1.0 / static_cast<double>(J));
    LawsonOut out;
    out.node_max = std::numeric_limits<double>::infinity();
    out.y = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd A(2 * J, n);
    Eigen::VectorXd rhs(2 * J);
    for (int it = 0; it < iters; ++it) {
        Eigen::VectorXd sw = w.cwiseSqrt();
        for (int k = 0; k < n; ++k) {
            A.col(k).head(J) = B.col(k).real().cwiseProduct(sw);
            A.col(k).tail(J) = B.col(k).imag().cwiseProduct(sw);
        }
        rhs.head(J) = -B.col(n).real().cwiseProduct(sw);
        rhs.tail(J) = -B.col(n).imag().cwiseProduct(sw);
        Eigen::VectorXd y = A.colPivHouseholderQr().solve(rhs);
        Eigen::VectorXcd q = B.col(n) + B.leftCols(n) * y.cast<cplx>();
        Eigen::VectorXd r = q.cwiseAbs();
        double M = r.maxCoeff();
        ++out.iterations;
        if (M < out.node_max) {
            out.node_max = M;
            out.y = y;
        }
        w = w.cwiseProduct(r);
        double s = w.sum();
        if (!(s > 0.0)) break;
        w /= s;
    }
    return out;
}

// nearest discretized direction for the node residual q: the constraint
// Re(e^{i theta_l} q) <= eps is tightest at theta_l ~ -arg(q)
inline int nearest_direction(cplx q, int m) {
    double a = -std::arg(q) * m / (2.0 * std::numbers::pi);
    long l = std::lround(a) % m;
    if (l < 0) l += m;
    return static_cast<int>(l);
}

struct LPOut {
    Eigen::VectorXd y;
    double eps = 0.0;
    int rounds = 0;
};

// cutting-plane LP for  min eps  s.t.  Re(e^{i theta_l}(b_n + sum y_k b_k)(z_j)) <= eps,
// solved through the dual  max mu'c  s.t.  G'mu = 0, 1'mu = 1, mu >= 0 whose
// basis stays (n+1)x(n+1). The working set holds one column per selected
// node/direction pair; each round appends the local maxima of the violation
// profile (adding whole violated runs would stack near-duplicate columns and
// erode the basis conditioning), and re-solves warm from the previous basis.
inline LPOut lp_minimax(const Eigen::MatrixXcd& B, int n, int m,
                        const Eigen::VectorXd& y_start) {
    const Eigen::Index J = B.rows();
    const double two_pi = 2.0 * std::numbers::pi;

    std::vector<Eigen::VectorXd> cols;   // dual columns [g_j,l ; 1]
    std::vector<double> cost;            // c_{j,l} = Re(e^{i theta} b_n(z_j))
    std::unordered_set<long long> seen;
    auto add_pair = [&](Eigen::Index j, int l) {
        long long key = static_cast<long long>(j) * m + l;
        if (!seen.insert(key).second) return false;
        const double th = two_pi * l / m;
        const cplx e(std::cos(th), std::sin(th));
        Eigen::VectorXd col(n + 1);
        for (int k = 0; k < n; ++k) col(k) = (e * B(j, k)).real();
        col(n) = 1.0;
        cols.push_back(std::move(col));
        cost.push_back((e * B(j, n)).real());
        return true;
    };
    auto add_local_maxima = [&](const Eigen::VectorXcd& q,
                                const Eigen::VectorXd& score, double floor) {
        int added = 0;
        for (Eigen::Index j = 0; j < J; ++j) {
            if (!(score(j) > floor)) continue;
            if (j > 0 && score(j) < score(j - 1)) continue;
            if (j + 1 < J && score(j) < score(j + 1)) continue;
            if (add_pair(j, nearest_direction(q(j), m))) ++added;
        }
        return added;
    };

    // seed: the oscillation peaks of the warm-start residual, plus three
    // spread directions at the global peak. No three directions more than
    // 2pi/3 apart fit in a half-plane, so a positive combination of them sums
    // to complex zero and the dual G'mu = 0, 1'mu = 1 starts feasible. (A
    // full fan at one node would be rank-3 collinear and wreck the bases.)
    Eigen::VectorXcd q = B.col(n) + B.leftCols(n) * y_start.cast<cplx>();
    Eigen::Index jmax = 0;
    double qmax = q.cwiseAbs().maxCoeff(&jmax);
    add_local_maxima(q, q.cwiseAbs(), 0.5 * qmax);
    const int lstar = nearest_direction(q(jmax), m);
    for (int s = 0; s < 3; ++s) add_pair(jmax, (lstar + s * m / 3) % m);

    LPOut out;
    std::vector<long> warm;
    for (int round = 0; round < 200; ++round) {
        const Eigen::Index K = static_cast<Eigen::Index>(cols.size());
        Eigen::MatrixXd A(n + 1, K);
        Eigen::VectorXd c(K);
        for (Eigen::Index j = 0; j < K; ++j) {
            A.col(j) = cols[j];
            c(j) = -cost[j];  // simplex minimizes; dual objective is max mu'cost
        }
        Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
        b(n) = 1.0;
        SimplexResult sr = simplex_solve(A, b, c, &warm);
        if (sr.status != SimplexResult::Status::optimal) {
            const char* what =
                sr.status == SimplexResult::Status::infeasible  ? "infeasible"
                : sr.status == SimplexResult::Status::unbounded ? "unbounded"
                                                                : "stalled";
            fail("chebyshev", "minimax_lp",
                 std::string("direction LP ") + what + " (internal error)");
        }
        out.y = sr.multipliers.head(n);
        out.eps = -sr.multipliers(n);
        out.rounds = round + 1;

        q = B.col(n) + B.leftCols(n) * out.y.cast<cplx>();
        Eigen::VectorXd lhs(J);
        for (Eigen::Index j = 0; j < J; ++j) {
            int l = nearest_direction(q(j), m);
            const double th = two_pi * l / m;
            lhs(j) = (cplx(std::cos(th), std::sin(th)) * q(j)).real();
        }
        const double tol = 1e-8 * (1.0 + std::abs(out.eps));
        if (lhs.maxCoeff() <= out.eps + tol) return out;
        if (add_local_maxima(q, lhs, out.eps + tol) == 0) {
            // every remaining violation is already represented: numerics say
            // this is as tight as the working set can get
            return out;
        }
    }
    fail("chebyshev", "minimax_lp",
         "cutting-plane loop failed to close (internal error)");
}

// shared tail of both LP paths: Lawson warm start, direction LP, Lawson
// polish, refined-grid supremum, conditioned coefficients
inline MinimaxResult minimax_on_nodes(const Eigen::VectorXcd& z_nodes,
                                      const Eigen::VectorXcd& z_fine,
                                      const ConditionedBasis& cb, int n, int m) {
    if (n < 1) fail("chebyshev", "minimax_lp", "degree must be at least 1");
    if (m < 32)
        fail("chebyshev", "minimax_lp",
             "need at least 32 directions, got " + std::to_string(m));
    if (z_nodes.size() <= n)
        fail("chebyshev", "minimax_lp", "node count must exceed the degree");

    const Eigen::VectorXcd u = (z_nodes.array() - cb.center) / cb.scale;
    const Eigen::VectorXcd uf = (z_fine.array() - cb.center) / cb.scale;
    ArnoldiBasis basis(u, n);
    const Eigen::MatrixXcd& B = basis.columns();

    MinimaxResult res;
    res.degree = n;
    res.basis = cb;
    res.diagnostics.direction_bound = 1.0 / std::cos(std::numbers::pi / m);

    LawsonOut warm = lawson_solve(B, n, 100 + 2 * n);
    LPOut lp = lp_minimax(B, n, m, warm.y);
    res.diagnostics.lp_rounds = lp.rounds;

    Eigen::VectorXcd q_lp = B.col(n) + B.leftCols(n) * lp.y.cast<cplx>();
    double M_lp = q_lp.cwiseAbs().maxCoeff();

    Eigen::VectorXd w_polish = q_lp.cwiseAbs();
    w_polish /= w_polish.sum();
    LawsonOut polish = lawson_solve(B, n, 30, &w_polish);
    res.diagnostics.iterations = warm.iterations + polish.iterations;

    Eigen::VectorXd y = lp.y;
    double M_node = M_lp;
    if (warm.node_max < M_node) { y = warm.y; M_node = warm.node_max; }
    if (polish.node_max < M_node) { y = polish.y; M_node = polish.node_max; }

    Eigen::VectorXcd q_nodes = B.col(n) + B.leftCols(n) * y.cast<cplx>();
    Eigen::MatrixXcd Vf = basis.eval(uf);
    Eigen::VectorXcd q_fine = Vf.col(n) + Vf.leftCols(n) * y.cast<cplx>();
    const double M_fine = q_fine.cwiseAbs().maxCoeff();
    const double M_u = std::max(M_node, M_fine);

    res.diagnostics.under_resolved = std::abs(M_fine - M_node) > 1e-3 * M_u;
    res.diagnostics.levelling_gap = std::max(0.0, (M_node - lp.eps) / M_node);

    const double log_monic = basis.log_gamma() + n * std::log(cb.scale);
    res.log_cheb = std::log(M_u) + log_monic;
    res.cheb_number = std::exp(res.log_cheb);

    const double thresh = (1.0 - 1e-6) * M_u;
    for (Eigen::Index j = 0; j < z_nodes.size(); ++j)
        if (std::abs(q_nodes(j)) >= thresh) res.extreme_points.push_back(z_nodes(j));
    for (Eigen::Index j = 0; j < z_fine.size(); ++j)
        if (std::abs(q_fine(j)) >= thresh) res.extreme_points.push_back(z_fine(j));

    // conditioned coefficients by interpolation at the hull's Chebyshev
    // points; the round-trip error on the nodes is reported as a diagnostic
    Eigen::VectorXcd ui(n + 1);
    for (int i = 0; i <= n; ++i) ui(i) = cplx(std::cos(std::numbers::pi * i / n), 0.0);
    Eigen::MatrixXcd Vi = basis.eval(ui);
    Eigen::VectorXcd vals = Vi.col(n) + Vi.leftCols(n) * y.cast<cplx>();
    Eigen::VectorXcd d = dct_interpolate(vals);
    const double monic = std::exp(log_monic);
    res.coefficients.resize(n + 1);
    for (int k = 0; k <= n; ++k) res.coefficients[k] = d(k).real() * monic;

    double recon = 0.0;
    for (Eigen::Index j = 0; j < z_nodes.size(); j += 7) {
        cplx via_coeff = minimax_eval(res, z_nodes(j));
        cplx direct = q_nodes(j) * monic;
        recon = std::max(recon, std::abs(via_coeff - direct));
    }
    res.diagnostics.reconstruction_error = recon / res.cheb_number;
    return res;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Remez exchange on purely real systems
// ---------------------------------------------------------------------------

inline MinimaxResult remez_real(const CompactSystem& sys, int n,
                                std::size_t grid_per_component = 8192) {
    if (n < 1) fail("chebyshev", "remez_real", "degree must be at least 1");
    ValidationReport rep = validate_system(sys);
    if (!rep.valid)
        fail("chebyshev", "remez_real", "invalid system: " + rep.violations.front());
    for (std::size_t c = 0; c < sys.size(); ++c)
        if (sys[c].kind != Component::Kind::real_interval)
            fail("chebyshev", "remez_real",
                 "component " + std::to_string(c) +
                     " is not a real interval; use minimax_lp");

    const ConditionedBasis cb = conditioned_basis_for(sys);
    const double cx = cb.center.real(), s = cb.scale;

    // cos-spaced grid per component, endpoints included
    const std::size_t G = grid_per_component;
    const std::size_t J = G * sys.size();
    if (J < static_cast<std::size_t>(n + 1))
        fail("chebyshev", "remez_real", "grid too small for the degree");
    Eigen::VectorXd x(J);
    std::vector<int> comp_of(J);
    for (std::size_t c = 0; c < sys.size(); ++c) {
        const double mid = 0.5 * (sys[c].alpha + sys[c].beta);
        const double half = 0.5 * (sys[c].beta - sys[c].alpha);
        for (std::size_t i = 0; i < G; ++i) {
            double th = std::numbers::pi * (1.0 - static_cast<double>(i) / (G - 1));
            x(c * G + i) = mid + half * std::cos(th);
            comp_of[c * G + i] = static_cast<int>(c);
        }
    }
    Eigen::MatrixXd V = chebyshev_rows((x.array() - cx) / s, n);

    std::vector<Eigen::Index> refs(n + 1);
    for (int i = 0; i <= n; ++i)
        refs[i] = static_cast<Eigen::Index>(
            std::llround(static_cast<double>(i) * (J - 1) / n));

    auto solve_at_rows = [&](const Eigen::MatrixXd& rows, Eigen::VectorXd& coef,
                             double& lambda) {
        const int sz = n + 1;
        Eigen::MatrixXd S(sz, sz);
        Eigen::VectorXd rhs(sz);
        for (int i = 0; i < sz; ++i) {
            S.row(i).head(n) = rows.row(i).head(n);
            S(i, n) = (i % 2) ? -1.0 : 1.0;
            rhs(i) = -rows(i, n);
        }
        Eigen::VectorXd sol = S.colPivHouseholderQr().solve(rhs);
        coef = sol.head(n);
        lambda = sol(n);
    };

    Eigen::VectorXd coef;
    double lambda = 0.0;
    int iters = 0;
    bool levelled = false;
    for (int it = 0; it < 200 && !levelled; ++it) {
        ++iters;
        Eigen::MatrixXd rows(n + 1, n + 1);
        for (int i = 0; i <= n; ++i) rows.row(i) = V.row(refs[i]);
        solve_at_rows(rows, coef, lambda);
        Eigen::VectorXd r = V.leftCols(n) * coef + V.col(n);
        Eigen::Index jmax = 0;
        double Mg = r.cwiseAbs().maxCoeff(&jmax);
        if (Mg - std::abs(lambda) <= 1e-12 * Mg) {
            levelled = true;
            break;
        }
        auto pos = std::lower_bound(refs.begin(), refs.end(), jmax);
        if (pos != refs.end() && *pos == jmax) { levelled = true; break; }
        const bool positive = r(jmax) > 0.0;
        if (pos == refs.begin()) {
            if ((r(refs.front()) > 0.0) == positive) refs.front() = jmax;
            else { refs.pop_back(); refs.insert(refs.begin(), jmax); }
        } else if (pos == refs.end()) {
            if ((r(refs.back()) > 0.0) == positive) refs.back() = jmax;
            else { refs.erase(refs.begin()); refs.push_back(jmax); }
        } else {
            auto prev = std::prev(pos);
            if ((r(*prev) > 0.0) == positive) *prev = jmax;
            else *pos = jmax;
        }
    }
    if (!levelled)
        fail("chebyshev", "remez_real",
             "no levelling after 200 exchange iterations");

    // off-grid polish: concavity-guarded parabolic refinement of each
    // reference, then re-solve; tightens the grid-limited extrema
    std::vector<double> t(n + 1);
    std::vector<int> tcomp(n + 1);
    for (int i = 0; i <= n; ++i) {
        t[i] = x(refs[i]);
        tcomp[i] = comp_of[refs[i]];
    }
    auto qval = [&](double xx) {
        double u = (xx - cx) / s;
        double tkm = 1.0, tk = u, acc = (n >= 1) ? coef(0) : 0.0;
        if (n >= 2) acc += coef(1) * u;
        for (int k = 2; k <= n; ++k) {
            double tn = 2.0 * u * tk - tkm;
            acc += (k < n) ? coef(k) * tn : tn;
            tkm = tk;
            tk = tn;
        }
        if (n == 1) acc += u;
        return acc;
    };
    for (int rnd = 0; rnd < 4; ++rnd) {
        Eigen::MatrixXd rows = chebyshev_rows(
            (Eigen::Map<Eigen::VectorXd>(t.data(), n + 1).array() - cx) / s, n);
        solve_at_rows(rows, coef, lambda);
        const double h = 1e-3 * s / std::sqrt(static_cast<double>(std::max(n, 1))) *
                         std::pow(0.1, std::min(rnd, 2));
        for (int i = 0; i <= n; ++i) {
            double r0 = qval(t[i] - h), r1 = qval(t[i]), r2 = qval(t[i] + h);
            double sg = (r1 > 0.0) ? 1.0 : -1.0;
            double d2 = sg * (r0 - 2.0 * r1 + r2);
            if (d2 < -1e-10 * (std::abs(r0) + 2.0 * std::abs(r1) + std::abs(r2))) {
                double step = -0.5 * h * sg * (r2 - r0) / d2;
                step = std::clamp(step, -100.0 * h, 100.0 * h);
                double tn = t[i] + step;
                t[i] = std::clamp(tn, sys[tcomp[i]].alpha, sys[tcomp[i]].beta);
            }
        }
        std::sort(t.begin(), t.end());
    }
    {
        Eigen::MatrixXd rows = chebyshev_rows(
            (Eigen::Map<Eigen::VectorXd>(t.data(), n + 1).array() - cx) / s, n);
        solve_at_rows(rows, coef, lambda);
    }

    MinimaxResult res;
    res.degree = n;
    res.basis = cb;
    res.diagnostics.iterations = iters;
    const double log_monic = n * std::log(s) + (1.0 - n) * std::log(2.0);
    res.log_cheb = std::log(std::abs(lambda)) + log_monic;
    res.cheb_number = std::exp(res.log_cheb);
    const double kappa = std::exp(log_monic);
    res.coefficients.resize(n + 1);
    for (int k = 0; k < n; ++k) res.coefficients[k] = kappa * coef(k);
    res.coefficients[n] = kappa;
    res.extreme_points.reserve(n + 1);
    for (double ti : t) res.extreme_points.emplace_back(ti, 0.0);

    // final levelling gap on the grid (clamped: the polished level can sit
    // a hair above the grid max)
    Eigen::VectorXd r = V.leftCols(n) * coef + V.col(n);
    double Mg = r.cwiseAbs().maxCoeff();
    res.diagnostics.levelling_gap =
        std::max(0.0, (Mg - std::abs(lambda)) / std::max(Mg, std::abs(lambda)));
    return res;
}

// ---------------------------------------------------------------------------
// direction-discretized LP minimax on a discretized boundary
// ---------------------------------------------------------------------------

inline MinimaxResult minimax_lp(const DiscretizedBoundary& bd, int n,
                                int directions = 64) {
    const ConditionedBasis cb = conditioned_basis_for(bd.system);
    Eigen::VectorXcd z(bd.size());
    for (std::size_t j = 0; j < bd.size(); ++j) z(j) = bd.nodes[j];
    // refined evaluation grid for the reported supremum; unlike the solver
    // nodes it includes interval endpoints, where the modulus peaks
    const std::size_t F = 4 * bd.count(0);
    std::vector<cplx> fine;
    fine.reserve(F * bd.system.size());
    for (std::size_t c = 0; c < bd.system.size(); ++c) {
        const Component& comp = bd.system[c];
        if (comp.kind == Component::Kind::real_interval) {
            const double mid = 0.5 * (comp.alpha + comp.beta);
            const double half = 0.5 * (comp.beta - comp.alpha);
            for (std::size_t i = 0; i < F; ++i)
                fine.emplace_back(
                    mid + half * std::cos(std::numbers::pi * i / (F - 1.0)), 0.0);
        } else {
            for (std::size_t i = 0; i < F; ++i)
                fine.push_back(comp.point(2.0 * std::numbers::pi * i / F));
        }
    }
    Eigen::VectorXcd zf = Eigen::Map<Eigen::VectorXcd>(fine.data(), fine.size());
    return detail::minimax_on_nodes(z, zf, cb, n, directions);
}

// ---------------------------------------------------------------------------
// circular arc |arg z| <= half_angle on the unit circle (special node path:
// arcs are not closed curves, so the boundary discretizer does not apply)
// ---------------------------------------------------------------------------

inline MinimaxResult minimax_circular_arc(double half_angle, int n,
                                          std::size_t nodes = 2048,
                                          int directions = 64) {
    if (!(half_angle > 0.0) || !(half_angle < std::numbers::pi))
        fail("chebyshev", "minimax_circular_arc",
             "half angle must lie in (0, pi)");
    if (nodes < 64)
        fail("chebyshev", "minimax_circular_arc", "need at least 64 nodes");

    auto arc_nodes = [&](std::size_t N) {
        Eigen::VectorXcd z(N);
        for (std::size_t j = 0; j < N; ++j) {
            double th = (2.0 * j + 1.0) * std::numbers::pi / (2.0 * N);
            double phi = half_angle * std::cos(th);
            z(j) = cplx(std::cos(phi), std::sin(phi));
        }
        return z;
    };
    ConditionedBasis cb;
    const double w = 1.0 - std::cos(half_angle);
    const double h = 2.0 * std::sin(half_angle);
    cb.center = cplx(0.5 * (1.0 + std::cos(half_angle)), 0.0);
    cb.scale = 0.5 * std::max(w, h);
    return detail::minimax_on_nodes(arc_nodes(nodes), arc_nodes(4 * nodes), cb, n,
                                    directions);
}

} // namespace cheblab
