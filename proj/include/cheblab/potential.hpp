#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "cheblab/geometry.hpp"

namespace cheblab {

namespace detail {

// Quadrature weights for the periodic kernel L(d) = log(4 sin^2(d/2)) on an
// equispaced P-point grid (P even), tabulated at the residues d = 2*pi*r/P:
//   w(d) = (2*pi/P) * ( -2 sum_{m=1}^{M-1} cos(m d)/m - cos(M d)/M ),  M = P/2.
inline std::vector<double> log_kernel_weights(std::size_t P) {
    const std::size_t M = P / 2;
    const double delta = 2.0 * std::numbers::pi / static_cast<double>(P);
    std::vector<double> w(P);
    for (std::size_t r = 0; r < P; ++r) {
        double d = delta * static_cast<double>(r);
        double s = 0.0;
        for (std::size_t m = 1; m < M; ++m) s += std::cos(m * d) / static_cast<double>(m);
        w[r] = delta * (-2.0 * s - std::cos(M * d) / static_cast<double>(M));
    }
    return w;
}

// Dense matrix of effective log(1/|z_i - z_j|) entries: the action of the
// single-layer potential on node masses, with the log singularity handled by
// the spectrally accurate split quadrature on each component.
inline Eigen::MatrixXd assemble_log_matrix(const DiscretizedBoundary& bd) {
    const std::size_t n = bd.size();
    Eigen::MatrixXd B(n, n);

    // cross-component entries
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (bd.component_id[i] != bd.component_id[j])
                B(i, j) = -std::log(std::abs(bd.nodes[i] - bd.nodes[j]));

    // same-component blocks
    for (std::size_t k = 0; k < bd.system.size(); ++k) {
        const Component& c = bd.system[k];
        const std::size_t off = bd.offsets[k], N = bd.count(k);
        if (c.kind == Component::Kind::real_interval) {
            // theta-grid spacing pi/N = 2*pi/P with P = 2N (reflected grid);
            // log(1/|x_i-x_j|) = log(2/r) - L(th_j-th_i)/2 - L(th_j+th_i)/2
            const std::size_t P = 2 * N;
            std::vector<double> w = log_kernel_weights(P);
            const double r = 0.5 * (c.beta - c.alpha);
            const double base = std::log(2.0 / r);
            for (std::size_t i = 0; i < N; ++i) {
                for (std::size_t j = 0; j < N; ++j) {
                    std::size_t dm = (j + P - i) % P;          // (j-i) mod P
                    std::size_t dp = (i + j + 1) % P;          // theta_i + theta_j
                    double wj = bd.weights[off + j];
                    B(off + i, off + j) = base - (w[dm] + w[dp]) / (2.0 * wj);
                }
            }
        } else {
            // periodic grid spacing 2*pi/N; split off the L kernel:
            // log(1/|z_i-z_j|) = -L(t_j-t_i)/2 + log(2|sin((t_j-t_i)/2)| / |z_i-z_j|)
            const std::size_t P = N;
            std::vector<double> w = log_kernel_weights(P);
            for (std::size_t i = 0; i < N; ++i) {
                for (std::size_t j = 0; j < N; ++j) {
                    std::size_t dm = (j + P - i) % P;
                    double wj = bd.weights[off + j];
                    double S;
                    if (i == j) {
                        S = -std::log(c.speed(bd.params[off + i]));
                    } else {
                        double dt = bd.params[off + j] - bd.params[off + i];
                        S = std::log(2.0 * std::abs(std::sin(0.5 * dt)) /
                                     std::abs(bd.nodes[off + i] - bd.nodes[off + j]));
                    }
                    B(off + i, off + j) = -w[dm] / (2.0 * wj) + S;
                }
            }
        }
    }
    return B;
}

inline void check_nondegenerate(const DiscretizedBoundary& bd, const char* op) {
    const std::size_t n = bd.size();
    double diam = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        diam = std::max(diam, std::abs(bd.nodes[i] - bd.nodes[0]));
    // coincident nodes across components make the collocation matrix singular
    for (std::size_t k = 0; k + 1 < bd.system.size(); ++k)
        for (std::size_t i = bd.offsets[k]; i < bd.offsets[k + 1]; ++i)
            for (std::size_t j = bd.offsets[k + 1]; j < bd.size(); ++j)
                if (std::abs(bd.nodes[i] - bd.nodes[j]) < 1e-13 * diam)
                    fail("potential", op, "degenerate discretization: coincident nodes");
}

// Single-layer Dirichlet solve with an adjoined constant and zero total
// charge: sum_j psi_j log(1/|z_i - z_j|) + c = data_i, sum psi = 0.
struct DirichletSolution {
    Eigen::VectorXd psi;
    double constant;
};

inline DirichletSolution solve_dirichlet(const DiscretizedBoundary& bd,
                                         const Eigen::VectorXd& data, const char* op) {
    check_nondegenerate(bd, op);
    const Eigen::Index n = static_cast<Eigen::Index>(bd.size());
    Eigen::MatrixXd B = assemble_log_matrix(bd);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
    M.topLeftCorner(n, n) = B;
    M.col(n).head(n).setConstant(1.0);
    M.row(n).head(n).setConstant(1.0);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
    rhs.head(n) = data;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    Eigen::VectorXd sol = lu.solve(rhs);
    if (!sol.allFinite()) fail("potential", op, "singular linear system");
    return DirichletSolution{sol.head(n), sol(n)};
}

} // namespace detail

struct EquilibriumSolution {
    DiscretizedBoundary boundary;
    Eigen::VectorXd mu_weights;        // discrete nu_E, sums to 1
    double robin_constant = 0.0;       // F with potential = F on E
    double capacity = 0.0;             // exp(-F)
    std::vector<double> component_mass;

    double arc_mass() const {
        double s = 0.0;
        for (std::size_t k = 0; k < boundary.system.size(); ++k)
            if (boundary.system[k].is_arc()) s += component_mass[k];
        return s;
    }
};

inline EquilibriumSolution solve_equilibrium(const DiscretizedBoundary& bd) {
    detail::check_nondegenerate(bd, "solve_equilibrium");
    const Eigen::Index n = static_cast<Eigen::Index>(bd.size());
    Eigen::MatrixXd B = detail::assemble_log_matrix(bd);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
    M.topLeftCorner(n, n) = B;
    M.col(n).head(n).setConstant(-1.0); // -F moves to the left-hand side
    M.row(n).head(n).setConstant(1.0);  // total mass constraint
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
    rhs(n) = 1.0;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    Eigen::VectorXd sol = lu.solve(rhs);
    if (!sol.allFinite())
        fail("potential", "solve_equilibrium", "singular linear system");

    EquilibriumSolution eq;
    eq.boundary = bd;
    eq.mu_weights = sol.head(n);
    eq.robin_constant = sol(n);
    eq.capacity = std::exp(-eq.robin_constant);
    for (std::size_t k = 0; k < bd.system.size(); ++k) {
        double s = 0.0;
        for (std::size_t i = bd.offsets[k]; i < bd.offsets[k + 1]; ++i)
            s += eq.mu_weights(static_cast<Eigen::Index>(i));
        eq.component_mass.push_back(s);
    }
    return eq;
}

inline std::vector<double> component_masses(const EquilibriumSolution& sol) {
    return sol.component_mass;
}

// Independent omega_k(infinity): Dirichlet data 1 on component k, 0 elsewhere;
// with zero total charge the single-layer part vanishes at infinity, so the
// adjoined constant is the value of the harmonic extension at infinity.
inline double harmonic_measure_at_infinity(const DiscretizedBoundary& bd, std::size_t k) {
    if (k >= bd.system.size())
        fail("potential", "harmonic_measure_at_infinity", "component index out of range");
    Eigen::VectorXd data = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(bd.size()));
    for (std::size_t i = bd.offsets[k]; i < bd.offsets[k + 1]; ++i)
        data(static_cast<Eigen::Index>(i)) = 1.0;
    return detail::solve_dirichlet(bd, data, "harmonic_measure_at_infinity").constant;
}

struct GreenData {
    EquilibriumSolution source;
    std::vector<std::pair<double, double>> critical_points; // (z_j*, g(z_j*))

    // g(z) = sum mu_i log|z - node_i| + robin_constant, defined off E
    double operator()(cplx z) const {
        const auto& bd = source.boundary;
        double s = 0.0, dmin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < bd.size(); ++i) {
            double d = std::abs(z - bd.nodes[i]);
            dmin = std::min(dmin, d);
            s += source.mu_weights(static_cast<Eigen::Index>(i)) * std::log(d);
        }
        if (dmin < 1e-13 * (1.0 + std::abs(z)))
            fail("potential", "greens_function",
                 "evaluation at a boundary node is undefined at the discrete level");
        return s + source.robin_constant;
    }

    // d/dx g at real x (exact derivative of the discrete potential)
    double derivative_real(double x) const {
        const auto& bd = source.boundary;
        double s = 0.0;
        for (std::size_t i = 0; i < bd.size(); ++i)
            s += source.mu_weights(static_cast<Eigen::Index>(i)) *
                 std::real(1.0 / (cplx(x, 0.0) - bd.nodes[i]));
        return s;
    }
};

inline std::vector<std::pair<double, double>> critical_points(const GreenData& gd,
                                                              const CompactSystem& sys) {
    std::vector<std::pair<double, double>> out;
    ValidationReport rep = validate_system(sys);
    for (std::size_t gi = 0; gi < rep.gaps.size(); ++gi) {
        auto [L, R] = rep.gaps[gi];
        double pad = 1e-6 * (R - L);
        double a = L + pad, b = R - pad;
        double fa = gd.derivative_real(a), fb = gd.derivative_real(b);
        if (!(fa > 0.0 && fb < 0.0))
            fail("potential", "critical_points",
                 "no sign change of g' in gap " + std::to_string(gi) +
                     " (under-resolved equilibrium)");
        for (int it = 0; it < 200 && (b - a) > 1e-15 * (R - L); ++it) {
            double m = 0.5 * (a + b), fm = gd.derivative_real(m);
            if (fm > 0.0)
                a = m;
            else
                b = m;
        }
        double zs = 0.5 * (a + b);
        out.emplace_back(zs, gd(cplx(zs, 0.0)));
    }
    return out;
}

inline GreenData greens_function(const EquilibriumSolution& sol) {
    GreenData gd;
    gd.source = sol;
    gd.critical_points = critical_points(gd, sol.boundary.system);
    return gd;
}

struct CondenserData {
    std::size_t plate0 = 0, plate1 = 1; // potentials 0 and 1
    double modulus = 0.0;               // mod(Omega)
    double cap = 0.0;                   // 1/modulus
};

// Normalization pinned to the annulus r1<|w|<r2: modulus = (1/2pi) log(r2/r1),
// i.e. modulus = 1/(2*pi*Q1) with Q1 the induced charge on the plate held at 1.
inline CondenserData condenser_modulus(const DiscretizedBoundary& bd) {
    if (bd.system.size() != 2)
        fail("potential", "condenser_modulus",
             "exactly two components required, got " + std::to_string(bd.system.size()));
    Eigen::VectorXd data = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(bd.size()));
    for (std::size_t i = bd.offsets[1]; i < bd.offsets[2]; ++i)
        data(static_cast<Eigen::Index>(i)) = 1.0;
    detail::DirichletSolution ds = detail::solve_dirichlet(bd, data, "condenser_modulus");
    double q1 = 0.0;
    for (std::size_t i = bd.offsets[1]; i < bd.offsets[2]; ++i)
        q1 += ds.psi(static_cast<Eigen::Index>(i));
    if (!(q1 > 0.0))
        fail("potential", "condenser_modulus", "nonpositive induced charge (degenerate plates)");
    CondenserData cd;
    cd.modulus = 1.0 / (2.0 * std::numbers::pi * q1);
    cd.cap = 1.0 / cd.modulus;
    return cd;
}

} // namespace cheblab
