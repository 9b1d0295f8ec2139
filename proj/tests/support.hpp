#pragma once

// Shared test-side oracles, independent of the library's solvers.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

namespace testsup {

using cplx = std::complex<double>;
constexpr double inf = std::numeric_limits<double>::infinity();

inline std::vector<cplx> interval_grid(double a, double b, std::size_t G) {
    std::vector<cplx> g(G);
    for (std::size_t i = 0; i < G; ++i) {
        double th = std::numbers::pi * (1.0 - static_cast<double>(i) / (G - 1));
        g[i] = cplx(0.5 * (a + b) + 0.5 * (b - a) * std::cos(th), 0.0);
    }
    return g;
}

inline std::vector<cplx> circle_grid(double center, double r, std::size_t G) {
    std::vector<cplx> g(G);
    for (std::size_t i = 0; i < G; ++i) {
        double t = 2.0 * std::numbers::pi * i / G;
        g[i] = cplx(center + r * std::cos(t), r * std::sin(t));
    }
    return g;
}

// Greedy Leja points: maximize the log-product of distances incrementally.
inline std::vector<std::size_t> leja(const std::vector<cplx>& grid, std::size_t N) {
    std::size_t j0 = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs(grid[i]) > std::abs(grid[j0])) j0 = i;
    std::vector<std::size_t> idx{j0};
    std::vector<double> S(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) S[i] = std::log(std::abs(grid[i] - grid[j0]));
    while (idx.size() < N) {
        std::size_t j = 0;
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (S[i] > S[j]) j = i;
        idx.push_back(j);
        for (std::size_t i = 0; i < grid.size(); ++i) S[i] += std::log(std::abs(grid[i] - grid[j]));
    }
    return idx;
}

// Coordinate-ascent exchange: move each point to the grid position maximizing
// the product of distances to the others, until no move improves.
inline void exchange_sweeps(const std::vector<cplx>& grid, std::vector<std::size_t>& idx,
                            int max_sweeps = 20) {
    const std::size_t G = grid.size(), N = idx.size();
    std::vector<char> occupied(G, 0);
    for (std::size_t j : idx) occupied[j] = 1;
    std::vector<double> S(G), Si(G);
    auto rebuild = [&] {
        std::fill(S.begin(), S.end(), 0.0);
        for (std::size_t j : idx)
            for (std::size_t i = 0; i < G; ++i) S[i] += std::log(std::abs(grid[i] - grid[j]));
    };
    rebuild();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        std::size_t moved = 0;
        for (std::size_t i = 0; i < N; ++i) {
            std::size_t old = idx[i];
            double sv = 0.0; // product of distances if the point stays put
            for (std::size_t k = 0; k < N; ++k)
                if (k != i) sv += std::log(std::abs(grid[idx[k]] - grid[old]));
            for (std::size_t m = 0; m < G; ++m)
                Si[m] = S[m] - std::log(std::abs(grid[m] - grid[old]));
            std::size_t best = old;
            double bestv = sv;
            for (std::size_t m = 0; m < G; ++m) {
                if (occupied[m]) continue;
                if (Si[m] > bestv) {
                    bestv = Si[m];
                    best = m;
                }
            }
            if (best != old && bestv > sv + 1e-12) {
                occupied[old] = 0;
                occupied[best] = 1;
                idx[i] = best;
                for (std::size_t m = 0; m < G; ++m)
                    S[m] = Si[m] + std::log(std::abs(grid[m] - grid[best]));
                ++moved;
            }
        }
        rebuild();
        if (moved == 0) break;
    }
}

inline double config_energy(const std::vector<cplx>& pts) {
    const std::size_t N = pts.size();
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) s += std::log(std::abs(pts[i] - pts[j]));
    return -2.0 * s / (static_cast<double>(N) * (N - 1));
}

// Fekete-style capacity oracle: optimized point configurations at three sizes,
// Richardson extrapolation of E_N = F + a*logN/N + b/N to the Robin constant.
inline double fekete_capacity(const std::vector<cplx>& grid,
                              std::array<std::size_t, 3> Ns = {256, 512, 1024}) {
    Eigen::Matrix3d A;
    Eigen::Vector3d E;
    for (int r = 0; r < 3; ++r) {
        std::size_t N = Ns[static_cast<std::size_t>(r)];
        std::vector<std::size_t> idx = leja(grid, N);
        exchange_sweeps(grid, idx);
        std::vector<cplx> pts;
        pts.reserve(N);
        for (std::size_t j : idx) pts.push_back(grid[j]);
        E(r) = config_energy(pts);
        double dn = static_cast<double>(N);
        A(r, 0) = 1.0;
        A(r, 1) = std::log(dn) / dn;
        A(r, 2) = 1.0 / dn;
    }
    Eigen::Vector3d sol = A.fullPivLu().solve(E);
    return std::exp(-sol(0));
}

} // namespace testsup
