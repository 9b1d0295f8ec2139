#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "cheblab/common.hpp"

namespace cheblab {

namespace detail {

// Midpoint rule after x = m + r*cos(theta), which absorbs the inverse
// square-root endpoint factors of the abelian differential.
template <class F>
double cos_substitution_integral(double lo, double hi, F&& remainder, std::size_t N) {
    const double m = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
    double s = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        double th = (2.0 * j + 1.0) * std::numbers::pi / (2.0 * N);
        s += remainder(m + r * std::cos(th));
    }
    return s * std::numbers::pi / static_cast<double>(N);
}

template <class F>
double converged_integral(double lo, double hi, F&& remainder) {
    double prev = cos_substitution_integral(lo, hi, remainder, 64);
    for (std::size_t N = 128; N <= 8192; N *= 2) {
        double cur = cos_substitution_integral(lo, hi, remainder, N);
        if (std::abs(cur - prev) <= 1e-14 * std::abs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

// theta0 partial sum to a fixed depth M (terms m = 1..M).
inline double theta0_depth(double t, double abs_tau_prime, int M) {
    const double h = std::exp(-std::numbers::pi * abs_tau_prime);
    double s = 1.0, sign = -1.0;
    for (int m = 1; m <= M; ++m) {
        s += sign * 2.0 * std::pow(h, static_cast<double>(m) * m) *
             std::cos(2.0 * std::numbers::pi * m * t);
        sign = -sign;
    }
    return s;
}

// Complex-argument thetas for the half-period identity; term-magnitude
// termination avoids 0 * inf once the nome power underflows.
inline cplx theta0_complex(cplx t, double abs_tau_prime) {
    const double T = abs_tau_prime;
    const double it = std::abs(t.imag());
    cplx s = 1.0;
    double sign = -1.0;
    for (int m = 1; m <= 400; ++m) {
        double logmag = -std::numbers::pi * T * m * m + 2.0 * std::numbers::pi * m * it;
        if (logmag < std::log(1e-17) && m > 2) break;
        double hm = std::exp(-std::numbers::pi * T * static_cast<double>(m) * m);
        s += sign * 2.0 * hm * std::cos(2.0 * std::numbers::pi * static_cast<double>(m) * t);
        sign = -sign;
    }
    return s;
}

inline cplx theta1_complex(cplx v, double abs_tau_prime) {
    const double T = abs_tau_prime;
    const double iv = std::abs(v.imag());
    cplx s = 0.0;
    double sign = 1.0;
    for (int m = 0; m <= 400; ++m) {
        double e = m + 0.5;
        double logmag = -std::numbers::pi * T * e * e + (2.0 * m + 1.0) * std::numbers::pi * iv;
        if (logmag < std::log(1e-18) && m > 2) break;
        double he = std::exp(-std::numbers::pi * T * e * e);
        s += sign * 2.0 * he * std::sin((2.0 * m + 1.0) * std::numbers::pi * v);
        sign = -sign;
    }
    return s;
}

} // namespace detail

// Complete elliptic integrals by the arithmetic-geometric mean.
inline std::pair<double, double> agm_complete(double k) {
    if (!(k > 0.0 && k < 1.0))
        fail("elliptic", "agm_complete", "modulus k must lie in (0,1)");
    auto K_of = [](double kk) {
        double a = 1.0, b = std::sqrt((1.0 - kk) * (1.0 + kk));
        for (int it = 0; it < 60; ++it) {
            if (std::abs(a - b) <= 4e-16 * a) break;
            double an = 0.5 * (a + b);
            b = std::sqrt(a * b);
            a = an;
        }
        return std::numbers::pi / (a + b);
    };
    return {K_of(k), K_of(std::sqrt((1.0 - k) * (1.0 + k)))};
}

// Periods of dx/sqrt(q(x)) for the quartic with real roots e1<e2<e3<e4:
// K over the gap (e2,e3), K' over the band (e1,e2); both positive.
inline std::pair<double, double> elliptic_periods(double e1, double e2, double e3, double e4) {
    if (!(e1 < e2 && e2 < e3 && e3 < e4))
        fail("elliptic", "elliptic_periods", "endpoints must be strictly increasing");
    double K = detail::converged_integral(
        e2, e3, [&](double x) { return 1.0 / std::sqrt((x - e1) * (e4 - x)); });
    double Kp = detail::converged_integral(
        e1, e2, [&](double x) { return 1.0 / std::sqrt((e3 - x) * (e4 - x)); });
    return {K, Kp};
}

// theta0(t | tau') = 1 + sum_m (-1)^m 2 h^{m^2} cos(2 pi m t), h = e^{-pi |tau'|}.
inline double theta0(double t, double abs_tau_prime) {
    if (!(abs_tau_prime > 0.0))
        fail("elliptic", "theta0", "abs_tau_prime must be positive (nome h < 1)");
    const double h = std::exp(-std::numbers::pi * abs_tau_prime);
    double s = 1.0, sign = -1.0;
    for (int m = 1; m <= 400; ++m) {
        double hm = std::pow(h, static_cast<double>(m) * m);
        if (hm < 1e-16) break;
        s += sign * 2.0 * hm * std::cos(2.0 * std::numbers::pi * m * t);
        sign = -sign;
    }
    return s;
}

// Both sides of theta1(v + tau/2 | tau) = i e^{-pi i tau/4} e^{-pi i v} theta0(v | tau);
// returns lhs - rhs. Validates that downstream work may use theta0 alone.
inline cplx half_period_reduce(cplx v, cplx tau) {
    if (std::abs(tau.real()) > 1e-14 * std::abs(tau) || !(tau.imag() > 0.0))
        fail("elliptic", "half_period_reduce",
             "tau must be purely imaginary with positive imaginary part");
    const double T = tau.imag();
    const cplx i(0.0, 1.0);
    cplx lhs = detail::theta1_complex(v + tau / 2.0, T);
    cplx rhs = i * std::exp(-i * std::numbers::pi * tau / 4.0) *
               std::exp(-i * std::numbers::pi * v) * detail::theta0_complex(v, T);
    return lhs - rhs;
}

struct EllipticData {
    double modulus_omega = 0.0;  // mod(Omega)
    cplx tau;                    // 2i mod(Omega)
    cplx tau_prime;              // -1/tau
    double abs_tau_prime = 0.0;  // |tau'| = 1/(2 mod)
    double nome_h = 0.0;         // e^{-pi |tau'|}
    double K = std::numeric_limits<double>::quiet_NaN();
    double K_prime = std::numeric_limits<double>::quiet_NaN();
    bool has_periods = false;
    double omega_infinity = 0.0; // harmonic measure of the interval component at infinity
};

inline EllipticData build_elliptic_data(double modulus_omega, double omega_infinity) {
    if (!(modulus_omega > 0.0))
        fail("elliptic", "build_elliptic_data", "modulus_omega must be positive");
    if (!(omega_infinity > 0.0 && omega_infinity < 1.0))
        fail("elliptic", "build_elliptic_data", "omega_infinity must lie in (0,1)");
    EllipticData d;
    d.modulus_omega = modulus_omega;
    d.tau = cplx(0.0, 2.0 * modulus_omega);
    d.tau_prime = -1.0 / d.tau; // = i/(2 mod)
    d.abs_tau_prime = 1.0 / (2.0 * modulus_omega);
    d.nome_h = std::exp(-std::numbers::pi * d.abs_tau_prime);
    d.omega_infinity = omega_infinity;
    return d;
}

inline EllipticData build_elliptic_data(double modulus_omega, double omega_infinity, double K,
                                        double K_prime) {
    if (!(K > 0.0) || !(K_prime > 0.0))
        fail("elliptic", "build_elliptic_data", "periods must be positive");
    EllipticData d = build_elliptic_data(modulus_omega, omega_infinity);
    d.K = K;
    d.K_prime = K_prime;
    d.has_periods = true;
    return d;
}

} // namespace cheblab
