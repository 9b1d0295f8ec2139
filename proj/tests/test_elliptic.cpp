#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "cheblab/elliptic.hpp"

using namespace cheblab;
using Catch::Matchers::WithinAbs;

namespace {
// 50-term power series K(k) = (pi/2) sum ((2m-1)!!/(2m)!!)^2 k^{2m}
double series_K(double k) {
    double s = 1.0, c = 1.0;
    for (int m = 1; m <= 50; ++m) {
        c *= (2.0 * m - 1.0) / (2.0 * m);
        s += c * c * std::pow(k, 2.0 * m);
    }
    return 0.5 * std::numbers::pi * s;
}
} // namespace

TEST_CASE("agm: limits, self-dual point, series oracle") {
    auto [K_small, Kp_small] = agm_complete(1e-8);
    CHECK_THAT(K_small, WithinAbs(std::numbers::pi / 2.0, 1e-12));
    (void)Kp_small;

    double sd = std::sqrt(0.5);
    auto [K_sd, Kp_sd] = agm_complete(sd);
    CHECK_THAT(K_sd, WithinAbs(Kp_sd, 1e-14));
    CHECK_THAT(K_sd, WithinAbs(1.8540746773013717, 1e-13));

    auto [K_half, Kp_half] = agm_complete(0.5);
    CHECK_THAT(K_half, WithinAbs(series_K(0.5), 1e-12));
    CHECK_THAT(K_half, WithinAbs(1.6857503548125961, 1e-13));
    // series tail at k = sqrt(0.75) decays like 0.75^m: ~1e-8 after 50 terms
    CHECK_THAT(Kp_half, WithinAbs(series_K(std::sqrt(0.75)), 5e-8));

    CHECK_THROWS_AS(agm_complete(0.0), error);
    CHECK_THROWS_AS(agm_complete(1.0), error);
    CHECK_THROWS_AS(agm_complete(-0.3), error);
}

TEST_CASE("periods: quadrature matches the AGM reduction oracle") {
    // reduction: gap = 2/sqrt((e3-e1)(e4-e2)) K(k), k^2 = (e3-e2)(e4-e1)/((e3-e1)(e4-e2))
    auto check = [](double e1, double e2, double e3, double e4) {
        auto [K, Kp] = elliptic_periods(e1, e2, e3, e4);
        double pre = 2.0 / std::sqrt((e3 - e1) * (e4 - e2));
        double k2 = (e3 - e2) * (e4 - e1) / ((e3 - e1) * (e4 - e2));
        auto [Ko, Kpo] = agm_complete(std::sqrt(k2));
        CHECK_THAT(K, WithinAbs(pre * Ko, 1e-8 * pre * Ko));
        CHECK_THAT(Kp, WithinAbs(pre * Kpo, 1e-8 * pre * Kpo));
    };
    check(-2.0, -1.0, 1.0, 2.0);
    check(-1.0, -0.5, 0.5, 1.0);
    check(-1.3, -0.4, 0.2, 2.7);

    auto [K, Kp] = elliptic_periods(-2.0, -1.0, 1.0, 2.0);
    CHECK_THAT(K, WithinAbs(1.685750354812596, 1e-12));
    CHECK_THAT(Kp, WithinAbs(1.078257823749822, 1e-12));
}

TEST_CASE("periods: symmetric configuration identities") {
    // (-1/k, -1, 1, 1/k): gap = 2k K(k), band = k K(k')
    double k = 0.5;
    auto [K, Kp] = elliptic_periods(-1.0 / k, -1.0, 1.0, 1.0 / k);
    auto [Kk, Kpk] = agm_complete(k);
    CHECK_THAT(K, WithinAbs(2.0 * k * Kk, 1e-12));
    CHECK_THAT(Kp, WithinAbs(k * Kpk, 1e-12));
}

TEST_CASE("periods: near-degenerate gap stays finite") {
    double g = 1e-6;
    auto [K, Kp] = elliptic_periods(-2.0, -g / 2.0, g / 2.0, 2.0);
    CHECK(std::isfinite(K));
    CHECK(std::isfinite(Kp));
    CHECK(Kp > 1.0); // band period blows up logarithmically as the gap closes
    CHECK(K > 0.0);
    CHECK_THROWS_AS(elliptic_periods(0.0, 0.0, 1.0, 2.0), error);
    CHECK_THROWS_AS(elliptic_periods(1.0, 0.5, 2.0, 3.0), error);
}

TEST_CASE("periods: two-interval modulus value") {
    auto [K, Kp] = elliptic_periods(-1.0, -0.5, 0.5, 1.0);
    CHECK_THAT(K / (2.0 * Kp), WithinAbs(0.781700961348, 1e-10));
}

TEST_CASE("theta0: printed series value and small-nome limit") {
    double T01 = -std::log(0.1) / std::numbers::pi; // h = 0.1
    double expected = 1.0 + 2.0 * 0.1 + 2.0 * std::pow(0.1, 4) + 2.0 * std::pow(0.1, 9);
    CHECK_THAT(theta0(0.5, T01), WithinAbs(expected, 1e-15));

    CHECK_THAT(theta0(0.37, 50.0), WithinAbs(1.0, 1e-15)); // h astronomically small
    CHECK_THROWS_AS(theta0(0.1, 0.0), error);
    CHECK_THROWS_AS(theta0(0.1, -1.0), error);
}

TEST_CASE("theta0: evenness and periodicity") {
    double T = -std::log(0.3) / std::numbers::pi; // h = 0.3
    for (double t : {0.1, 0.37, 0.9}) {
        CHECK_THAT(theta0(t + 1.0, T), WithinAbs(theta0(t, T), 1e-15));
        CHECK_THAT(theta0(-t, T), WithinAbs(theta0(t, T), 1e-15));
    }
}

TEST_CASE("theta0: truncation bounded by the first omitted term") {
    double T = -std::log(0.3) / std::numbers::pi;
    double h = 0.3;
    for (int M : {1, 2, 3, 4}) {
        double full = detail::theta0_depth(0.23, T, M + 40);
        double trunc = detail::theta0_depth(0.23, T, M);
        double first_omitted = 2.0 * std::pow(h, (M + 1.0) * (M + 1.0));
        CHECK(std::abs(full - trunc) <= first_omitted * (1.0 + 1e-12));
    }
}

TEST_CASE("theta0: positive on the real line for the nomes in use") {
    // h values arising in the experiments: anchor e^{-pi}, headline, two-interval
    for (double T : {1.0, 0.861194535934, 1.0 / (2.0 * 0.781700961348)}) {
        for (int i = 0; i < 1000; ++i) {
            double t = i / 1000.0;
            CHECK(theta0(t, T) > 0.0);
        }
    }
}

TEST_CASE("half-period identity") {
    CHECK(std::abs(half_period_reduce(cplx(0.0, 0.0), cplx(0.0, 1.0))) < 1e-12);
    CHECK(std::abs(half_period_reduce(cplx(0.3, 0.0), cplx(0.0, 1.2))) < 1e-12);
    double worst = 0.0;
    for (int i = 0; i < 32; ++i)
        worst = std::max(worst,
                         std::abs(half_period_reduce(cplx(i / 31.0, 0.0), cplx(0.0, 1.2))));
    CHECK(worst < 1e-11);
    CHECK_THROWS_AS(half_period_reduce(cplx(0.0, 0.0), cplx(1.0, 1.0)), error);
    CHECK_THROWS_AS(half_period_reduce(cplx(0.0, 0.0), cplx(0.0, -1.0)), error);
}

TEST_CASE("elliptic data: bookkeeping") {
    EllipticData d = build_elliptic_data(0.5, 0.4);
    CHECK_THAT(d.abs_tau_prime, WithinAbs(1.0, 0.0));
    CHECK_THAT(d.nome_h, WithinAbs(std::exp(-std::numbers::pi), 1e-16));
    CHECK(std::abs(d.tau - cplx(0.0, 1.0)) == 0.0);
    CHECK(std::abs(d.tau * d.tau_prime - cplx(-1.0, 0.0)) < 1e-16);
    CHECK_FALSE(d.has_periods);

    // annulus calibration: r2/r1 = e^{2 pi} gives modulus 1, |tau'| = 1/2
    double mod_annulus = std::log(std::exp(2.0 * std::numbers::pi)) / (2.0 * std::numbers::pi);
    EllipticData da = build_elliptic_data(mod_annulus, 0.5);
    CHECK_THAT(da.abs_tau_prime, WithinAbs(0.5, 1e-15));

    // period ratio is scale-invariant: (-2,-1,1,2) periods pair with the
    // (-1,-0.5,0.5,1) modulus
    EllipticData dp = build_elliptic_data(0.781700961348, 0.5, 1.685750354812596, 1.078257823749822);
    CHECK(dp.has_periods);
    CHECK_THAT(dp.K_prime / dp.K, WithinAbs(dp.abs_tau_prime, 1e-9));

    CHECK_THROWS_AS(build_elliptic_data(-1.0, 0.5), error);
    CHECK_THROWS_AS(build_elliptic_data(0.5, 1.5), error);
    CHECK_THROWS_AS(build_elliptic_data(0.5, 0.4, -1.0, 1.0), error);
}
