#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "cheblab/asymptotics.hpp"

using namespace cheblab;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

CompactSystem headline_system() {
    return {{Component::interval(-1.0, -0.2), Component::circle(1.0, 0.3)}};
}

EllipticData manual_data(double omega, double abs_tau_prime) {
    EllipticData ed;
    ed.omega_infinity = omega;
    ed.abs_tau_prime = abs_tau_prime;
    ed.modulus_omega = 1.0 / (2.0 * abs_tau_prime);
    ed.nome_h = std::exp(-std::numbers::pi * abs_tau_prime);
    return ed;
}

} // namespace

TEST_CASE("predict_elliptic: anchor value at omega = 1/2, |tau'| = 1") {
    EllipticData ed = build_elliptic_data(0.5, 0.5); // mod = 1/2 -> |tau'| = 1
    REQUIRE_THAT(ed.abs_tau_prime, WithinAbs(1.0, 1e-15));

    EllipticPrediction p = predict_elliptic(ed, 0);
    CHECK_THAT(p.phase, WithinAbs(0.2206356001526516, 1e-15)); // {ln2/pi}
    CHECK_THAT(p.predicted_ratio, WithinAbs(1.5795409976966936, 1e-13));
    CHECK_FALSE(p.near_wrap);

    // same number assembled by hand from the pinned theta series
    double byhand = std::sqrt(2.0) * std::abs(theta0(0.5 * (p.phase + 0.5), 1.0) /
                                              theta0(0.5 * (p.phase - 0.5), 1.0));
    CHECK_THAT(p.predicted_ratio, WithinRel(byhand, 1e-15));
}

TEST_CASE("predict_elliptic: omega = 0 degenerates to ratio 1") {
    EllipticData ed = manual_data(0.0, 0.7);
    for (int n : {0, 1, 5, 40}) {
        EllipticPrediction p = predict_elliptic(ed, n);
        CHECK(p.predicted_ratio == 1.0); // identical theta arguments cancel exactly
        CHECK_FALSE(p.near_wrap);
        CHECK_THAT(p.phase, WithinAbs(0.7 * std::numbers::ln2 / std::numbers::pi, 1e-15));
    }
}

TEST_CASE("predict_elliptic: near-integer phase snaps to 0 and flags") {
    // |tau'| = pi/ln2 makes the n = 0 raw phase exactly 1
    EllipticData ed = manual_data(0.375, std::numbers::pi / std::numbers::ln2);
    EllipticPrediction p = predict_elliptic(ed, 0);
    CHECK(p.near_wrap);
    CHECK(p.phase == 0.0);
    // theta0 is even, so a phase-0 prediction is exactly 2^omega
    CHECK_THAT(p.predicted_ratio, WithinRel(std::exp2(0.375), 1e-15));

    // nudge outside the 1e-12 guard band
    EllipticData ed2 = manual_data(0.375, (1.0 + 1e-6) * std::numbers::pi / std::numbers::ln2);
    EllipticPrediction p2 = predict_elliptic(ed2, 0);
    CHECK_FALSE(p2.near_wrap);
    CHECK(p2.phase > 0.0);
}

TEST_CASE("predict_elliptic: phase-only dependence and continuity") {
    EllipticData ed = manual_data(1.0 / 7.0, 0.9);
    for (int n : {0, 1, 2, 3}) {
        EllipticPrediction a = predict_elliptic(ed, n);
        EllipticPrediction b = predict_elliptic(ed, n + 7); // rational omega: same phase
        CHECK_THAT(a.phase, WithinAbs(b.phase, 1e-14));
        CHECK_THAT(a.predicted_ratio, WithinRel(b.predicted_ratio, 1e-13));
    }
    // |phase difference| < 1e-9 keeps predictions within 1e-7
    EllipticData ed2 = manual_data(1.0 / 7.0 + 1e-10, 0.9);
    for (int n : {1, 4, 9}) {
        EllipticPrediction a = predict_elliptic(ed, n);
        EllipticPrediction b = predict_elliptic(ed2, n);
        REQUIRE(std::abs(a.phase - b.phase) < 1e-9);
        CHECK_THAT(a.predicted_ratio, WithinAbs(b.predicted_ratio, 1e-7));
    }
}

TEST_CASE("predict_elliptic: refusals") {
    EllipticData ed = build_elliptic_data(0.5, 0.5);
    CHECK_THROWS_WITH(predict_elliptic(ed, -1), ContainsSubstring("nonnegative"));
    CHECK_THROWS_WITH(predict_elliptic(manual_data(0.3, 0.0), 2),
                      ContainsSubstring("|tau'|"));
    CHECK_THROWS_WITH(predict_elliptic(manual_data(1.0, 0.5), 2),
                      ContainsSubstring("omega_infinity"));
}

TEST_CASE("interval_bounds: closed forms") {
    SECTION("unit circle: [1, 1]") {
        CompactSystem sys{{Component::circle(0.0, 1.0)}};
        auto eq = solve_equilibrium(discretize(sys, 256));
        auto gd = greens_function(eq);
        WidomInterval w = interval_bounds(eq, gd);
        CHECK(w.lower == 1.0); // no arc mass at all
        CHECK(w.upper == 1.0); // no gaps, empty critical sum
    }
    SECTION("single interval: [2, 2]") {
        CompactSystem sys{{Component::interval(-1.0, 1.0)}};
        auto eq = solve_equilibrium(discretize(sys, 256));
        auto gd = greens_function(eq);
        WidomInterval w = interval_bounds(eq, gd);
        CHECK_THAT(w.lower, WithinAbs(2.0, 1e-10));
        CHECK(w.upper == w.lower);
    }
    SECTION("two intervals: [2, 2 e^{g(0)}] with g(0) = ln(3)/2") {
        CompactSystem sys{{Component::interval(-1.0, -0.5), Component::interval(0.5, 1.0)}};
        auto eq = solve_equilibrium(discretize(sys, 512));
        auto gd = greens_function(eq);
        REQUIRE(gd.critical_points.size() == 1);
        CHECK_THAT(gd.critical_points[0].first, WithinAbs(0.0, 1e-9));
        CHECK_THAT(gd.critical_points[0].second, WithinAbs(0.5 * std::log(3.0), 1e-10));
        WidomInterval w = interval_bounds(eq, gd);
        CHECK_THAT(w.lower, WithinAbs(2.0, 1e-10));
        CHECK_THAT(w.upper, WithinAbs(2.0 * std::sqrt(3.0), 1e-9));
    }
}

TEST_CASE("elliptic setup: headline constants and bounded predictions") {
    EllipticSetup s = elliptic_setup(headline_system(), 512);
    CHECK_THAT(s.equilibrium.capacity, WithinRel(0.638699758906, 1e-8));
    CHECK_THAT(s.data.omega_infinity, WithinRel(0.445213647547, 1e-8));
    CHECK_THAT(s.condenser.modulus, WithinRel(0.580588913581, 1e-8));
    CHECK(s.bounds.lower > 1.0);
    CHECK(s.bounds.upper > s.bounds.lower);
    // lower endpoint is 2^{omega(inf)} for one interval + one curve
    CHECK_THAT(s.bounds.lower, WithinRel(std::exp2(s.data.omega_infinity), 1e-15));

    // every prediction lies in the limit-point interval
    double lo = std::numeric_limits<double>::infinity(), hi = -std::numeric_limits<double>::infinity();
    for (int n = 0; n <= 500; ++n) {
        EllipticPrediction p = predict_elliptic(s.data, n);
        lo = std::min(lo, p.predicted_ratio);
        hi = std::max(hi, p.predicted_ratio);
    }
    CHECK(lo >= s.bounds.lower - 1e-9);
    CHECK(hi <= s.bounds.upper + 1e-9);

    // positive floor: 2^omega * min theta0 / max theta0 over the phase circle
    double tmin = std::numeric_limits<double>::infinity(), tmax = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 2000; ++i) {
        double v = theta0(i / 2000.0, s.data.abs_tau_prime);
        tmin = std::min(tmin, v);
        tmax = std::max(tmax, v);
    }
    REQUIRE(tmin > 0.0);
    CHECK(lo >= std::exp2(s.data.omega_infinity) * tmin / tmax - 1e-12);
}

TEST_CASE("check_theorem1: guards and verdicts") {
    CompactSystem mixed = headline_system();
    CompactSystem curves{{Component::circle(-1.0, 0.4), Component::circle(1.0, 0.4)}};
    CompactSystem intervals{{Component::interval(-1.0, 1.0)}};

    SECTION("all-interval system is skipped") {
        Theorem1Report rep = check_theorem1(intervals, {{25, 1.9}});
        CHECK_FALSE(rep.applicable);
        CHECK_THAT(rep.reason, ContainsSubstring("Jordan curve"));
        CHECK_FALSE(rep.passed);
    }
    SECTION("mixed system, healthy tail") {
        std::vector<RatioSample> rs;
        for (int n = 10; n <= 40; ++n)
            rs.push_back({n, 1.5 + 0.1 * std::sin(static_cast<double>(n))});
        Theorem1Report rep = check_theorem1(mixed, rs);
        CHECK(rep.applicable);
        CHECK(rep.arc_present);
        CHECK(rep.tail_count == 21); // n = 20..40 only
        CHECK(rep.upper_ok);
        CHECK(rep.lower_ok);
        CHECK(rep.passed);
        CHECK_THAT(rep.beta, WithinAbs(rep.tail_min - 1.0, 1e-15));
        CHECK(rep.margin == 0.01);
    }
    SECTION("tail ratio too close to 2 fails the upper check") {
        Theorem1Report rep = check_theorem1(mixed, {{30, 1.995}});
        CHECK(rep.applicable);
        CHECK_FALSE(rep.upper_ok);
        CHECK_FALSE(rep.passed);
    }
    SECTION("margin widens when predictions are supplied") {
        std::vector<EllipticPrediction> preds(1);
        preds[0].n = 30;
        preds[0].predicted_ratio = 1.6;
        Theorem1Report ok = check_theorem1(mixed, {{30, 1.65}}, 20, &preds);
        CHECK_THAT(ok.margin, WithinAbs(2.0 - 1.05 * 1.6, 1e-15));
        CHECK(ok.upper_ok);
        Theorem1Report bad = check_theorem1(mixed, {{30, 1.70}}, 20, &preds);
        CHECK_FALSE(bad.upper_ok);
    }
    SECTION("all-curve system only requires ratios >= 1") {
        Theorem1Report rep = check_theorem1(curves, {{20, 1.0}, {21, 1.002}});
        CHECK(rep.applicable);
        CHECK_FALSE(rep.arc_present);
        CHECK(rep.lower_ok);
        CHECK(rep.beta == 0.0);
        Theorem1Report bad = check_theorem1(curves, {{20, 0.9}});
        CHECK_FALSE(bad.lower_ok);
    }
    SECTION("empty tail reported, not passed") {
        Theorem1Report rep = check_theorem1(mixed, {{5, 1.5}});
        CHECK(rep.applicable);
        CHECK(rep.tail_count == 0);
        CHECK_THAT(rep.reason, ContainsSubstring("empty tail"));
        CHECK_FALSE(rep.passed);
    }
}

TEST_CASE("compare_prediction: refusals") {
    CompactSystem two{{Component::interval(-1.0, -0.5), Component::interval(0.5, 1.0)}};
    CHECK_THROWS_WITH(compare_prediction(two, 5, 10),
                      ContainsSubstring("one interval and one closed curve"));
    CompactSystem circles{{Component::circle(-1.0, 0.4), Component::circle(1.0, 0.4)}};
    CHECK_THROWS_WITH(compare_prediction(circles, 5, 10),
                      ContainsSubstring("one interval and one closed curve"));
    CHECK_THROWS_WITH(compare_prediction(headline_system(), 0, 10),
                      ContainsSubstring("degree range"));
    CHECK_THROWS_WITH(compare_prediction(headline_system(), 8, 7),
                      ContainsSubstring("degree range"));
}

TEST_CASE("compare_prediction: computed tracks predicted on a small sweep") {
    SweepOptions opt;
    opt.nodes_per_component = 384;
    opt.tail_start = 8;
    ComparisonTable tab = compare_prediction(headline_system(), 8, 14, opt);

    REQUIRE(tab.rows.size() == 7);
    for (std::size_t i = 0; i < tab.rows.size(); ++i) {
        const PredictionRow& r = tab.rows[i];
        CHECK(r.n == 8 + static_cast<int>(i));
        CHECK(r.computed_ratio > 1.0);
        CHECK(r.rel_deviation < 0.05); // pre-asymptotic degrees already track closely
        // computed ratios respect the limit-point interval with slack
        CHECK(r.computed_ratio > tab.setup.bounds.lower - 1e-2);
        CHECK(r.computed_ratio < tab.setup.bounds.upper + 1e-2);
    }
    CHECK(tab.tail_count == 7);
    CHECK(tab.tail_max_deviation < 0.05);
    CHECK(tab.tail_correlation > 0.9);

    // join-before-report parallelism is bit-identical to the serial sweep
    SweepOptions opt3 = opt;
    opt3.jobs = 3;
    ComparisonTable tab3 = compare_prediction(headline_system(), 8, 14, opt3);
    for (std::size_t i = 0; i < tab.rows.size(); ++i) {
        CHECK(tab3.rows[i].computed_ratio == tab.rows[i].computed_ratio);
        CHECK(tab3.rows[i].predicted_ratio == tab.rows[i].predicted_ratio);
    }
}
