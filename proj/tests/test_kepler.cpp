#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "urania/errors.hpp"
#include "urania/kepler.hpp"

using namespace urania;
constexpr double kPi = std::numbers::pi;

TEST_CASE("mean anomaly from aphelion") {
    auto el = fixtures::circular("probe", 1.0, 100.0, 2450000.0);
    CHECK(mean_anomaly_aph(el, el.T_aph) == 0.0);
    CHECK(mean_anomaly_aph(el, el.T_aph + 50.0) == doctest::Approx(180.0).epsilon(1e-14));
    CHECK(mean_anomaly_aph(el, el.T_aph + 10.0) == doctest::Approx(36.0).epsilon(1e-12));
    CHECK(mean_anomaly_since_aphelion(el, -10.0) == doctest::Approx(324.0).epsilon(1e-14));

    el.corrections.push_back({2.0, 25.0, 90.0});
    // 2 * sin(360 * 10 / 25 + 90) = 2 * sin(234 deg)
    CHECK(mean_anomaly_since_aphelion(el, 10.0) ==
          doctest::Approx(36.0 + 2.0 * std::sin(234.0 * kPi / 180.0)).epsilon(1e-13));
}

TEST_CASE("solve_kepler examples") {
    CHECK(solve_kepler(0.0, 0.5) == 0.0);
    for (double M : {0.3, 1.7, 3.0, 5.9}) CHECK(solve_kepler(M, 0.0) == doctest::Approx(M).epsilon(1e-15));
    // Bisection oracle (mpmath, 40 digits): 1.4987011335178483
    CHECK(std::fabs(solve_kepler(1.0, 0.5) - 1.4987011335178483) < 1e-12);
    CHECK(std::fabs(solve_kepler(1.0, 0.5) - static_cast<double>(oracle::kepler_bisect(1.0L, 0.5L))) < 1e-12);
    // Reduced into one revolution.
    CHECK(std::fabs(solve_kepler(1.0 + 4 * kPi, 0.5) - solve_kepler(1.0, 0.5)) < 1e-12);
    CHECK(std::fabs(solve_kepler(1.0 - 2 * kPi, 0.5) - solve_kepler(1.0, 0.5)) < 1e-12);

    CHECK_THROWS_AS(solve_kepler(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(solve_kepler(1.0, -0.1), DomainError);
    CHECK_THROWS_AS(solve_kepler(1.0, 1.5), DomainError);
}

TEST_CASE("solve_kepler residual grid, including high eccentricity") {
    double worst = 0.0;
    for (double e : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.97, 0.999}) {
        double prev = -1.0;
        for (int k = 0; k < 1000; ++k) {
            const double M = 2 * kPi * k / 1000.0;
            const double E = solve_kepler(M, e);
            worst = std::max(worst, std::fabs(E - e * std::sin(E) - M));
            REQUIRE(E > prev);  // strictly increasing in M
            prev = E;
            REQUIRE(std::fabs(E - static_cast<double>(oracle::kepler_bisect(M, e))) < 1e-10);
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("solve_kepler at perihelion for every eccentricity") {
    // Newton started at pi can land a hair below zero here; the result must
    // still be the perihelion, whichever path produced it.
    for (double e = 0.0; e < 1.0; e += 0.01) {
        bool fallback = false;
        const double E = solve_kepler(0.0, e, fallback);
        CHECK(E >= 0.0);
        CHECK(E < 1e-12);
    }
}

TEST_CASE("true anomaly and radius closed forms") {
    for (double E : {0.0, 0.5, 2.0, 4.0, 6.0}) CHECK(true_anomaly(E, 0.0) == doctest::Approx(E).epsilon(1e-15));
    for (double e : {0.0, 0.3, 0.9}) CHECK(true_anomaly(kPi, e) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(true_anomaly(0.0, 0.7) == 0.0);
    CHECK(true_anomaly(kPi / 2, 0.5) * 180.0 / kPi == doctest::Approx(120.0).epsilon(1e-14));

    double prev = -1.0;
    for (int k = 0; k <= 1000; ++k) {
        const double nu = true_anomaly(2 * kPi * k / 1000.0, 0.6);
        REQUIRE(nu > prev);
        prev = nu;
    }

    CHECK(radius(0.0, 0.2, 3.0) == doctest::Approx(3.0 * 0.8));
    CHECK(radius(kPi, 0.2, 3.0) == doctest::Approx(3.0 * 1.2));
    CHECK(radius(kPi / 2, 0.5, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("heliocentric state latitude cases") {
    auto planar = fixtures::mars_like();
    planar.i = 0.0;
    planar.Omega = 0.0;
    for (double t = 0.0; t < planar.P; t += 37.3) CHECK(heliocentric_since_aphelion(planar, t).b == 0.0);

    // i = 90, node at 0, perihelion at u = 90: the pole at perihelion (t = P/2).
    auto polar = fixtures::make("polar", 2.0, 0.3, 90.0, 0.0, 90.0, 400.0, 2451000.0);
    const auto s = heliocentric_since_aphelion(polar, 200.0);
    CHECK(s.b == doctest::Approx(90.0).epsilon(1e-12));
    CHECK(s.r == doctest::Approx(2.0 * 0.7).epsilon(1e-14));
}

TEST_CASE("heliocentric state matches the extended-precision two-body oracle") {
    for (const auto& el : {fixtures::mars_like(), fixtures::jupiter_like(), fixtures::earth_like(),
                           fixtures::make("eccentric", 2.7, 0.85, 23.0, 140.0, 310.0, 1621.0, 2450100.0)}) {
        for (double jd = 2440000.0; jd < 2470000.0; jd += 1234.567) {
            const auto s = heliocentric_state(el, {jd});
            const auto o = oracle::helio(el, static_cast<oracle::LD>(jd) - el.T_aph.jd);
            INFO(el.name << " jd " << jd);
            REQUIRE(static_cast<double>(oracle::angle_gap(s.l, o.l)) < 1e-9);
            REQUIRE(std::fabs(s.b - static_cast<double>(o.b)) < 1e-9);
            REQUIRE(std::fabs(s.r - static_cast<double>(o.r)) < 1e-12 * el.a);
            REQUIRE(s.r >= el.a * (1 - el.e) * (1 - 1e-15));
            REQUIRE(s.r <= el.a * (1 + el.e) * (1 + 1e-15));
            REQUIRE(std::fabs(s.b) <= el.i + 1e-12);
        }
    }
}

TEST_CASE("time_since_aphelion examples") {
    auto el = fixtures::make("probe", 1.0, 0.3, 0.0, 0.0, 0.0, 100.0, 2451000.0);
    CHECK(time_since_aphelion(el, 0.0) == 0.0);
    CHECK(time_since_aphelion(el, 180.0) == doctest::Approx(50.0).epsilon(1e-14));
    // Bisection on the forward chain (mpmath, 40 digits): 34.404058380473177
    CHECK(std::fabs(time_since_aphelion(el, 90.0) - 34.404058380473177) < 1e-9);
    CHECK(std::fabs(orbit_point_since_aphelion(el, 34.404058380473177).nu_aph - 90.0) < 1e-9);

    el.corrections.push_back({0.1, 20.0, 0.0});
    CHECK_THROWS_AS(time_since_aphelion(el, 90.0), UnsupportedInversion);
}

TEST_CASE("forward and inverse maps round-trip") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ecc(0.0, 0.97), period(10.0, 30000.0), frac(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        auto el = fixtures::make("probe", 1.0, ecc(rng), 0.0, 0.0, 0.0, period(rng), 0.0);
        const double t = frac(rng) * el.P;
        const double back = time_since_aphelion(el, orbit_point_since_aphelion(el, t).nu_aph);
        REQUIRE(back >= 0.0);
        REQUIRE(back < el.P);
        double gap = std::fabs(back - t);
        gap = std::min(gap, el.P - gap);
        REQUIRE(gap < 1e-9);
    }
}

TEST_CASE("mirror symmetry about the apse line") {
    const auto el = fixtures::make("probe", 1.3, 0.4, 0.0, 0.0, 0.0, 300.0, 0.0);
    for (double t = 1.0; t < 150.0; t += 7.7) {
        const auto a = orbit_point_since_aphelion(el, t);
        const auto b = orbit_point_since_aphelion(el, el.P - t);
        CHECK(a.r == doctest::Approx(b.r).epsilon(1e-13));
        CHECK(a.nu_aph + b.nu_aph == doctest::Approx(360.0).epsilon(1e-13));
    }
}

TEST_CASE("area law: r^2 dnu/dt is constant along the orbit") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> ecc(0.0, 0.9), period(80.0, 12000.0), axis(0.3, 30.0);
    const double h = 1e-4;
    for (int orbit = 0; orbit < 10; ++orbit) {
        const auto el = fixtures::make("probe", axis(rng), ecc(rng), 0.0, 0.0, 0.0, period(rng), 0.0);
        double lo = 1e300, hi = -1e300;
        for (int k = 0; k < 1000; ++k) {
            const double t = el.P * (k + 0.5) / 1000.0;
            const double rate = wrap_diff_deg(orbit_point_since_aphelion(el, t + h).nu_aph,
                                              orbit_point_since_aphelion(el, t - h).nu_aph) /
                                (2 * h);
            const double r = orbit_point_since_aphelion(el, t).r;
            lo = std::min(lo, r * r * rate);
            hi = std::max(hi, r * r * rate);
        }
        INFO("e = " << el.e << ", P = " << el.P);
        CHECK((hi - lo) / hi < 1e-6);
    }
}

TEST_CASE("circular planar orbit advances uniformly") {
    const auto el = fixtures::circular("ring", 1.0, 250.0);
    const double rate = 360.0 / el.P;
    for (double t = 0.0; t < 600.0; t += 1.0) {
        const double step = wrap_diff_deg(heliocentric_since_aphelion(el, t + 1.0).l,
                                          heliocentric_since_aphelion(el, t).l);
        REQUIRE(std::fabs(step - rate) < 1e-12);
    }
}

TEST_CASE("element validation names the field and body") {
    auto el = fixtures::mars_like();
    CHECK_NOTHROW(el.validate());
    el.e = 1.2;
    try {
        el.validate();
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        const std::string what = e.what();
        CHECK(what.find("eccentricity") != std::string::npos);
        CHECK(what.find("mars") != std::string::npos);
    }
    el = fixtures::mars_like();
    el.a = -1.0;
    CHECK_THROWS_AS(el.validate(), DomainError);
    el = fixtures::mars_like();
    el.i = 180.0;
    CHECK_THROWS_AS(el.validate(), DomainError);
    el = fixtures::mars_like();
    el.P = 0.0;
    CHECK_THROWS_AS(el.validate(), DomainError);
    el = fixtures::mars_like();
    el.corrections.push_back({-1.0, 10.0, 0.0});
    CHECK_THROWS_AS(el.validate(), DomainError);
}
