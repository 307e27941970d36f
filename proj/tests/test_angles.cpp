#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracle.hpp"
#include "urania/angles.hpp"
#include "urania/errors.hpp"

using namespace urania;

TEST_CASE("normalize_deg wraps into [0, 360)") {
    CHECK(normalize_deg(370.0) == 10.0);
    CHECK(normalize_deg(-10.0) == 350.0);
    CHECK(normalize_deg(720.0) == 0.0);
    CHECK_FALSE(std::signbit(normalize_deg(-720.0)));
    CHECK(normalize_deg(-1e-20) < 360.0);
    CHECK_THROWS_AS(normalize_deg(std::numeric_limits<double>::infinity()), DomainError);
    CHECK_THROWS_AS(normalize_deg(std::nan("")), DomainError);
}

TEST_CASE("normalize_deg property: range and congruence") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(-1e5, 1e5);
    for (int k = 0; k < 10000; ++k) {
        const double x = d(rng);
        const double n = normalize_deg(x);
        REQUIRE(n >= 0.0);
        REQUIRE(n < 360.0);
        const double turns = (x - n) / 360.0;
        REQUIRE(std::fabs(turns - std::round(turns)) < 1e-9);
    }
}

TEST_CASE("wrap_diff_deg folds into (-180, 180]") {
    CHECK(wrap_diff_deg(10.0, 350.0) == doctest::Approx(20.0).epsilon(1e-15));
    CHECK(wrap_diff_deg(350.0, 10.0) == doctest::Approx(-20.0).epsilon(1e-15));
    CHECK(wrap_diff_deg(180.0, 0.0) == 180.0);
    CHECK(wrap_diff_deg(0.0, 180.0) == 180.0);  // -180 maps to +180
    CHECK_THROWS_AS(wrap_diff_deg(std::nan(""), 0.0), DomainError);

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(0.0, 360.0);
    for (int k = 0; k < 10000; ++k) {
        const double a = d(rng), b = d(rng);
        const double w = wrap_diff_deg(a, b);
        REQUIRE(w > -180.0);
        REQUIRE(w <= 180.0);
        REQUIRE(oracle::angle_gap(w + b, a) < 1e-12);
    }
}

TEST_CASE("aphelion_shift is an involution") {
    CHECK(aphelion_shift(0.0) == 180.0);
    CHECK(aphelion_shift(180.0) == 0.0);
    CHECK(aphelion_shift(90.0) == 270.0);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(0.0, 360.0);
    for (int k = 0; k < 10000; ++k) {
        const double x = d(rng);
        REQUIRE(oracle::angle_gap(aphelion_shift(aphelion_shift(x)), x) < 1e-12);
    }
}

TEST_CASE("calendar_to_jd matches the chrono civil-day oracle") {
    CHECK(oracle::chrono_jd(2000, 1, 1, 0.5) == 2451545.0);
    CHECK(calendar_to_jd(2000, 1, 1, 0.5).jd == 2451545.0);
    CHECK(calendar_to_jd(2000, 1, 1, 0.0).jd == 2451544.5);
    CHECK(calendar_to_jd(1582, 10, 15, 0.0).jd == oracle::chrono_jd(1582, 10, 15, 0.0));
    CHECK(calendar_to_jd(1500, 3, 1, 0.0).jd == oracle::chrono_jd(1500, 3, 1, 0.0));  // proleptic Gregorian

    for (int y = 1500; y <= 2500; y += 7) {
        for (int m = 1; m <= 12; ++m) {
            const int last = days_in_month(y, m);
            for (int d : {1, 15, last}) {
                REQUIRE(calendar_to_jd(y, m, d, 0.25).jd ==
                        oracle::chrono_jd(y, static_cast<unsigned>(m), static_cast<unsigned>(d), 0.25));
            }
        }
    }
}

TEST_CASE("jd_to_calendar inverts calendar_to_jd") {
    const auto a = jd_to_calendar({2451545.0});
    CHECK(a == CalendarDate{2000, 1, 1, 0.5});
    const auto b = jd_to_calendar({2451544.5});
    CHECK(b == CalendarDate{2000, 1, 1, 0.0});

    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> year(1500, 2500), month(1, 12);
    std::uniform_real_distribution<double> frac(0.0, 0.999);
    for (int k = 0; k < 20000; ++k) {
        const int y = year(rng), m = month(rng);
        const int d = std::uniform_int_distribution<int>(1, days_in_month(y, m))(rng);
        const double f = frac(rng);
        const auto back = jd_to_calendar(calendar_to_jd(y, m, d, f));
        REQUIRE(back.year == y);
        REQUIRE(back.month == m);
        REQUIRE(back.day == d);
        REQUIRE(std::fabs(back.day_fraction - f) < 1e-9);
    }
    std::uniform_real_distribution<double> jd(oracle::chrono_jd(1500, 1, 1, 0), oracle::chrono_jd(2500, 1, 1, 0));
    for (int k = 0; k < 20000; ++k) {
        const JulianDate x{jd(rng)};
        REQUIRE(std::fabs(calendar_to_jd(jd_to_calendar(x)).jd - x.jd) < 1e-9);
    }
}

TEST_CASE("invalid calendar dates are rejected") {
    CHECK_THROWS_AS(calendar_to_jd(2001, 2, 29, 0.0), DomainError);
    CHECK_NOTHROW(calendar_to_jd(2000, 2, 29, 0.0));
    CHECK_THROWS_AS(calendar_to_jd(1900, 2, 29, 0.0), DomainError);
    CHECK_THROWS_AS(calendar_to_jd(2000, 13, 1, 0.0), DomainError);
    CHECK_THROWS_AS(calendar_to_jd(2000, 4, 31, 0.0), DomainError);
    CHECK_THROWS_AS(calendar_to_jd(2000, 1, 1, 1.0), DomainError);
    CHECK_THROWS_AS(calendar_to_jd(2000, 1, 0, 0.0), DomainError);
    CHECK_THROWS_AS(jd_to_calendar({std::nan("")}), DomainError);
}
