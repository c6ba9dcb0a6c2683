#include "doctest.h"
#include "starcurve/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace starcurve;

namespace {

/* (1/pi) * integral over [0, pi] of cos(t - x sin t), trapezoid rule on a periodic integrand */
double j1_quadrature(double x)
{
    const int n = 4000;
    const double h = std::numbers::pi / n;
    double s = 0;
    for (int k = 0; k <= n; ++k) {
        double t = k * h;
        double w = (k == 0 || k == n) ? 0.5 : 1.0;
        s += w * std::cos(t - x * std::sin(t));
    }
    return s * h / std::numbers::pi;
}

}

TEST_CASE("Kloosterman sums")
{
    CHECK(kloosterman(5, 7, 1) == doctest::Approx(1));
    CHECK(kloosterman(1, 1, 2) == doctest::Approx(1));
    CHECK(kloosterman(1, 1, 3) == doctest::Approx(-1));
    CHECK(kloosterman(0, 0, 7) == doctest::Approx(6));
    CHECK(kloosterman(1, 0, 7) == doctest::Approx(-1));
    CHECK_THROWS_AS(kloosterman(1, 1, 0), std::invalid_argument);
    for (i64 c = 1; c <= 60; ++c)
        for (i64 m = 0; m < 6; ++m)
            for (i64 n = 0; n < 6; ++n)
                CHECK(kloosterman(m, n, c) == doctest::Approx(kloosterman(n, m, c)).epsilon(1e-9).scale(1));
}

TEST_CASE("Weil bound on random triples")
{
    std::mt19937_64 rng(20261016);
    std::uniform_int_distribution<i64> cd(1, 600), md(-1000, 1000);
    for (int trial = 0; trial < 10000; ++trial) {
        i64 c = cd(rng), m = md(rng), n = md(rng);
        double g = static_cast<double>(gcd(gcd(m, n), c));
        double bound = std::sqrt(g) * static_cast<double>(num_divisors(c)) * std::sqrt(static_cast<double>(c));
        INFO("S(" << m << ", " << n << "; " << c << ")");
        CHECK(std::fabs(kloosterman(m, n, c)) <= bound + 1e-9);
    }
}

TEST_CASE("Bessel J1")
{
    CHECK(bessel_j1(0) == 0);
    CHECK(bessel_j1(2) == doctest::Approx(0.576724807756873).epsilon(1e-13));
    CHECK(std::fabs(bessel_j1(2) - j1_quadrature(2)) < 1e-12);
    CHECK(bessel_j1(-2) == doctest::Approx(-bessel_j1(2)));
    CHECK_THROWS_AS(bessel_j1(50.5), std::domain_error);
    for (double x = -50; x <= 50; x += 0.0625) {
        INFO("x = " << x);
        auto v = bessel_j1_series(x);
        CHECK(std::fabs(v.value) <= std::fabs(x) / 2 + 1e-15);
        CHECK(std::fabs(v.value - j1_quadrature(x)) < 1e-10);
        CHECK(std::fabs(v.value - std::cyl_bessel_j(1.0, x < 0 ? -x : x) * (x < 0 ? -1 : 1)) < 1e-10);
        CHECK(v.error < 1e-12);
    }
}

TEST_CASE("S_Q partial sums against the S_Q bound")
{
    for (i64 c : {2, 4, 6}) {
        double v = sq_partial(26, 13, c, 1e-12);
        CHECK(std::fabs(v) <= sq_bound(26, 13, c));
        CHECK(std::fabs(v - sq_partial(26, 13, c, 5e-13)) < 1e-12);
    }
    for (i64 p : kAnalyticPrimes)
        for (i64 q : {37, 41, 101, 251})
            for (i64 Q : {p, q}) {
                i64 M = p * q;
                i64 step = M / Q;
                for (i64 c = step; c <= std::min<i64>(12 * step, 700); c += step) {
                    if (gcd(Q, c) != 1)
                        continue;
                    INFO("M = " << M << ", Q = " << Q << ", c = " << c);
                    CHECK(std::fabs(sq_partial(M, Q, c, 1e-10)) <= sq_bound(M, Q, c));
                }
            }
    CHECK(sq_bound(26, 26, 1) == doctest::Approx(1.0));
    CHECK(sq_bound(91, 7, 13) == doctest::Approx(std::min(2 * std::sqrt(91.0) / (std::pow(13.0, 1.5) * std::sqrt(7.0)), 5.7 / (13 * std::sqrt(7.0)) * (std::log(13.0) + 1.5))));
    CHECK_THROWS_AS(sq_partial(26, 13, 3, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(sq_bound(26, 13, 26), std::invalid_argument);
    CHECK_THROWS_AS(sq_bound(12, 2, 6), std::invalid_argument);
    CHECK_THROWS_AS(sq_partial(26, 13, 2, 0), std::invalid_argument);
}

TEST_CASE("error bound components")
{
    auto b = error_bound(2, 1701);
    CHECK(b.total == doctest::Approx(b.leading + 2 * std::numbers::pi * (b.weil_block + b.f1 + b.f2)));
    CHECK(b.leading == doctest::Approx(1 - std::exp(-2 * std::numbers::pi / std::sqrt(3402.0))));
    CHECK(b.weil_block == doctest::Approx(6.9 * (4.0 / 3402 + 2 / (1701 * std::sqrt(2.0)))));
    CHECK(b.total < 1);
    CHECK(error_bound(13, 251).total < 1);
    CHECK_THROWS_AS(error_bound(11, 100), std::invalid_argument);
    CHECK_THROWS_AS(error_bound(2, 36), std::invalid_argument);
    for (i64 p : kAnalyticPrimes) {
        double prev = error_bound(p, 37).total;
        for (i64 q = 38; q <= 2000; ++q) {
            double cur = error_bound(p, static_cast<double>(q)).total;
            CHECK(cur < prev);
            prev = cur;
        }
    }
    bool below = false;
    long double hp = error_bound_high_precision(2, 1701, &below);
    CHECK(below);
    CHECK(std::fabs(static_cast<double>(hp) - error_bound(2, 1701).total) < 1e-12);
}

TEST_CASE("thresholds")
{
    std::map<i64, i64> computed{{2, 1621}, {3, 1077}, {5, 641}, {7, 455}, {13, 242}};
    for (i64 p : kAnalyticPrimes) {
        auto t = threshold(p);
        INFO("p = " << p);
        CHECK(t.q0 == computed[p]);
        CHECK(t.total_at_q0 < 1);
        CHECK(t.total_before >= 1);
        CHECK(t.decreasing_certified);
        CHECK(t.high_precision_confirmed);
    }
    CHECK(threshold(2).q0 <= 1701);
    CHECK(threshold(3).q0 <= 1101);
    CHECK(threshold(13).q0 <= 251);
}
