#include "starcurve/analytic.hpp"

#include <gmpxx.h>
#include <quadmath.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace starcurve {

const std::vector<i64> kAnalyticPrimes{2, 3, 5, 7, 13};

namespace {

constexpr double kPi = std::numbers::pi;

void check_unit_sum(i64 c)
{
    if (c < 1)
        throw std::invalid_argument("kloosterman: c must be positive");
}

/* exponents (m x + n x^-1) mod c over units x */
std::vector<i64> kloosterman_exponents(i64 m, i64 n, i64 c)
{
    std::vector<i64> ex;
    for (i64 x = 0; x < c; ++x) {
        if (gcd(x, c) != 1)
            continue;
        i64 xi = c == 1 ? 0 : inverse_mod(x, c);
        ex.push_back(mod(mulmod(mod(m, c), x, c) + mulmod(mod(n, c), xi, c), c));
    }
    return ex;
}

}

double kloosterman(i64 m, i64 n, i64 c)
{
    check_unit_sum(c);
    if (c == 1)
        return 1.0;
    double s = 0;
    for (i64 e : kloosterman_exponents(m, n, c))
        s += std::cos(2 * kPi * static_cast<double>(e) / static_cast<double>(c));
    return s;
}

SeriesValue bessel_j1_series(double x)
{
    if (!std::isfinite(x) || std::fabs(x) > 50)
        throw std::domain_error("bessel_j1: series regime requires |x| <= 50");
    unsigned bits = 128 + static_cast<unsigned>(std::ceil(std::fabs(x) * 1.45));
    mpf_class h(x / 2, bits), h2(0, bits), term(0, bits), sum(0, bits);
    h2 = h * h;
    term = h;
    sum = 0;
    double max_term = std::fabs(x / 2);
    double next = 0;
    for (long k = 0;; ++k) {
        sum += term;
        term = -term * h2 / ((k + 1) * (k + 2));
        double t = std::fabs(term.get_d());
        max_term = std::max(max_term, t);
        if (k + 1 > std::fabs(x) / 2 && t < 1e-40) {
            next = t;
            break;
        }
    }
    double v = sum.get_d();
    double err = next + max_term * std::ldexp(1.0, -static_cast<int>(bits) + 8) + std::fabs(v) * 1.2e-16;
    return {v, err};
}

double bessel_j1(double x)
{
    return bessel_j1_series(x).value;
}

namespace {

double j1_any(double x)
{
    if (std::fabs(x) <= 50)
        return bessel_j1(x);
    return std::cyl_bessel_j(1.0, x);
}

void check_sq(i64 M, i64 Q, i64 c)
{
    if (M < 1 || Q < 1 || c < 1)
        throw std::invalid_argument("S_Q: arguments must be positive");
    if (M % Q != 0 || gcd(Q, M / Q) != 1)
        throw std::invalid_argument("S_Q: Q must be a Hall divisor of M");
    if (c % (M / Q) != 0)
        throw std::invalid_argument("S_Q: M/Q must divide c");
    if (gcd(Q, c) != 1)
        throw std::invalid_argument("S_Q: gcd(Q, c) must be 1");
}

}

double sq_partial(i64 M, i64 Q, i64 c, double tol)
{
    check_sq(M, Q, c);
    if (!(tol > 0))
        throw std::invalid_argument("sq_partial: tol must be positive");
    i64 qinv = c == 1 ? 0 : inverse_mod(mod(Q, c), c);
    std::vector<double> S(c);
    for (i64 r = 0; r < c; ++r)
        S[r] = kloosterman(1, mulmod(r, qinv, c), c);
    double sm = std::sqrt(static_cast<double>(M));
    double sq = std::sqrt(static_cast<double>(Q));
    double decay = std::exp(-2 * kPi / sm);
    double scale = 2 * kPi / (static_cast<double>(c) * sq) / (1 - decay);
    double sum = 0;
    for (i64 n = 1;; ++n) {
        double dn = static_cast<double>(n);
        double y = 4 * kPi * std::sqrt(dn) / (static_cast<double>(c) * sq);
        sum += std::exp(-2 * kPi * dn / sm) * S[n % c] / std::sqrt(dn) * j1_any(y);
        double tail = scale * std::exp(-2 * kPi * (dn + 1) / sm);
        if (tail < tol)
            break;
    }
    return sum / static_cast<double>(c);
}

double sq_bound(i64 M, i64 Q, i64 c)
{
    check_sq(M, Q, c);
    double dc = static_cast<double>(c);
    double sQ = std::sqrt(static_cast<double>(Q));
    double weil = static_cast<double>(num_divisors(c)) * std::sqrt(static_cast<double>(M)) / (std::pow(dc, 1.5) * sQ);
    double abel = 5.7 / (dc * sQ) * (std::log(dc) + 1.5);
    return std::min(weil, abel);
}

namespace {

void check_bound_args(i64 p, double q)
{
    bool ok = false;
    for (i64 r : kAnalyticPrimes)
        ok = ok || r == p;
    if (!ok)
        throw std::invalid_argument("error_bound: p must be one of 2, 3, 5, 7, 13");
    if (!(q > 36))
        throw std::invalid_argument("error_bound: q must exceed 36");
}

template <class F, class Log, class Exp, class Sqrt>
void evaluate(F p, F q, F &leading, F &weil, F &f1, F &f2, Log lg, Exp ex, Sqrt sr)
{
    const F pi = F(3.14159265358979323846264338327950288L);
    F px = p * q;
    F L = lg(q / 36);
    F LP = lg(px / 36);
    leading = 1 - ex(-2 * pi / sr(px));
    weil = F(6.9) * (4 / px + 2 / (q * sr(p)));
    f1 = (F(5.7) * (lg(p) + F(1.5)) * (L + 1) + (1 + L * L) / 2) / px + 12 * (2 * L + 8) / px;
    f2 = (F(5.7) * F(1.5) * (LP + 1) + (1 + LP * LP) / 2) / px + 6 * (2 * LP + 8) / px;
}

}

BoundBreakdown error_bound(i64 p, double q)
{
    check_bound_args(p, q);
    BoundBreakdown b{};
    b.p = p;
    b.q = q;
    evaluate<double>(static_cast<double>(p), q, b.leading, b.weil_block, b.f1, b.f2,
        [](double v) { return std::log(v); }, [](double v) { return std::exp(v); }, [](double v) { return std::sqrt(v); });
    b.total = b.leading + 2 * kPi * (b.weil_block + b.f1 + b.f2);
    return b;
}

long double error_bound_high_precision(i64 p, i64 q, bool *below_one)
{
    check_bound_args(p, static_cast<double>(q));
    __float128 leading, weil, f1, f2;
    evaluate<__float128>(static_cast<__float128>(p), static_cast<__float128>(q), leading, weil, f1, f2,
        [](__float128 v) { return logq(v); }, [](__float128 v) { return expq(v); }, [](__float128 v) { return sqrtq(v); });
    __float128 total = leading + 2 * M_PIq * (weil + f1 + f2);
    if (below_one)
        *below_one = total < 1;
    return static_cast<long double>(total);
}

ThresholdResult threshold(i64 p)
{
    check_bound_args(p, 37);
    i64 hi = 37;
    while (error_bound(p, static_cast<double>(hi)).total >= 1) {
        hi *= 2;
        if (hi > (i64(1) << 40))
            throw std::runtime_error("threshold: bound never drops below 1");
    }
    i64 lo = 37;
    if (error_bound(p, 37).total < 1)
        hi = 37;
    while (lo < hi) {
        i64 mid = lo + (hi - lo) / 2;
        if (error_bound(p, static_cast<double>(mid)).total < 1)
            hi = mid;
        else
            lo = mid + 1;
    }
    ThresholdResult r{};
    r.p = p;
    r.q0 = hi;
    r.total_at_q0 = error_bound(p, static_cast<double>(hi)).total;
    r.total_before = hi > 37 ? error_bound(p, static_cast<double>(hi - 1)).total : r.total_at_q0;
    r.decreasing_certified = true;
    double prev = error_bound(p, 37).total;
    for (i64 q = 38; q <= std::max<i64>(hi + 1, 2000); ++q) {
        double cur = error_bound(p, static_cast<double>(q)).total;
        if (!(cur < prev))
            r.decreasing_certified = false;
        prev = cur;
    }
    bool at = false, before = false;
    error_bound_high_precision(p, hi, &at);
    if (hi > 37)
        error_bound_high_precision(p, hi - 1, &before);
    r.high_precision_confirmed = at && !before;
    return r;
}

}
