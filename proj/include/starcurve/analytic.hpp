#pragma once

#include "starcurve/arith.hpp"

#include <vector>

namespace starcurve {

double kloosterman(i64 m, i64 n, i64 c);

struct SeriesValue {
    double value;
    double error;
};

/* power series, |x| <= 50 */
SeriesValue bessel_j1_series(double x);
double bessel_j1(double x);

double sq_partial(i64 M, i64 Q, i64 c, double tol);
double sq_bound(i64 M, i64 Q, i64 c);

struct BoundBreakdown {
    i64 p;
    double q;
    double leading;
    double weil_block;
    double f1;
    double f2;
    double total;
};

extern const std::vector<i64> kAnalyticPrimes;

BoundBreakdown error_bound(i64 p, double q);
/* the same right-hand side in 113-bit binary floating point */
long double error_bound_high_precision(i64 p, i64 q, bool *below_one);

struct ThresholdResult {
    i64 p;
    i64 q0;
    double total_at_q0;
    double total_before;
    bool decreasing_certified;
    bool high_precision_confirmed;
};

ThresholdResult threshold(i64 p);

}
