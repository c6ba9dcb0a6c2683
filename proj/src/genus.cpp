#include "starcurve/genus.hpp"
#include "starcurve/cusps.hpp"
#include "starcurve/quadforms.hpp"
#include "starcurve/quadorders.hpp"

#include <stdexcept>

namespace starcurve {

i64 index_mu(i64 N)
{
    i64 m = N;
    for (auto [p, e] : factorize(N).factors)
        m = m / p * (p + 1);
    return m;
}

i64 elliptic_nu2(i64 N)
{
    if (N % 4 == 0)
        return 0;
    i64 r = 1;
    for (auto [p, e] : factorize(N).factors)
        r *= 1 + kronecker(-4, p);
    return r;
}

i64 elliptic_nu3(i64 N)
{
    if (N % 9 == 0)
        return 0;
    i64 r = 1;
    for (auto [p, e] : factorize(N).factors)
        r *= 1 + kronecker(-3, p);
    return r;
}

i64 genus_X0(i64 N)
{
    if (N < 1)
        throw std::invalid_argument("genus_X0: N must be positive");
    i64 twelve_g = 12 + index_mu(N) - 3 * elliptic_nu2(N) - 4 * elliptic_nu3(N) - 6 * cusp_count(N);
    if (twelve_g % 12 != 0)
        throw std::logic_error("genus_X0: non-integral genus");
    return twelve_g / 12;
}

namespace {

/* x + y alpha acting on O / p^e O in the basis (1, alpha) */
struct Mat {
    i64 a, b, c, d;
};

Mat mult_matrix(const ImagQuadOrder &O, i64 x, i64 y)
{
    return {x, -y * O.nrm, y, x + y * O.t};
}

bool stable(const Mat &m, i64 u, i64 v, i64 pe)
{
    i64 fu = mod(m.a * u + m.b * v, pe);
    i64 fv = mod(m.c * u + m.d * v, pe);
    return mod(mulmod(u, fv, pe) - mulmod(v, fu, pe), pe) == 0;
}

/* lines of P1(Z/p^e) stable under every matrix in ms */
i64 stable_lines(const std::vector<Mat> &ms, i64 p, int e)
{
    i64 pe = ipow(p, e);
    i64 n = 0;
    auto ok = [&](i64 u, i64 v) {
        for (auto &m : ms)
            if (!stable(m, u, v, pe))
                return false;
        return true;
    };
    for (i64 v = 0; v < pe; ++v)
        n += ok(1, v);
    for (i64 j = 0; j < pe / p; ++j)
        n += ok(p * j, 1);
    return n;
}

i64 local_product(const std::vector<Mat> &ms, const FactoredInteger &rest)
{
    i64 r = 1;
    for (auto [p, e] : rest.factors)
        r *= stable_lines(ms, p, e);
    return r;
}

}

std::vector<FixedPointTerm> al_fixed_cm_terms(i64 N, i64 Q)
{
    if (Q <= 1 || !is_hall_divisor(Q, N))
        throw std::invalid_argument("al_fixed_points: Q must be a Hall divisor of N with Q > 1");
    auto rest = factorize(N / Q);
    std::vector<FixedPointTerm> out;

    /* orders containing sqrt(-Q) as a primitive element */
    {
        i64 D = -4 * Q;
        auto O = order_from_disc(D);
        Mat phi = O.t == 0 ? mult_matrix(O, 0, 1) : mult_matrix(O, -O.c / 2, 1);
        out.push_back({D, class_number(D) * local_product({phi}, rest)});
    }
    if (Q % 4 == 3) {
        i64 D = -Q;
        auto O = order_from_disc(D);
        Mat phi = mult_matrix(O, -O.c, 2);
        if (D == -3) {
            Mat unit = mult_matrix(O, 0, 1);
            i64 n = (local_product({phi}, rest) + 2 * local_product({phi, unit}, rest)) / 3;
            out.push_back({D, n});
        } else {
            out.push_back({D, class_number(D) * local_product({phi}, rest)});
        }
    }
    /* 1 + i for Q = 2 */
    if (Q == 2) {
        auto O = order_from_disc(-4);
        Mat phi = mult_matrix(O, 1, 1);
        Mat unit = mult_matrix(O, 0, 1);
        i64 n = (local_product({phi}, rest) + local_product({phi, unit}, rest)) / 2;
        out.push_back({-4, n});
    }
    return out;
}

i64 al_fixed_cusps(i64 N, i64 Q)
{
    i64 n = 0;
    for (auto &c : cusp_representatives(N))
        if (al_on_cusp(N, Q, c) == c)
            ++n;
    return n;
}

i64 al_fixed_points(i64 N, i64 Q)
{
    i64 n = al_fixed_cusps(N, Q);
    for (auto &t : al_fixed_cm_terms(N, Q))
        n += t.count;
    return n;
}

GenusData genus_data(i64 N)
{
    GenusData g;
    g.N = N;
    g.mu = index_mu(N);
    g.nu2 = elliptic_nu2(N);
    g.nu3 = elliptic_nu3(N);
    g.nu_inf = cusp_count(N);
    g.genus = genus_X0(N);
    auto f = factorize(N);
    i64 total = 0;
    for (i64 Q : hall_divisors(f)) {
        if (Q == 1)
            continue;
        i64 k = al_fixed_points(N, Q);
        g.fixed_points.emplace_back(Q, k);
        total += k;
    }
    i64 order = i64(1) << f.omega();
    i64 num = 2 * g.genus - 2 - total;
    if (num % order != 0 || (num / order) % 2 != 0)
        throw std::logic_error("genus_star: Riemann-Hurwitz does not close at N = " + std::to_string(N));
    g.genus_star = (num / order + 2) / 2;
    if (g.genus_star < 0)
        throw std::logic_error("genus_star: negative genus at N = " + std::to_string(N));
    return g;
}

i64 genus_star(i64 N) { return genus_data(N).genus_star; }

}
