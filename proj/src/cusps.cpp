#include "starcurve/cusps.hpp"
#include "starcurve/exceptional.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace starcurve {

std::string Cusp::str() const
{
    if (b == 1)
        return "0";
    if (b == N)
        return "oo";
    return std::to_string(a) + "/" + std::to_string(b);
}

i64 cusp_width(i64 N, i64 b)
{
    return N / gcd(N, b * b);
}

i64 cusp_count(i64 N)
{
    i64 s = 0;
    for (i64 b : divisors(N))
        s += euler_phi(gcd(b, N / b));
    return s;
}

std::vector<i64> representative_numerators(i64 N, i64 b)
{
    if (N < 1 || b < 1 || N % b)
        throw std::invalid_argument("representative_numerators: need b | N");
    i64 g = gcd(b, N / b);
    if (g == 1)
        return {1};
    std::vector<i64> out;
    for (i64 r = 1; r < g; ++r) {
        if (gcd(r, g) != 1)
            continue;
        i64 a = r;
        while (gcd(a, N) != 1)
            a += g;
        out.push_back(a);
    }
    return out;
}

std::vector<Cusp> cusp_representatives(i64 N)
{
    if (N < 1)
        throw std::invalid_argument("cusp_representatives: N must be positive");
    std::vector<Cusp> out;
    for (i64 b : divisors(N))
        for (i64 a : representative_numerators(N, b))
            out.push_back({N, a, b, cusp_width(N, b)});
    return out;
}

Cusp normalize_cusp(i64 N, i64 p, i64 q)
{
    if (q < 0) {
        p = -p;
        q = -q;
    }
    if (gcd(p, q) != 1)
        throw std::invalid_argument("normalize_cusp: p/q not in lowest terms");
    i64 d = gcd(q, N);
    i64 g = gcd(d, N / d);
    i64 key = mod(mod(p, g) * mod(q / d, g), g);
    for (i64 a : representative_numerators(N, d))
        if (mod(a, g) == key)
            return {N, a, d, cusp_width(N, d)};
    throw std::logic_error("normalize_cusp: no representative");
}

bool same_cusp(i64 N, i64 p1, i64 q1, i64 p2, i64 q2)
{
    return normalize_cusp(N, p1, q1) == normalize_cusp(N, p2, q2);
}

std::vector<std::vector<Cusp>> galois_orbits(i64 N)
{
    std::vector<std::vector<Cusp>> out;
    for (i64 b : divisors(N)) {
        std::vector<Cusp> orb;
        for (i64 a : representative_numerators(N, b))
            orb.push_back({N, a, b, cusp_width(N, b)});
        out.push_back(std::move(orb));
    }
    return out;
}

std::string galois_field_label(i64 N, i64 b)
{
    i64 g = gcd(b, N / b);
    switch (g) {
    case 1:
    case 2:
        return "Q";
    case 3:
        return "Q(zeta3)";
    case 4:
        return "Q(i)";
    case 6:
        return "Q(zeta6)";
    default:
        return "Q(zeta" + std::to_string(g) + ")";
    }
}

void al_matrix(i64 N, i64 Q, i64 &x, i64 &y)
{
    if (!is_hall_divisor(Q, N))
        throw std::invalid_argument("al_matrix: Q is not a Hall divisor of N");
    i64 u, v;
    egcd(Q, N / Q, u, v);
    x = u;
    y = -v;
}

Cusp al_on_cusp(i64 N, i64 Q, const Cusp &c)
{
    i64 x, y;
    al_matrix(N, Q, x, y);
    i128 p = static_cast<i128>(Q) * x * c.a + static_cast<i128>(y) * c.b;
    i128 q = static_cast<i128>(N) * c.a + static_cast<i128>(Q) * c.b;
    i128 g = p < 0 ? -p : p, h = q < 0 ? -q : q;
    while (h) {
        i128 t = g % h;
        g = h;
        h = t;
    }
    p /= g;
    q /= g;
    return normalize_cusp(N, static_cast<i64>(p), static_cast<i64>(q));
}

static bool denominators_merge(const FactoredInteger &f, i64 b1, i64 b2)
{
    for (auto [p, e] : f.factors) {
        int v1 = valuation(b1, p), v2 = valuation(b2, p);
        if (v2 != v1 && v2 != e - v1)
            return false;
    }
    return true;
}

static bool exactly_divides(i64 m, i64 N)
{
    return N % m == 0 && gcd(m, N / m) == 1;
}

static std::vector<i64> rational_denominators(i64 N)
{
    std::vector<i64> out{N};
    bool four = N % 4 == 0;
    bool nine = exactly_divides(9, N);
    if (four)
        out.push_back(2);
    if (nine)
        out.push_back(3);
    if (exactly_divides(16, N))
        out.push_back(4);
    if (four && nine)
        out.push_back(6);
    if (exactly_divides(144, N))
        out.push_back(12);
    return out;
}

std::vector<StarCuspClass> star_cusp_orbits(i64 N)
{
    auto f = factorize(N);
    auto divs = divisors(N);
    auto rat = rational_denominators(N);
    std::vector<bool> used(divs.size(), false);
    std::vector<StarCuspClass> out;
    for (size_t i = divs.size(); i-- > 0;) {
        if (used[i])
            continue;
        StarCuspClass cl;
        cl.N = N;
        for (size_t j = 0; j < divs.size(); ++j) {
            if (used[j] || !denominators_merge(f, divs[i], divs[j]))
                continue;
            used[j] = true;
            cl.denominators.push_back(divs[j]);
            for (i64 a : representative_numerators(N, divs[j]))
                cl.members.push_back({N, a, divs[j], cusp_width(N, divs[j])});
        }
        for (i64 r : rat)
            if (std::find(cl.denominators.begin(), cl.denominators.end(), r) != cl.denominators.end())
                cl.rational = true;
        cl.field = galois_field_label(N, divs[i]);
        out.push_back(std::move(cl));
    }
    return out;
}

i64 star_cusp_class_count(i64 N)
{
    i64 r = 1;
    for (auto [p, e] : factorize(N).factors)
        r *= (e + 2) / 2;
    return r;
}

std::vector<StarCuspClass> rational_star_cusps(i64 N)
{
    std::vector<StarCuspClass> out;
    for (auto &cl : star_cusp_orbits(N))
        if (cl.rational)
            out.push_back(cl);
    return out;
}

i64 width_one_transport(i64 N, const Cusp &c)
{
    i64 Q = 1;
    for (auto [p, e] : factorize(N).factors)
        if (2 * valuation(c.b, p) < e)
            Q *= ipow(p, e);
    return Q;
}

bool degeneracy_unramified(i64 N, i64 M, i64 d, const Cusp &c)
{
    if (M < 1 || N % M)
        throw std::invalid_argument("degeneracy_unramified: M must divide N");
    i64 NM = N / M;
    if (d < 1 || NM % d)
        throw std::invalid_argument("degeneracy_unramified: d must divide N/M");
    if (!exactly_divides(d, NM))
        return false;
    for (auto [p, e] : factorize(d).factors) {
        (void)e;
        int vN = valuation(N, p);
        if (vN % 2 != 0 || valuation(c.b, p) != vN / 2)
            return false;
    }
    return true;
}

std::vector<i64> unramified_hall_set(i64 N, i64 M, const Cusp &c)
{
    if (!hv_check(N, M))
        throw std::invalid_argument("unramified_hall_set: (HV) fails for (N, M)");
    if (cusp_width(N, c.b) != 1)
        throw std::invalid_argument("unramified_hall_set: cusp must have width 1");
    std::vector<i64> out;
    for (i64 d : hall_divisors(N / M))
        if (degeneracy_unramified(N, M, d, c))
            out.push_back(d);
    return out;
}

std::vector<Cusp> width_one_cusps(i64 N)
{
    std::vector<Cusp> out;
    for (auto &c : cusp_representatives(N))
        if (c.width == 1)
            out.push_back(c);
    return out;
}

}
