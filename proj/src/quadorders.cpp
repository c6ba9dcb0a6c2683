#include "starcurve/quadorders.hpp"

#include <algorithm>
#include <stdexcept>

namespace starcurve {

bool is_discriminant(i64 D)
{
    i64 r = mod(D, 4);
    return D < 0 && (r == 0 || r == 1);
}

static bool is_fundamental(i64 D)
{
    i64 r = mod(D, 4);
    if (r == 1)
        return is_squarefree(-D);
    if (r != 0)
        return false;
    i64 m = mod(D / 4, 4);
    return (m == 2 || m == 3) && is_squarefree(-D / 4);
}

i64 fundamental_part(i64 D)
{
    if (!is_discriminant(D))
        throw std::invalid_argument("not a negative discriminant");
    i64 best = D;
    for (auto [p, e] : factorize(-D).factors) {
        (void)e;
        while (best % (p * p) == 0 && is_discriminant(best / (p * p)))
            best /= p * p;
    }
    if (!is_fundamental(best))
        throw std::logic_error("fundamental_part failed");
    return best;
}

ImagQuadOrder order_from_disc(i64 D)
{
    if (!is_discriminant(D))
        throw std::invalid_argument("order_from_disc: need D < 0 with D = 0,1 mod 4");
    ImagQuadOrder O;
    O.D = D;
    O.DK = fundamental_part(D);
    O.c = isqrt(D / O.DK);
    if (mod(O.DK, 4) == 0) {
        O.t = 0;
        O.nrm = -D / 4;
    } else {
        O.t = O.c;
        O.nrm = O.c * O.c * (1 - O.DK) / 4;
    }
    return O;
}

bool lambda_admissible(const ImagQuadOrder &O, i64 p, int k, i64 lambda)
{
    i64 pk = ipow(p, k);
    i128 v = static_cast<i128>(lambda) * lambda - static_cast<i128>(O.t) * lambda + O.nrm;
    if (v % pk != 0)
        return false;
    /* invertible iff the form (p^k, 2 lambda - t, P(lambda)/p^k) is primitive */
    i64 b = 2 * lambda - O.t;
    if (mod(b, p) != 0)
        return true;
    i128 cc = v / pk;
    return cc % p != 0;
}

std::vector<i64> admissible_primepower(const ImagQuadOrder &O, i64 p, int k)
{
    std::vector<i64> out;
    i64 pk = ipow(p, k);
    for (i64 l = 0; l < pk; ++l)
        if (lambda_admissible(O, p, k, l))
            out.push_back(l);
    return out;
}

OrderIdeal unit_ideal(const ImagQuadOrder &O)
{
    OrderIdeal I;
    I.order = O;
    return I;
}

OrderIdeal ideal_from_components(const ImagQuadOrder &O, std::vector<IdealComponent> comps)
{
    std::sort(comps.begin(), comps.end());
    OrderIdeal I;
    I.order = O;
    I.comps = std::move(comps);
    for (auto &c : I.comps) {
        I.lambda = crt(I.lambda, I.norm, c.lambda, c.pk);
        I.norm *= c.pk;
    }
    return I;
}

std::vector<OrderIdeal> admissible_ideals(const ImagQuadOrder &O, i64 n)
{
    if (n < 1)
        throw std::invalid_argument("admissible_ideals: n must be positive");
    std::vector<std::vector<IdealComponent>> acc{{}};
    for (auto [p, e] : factorize(n).factors) {
        std::vector<std::vector<IdealComponent>> next;
        i64 pk = ipow(p, e);
        for (i64 l : admissible_primepower(O, p, e))
            for (auto &a : acc) {
                auto b = a;
                b.push_back({p, e, pk, l});
                next.push_back(std::move(b));
            }
        acc = std::move(next);
    }
    std::vector<OrderIdeal> out;
    for (auto &a : acc)
        out.push_back(ideal_from_components(O, a));
    std::sort(out.begin(), out.end());
    return out;
}

i64 admissible_count(const ImagQuadOrder &O, i64 n)
{
    i64 r = 1;
    for (auto [p, e] : factorize(n).factors)
        r *= static_cast<i64>(admissible_primepower(O, p, e).size());
    return r;
}

OrderIdeal conjugate_ideal(const OrderIdeal &I)
{
    std::vector<IdealComponent> comps = I.comps;
    for (auto &c : comps)
        c.lambda = mod(I.order.t - c.lambda, c.pk);
    return ideal_from_components(I.order, comps);
}

std::pair<OrderIdeal, OrderIdeal> eta_hall_part(const OrderIdeal &I, i64 Q)
{
    if (!is_hall_divisor(Q, I.norm))
        throw std::invalid_argument("eta_hall_part: Q is not a Hall divisor of the norm");
    std::vector<IdealComponent> a, b;
    for (auto &c : I.comps)
        (Q % c.p == 0 ? a : b).push_back(c);
    return {ideal_from_components(I.order, a), ideal_from_components(I.order, b)};
}

}
