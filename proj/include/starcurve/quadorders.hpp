#pragma once

#include "starcurve/arith.hpp"

#include <vector>

namespace starcurve {

/* O = Z[alpha] with alpha a root of P = X^2 - t X + nrm */
struct ImagQuadOrder {
    i64 D = -4;
    i64 DK = -4;
    i64 c = 1;
    i64 t = 0;
    i64 nrm = 1;

    i64 eval(i64 x) const { return x * x - t * x + nrm; }
    bool maximal() const { return c == 1; }
    bool operator==(const ImagQuadOrder &o) const { return D == o.D; }
};

bool is_discriminant(i64 D);
i64 fundamental_part(i64 D);
ImagQuadOrder order_from_disc(i64 D);

struct IdealComponent {
    i64 p;
    int k;
    i64 pk;
    i64 lambda;
    bool operator==(const IdealComponent &) const = default;
    auto operator<=>(const IdealComponent &) const = default;
};

/* the ideal (norm, lambda - alpha) */
struct OrderIdeal {
    ImagQuadOrder order;
    i64 norm = 1;
    i64 lambda = 0;
    std::vector<IdealComponent> comps;

    bool operator==(const OrderIdeal &o) const { return order.D == o.order.D && norm == o.norm && lambda == o.lambda; }
    bool operator<(const OrderIdeal &o) const { return norm != o.norm ? norm < o.norm : lambda < o.lambda; }
};

bool lambda_admissible(const ImagQuadOrder &O, i64 p, int k, i64 lambda);
std::vector<i64> admissible_primepower(const ImagQuadOrder &O, i64 p, int k);
OrderIdeal unit_ideal(const ImagQuadOrder &O);
OrderIdeal ideal_from_components(const ImagQuadOrder &O, std::vector<IdealComponent> comps);
std::vector<OrderIdeal> admissible_ideals(const ImagQuadOrder &O, i64 n);
i64 admissible_count(const ImagQuadOrder &O, i64 n);
OrderIdeal conjugate_ideal(const OrderIdeal &I);
std::pair<OrderIdeal, OrderIdeal> eta_hall_part(const OrderIdeal &I, i64 Q);

}
