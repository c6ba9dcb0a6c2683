#pragma once

#include "starcurve/arith.hpp"

#include <utility>
#include <vector>

namespace starcurve {

struct GenusData {
    i64 N = 1;
    i64 mu = 1;
    i64 nu2 = 0;
    i64 nu3 = 0;
    i64 nu_inf = 0;
    i64 genus = 0;
    std::vector<std::pair<i64, i64>> fixed_points;
    i64 genus_star = 0;
};

/* a CM contribution to the fixed points of w_Q: discriminant and class count */
struct FixedPointTerm {
    i64 D;
    i64 count;
};

i64 index_mu(i64 N);
i64 elliptic_nu2(i64 N);
i64 elliptic_nu3(i64 N);
i64 genus_X0(i64 N);

std::vector<FixedPointTerm> al_fixed_cm_terms(i64 N, i64 Q);
i64 al_fixed_cusps(i64 N, i64 Q);
i64 al_fixed_points(i64 N, i64 Q);

GenusData genus_data(i64 N);
i64 genus_star(i64 N);

}
