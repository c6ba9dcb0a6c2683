#pragma once

#include "starcurve/arith.hpp"

#include <string>
#include <vector>

namespace starcurve {

struct Cusp {
    i64 N = 1;
    i64 a = 1;
    i64 b = 1;
    i64 width = 1;

    std::string str() const;
    bool operator==(const Cusp &o) const { return N == o.N && a == o.a && b == o.b; }
    bool operator<(const Cusp &o) const { return b != o.b ? b < o.b : a < o.a; }
};

struct StarCuspClass {
    i64 N = 1;
    std::vector<i64> denominators;
    std::vector<Cusp> members;
    bool rational = false;
    std::string field;
};

i64 cusp_width(i64 N, i64 b);
i64 cusp_count(i64 N);
std::vector<i64> representative_numerators(i64 N, i64 b);
std::vector<Cusp> cusp_representatives(i64 N);

/* the cusp of X0(N) containing p/q (q = 0 is infinity) */
Cusp normalize_cusp(i64 N, i64 p, i64 q);
bool same_cusp(i64 N, i64 p1, i64 q1, i64 p2, i64 q2);

std::vector<std::vector<Cusp>> galois_orbits(i64 N);
std::string galois_field_label(i64 N, i64 b);

/* W_Q = [[Q x, y], [N, Q]] with Q x - (N/Q) y = 1 */
void al_matrix(i64 N, i64 Q, i64 &x, i64 &y);
Cusp al_on_cusp(i64 N, i64 Q, const Cusp &c);

std::vector<StarCuspClass> star_cusp_orbits(i64 N);
i64 star_cusp_class_count(i64 N);
std::vector<StarCuspClass> rational_star_cusps(i64 N);

i64 width_one_transport(i64 N, const Cusp &c);
bool degeneracy_unramified(i64 N, i64 M, i64 d, const Cusp &c);
std::vector<i64> unramified_hall_set(i64 N, i64 M, const Cusp &c);
std::vector<Cusp> width_one_cusps(i64 N);

}
