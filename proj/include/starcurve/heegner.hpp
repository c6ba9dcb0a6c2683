#pragma once

#include "starcurve/arith.hpp"
#include "starcurve/quadforms.hpp"
#include "starcurve/quadorders.hpp"

#include <string>
#include <vector>

namespace starcurve {

struct HeegnerTriple {
    ImagQuadOrder order;
    OrderIdeal eta;
    int a_class = 0;

    bool operator==(const HeegnerTriple &o) const { return eta == o.eta && a_class == o.a_class; }
    bool operator<(const HeegnerTriple &o) const { return eta == o.eta ? a_class < o.a_class : eta < o.eta; }
};

struct HeegnerOrbit {
    i64 N = 1;
    i64 D = -4;
    std::vector<HeegnerTriple> members;
    bool star_rational = false;
    std::vector<i64> stabilizer;
};

struct ExistenceResult {
    bool exists = false;
    std::string reason;
};

ExistenceResult heegner_exists(i64 N, i64 D);
std::vector<HeegnerTriple> enumerate_heegner(i64 N, i64 D);

HeegnerTriple al_act(const HeegnerTriple &P, i64 Q);
HeegnerTriple galois_act(const HeegnerTriple &P, int b_class, bool with_conjugation);
std::vector<i64> stabilizer(const HeegnerTriple &P);

/* Atkin-Lehner orbits of Heegner points of discriminant D, each tagged with rationality on the star quotient */
std::vector<HeegnerOrbit> heegner_orbits(i64 N, i64 D);
std::vector<HeegnerOrbit> star_rational_orbits(i64 N, i64 D);

/* discriminants D with Pic(O_D) of exponent at most 2 and h(D) <= hmax, found by sweeping |D| <= bound */
std::vector<i64> two_torsion_discriminants(i64 bound, i64 hmax);
std::vector<i64> load_discriminants(const std::string &path);
std::string default_data_dir();

struct HeegnerReport {
    i64 N = 1;
    std::vector<i64> discriminants;
    std::vector<HeegnerOrbit> orbits;
};

HeegnerReport rational_heegner_report(i64 N, const std::vector<i64> &candidates);
HeegnerReport rational_heegner_report(i64 N);

}
