#include "doctest.h"
#include "starcurve/heegner.hpp"
#include "starcurve/quadforms.hpp"
#include "starcurve/quadorders.hpp"
#include "starcurve/report.hpp"

#include <algorithm>
#include <set>

using namespace starcurve;

namespace {

std::vector<i64> sorted_desc(std::vector<i64> v)
{
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

void check_actions(i64 N, i64 D)
{
    auto pts = enumerate_heegner(N, D);
    REQUIRE_FALSE(pts.empty());
    auto hall = hall_divisors(N);
    int h = class_group(D)->size();
    std::set<HeegnerTriple> all(pts.begin(), pts.end());
    for (auto &P : pts) {
        CHECK(al_act(P, 1) == P);
        CHECK(galois_act(P, class_group(D)->identity, false) == P);
        CHECK(galois_act(galois_act(P, class_group(D)->identity, true), class_group(D)->identity, true) == P);
        std::set<HeegnerTriple> orbit;
        for (int b = 0; b < h; ++b)
            for (bool t : {false, true}) {
                auto G = galois_act(P, b, t);
                CHECK(all.count(G));
                orbit.insert(G);
            }
        CHECK(static_cast<int>(orbit.size()) <= 2 * h);
        for (i64 Q : hall) {
            auto W = al_act(P, Q);
            CHECK(all.count(W));
            CHECK(al_act(W, Q) == P);
            for (i64 R : hall) {
                i64 g = gcd(Q, R);
                CHECK(al_act(W, R) == al_act(P, Q * R / (g * g)));
            }
            for (int b = 0; b < h; ++b)
                for (bool t : {false, true})
                    CHECK(al_act(galois_act(P, b, t), Q) == galois_act(W, b, t));
        }
    }
}

}

TEST_CASE("existence of Heegner points")
{
    CHECK(heegner_exists(40, -15).exists);
    CHECK_FALSE(heegner_exists(11, -3).exists);
    CHECK_FALSE(heegner_exists(4, -4).exists);
    CHECK(heegner_exists(147, -147).exists);
    CHECK(heegner_exists(40, -160).exists);
}

TEST_CASE("enumeration size is the admissible count times the class number")
{
    CHECK(enumerate_heegner(40, -160).size() == 8);
    CHECK(enumerate_heegner(96, -15).size() == admissible_count(order_from_disc(-15), 96) * 2);
    for (i64 N : {40, 48, 63, 96, 100, 147, 200, 441})
        for (i64 D = -3; D >= -400; --D) {
            if (!is_discriminant(D) || !heegner_exists(N, D).exists)
                continue;
            auto O = order_from_disc(D);
            CHECK(static_cast<i64>(enumerate_heegner(N, D).size()) == admissible_count(O, N) * class_number(D));
        }
}

TEST_CASE("Atkin-Lehner and Galois actions")
{
    check_actions(40, -160);
    check_actions(147, -147);
    check_actions(40, -15);
    check_actions(63, -27);
}

TEST_CASE("stabilizers")
{
    for (auto &P : enumerate_heegner(40, -15)) {
        auto st = stabilizer(P);
        CHECK(std::find(st.begin(), st.end(), 1) != st.end());
        CHECK(std::find(st.begin(), st.end(), 8) == st.end());
        for (i64 Q : st)
            CHECK(al_act(P, Q) == P);
    }
}

TEST_CASE("rational star points")
{
    CHECK(star_rational_orbits(40, -160).size() == 1);
    CHECK(star_rational_orbits(147, -147).size() == 3);
    CHECK(star_rational_orbits(40, -15 * 4 * 9).empty());
    for (i64 N : {40, 63, 147, 240, 441})
        for (i64 D : rational_heegner_report(N).discriminants) {
            auto G = class_group(D);
            for (int i = 0; i < G->size(); ++i)
                CHECK(G->mul(i, i) == G->identity);
            CHECK((i64(1) << factorize(N).omega()) % G->size() == 0);
        }
    CHECK(sorted_desc(rational_heegner_report(40).discriminants) == std::vector<i64>{-15, -16, -60, -160});
    CHECK(rational_heegner_report(144).discriminants.empty());
    CHECK(sorted_desc(rational_heegner_report(63).discriminants) == std::vector<i64>{-27, -35, -315});
}

TEST_CASE("rational Heegner report reproduces every golden row")
{
    for (auto &g : bundled_golden()) {
        INFO("level " << g.level);
        CHECK(sorted_desc(rational_heegner_report(g.level).discriminants) == sorted_desc(g.heegner));
    }
}

TEST_CASE("bundled candidate discriminants are re-derived by a sweep")
{
    auto bundled = load_discriminants(default_data_dir() + "/disc_2torsion.txt");
    std::set<i64> file(bundled.begin(), bundled.end());
    CHECK(file.size() == bundled.size());
    auto swept = two_torsion_discriminants(40000, 16);
    CHECK(std::set<i64>(swept.begin(), swept.end()) == file);
    for (i64 D : bundled) {
        auto G = class_group(D);
        CHECK(G->size() <= 16);
        for (int i = 0; i < G->size(); ++i)
            CHECK(G->mul(i, i) == G->identity);
    }
}
